#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace kinexam {

// Named scalar features of one recording, in catalogue order. Features the
// recording could not produce (e.g. time-to-stand without a stand-up phase)
// are present in the name list but carry no value.
class FeatureVector {
 public:
  FeatureVector(TestKind kind, std::string recording_id,
                std::uint64_t config_hash);

  TestKind kind() const { return kind_; }
  const std::string& recording_id() const { return recording_id_; }
  std::uint64_t config_hash() const { return config_hash_; }

  const std::vector<std::string>& names() const { return names_; }
  void set(const std::string& name, double value);
  std::optional<double> get(const std::string& name) const;
  double at(const std::string& name) const;  // throws IndexError if unset
  bool has(const std::string& name) const;

  // Throws ValueError when a set value is non-finite or violates the
  // documented range of its feature family.
  void check() const;

 private:
  std::size_t index_of(const std::string& name) const;

  TestKind kind_;
  std::string recording_id_;
  std::uint64_t config_hash_;
  std::vector<std::string> names_;
  std::vector<std::optional<double>> values_;
};

// Exact feature name list for a test kind; the column schema of feature CSVs.
const std::vector<std::string>& feature_catalogue(TestKind kind);

}  // namespace kinexam
