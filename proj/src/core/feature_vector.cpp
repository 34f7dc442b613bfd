#include "core/feature_vector.hpp"

#include <algorithm>
#include <cmath>

namespace kinexam {

namespace {

void push_stats(std::vector<std::string>& v, const std::string& base,
                std::initializer_list<const char*> stats) {
  for (const char* s : stats) v.push_back(base + "." + s);
}

void push_sided_stats(std::vector<std::string>& v, const std::string& base,
                      std::initializer_list<const char*> stats,
                      bool with_asym) {
  for (const char* side : {"right", "left"})
    push_stats(v, base + "." + side, stats);
  if (with_asym) v.push_back(base + ".asym");
}

std::vector<std::string> build_ft() {
  std::vector<std::string> v;
  push_sided_stats(v, "ft.amplitude", {"mean", "std", "median"}, true);
  push_sided_stats(v, "ft.period", {"mean", "std", "median"}, true);
  push_sided_stats(v, "ft.freq", {"mean", "std", "median"}, true);
  push_sided_stats(v, "ft.speed", {"mean", "max"}, false);
  push_sided_stats(v, "ft.accel", {"mean", "std", "median", "max"}, false);
  push_sided_stats(v, "ft.maxspeed", {"mean"}, true);
  push_sided_stats(v, "ft.maxaccel", {"mean", "std", "median"}, true);
  v.push_back("ft.taprate.right");
  v.push_back("ft.taprate.left");
  push_stats(v, "ft.wrist_stability", {"mean", "std", "median"});
  push_stats(v, "ft.elbow_stability", {"mean", "std", "median"});
  return v;
}

std::vector<std::string> build_ftf() {
  std::vector<std::string> v;
  v.push_back("ftf.sx");
  v.push_back("ftf.sy");
  push_sided_stats(v, "ftf.period", {"mean", "std"}, false);
  push_sided_stats(v, "ftf.speed", {"mean", "std"}, false);
  push_sided_stats(v, "ftf.ps", {"mean", "std"}, false);
  push_sided_stats(v, "ftf.velangle_sym", {"mean", "std"}, false);
  return v;
}

std::vector<std::string> build_fr() {
  std::vector<std::string> v;
  push_sided_stats(v, "fr.amplitude", {"mean", "std", "median"}, true);
  push_sided_stats(v, "fr.period", {"mean", "std", "median"}, true);
  push_sided_stats(v, "fr.maxspeed", {"mean", "std", "median"}, true);
  push_sided_stats(v, "fr.maxaccel", {"mean", "std", "median"}, true);
  push_sided_stats(v, "fr.rollspeed", {"mean", "std", "median"}, false);
  v.push_back("fr.rollrate.right");
  v.push_back("fr.rollrate.left");
  push_stats(v, "fr.elbow_stability", {"mean", "std", "median"});
  return v;
}

std::vector<std::string> build_saw() {
  std::vector<std::string> v;
  push_stats(v, "saw.knee_sym", {"mean", "std", "median"});
  push_stats(v, "saw.step_sym", {"mean", "std", "median"});
  push_stats(v, "saw.step_length", {"mean", "std", "median"});
  push_stats(v, "saw.step_width", {"mean", "std", "median"});
  push_stats(v, "saw.step_time", {"mean", "std", "median"});
  v.push_back("saw.time_to_stand");
  push_stats(v, "saw.turn_time", {"mean", "std", "median"});
  push_stats(v, "saw.speed", {"mean", "std"});
  push_stats(v, "saw.cadence", {"mean", "std"});
  return v;
}

}  // namespace

const std::vector<std::string>& feature_catalogue(TestKind kind) {
  static const std::vector<std::string> ft = build_ft();
  static const std::vector<std::string> ftf = build_ftf();
  static const std::vector<std::string> fr = build_fr();
  static const std::vector<std::string> saw = build_saw();
  switch (kind) {
    case TestKind::FT: return ft;
    case TestKind::FTF: return ftf;
    case TestKind::FR: return fr;
    case TestKind::SAW: return saw;
  }
  throw ValueError("bad test kind");
}

FeatureVector::FeatureVector(TestKind kind, std::string recording_id,
                             std::uint64_t config_hash)
    : kind_(kind),
      recording_id_(std::move(recording_id)),
      config_hash_(config_hash),
      names_(feature_catalogue(kind)),
      values_(names_.size()) {}

std::size_t FeatureVector::index_of(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end())
    throw IndexError("feature not in " + std::string(to_string(kind_)) +
                     " catalogue: " + name);
  return static_cast<std::size_t>(it - names_.begin());
}

void FeatureVector::set(const std::string& name, double value) {
  values_[index_of(name)] = value;
}

std::optional<double> FeatureVector::get(const std::string& name) const {
  return values_[index_of(name)];
}

double FeatureVector::at(const std::string& name) const {
  const auto v = values_[index_of(name)];
  if (!v) throw IndexError("feature has no value: " + name);
  return *v;
}

bool FeatureVector::has(const std::string& name) const {
  return values_[index_of(name)].has_value();
}

void FeatureVector::check() const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!values_[i]) continue;
    const double v = *values_[i];
    const std::string& name = names_[i];
    if (!std::isfinite(v))
      throw ValueError("non-finite feature value: " + name);
    const bool is_asym = name.size() > 5 &&
                         name.compare(name.size() - 5, 5, ".asym") == 0;
    if (is_asym && (v < 0.0 || v > 1.0))
      throw ValueError("asymmetry outside [0,1]: " + name);
    const bool is_cc = name.find("sym") != std::string::npos ||
                       name == "ftf.sx" || name == "ftf.sy";
    if (is_cc && (v < -1.0 - 1e-12 || v > 1.0 + 1e-12))
      throw ValueError("correlation outside [-1,1]: " + name);
    const bool period_loc =
        name.find(".period.") != std::string::npos &&
        (name.ends_with(".mean") || name.ends_with(".median"));
    if (period_loc && v <= 0.0)
      throw ValueError("non-positive period: " + name);
  }
}

}  // namespace kinexam
