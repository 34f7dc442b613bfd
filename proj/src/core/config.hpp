#pragma once

#include <cstdint>
#include <string>

#include "core/preprocess.hpp"

namespace kinexam {

struct SignalConfig {
  double prominence_frac = 0.2;
  int resample_points = 100;  // common length for per-cycle series comparison

  void validate() const;
};

struct GaitConfig {
  // Velocities are in reference lengths per second on the normalized pose.
  double stand_threshold = 0.5;
  double turn_threshold = 0.25;
  double hold_seconds = 0.3;      // stillness needed to end the stand-up
  double min_walk_seconds = 0.5;  // shortest run accepted as a walk segment

  void validate() const;
};

struct ExtractConfig {
  PreprocessConfig preprocess;
  SignalConfig signal;
  GaitConfig gait;

  void validate() const;
  std::uint64_t hash() const;
};

struct LogRegConfig {
  double lr = 0.1;
  int epochs = 2000;
  double l2 = 1e-3;

  void validate() const;
};

struct ForestConfig {
  int n_trees = 200;
  int max_depth = 8;
  int min_leaf = 2;
  std::string feature_subsample = "sqrt";  // "sqrt" or "all"

  void validate() const;
};

struct AnalysisConfig {
  LogRegConfig logreg;
  ForestConfig forest;
  int folds = 5;

  void validate() const;
};

// Whole-run configuration, expressed on disk as one JSON object with flat
// dotted keys, e.g. {"preprocess.median_window": 5, "analysis.rf.n_trees":
// 200}. Unknown keys are rejected.
struct RunConfig {
  ExtractConfig extract;
  AnalysisConfig analysis;
  std::uint64_t seed = 0;

  void validate() const;
  static RunConfig from_flat_json(const std::string& text);
  std::string to_flat_json() const;
};

std::uint64_t fnv1a64(const std::string& data);

}  // namespace kinexam
