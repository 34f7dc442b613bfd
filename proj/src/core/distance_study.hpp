#pragma once

#include "core/analysis.hpp"

namespace kinexam {

// Intra/inter-class feature distances per subject. Each subject needs four
// recordings: a normal and an abnormal one on each of two devices. A-A and
// N-N compare the same label across devices; N-A averages the two
// cross-label, cross-device pairs. All three are normalized per feature by
// the maximum N-A across subjects.
struct FeatureDistances {
  std::string feature;
  std::vector<double> aa;
  std::vector<double> nn;
  std::vector<double> na;
  double mean_aa = 0.0;
  double mean_nn = 0.0;
  double mean_na = 0.0;
};

struct DistanceReport {
  std::vector<FeatureDistances> features;
  std::vector<std::string> subjects;  // complete subjects, in output order
  std::vector<std::string> warnings;  // skipped subjects and why

  std::string to_json() const;
};

DistanceReport distance_study(const FeatureMatrix& m);

}  // namespace kinexam
