#pragma once

#include "core/config.hpp"
#include "core/feature_vector.hpp"
#include "core/signal.hpp"
#include "core/stats.hpp"

namespace kinexam {

// Per-frame distance between thumb tip and index tip of one hand.
TimeSeries1D ft_distance(const PoseRecording& rec, Side side);

// Horizontal/vertical mirror symmetry of the index-mid trajectories:
// sx = CC(left x, -right x), sy = CC(left y, right y).
struct FtfSymmetry {
  double sx = 0.0;
  double sy = 0.0;
};
FtfSymmetry ftf_symmetry(const PoseRecording& rec);

// Ratio of the actual trajectory polyline to the arc length of a fitted
// quadratic y(x), per cycle; >= 1 (up to fit error) and growing with tremor.
StatSummary ftf_path_smoothness(const PoseRecording& rec, Side side,
                                const ExtractConfig& cfg);

// Pairwise CC of the per-cycle velocity-angle series, resampled to a common
// length; one value per unordered cycle pair.
StatSummary ftf_velocity_angle_symmetry(const PoseRecording& rec, Side side,
                                        const ExtractConfig& cfg);

// Full per-test extraction; runs preprocessing internally.
FeatureVector ft_features(const PoseRecording& rec, const ExtractConfig& cfg,
                          const std::string& recording_id = "");
FeatureVector ftf_features(const PoseRecording& rec, const ExtractConfig& cfg,
                           const std::string& recording_id = "");
FeatureVector fr_features(const PoseRecording& rec, const ExtractConfig& cfg,
                          const std::string& recording_id = "");

// Dispatch on rec.test_kind (SAW included, via features_gait).
FeatureVector extract_features(const PoseRecording& rec,
                               const ExtractConfig& cfg,
                               const std::string& recording_id = "");

}  // namespace kinexam
