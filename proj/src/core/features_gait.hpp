#pragma once

#include "core/config.hpp"
#include "core/feature_vector.hpp"
#include "core/signal.hpp"
#include "core/stats.hpp"

namespace kinexam {

enum class SegmentKind { SU, W, TU };
enum class WalkDirection { pos_x, neg_x, none };

const char* to_string(SegmentKind k);

struct SegmentLabel {
  SegmentKind kind = SegmentKind::W;
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive
  WalkDirection direction = WalkDirection::none;

  double duration_seconds(double fps) const {
    return static_cast<double>(end - start) / fps;
  }
};

struct GaitStep {
  std::size_t start_idx = 0;  // feet-together frame opening the step
  std::size_t peak_idx = 0;   // widest feet separation
  std::size_t end_idx = 0;    // feet-together frame closing the step
  double step_time = 0.0;     // seconds
  double step_length = 0.0;   // feet distance at the peak
  double step_width = 0.0;    // feet distance at the bounding minima
};

// Pelvis-trajectory segmentation into stand-up / walk / turn intervals.
// Expects a preprocessed (repaired + normalized) recording.
std::vector<SegmentLabel> segment_saw(const PoseRecording& rec,
                                      const ExtractConfig& cfg);

double time_to_stand(const PoseRecording& rec, const ExtractConfig& cfg);

// Per-frame distance between the right and left foot joints (body3d).
TimeSeries1D feet_distance(const PoseRecording& rec);

// Angle at the knee between the thigh and shank vectors, radians in [0, pi].
TimeSeries1D knee_angle(const PoseRecording& rec, Side side);

struct StepAnalysis {
  std::vector<GaitStep> steps;
  StatSummary step_time;
  StatSummary step_length;
  StatSummary step_width;
};

// Steps from feet-distance extrema inside walking segments only.
StepAnalysis step_features(const PoseRecording& rec,
                           const std::vector<SegmentLabel>& segments,
                           const ExtractConfig& cfg);

struct CadenceSpeed {
  StatSummary cadence;  // steps per second, per walking segment
  StatSummary speed;    // pelvis path length / duration, per walking segment
};

CadenceSpeed cadence_and_speed(const PoseRecording& rec,
                               const std::vector<SegmentLabel>& segments,
                               const std::vector<GaitStep>& steps,
                               const ExtractConfig& cfg);

// Lag-aligned CC of the right/left knee-angle series per walking segment.
StatSummary knee_angle_symmetry(const PoseRecording& rec,
                                const std::vector<SegmentLabel>& segments,
                                const ExtractConfig& cfg);

// Lag-aligned CC of the right/left foot horizontal positions per stride.
StatSummary step_symmetry(const PoseRecording& rec,
                          const std::vector<SegmentLabel>& segments,
                          const ExtractConfig& cfg);

FeatureVector saw_features(const PoseRecording& rec, const ExtractConfig& cfg,
                           const std::string& recording_id = "");

}  // namespace kinexam
