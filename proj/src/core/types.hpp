#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/skeleton.hpp"

namespace kinexam {

enum class TestKind { FT, FTF, FR, SAW };
enum class Label { normal, abnormal, unlabeled };

const char* to_string(TestKind k);
const char* to_string(Label l);
TestKind test_kind_from_string(const std::string& s);
Label label_from_string(const std::string& s);

struct Keypoint2D {
  double x = 0.0;
  double y = 0.0;
  double confidence = 1.0;
};

struct Keypoint3D {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct Frame {
  std::vector<Keypoint2D> body2d;      // empty or kBody2dSlots
  std::vector<Keypoint2D> hand2d_left; // empty or kHandSlots
  std::vector<Keypoint2D> hand2d_right;
  std::vector<Keypoint3D> body3d;      // empty or kBody3dSlots
};

// Immutable after construction/validation; treat as a value.
struct PoseRecording {
  double fps = 0.0;
  TestKind test_kind = TestKind::FT;
  Label label = Label::unlabeled;
  std::string subject_id;
  std::string device;
  std::vector<Frame> frames;

  std::size_t frame_count() const { return frames.size(); }
  double duration_seconds() const {
    return frames.empty() ? 0.0 : static_cast<double>(frames.size()) / fps;
  }
};

// Uniformly sampled scalar signal.
struct TimeSeries1D {
  std::vector<double> samples;
  double fps = 0.0;
  double t0 = 0.0;

  std::size_t size() const { return samples.size(); }
  double operator[](std::size_t i) const { return samples[i]; }
  double duration_seconds() const {
    return samples.empty() ? 0.0 : static_cast<double>(samples.size()) / fps;
  }
};

enum class Axis { x, y, z };

Axis axis_from_string(const std::string& s);
const char* to_string(Axis a);

// Checks every invariant the data model states; throws SchemaError or
// ValueError naming the offending frame/slot.
void validate_recording(const PoseRecording& rec);

// Per-frame coordinate of one joint as a time series (no resampling).
TimeSeries1D keypoint_series(const PoseRecording& rec, SkeletonGroup group,
                             int joint, Side side, Axis axis);

// Confidence channel of a 2D joint, aligned with keypoint_series.
TimeSeries1D confidence_series(const PoseRecording& rec, SkeletonGroup group,
                               int joint, Side side);

}  // namespace kinexam
