#pragma once

#include <optional>

#include "core/types.hpp"

namespace kinexam {

struct FrameRange {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive
};

struct PreprocessConfig {
  // Window sizes are defined at 60 fps and rescaled to the recording rate.
  int median_window = 5;
  int savgol_window = 11;
  int savgol_order = 3;
  double confidence_threshold = 0.3;
  bool normalize = true;
  std::optional<FrameRange> truncate_range;

  void validate() const;
};

// Nearest odd window for the actual frame rate, never below 3.
int scaled_odd_window(int base_window_at_60fps, double fps);

PoseRecording truncate(const PoseRecording& rec, FrameRange range);

// Median across frames of the per-frame reference distance: right forearm
// |wrist - elbow| for FT/FTF/FR, |pelvis - neck| for SAW (both from body2d).
double reference_length(const PoseRecording& rec);

// Every coordinate divided by ref; confidences untouched.
PoseRecording normalize(const PoseRecording& rec, double ref);

// Samples below the confidence threshold replaced by linear interpolation
// between the nearest flanking confident samples; leading/trailing gaps take
// the nearest confident value.
TimeSeries1D repair_low_confidence(const TimeSeries1D& series,
                                   const TimeSeries1D& conf, double threshold);

TimeSeries1D median_filter(const TimeSeries1D& series, int window);

// Per-sample least-squares polynomial fit over the centered window; edge
// windows shrink symmetrically and keep the order where the fit stays
// determined.
TimeSeries1D savgol_filter(const TimeSeries1D& series, int window, int order);

// median + Savitzky-Golay with fps-scaled windows.
TimeSeries1D smooth(const TimeSeries1D& series, const PreprocessConfig& cfg);

struct Preprocessed {
  PoseRecording rec;
  double reference = 1.0;
};

// truncate -> confidence repair (2D groups, in place per joint) -> normalize.
// Joints whose confidence never reaches the threshold are left as stored;
// feature code consuming them deals with the consequences.
Preprocessed preprocess(const PoseRecording& rec, const PreprocessConfig& cfg);

}  // namespace kinexam
