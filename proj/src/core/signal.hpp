#pragma once

#include <vector>

#include "core/types.hpp"

namespace kinexam {

// Detected motion cycles on a scalar series. Minima and maxima strictly
// interleave; periods are maxima-to-maxima in seconds; amplitudes are the
// absolute value differences of adjacent (alternating) extrema.
struct CycleSet {
  std::vector<std::size_t> minima_idx;
  std::vector<std::size_t> maxima_idx;
  std::vector<double> periods;
  std::vector<double> amplitudes;
};

// |fr - fl| / (fr + fl), only defined for nonnegative inputs that are not
// both zero.
double asymmetry(double fr, double fl);

double pearson_cc(const std::vector<double>& x1, const std::vector<double>& x2);
double pearson_cc(const TimeSeries1D& x1, const TimeSeries1D& x2);

// Prominence-filtered local extrema with enforced min/max alternation.
// Threshold is prominence_frac times the global range of the series.
CycleSet find_extrema(const TimeSeries1D& series, double prominence_frac);

// Central differences scaled to units/second; one-sided at the edges.
// order 2 applies the operator twice.
TimeSeries1D derivative(const TimeSeries1D& series, int order = 1);

struct VelocityAngle {
  TimeSeries1D angle;       // atan2(dy/dt, dx/dt), radians in (-pi, pi]
  std::vector<bool> valid;  // false where both velocity components are zero
};

VelocityAngle velocity_angle(const TimeSeries1D& x, const TimeSeries1D& y);

struct LagResult {
  long lag = 0;    // samples; positive means b trails a
  double cc = 0.0; // Pearson CC of the aligned overlap
};

// Lag in [-max_lag, max_lag] maximizing the signed CC of the overlapping
// portions of a[i] and b[i+lag]. Ties prefer the smaller |lag|.
LagResult align_by_lag(const TimeSeries1D& a, const TimeSeries1D& b,
                       std::size_t max_lag);

// Linear interpolation onto n uniformly spaced points spanning the original
// time extent.
TimeSeries1D resample_linear(const TimeSeries1D& series, std::size_t n);

}  // namespace kinexam
