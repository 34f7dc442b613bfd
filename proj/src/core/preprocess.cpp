#include "core/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "core/linalg.hpp"
#include "core/stats.hpp"

namespace kinexam {

void PreprocessConfig::validate() const {
  if (median_window < 3 || median_window % 2 == 0)
    throw ValueError("median_window must be odd and >= 3");
  if (savgol_window < 3 || savgol_window % 2 == 0)
    throw ValueError("savgol_window must be odd and >= 3");
  if (savgol_order < 0 || savgol_order >= savgol_window)
    throw ValueError("savgol_order must satisfy 0 <= order < window");
  if (!(confidence_threshold >= 0.0 && confidence_threshold <= 1.0))
    throw ValueError("confidence_threshold must lie in [0,1]");
}

int scaled_odd_window(int base_window_at_60fps, double fps) {
  const double x = static_cast<double>(base_window_at_60fps) * fps / 60.0;
  const long k = std::lround((x - 1.0) / 2.0);
  return static_cast<int>(std::max(3L, 2 * k + 1));
}

PoseRecording truncate(const PoseRecording& rec, FrameRange range) {
  if (range.start >= range.end || range.end > rec.frames.size())
    throw RangeError("invalid truncate range [" +
                     std::to_string(range.start) + ", " +
                     std::to_string(range.end) + ") for N=" +
                     std::to_string(rec.frames.size()));
  PoseRecording out = rec;
  out.frames.assign(rec.frames.begin() + static_cast<long>(range.start),
                    rec.frames.begin() + static_cast<long>(range.end));
  return out;
}

double reference_length(const PoseRecording& rec) {
  std::vector<double> lengths;
  lengths.reserve(rec.frames.size());
  const bool saw = rec.test_kind == TestKind::SAW;
  const int slot_a = saw ? skel::b2::PELVIS
                         : skel::body2d_slot(skel::b2::WRIST, Side::right);
  const int slot_b = saw ? skel::b2::NECK
                         : skel::body2d_slot(skel::b2::ELBOW, Side::right);
  for (const Frame& f : rec.frames) {
    if (f.body2d.empty())
      throw DegenerateError("reference joints missing in a frame");
    const auto& a = f.body2d[static_cast<std::size_t>(slot_a)];
    const auto& b = f.body2d[static_cast<std::size_t>(slot_b)];
    lengths.push_back(std::hypot(a.x - b.x, a.y - b.y));
  }
  const double ref = median_of(lengths);
  if (!(ref > 0.0)) throw DegenerateError("reference length is zero");
  return ref;
}

PoseRecording normalize(const PoseRecording& rec, double ref) {
  if (!(ref > 0.0)) throw ValueError("reference length must be positive");
  PoseRecording out = rec;
  const double inv = 1.0 / ref;
  for (Frame& f : out.frames) {
    for (auto* group : {&f.body2d, &f.hand2d_left, &f.hand2d_right}) {
      for (Keypoint2D& p : *group) {
        p.x *= inv;
        p.y *= inv;
      }
    }
    for (Keypoint3D& p : f.body3d) {
      p.x *= inv;
      p.y *= inv;
      p.z *= inv;
    }
  }
  return out;
}

TimeSeries1D repair_low_confidence(const TimeSeries1D& series,
                                   const TimeSeries1D& conf,
                                   double threshold) {
  if (series.size() != conf.size())
    throw ValueError("series and confidence lengths differ");

  std::vector<std::size_t> good;
  for (std::size_t i = 0; i < conf.size(); ++i) {
    if (conf.samples[i] >= threshold) good.push_back(i);
  }
  if (good.empty())
    throw AllLowConfidenceError("no sample reaches the confidence threshold");

  TimeSeries1D out = series;
  std::size_t g = 0;  // index into good: first confident sample >= i
  for (std::size_t i = 0; i < out.size(); ++i) {
    while (g < good.size() && good[g] < i) ++g;
    if (g < good.size() && good[g] == i) continue;
    if (g == 0) {
      out.samples[i] = series.samples[good.front()];
    } else if (g == good.size()) {
      out.samples[i] = series.samples[good.back()];
    } else {
      const std::size_t lo = good[g - 1];
      const std::size_t hi = good[g];
      const double t = static_cast<double>(i - lo) /
                       static_cast<double>(hi - lo);
      out.samples[i] =
          series.samples[lo] * (1.0 - t) + series.samples[hi] * t;
    }
  }
  return out;
}

TimeSeries1D median_filter(const TimeSeries1D& series, int window) {
  if (window < 1 || window % 2 == 0)
    throw ValueError("median window must be odd and positive");
  if (window == 1 || series.size() < 2) return series;

  const std::size_t n = series.size();
  const std::size_t h = static_cast<std::size_t>(window / 2);
  TimeSeries1D out = series;
  std::vector<double> scratch;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t hw = std::min({h, i, n - 1 - i});
    scratch.assign(series.samples.begin() + static_cast<long>(i - hw),
                   series.samples.begin() + static_cast<long>(i + hw + 1));
    std::nth_element(scratch.begin(), scratch.begin() + static_cast<long>(hw),
                     scratch.end());
    out.samples[i] = scratch[hw];
  }
  return out;
}

namespace {

// c0 of the least-squares polynomial fit of v[lo..hi] in coordinates centered
// at sample i.
double savgol_point(const std::vector<double>& v, std::size_t i,
                    std::size_t hw, int order) {
  const int deg = std::min<int>(order, static_cast<int>(2 * hw));
  const int m = deg + 1;
  std::vector<double> moments(static_cast<std::size_t>(2 * deg + 1), 0.0);
  std::vector<double> rhs(static_cast<std::size_t>(m), 0.0);
  for (long u = -static_cast<long>(hw); u <= static_cast<long>(hw); ++u) {
    double up = 1.0;
    const double val = v[static_cast<std::size_t>(static_cast<long>(i) + u)];
    for (int p = 0; p <= 2 * deg; ++p) {
      moments[static_cast<std::size_t>(p)] += up;
      if (p < m) rhs[static_cast<std::size_t>(p)] += up * val;
      up *= static_cast<double>(u);
    }
  }
  std::vector<double> mat(static_cast<std::size_t>(m * m));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      mat[static_cast<std::size_t>(r * m + c)] =
          moments[static_cast<std::size_t>(r + c)];
  return solve_dense(std::move(mat), std::move(rhs))[0];
}

}  // namespace

TimeSeries1D savgol_filter(const TimeSeries1D& series, int window, int order) {
  if (window < 3 || window % 2 == 0)
    throw ValueError("savgol window must be odd and >= 3");
  if (order < 0 || order >= window)
    throw ValueError("savgol order must satisfy 0 <= order < window");

  const std::size_t n = series.size();
  if (n < 2) return series;
  const std::size_t h = static_cast<std::size_t>(window / 2);
  TimeSeries1D out = series;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t hw = std::min({h, i, n - 1 - i});
    if (hw == 0) continue;
    out.samples[i] = savgol_point(series.samples, i, hw, order);
  }
  return out;
}

TimeSeries1D smooth(const TimeSeries1D& series, const PreprocessConfig& cfg) {
  cfg.validate();
  const int mw = scaled_odd_window(cfg.median_window, series.fps);
  const int sw = scaled_odd_window(cfg.savgol_window, series.fps);
  const int so = std::min(cfg.savgol_order, sw - 1);
  return savgol_filter(median_filter(series, mw), sw, so);
}

namespace {

void repair_group(std::vector<Frame>& frames,
                  std::vector<Keypoint2D> Frame::*group, std::size_t slots,
                  double fps, double threshold) {
  if ((frames.front().*group).empty()) return;
  TimeSeries1D xs, ys, conf;
  xs.fps = ys.fps = conf.fps = fps;
  const std::size_t n = frames.size();
  xs.samples.resize(n);
  ys.samples.resize(n);
  conf.samples.resize(n);
  for (std::size_t k = 0; k < slots; ++k) {
    bool any_low = false, any_good = false;
    for (std::size_t i = 0; i < n; ++i) {
      const Keypoint2D& p = (frames[i].*group)[k];
      xs.samples[i] = p.x;
      ys.samples[i] = p.y;
      conf.samples[i] = p.confidence;
      (p.confidence >= threshold ? any_good : any_low) = true;
    }
    if (!any_low || !any_good) continue;
    const TimeSeries1D rx = repair_low_confidence(xs, conf, threshold);
    const TimeSeries1D ry = repair_low_confidence(ys, conf, threshold);
    for (std::size_t i = 0; i < n; ++i) {
      Keypoint2D& p = (frames[i].*group)[k];
      p.x = rx.samples[i];
      p.y = ry.samples[i];
    }
  }
}

}  // namespace

Preprocessed preprocess(const PoseRecording& rec, const PreprocessConfig& cfg) {
  cfg.validate();
  Preprocessed out;
  out.rec = cfg.truncate_range ? truncate(rec, *cfg.truncate_range) : rec;

  repair_group(out.rec.frames, &Frame::body2d, skel::kBody2dSlots, rec.fps,
               cfg.confidence_threshold);
  repair_group(out.rec.frames, &Frame::hand2d_left, skel::kHandSlots, rec.fps,
               cfg.confidence_threshold);
  repair_group(out.rec.frames, &Frame::hand2d_right, skel::kHandSlots,
               rec.fps, cfg.confidence_threshold);

  if (cfg.normalize) {
    out.reference = reference_length(out.rec);
    out.rec = normalize(out.rec, out.reference);
  }
  return out;
}

}  // namespace kinexam
