#include "core/features_upper.hpp"

#include <algorithm>
#include <cmath>

#include "core/features_gait.hpp"
#include "core/linalg.hpp"

namespace kinexam {

namespace {

std::string side_tag(Side s) { return s == Side::right ? "right" : "left"; }

std::string default_id(const PoseRecording& rec) {
  return rec.subject_id + ":" + rec.device + ":" + to_string(rec.label);
}

std::vector<double> abs_samples(const TimeSeries1D& ts) {
  std::vector<double> out(ts.samples.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::abs(ts.samples[i]);
  return out;
}

// Alternating extrema sequence (index-sorted) of a cycle set.
std::vector<std::size_t> merged_extrema(const CycleSet& cs) {
  std::vector<std::size_t> idx;
  idx.reserve(cs.minima_idx.size() + cs.maxima_idx.size());
  idx.insert(idx.end(), cs.minima_idx.begin(), cs.minima_idx.end());
  idx.insert(idx.end(), cs.maxima_idx.begin(), cs.maxima_idx.end());
  std::sort(idx.begin(), idx.end());
  return idx;
}

// Per-cycle maxima of |values| over consecutive-maxima windows.
std::vector<double> per_cycle_max(const std::vector<double>& abs_values,
                                  const CycleSet& cs) {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < cs.maxima_idx.size(); ++k) {
    double m = 0.0;
    for (std::size_t i = cs.maxima_idx[k]; i <= cs.maxima_idx[k + 1]; ++i)
      m = std::max(m, abs_values[i]);
    out.push_back(m);
  }
  return out;
}

void set_stats(FeatureVector& fv, const std::string& base,
               const StatSummary& s, bool with_median = true) {
  fv.set(base + ".mean", s.mean);
  fv.set(base + ".std", s.std);
  if (with_median) fv.set(base + ".median", s.median);
}

// Eq.-style relative separation of a left/right joint pair, per frame:
// |p_r - p_l| / |p_r|.
std::vector<double> relative_separation(const PoseRecording& rec, int joint) {
  const int slot_r = skel::body2d_slot(joint, Side::right);
  const int slot_l = skel::body2d_slot(joint, Side::left);
  std::vector<double> out;
  out.reserve(rec.frames.size());
  for (std::size_t i = 0; i < rec.frames.size(); ++i) {
    const auto& pr = rec.frames[i].body2d[static_cast<std::size_t>(slot_r)];
    const auto& pl = rec.frames[i].body2d[static_cast<std::size_t>(slot_l)];
    const double denom = std::hypot(pr.x, pr.y);
    if (!(denom > 0.0))
      throw DegenerateError("zero-norm right joint at frame " +
                            std::to_string(i));
    out.push_back(std::hypot(pr.x - pl.x, pr.y - pl.y) / denom);
  }
  return out;
}

}  // namespace

TimeSeries1D ft_distance(const PoseRecording& rec, Side side) {
  if (side == Side::center) throw ValueError("ft_distance needs a hand side");
  TimeSeries1D out;
  out.fps = rec.fps;
  out.samples.reserve(rec.frames.size());
  for (const Frame& f : rec.frames) {
    const auto& hand = side == Side::right ? f.hand2d_right : f.hand2d_left;
    if (hand.empty()) throw SchemaError("hand keypoints absent");
    const auto& thumb = hand[skel::h2::THUMB_TIP];
    const auto& index = hand[skel::h2::INDEX_TIP];
    out.samples.push_back(std::hypot(thumb.x - index.x, thumb.y - index.y));
  }
  return out;
}

FeatureVector ft_features(const PoseRecording& raw, const ExtractConfig& cfg,
                          const std::string& recording_id) {
  cfg.validate();
  const Preprocessed pre = preprocess(raw, cfg.preprocess);
  const PoseRecording& rec = pre.rec;
  FeatureVector fv(TestKind::FT, recording_id.empty() ? default_id(raw)
                                                      : recording_id,
                   cfg.hash());
  const double duration = rec.duration_seconds();

  for (Side side : {Side::right, Side::left}) {
    const std::string tag = side_tag(side);
    const TimeSeries1D d = smooth(ft_distance(rec, side), cfg.preprocess);
    const CycleSet cycles = find_extrema(d, cfg.signal.prominence_frac);

    set_stats(fv, "ft.amplitude." + tag, summarize(cycles.amplitudes));
    set_stats(fv, "ft.period." + tag, summarize(cycles.periods));
    std::vector<double> freqs;
    for (double p : cycles.periods) freqs.push_back(1.0 / p);
    set_stats(fv, "ft.freq." + tag, summarize(freqs));

    const std::vector<double> speed = abs_samples(derivative(d, 1));
    const std::vector<double> accel = abs_samples(derivative(d, 2));
    fv.set("ft.speed." + tag + ".mean", mean_of(speed));
    fv.set("ft.speed." + tag + ".max", max_of(speed));
    fv.set("ft.accel." + tag + ".mean", mean_of(accel));
    fv.set("ft.accel." + tag + ".std", std_of(accel));
    fv.set("ft.accel." + tag + ".median", median_of(accel));
    fv.set("ft.accel." + tag + ".max", max_of(accel));

    fv.set("ft.maxspeed." + tag + ".mean",
           mean_of(per_cycle_max(speed, cycles)));
    set_stats(fv, "ft.maxaccel." + tag, summarize(per_cycle_max(accel, cycles)));

    fv.set("ft.taprate." + tag,
           static_cast<double>(cycles.maxima_idx.size()) / duration);
  }

  for (const char* base : {"ft.amplitude", "ft.period", "ft.freq",
                           "ft.maxspeed", "ft.maxaccel"}) {
    fv.set(std::string(base) + ".asym",
           asymmetry(fv.at(std::string(base) + ".right.mean"),
                     fv.at(std::string(base) + ".left.mean")));
  }

  set_stats(fv, "ft.wrist_stability",
            summarize(relative_separation(rec, skel::b2::WRIST)));
  set_stats(fv, "ft.elbow_stability",
            summarize(relative_separation(rec, skel::b2::ELBOW)));
  fv.check();
  return fv;
}

namespace {

TimeSeries1D index_mid_series(const PoseRecording& rec, Side side, Axis axis) {
  return keypoint_series(rec, SkeletonGroup::hand2d, skel::h2::INDEX_MID,
                         side, axis);
}

struct QuadraticFit {
  double a = 0.0, b = 0.0, c = 0.0;  // y = a u^2 + b u + c, u = x - x_center
  double x_center = 0.0;

  double slope(double x) const { return 2.0 * a * (x - x_center) + b; }
};

QuadraticFit fit_quadratic(const std::vector<double>& xs,
                           const std::vector<double>& ys) {
  QuadraticFit fit;
  fit.x_center = mean_of(xs);
  double s1 = 0, s2 = 0, s3 = 0, s4 = 0, b0 = 0, b1 = 0, b2 = 0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double u = xs[i] - fit.x_center;
    const double u2 = u * u;
    s1 += u;
    s2 += u2;
    s3 += u2 * u;
    s4 += u2 * u2;
    b0 += ys[i];
    b1 += u * ys[i];
    b2 += u2 * ys[i];
  }
  const std::vector<double> sol = solve_dense(
      {n, s1, s2, s1, s2, s3, s2, s3, s4}, {b0, b1, b2});
  fit.c = sol[0];
  fit.b = sol[1];
  fit.a = sol[2];
  return fit;
}

// Arc length of the fitted curve between two abscissae (composite Simpson).
double quadratic_arc(const QuadraticFit& fit, double x0, double x1) {
  constexpr int kSteps = 8;  // even
  const double h = (x1 - x0) / kSteps;
  if (h == 0.0) return 0.0;
  auto speed = [&](double x) {
    const double s = fit.slope(x);
    return std::sqrt(1.0 + s * s);
  };
  double sum = speed(x0) + speed(x1);
  for (int i = 1; i < kSteps; ++i)
    sum += speed(x0 + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
  return std::abs(sum * h / 3.0);
}

// Cycle windows = consecutive maxima of the vertical index-mid coordinate.
std::vector<std::pair<std::size_t, std::size_t>> ftf_cycle_windows(
    const TimeSeries1D& y, const ExtractConfig& cfg) {
  const CycleSet cycles = find_extrema(y, cfg.signal.prominence_frac);
  std::vector<std::pair<std::size_t, std::size_t>> windows;
  for (std::size_t k = 0; k + 1 < cycles.maxima_idx.size(); ++k)
    windows.emplace_back(cycles.maxima_idx[k], cycles.maxima_idx[k + 1]);
  return windows;
}

struct FtfSideSeries {
  TimeSeries1D x;
  TimeSeries1D y;
};

FtfSideSeries ftf_side_series(const PoseRecording& rec, Side side,
                              const ExtractConfig& cfg) {
  return {smooth(index_mid_series(rec, side, Axis::x), cfg.preprocess),
          smooth(index_mid_series(rec, side, Axis::y), cfg.preprocess)};
}

constexpr double kMinFitRange = 1e-6;  // of the reference length

StatSummary path_smoothness_of(const FtfSideSeries& s,
                               const ExtractConfig& cfg,
                               std::size_t* skipped = nullptr) {
  const auto windows = ftf_cycle_windows(s.y, cfg);
  std::vector<double> ps;
  std::size_t skips = 0;
  for (const auto& [a, b] : windows) {
    std::vector<double> xs(s.x.samples.begin() + static_cast<long>(a),
                           s.x.samples.begin() + static_cast<long>(b) + 1);
    std::vector<double> ys(s.y.samples.begin() + static_cast<long>(a),
                           s.y.samples.begin() + static_cast<long>(b) + 1);
    if (max_of(xs) - min_of(xs) < kMinFitRange) {
      ++skips;
      continue;
    }
    const QuadraticFit fit = fit_quadratic(xs, ys);
    double polyline = 0.0, arc = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      polyline += std::hypot(xs[i + 1] - xs[i], ys[i + 1] - ys[i]);
      arc += quadratic_arc(fit, xs[i], xs[i + 1]);
    }
    if (arc > 0.0) ps.push_back(polyline / arc);
  }
  if (skipped) *skipped = skips;
  if (ps.empty())
    throw FitError("no cycle with a usable x-range for the smoothness fit");
  return summarize(ps);
}

StatSummary velocity_angle_symmetry_of(const FtfSideSeries& s,
                                       const ExtractConfig& cfg) {
  const auto windows = ftf_cycle_windows(s.y, cfg);
  if (windows.size() < 2)
    throw NoCyclesError("velocity-angle symmetry needs >= 2 cycles");
  const VelocityAngle va = velocity_angle(s.x, s.y);

  std::vector<std::vector<double>> cycles;
  for (const auto& [a, b] : windows) {
    TimeSeries1D slice;
    slice.fps = s.x.fps;
    slice.samples.assign(va.angle.samples.begin() + static_cast<long>(a),
                         va.angle.samples.begin() + static_cast<long>(b) + 1);
    cycles.push_back(
        resample_linear(slice,
                        static_cast<std::size_t>(cfg.signal.resample_points))
            .samples);
  }
  std::vector<double> ccs;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      try {
        ccs.push_back(pearson_cc(cycles[i], cycles[j]));
      } catch (const DegenerateError&) {
        // constant angle slice (straight-line motion); pair uninformative
      }
    }
  }
  if (ccs.empty())
    throw DegenerateError("all velocity-angle cycle pairs were constant");
  return summarize(ccs);
}

}  // namespace

FtfSymmetry ftf_symmetry(const PoseRecording& rec) {
  const TimeSeries1D xr = index_mid_series(rec, Side::right, Axis::x);
  const TimeSeries1D xl = index_mid_series(rec, Side::left, Axis::x);
  const TimeSeries1D yr = index_mid_series(rec, Side::right, Axis::y);
  const TimeSeries1D yl = index_mid_series(rec, Side::left, Axis::y);
  std::vector<double> neg_xr(xr.samples.size());
  for (std::size_t i = 0; i < neg_xr.size(); ++i) neg_xr[i] = -xr.samples[i];
  return {pearson_cc(xl.samples, neg_xr), pearson_cc(yl.samples, yr.samples)};
}

StatSummary ftf_path_smoothness(const PoseRecording& rec, Side side,
                                const ExtractConfig& cfg) {
  return path_smoothness_of(ftf_side_series(rec, side, cfg), cfg);
}

StatSummary ftf_velocity_angle_symmetry(const PoseRecording& rec, Side side,
                                        const ExtractConfig& cfg) {
  return velocity_angle_symmetry_of(ftf_side_series(rec, side, cfg), cfg);
}

FeatureVector ftf_features(const PoseRecording& raw, const ExtractConfig& cfg,
                           const std::string& recording_id) {
  cfg.validate();
  const Preprocessed pre = preprocess(raw, cfg.preprocess);
  const PoseRecording& rec = pre.rec;
  FeatureVector fv(TestKind::FTF, recording_id.empty() ? default_id(raw)
                                                       : recording_id,
                   cfg.hash());

  const FtfSideSeries right = ftf_side_series(rec, Side::right, cfg);
  const FtfSideSeries left = ftf_side_series(rec, Side::left, cfg);

  std::vector<double> neg_xr(right.x.samples.size());
  for (std::size_t i = 0; i < neg_xr.size(); ++i)
    neg_xr[i] = -right.x.samples[i];
  fv.set("ftf.sx", pearson_cc(left.x.samples, neg_xr));
  fv.set("ftf.sy", pearson_cc(left.y.samples, right.y.samples));

  for (Side side : {Side::right, Side::left}) {
    const std::string tag = side_tag(side);
    const FtfSideSeries& s = side == Side::right ? right : left;

    const CycleSet cycles = find_extrema(s.y, cfg.signal.prominence_frac);
    fv.set("ftf.period." + tag + ".mean", mean_of(cycles.periods));
    fv.set("ftf.period." + tag + ".std", std_of(cycles.periods));

    // Average speed per half cycle: traversed distance between adjacent
    // extrema over the elapsed time.
    const std::vector<std::size_t> ext = merged_extrema(cycles);
    std::vector<double> speeds;
    for (std::size_t k = 0; k + 1 < ext.size(); ++k) {
      double dist = 0.0;
      for (std::size_t i = ext[k]; i + 1 <= ext[k + 1]; ++i)
        dist += std::hypot(s.x.samples[i + 1] - s.x.samples[i],
                           s.y.samples[i + 1] - s.y.samples[i]);
      const double dt = static_cast<double>(ext[k + 1] - ext[k]) / s.x.fps;
      speeds.push_back(dist / dt);
    }
    if (speeds.empty()) throw NoCyclesError("no half cycles for speed");
    fv.set("ftf.speed." + tag + ".mean", mean_of(speeds));
    fv.set("ftf.speed." + tag + ".std", std_of(speeds));

    const StatSummary ps = path_smoothness_of(s, cfg);
    fv.set("ftf.ps." + tag + ".mean", ps.mean);
    fv.set("ftf.ps." + tag + ".std", ps.std);

    const StatSummary vas = velocity_angle_symmetry_of(s, cfg);
    fv.set("ftf.velangle_sym." + tag + ".mean", vas.mean);
    fv.set("ftf.velangle_sym." + tag + ".std", vas.std);
  }
  fv.check();
  return fv;
}

FeatureVector fr_features(const PoseRecording& raw, const ExtractConfig& cfg,
                          const std::string& recording_id) {
  cfg.validate();
  const Preprocessed pre = preprocess(raw, cfg.preprocess);
  const PoseRecording& rec = pre.rec;
  FeatureVector fv(TestKind::FR, recording_id.empty() ? default_id(raw)
                                                      : recording_id,
                   cfg.hash());
  const double duration = rec.duration_seconds();

  for (Side side : {Side::right, Side::left}) {
    const std::string tag = side_tag(side);
    const TimeSeries1D wy = smooth(
        keypoint_series(rec, SkeletonGroup::body2d, skel::b2::WRIST, side,
                        Axis::y),
        cfg.preprocess);
    const CycleSet cycles = find_extrema(wy, cfg.signal.prominence_frac);

    set_stats(fv, "fr.period." + tag, summarize(cycles.periods));

    // Per-cycle amplitude: min/max of the vertical coordinate within each
    // maxima-to-maxima window.
    std::vector<double> amplitudes, rollspeeds;
    for (std::size_t k = 0; k + 1 < cycles.maxima_idx.size(); ++k) {
      double lo = wy.samples[cycles.maxima_idx[k]];
      double hi = lo;
      for (std::size_t i = cycles.maxima_idx[k]; i <= cycles.maxima_idx[k + 1];
           ++i) {
        lo = std::min(lo, wy.samples[i]);
        hi = std::max(hi, wy.samples[i]);
      }
      amplitudes.push_back(hi - lo);
      rollspeeds.push_back((hi - lo) / (cycles.periods[k] / 2.0));
    }
    set_stats(fv, "fr.amplitude." + tag, summarize(amplitudes));
    set_stats(fv, "fr.rollspeed." + tag, summarize(rollspeeds));

    const std::vector<double> speed = abs_samples(derivative(wy, 1));
    const std::vector<double> accel = abs_samples(derivative(wy, 2));
    set_stats(fv, "fr.maxspeed." + tag, summarize(per_cycle_max(speed, cycles)));
    set_stats(fv, "fr.maxaccel." + tag, summarize(per_cycle_max(accel, cycles)));

    fv.set("fr.rollrate." + tag,
           static_cast<double>(cycles.maxima_idx.size()) / duration);
  }

  for (const char* base :
       {"fr.amplitude", "fr.period", "fr.maxspeed", "fr.maxaccel"}) {
    fv.set(std::string(base) + ".asym",
           asymmetry(fv.at(std::string(base) + ".right.mean"),
                     fv.at(std::string(base) + ".left.mean")));
  }

  set_stats(fv, "fr.elbow_stability",
            summarize(relative_separation(rec, skel::b2::ELBOW)));
  fv.check();
  return fv;
}

FeatureVector extract_features(const PoseRecording& rec,
                               const ExtractConfig& cfg,
                               const std::string& recording_id) {
  switch (rec.test_kind) {
    case TestKind::FT: return ft_features(rec, cfg, recording_id);
    case TestKind::FTF: return ftf_features(rec, cfg, recording_id);
    case TestKind::FR: return fr_features(rec, cfg, recording_id);
    case TestKind::SAW: return saw_features(rec, cfg, recording_id);
  }
  throw ValueError("bad test kind");
}

}  // namespace kinexam
