#include "core/features_gait.hpp"

#include <algorithm>
#include <cmath>

namespace kinexam {

const char* to_string(SegmentKind k) {
  switch (k) {
    case SegmentKind::SU: return "SU";
    case SegmentKind::W: return "W";
    case SegmentKind::TU: return "TU";
  }
  return "?";
}

namespace {

TimeSeries1D smoothed_body2d(const PoseRecording& rec, int joint, Side side,
                             Axis axis, const ExtractConfig& cfg) {
  return smooth(keypoint_series(rec, SkeletonGroup::body2d, joint, side, axis),
                cfg.preprocess);
}

TimeSeries1D smoothed_body3d(const PoseRecording& rec, int joint, Side side,
                             Axis axis, const ExtractConfig& cfg) {
  return smooth(keypoint_series(rec, SkeletonGroup::body3d, joint, side, axis),
                cfg.preprocess);
}

// Feet distance from smoothed per-axis foot series.
TimeSeries1D smoothed_feet_distance(const PoseRecording& rec,
                                    const ExtractConfig& cfg) {
  const auto rx = smoothed_body3d(rec, skel::b3::FOOT, Side::right, Axis::x, cfg);
  const auto ry = smoothed_body3d(rec, skel::b3::FOOT, Side::right, Axis::y, cfg);
  const auto rz = smoothed_body3d(rec, skel::b3::FOOT, Side::right, Axis::z, cfg);
  const auto lx = smoothed_body3d(rec, skel::b3::FOOT, Side::left, Axis::x, cfg);
  const auto ly = smoothed_body3d(rec, skel::b3::FOOT, Side::left, Axis::y, cfg);
  const auto lz = smoothed_body3d(rec, skel::b3::FOOT, Side::left, Axis::z, cfg);
  TimeSeries1D out;
  out.fps = rec.fps;
  out.samples.resize(rx.size());
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx.samples[i] - lx.samples[i];
    const double dy = ry.samples[i] - ly.samples[i];
    const double dz = rz.samples[i] - lz.samples[i];
    out.samples[i] = std::sqrt(dx * dx + dy * dy + dz * dz);
  }
  return out;
}

struct WalkCore {
  std::size_t start;
  std::size_t end;  // exclusive
  int direction;    // +1 / -1
};

std::vector<WalkCore> find_walk_cores(const TimeSeries1D& vx,
                                      const ExtractConfig& cfg) {
  const std::size_t n = vx.size();
  const double thr = cfg.gait.turn_threshold;
  const std::size_t min_frames = std::max<std::size_t>(
      2, static_cast<std::size_t>(
             std::lround(cfg.gait.min_walk_seconds * vx.fps)));

  std::vector<WalkCore> cores;
  std::size_t i = 0;
  while (i < n) {
    const double v = vx.samples[i];
    const int dir = v > thr ? 1 : v < -thr ? -1 : 0;
    if (dir == 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n) {
      const double w = vx.samples[j];
      const int d = w > thr ? 1 : w < -thr ? -1 : 0;
      if (d != dir) break;
      ++j;
    }
    if (j - i >= min_frames) cores.push_back({i, j, dir});
    i = j;
  }
  // Same-direction cores split by a brief slow patch are one walk.
  std::vector<WalkCore> merged;
  for (const WalkCore& c : cores) {
    if (!merged.empty() && merged.back().direction == c.direction) {
      merged.back().end = c.end;
    } else {
      merged.push_back(c);
    }
  }
  return merged;
}

}  // namespace

std::vector<SegmentLabel> segment_saw(const PoseRecording& rec,
                                      const ExtractConfig& cfg) {
  cfg.validate();
  const auto px = smoothed_body2d(rec, skel::b2::PELVIS, Side::center, Axis::x, cfg);
  const auto py = smoothed_body2d(rec, skel::b2::PELVIS, Side::center, Axis::y, cfg);
  const TimeSeries1D vx = derivative(px, 1);
  const TimeSeries1D vy = derivative(py, 1);

  const std::vector<WalkCore> cores = find_walk_cores(vx, cfg);
  if (cores.empty()) throw SegmentationError("no walking detected");

  std::vector<SegmentLabel> segments;

  // Stand-up: initial vertical-velocity burst ending once the pelvis holds
  // still (vertically) for hold_seconds.
  const std::size_t first_walk = cores.front().start;
  const double sthr = cfg.gait.stand_threshold;
  const std::size_t hold = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(cfg.gait.hold_seconds * rec.fps)));
  std::size_t su_start = first_walk;
  bool has_su = false;
  for (std::size_t i = 0; i < first_walk; ++i) {
    if (std::abs(vy.samples[i]) > sthr) {
      su_start = i;
      has_su = true;
      break;
    }
  }
  std::size_t su_end = first_walk;
  if (has_su) {
    for (std::size_t e = su_start + 1; e < first_walk; ++e) {
      bool still = true;
      for (std::size_t j = e; j < std::min(e + hold, vy.size()); ++j) {
        if (std::abs(vy.samples[j]) > sthr) {
          still = false;
          break;
        }
      }
      if (still) {
        su_end = e;
        break;
      }
    }
    segments.push_back(
        {SegmentKind::SU, su_start, su_end, WalkDirection::none});
  }

  for (std::size_t k = 0; k < cores.size(); ++k) {
    const WalkCore& c = cores[k];
    // The first walk absorbs any idle frames after the stand-up settles.
    const std::size_t w_start = k == 0 ? (has_su ? su_end : c.start) : c.start;
    segments.push_back({SegmentKind::W, w_start, c.end,
                        c.direction > 0 ? WalkDirection::pos_x
                                        : WalkDirection::neg_x});
    if (k + 1 < cores.size() && c.end < cores[k + 1].start) {
      segments.push_back({SegmentKind::TU, c.end, cores[k + 1].start,
                          WalkDirection::none});
    }
  }
  return segments;
}

double time_to_stand(const PoseRecording& rec, const ExtractConfig& cfg) {
  for (const SegmentLabel& s : segment_saw(rec, cfg)) {
    if (s.kind == SegmentKind::SU) return s.duration_seconds(rec.fps);
  }
  throw NoStandUpError("recording has no stand-up segment");
}

TimeSeries1D feet_distance(const PoseRecording& rec) {
  TimeSeries1D out;
  out.fps = rec.fps;
  out.samples.reserve(rec.frames.size());
  const int slot_r = skel::body3d_slot(skel::b3::FOOT, Side::right);
  const int slot_l = skel::body3d_slot(skel::b3::FOOT, Side::left);
  for (const Frame& f : rec.frames) {
    if (f.body3d.empty()) throw SchemaError("body3d absent");
    const Keypoint3D& r = f.body3d[static_cast<std::size_t>(slot_r)];
    const Keypoint3D& l = f.body3d[static_cast<std::size_t>(slot_l)];
    const double dx = r.x - l.x, dy = r.y - l.y, dz = r.z - l.z;
    out.samples.push_back(std::sqrt(dx * dx + dy * dy + dz * dz));
  }
  return out;
}

TimeSeries1D knee_angle(const PoseRecording& rec, Side side) {
  if (side == Side::center) throw ValueError("knee angle needs a leg side");
  const int knee = skel::body3d_slot(skel::b3::KNEE, side);
  const int hip = skel::body3d_slot(skel::b3::HIP, side);
  const int foot = skel::body3d_slot(skel::b3::FOOT, side);

  TimeSeries1D out;
  out.fps = rec.fps;
  out.samples.reserve(rec.frames.size());
  for (std::size_t i = 0; i < rec.frames.size(); ++i) {
    const auto& b3 = rec.frames[i].body3d;
    if (b3.empty()) throw SchemaError("body3d absent");
    const Keypoint3D& k = b3[static_cast<std::size_t>(knee)];
    const Keypoint3D& h = b3[static_cast<std::size_t>(hip)];
    const Keypoint3D& f = b3[static_cast<std::size_t>(foot)];
    const double ux = k.x - h.x, uy = k.y - h.y, uz = k.z - h.z;
    const double vx = k.x - f.x, vy = k.y - f.y, vz = k.z - f.z;
    const double nu = std::sqrt(ux * ux + uy * uy + uz * uz);
    const double nv = std::sqrt(vx * vx + vy * vy + vz * vz);
    if (!(nu > 0.0) || !(nv > 0.0))
      throw DegenerateError("zero-length limb vector at frame " +
                            std::to_string(i));
    const double dot = ux * vx + uy * vy + uz * vz;
    const double cx = uy * vz - uz * vy;
    const double cy = uz * vx - ux * vz;
    const double cz = ux * vy - uy * vx;
    const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
    out.samples.push_back(std::atan2(cross, dot));
  }
  return out;
}

namespace {

// Inclusive-bound argmin; ties resolve toward the peak the step belongs to
// (prefer_late for the opening boundary, prefer early for the closing one),
// so feet-together plateaus do not stretch boundary steps.
std::size_t argmin_range(const std::vector<double>& v, std::size_t lo,
                         std::size_t hi, bool prefer_late) {
  std::size_t best = lo;
  for (std::size_t i = lo + 1; i <= hi; ++i) {
    if (v[i] < v[best] || (prefer_late && v[i] == v[best])) best = i;
  }
  return best;
}

std::vector<const SegmentLabel*> walk_segments(
    const std::vector<SegmentLabel>& segments) {
  std::vector<const SegmentLabel*> out;
  for (const SegmentLabel& s : segments)
    if (s.kind == SegmentKind::W) out.push_back(&s);
  return out;
}

std::vector<GaitStep> build_steps(const TimeSeries1D& dsaw,
                                  const SegmentLabel& w,
                                  const ExtractConfig& cfg) {
  CycleSet cycles;
  try {
    cycles = find_extrema(dsaw, cfg.signal.prominence_frac);
  } catch (const NoCyclesError&) {
    return {};
  }
  std::vector<std::size_t> maxima;
  for (std::size_t m : cycles.maxima_idx) {
    if (m > w.start && m + 1 < w.end) maxima.push_back(m);
  }
  std::vector<GaitStep> steps;
  for (std::size_t k = 0; k < maxima.size(); ++k) {
    const std::size_t lo = k == 0 ? w.start : maxima[k - 1];
    const std::size_t hi = k + 1 < maxima.size() ? maxima[k + 1] : w.end - 1;
    GaitStep step;
    step.peak_idx = maxima[k];
    step.start_idx = argmin_range(dsaw.samples, lo, maxima[k] - 1, true);
    step.end_idx = argmin_range(dsaw.samples, maxima[k] + 1, hi, false);
    step.step_time =
        static_cast<double>(step.end_idx - step.start_idx) / dsaw.fps;
    step.step_length = dsaw.samples[step.peak_idx];
    step.step_width = 0.5 * (dsaw.samples[step.start_idx] +
                             dsaw.samples[step.end_idx]);
    steps.push_back(step);
  }
  return steps;
}

}  // namespace

StepAnalysis step_features(const PoseRecording& rec,
                           const std::vector<SegmentLabel>& segments,
                           const ExtractConfig& cfg) {
  const TimeSeries1D dsaw = smoothed_feet_distance(rec, cfg);
  StepAnalysis out;
  for (const SegmentLabel* w : walk_segments(segments)) {
    const std::vector<GaitStep> steps = build_steps(dsaw, *w, cfg);
    out.steps.insert(out.steps.end(), steps.begin(), steps.end());
  }
  if (out.steps.empty()) throw NoCyclesError("no steps in walking segments");

  std::vector<double> times, lengths, widths;
  for (const GaitStep& s : out.steps) {
    times.push_back(s.step_time);
    lengths.push_back(s.step_length);
    widths.push_back(s.step_width);
  }
  out.step_time = summarize(times);
  out.step_length = summarize(lengths);
  out.step_width = summarize(widths);
  return out;
}

CadenceSpeed cadence_and_speed(const PoseRecording& rec,
                               const std::vector<SegmentLabel>& segments,
                               const std::vector<GaitStep>& steps,
                               const ExtractConfig& cfg) {
  const auto px = smoothed_body2d(rec, skel::b2::PELVIS, Side::center, Axis::x, cfg);
  const auto py = smoothed_body2d(rec, skel::b2::PELVIS, Side::center, Axis::y, cfg);

  std::vector<double> cadences, speeds;
  for (const SegmentLabel* w : walk_segments(segments)) {
    const double duration = w->duration_seconds(rec.fps);
    std::size_t count = 0;
    for (const GaitStep& s : steps) {
      if (s.peak_idx >= w->start && s.peak_idx < w->end) ++count;
    }
    cadences.push_back(static_cast<double>(count) / duration);

    double path = 0.0;
    for (std::size_t i = w->start; i + 1 < w->end; ++i)
      path += std::hypot(px.samples[i + 1] - px.samples[i],
                         py.samples[i + 1] - py.samples[i]);
    speeds.push_back(path / duration);
  }
  if (cadences.empty()) throw SegmentationError("no walking segments");
  return {summarize(cadences), summarize(speeds)};
}

namespace {

// Median step time estimated from the walking segments, for the lag bound.
double estimate_step_time(const PoseRecording& rec,
                          const std::vector<SegmentLabel>& segments,
                          const ExtractConfig& cfg) {
  return step_features(rec, segments, cfg).step_time.median;
}

StatSummary aligned_cc_per_window(
    const TimeSeries1D& right, const TimeSeries1D& left,
    const std::vector<std::pair<std::size_t, std::size_t>>& windows,
    double max_lag_seconds, double fps) {
  std::vector<double> ccs;
  for (const auto& [a, b] : windows) {
    TimeSeries1D r, l;
    r.fps = l.fps = fps;
    r.samples.assign(right.samples.begin() + static_cast<long>(a),
                     right.samples.begin() + static_cast<long>(b));
    l.samples.assign(left.samples.begin() + static_cast<long>(a),
                     left.samples.begin() + static_cast<long>(b));
    const std::size_t max_lag = std::min<std::size_t>(
        r.size() / 2 > 0 ? r.size() / 2 - 1 : 0,
        static_cast<std::size_t>(std::lround(max_lag_seconds * fps)));
    ccs.push_back(align_by_lag(r, l, max_lag).cc);
  }
  if (ccs.empty()) throw SegmentationError("no walking segments");
  return summarize(ccs);
}

}  // namespace

StatSummary knee_angle_symmetry(const PoseRecording& rec,
                                const std::vector<SegmentLabel>& segments,
                                const ExtractConfig& cfg) {
  const TimeSeries1D right =
      smooth(knee_angle(rec, Side::right), cfg.preprocess);
  const TimeSeries1D left = smooth(knee_angle(rec, Side::left), cfg.preprocess);

  // R/L gait lag is half a stride; one full gait cycle bounds the search.
  const double cycle_seconds = 2.0 * estimate_step_time(rec, segments, cfg);

  std::vector<std::pair<std::size_t, std::size_t>> windows;
  for (const SegmentLabel* w : walk_segments(segments))
    windows.emplace_back(w->start, w->end);
  return aligned_cc_per_window(right, left, windows, cycle_seconds, rec.fps);
}

StatSummary step_symmetry(const PoseRecording& rec,
                          const std::vector<SegmentLabel>& segments,
                          const ExtractConfig& cfg) {
  const TimeSeries1D dsaw = smoothed_feet_distance(rec, cfg);
  const auto rx = smoothed_body3d(rec, skel::b3::FOOT, Side::right, Axis::x, cfg);
  const auto lx = smoothed_body3d(rec, skel::b3::FOOT, Side::left, Axis::x, cfg);

  // Strides span two consecutive steps, delimited by feet-together events.
  // The compared window gets half a step of margin per side so the lag
  // search can reach the half-stride R/L offset.
  std::vector<std::pair<std::size_t, std::size_t>> strides;
  std::vector<std::size_t> lags;
  for (const SegmentLabel* w : walk_segments(segments)) {
    const std::vector<GaitStep> steps = build_steps(dsaw, *w, cfg);
    std::vector<std::size_t> bounds;
    for (const GaitStep& s : steps) {
      if (bounds.empty() || s.start_idx > bounds.back())
        bounds.push_back(s.start_idx);
      if (s.end_idx > bounds.back()) bounds.push_back(s.end_idx);
    }
    for (std::size_t k = 0; k + 2 < bounds.size(); k += 2) {
      const std::size_t margin = (bounds[k + 2] - bounds[k]) / 4 + 2;
      const std::size_t lo =
          bounds[k] > w->start + margin ? bounds[k] - margin : w->start;
      const std::size_t hi = std::min(bounds[k + 2] + margin, w->end);
      strides.emplace_back(lo, hi);
      lags.push_back((bounds[k + 2] - bounds[k]) / 2 + margin / 2);
    }
  }
  if (strides.empty())
    throw NoCyclesError("no full stride in walking segments");

  std::vector<double> ccs;
  for (std::size_t s = 0; s < strides.size(); ++s) {
    const auto& [a, b] = strides[s];
    TimeSeries1D r, l;
    r.fps = l.fps = rec.fps;
    r.samples.assign(rx.samples.begin() + static_cast<long>(a),
                     rx.samples.begin() + static_cast<long>(b));
    l.samples.assign(lx.samples.begin() + static_cast<long>(a),
                     lx.samples.begin() + static_cast<long>(b));
    const std::size_t cap = r.size() / 2 > 0 ? r.size() / 2 - 1 : 0;
    const std::size_t max_lag = std::min(cap, lags[s]);
    try {
      ccs.push_back(align_by_lag(r, l, max_lag).cc);
    } catch (const DegenerateError&) {
      // constant foot position across the stride carries no symmetry signal
    }
  }
  if (ccs.empty()) throw DegenerateError("all strides were constant");
  return summarize(ccs);
}

FeatureVector saw_features(const PoseRecording& raw, const ExtractConfig& cfg,
                           const std::string& recording_id) {
  cfg.validate();
  const Preprocessed pre = preprocess(raw, cfg.preprocess);
  const PoseRecording& rec = pre.rec;
  FeatureVector fv(TestKind::SAW,
                   recording_id.empty()
                       ? raw.subject_id + ":" + raw.device + ":" +
                             to_string(raw.label)
                       : recording_id,
                   cfg.hash());

  const std::vector<SegmentLabel> segments = segment_saw(rec, cfg);

  auto set_stats = [&fv](const std::string& base, const StatSummary& s) {
    fv.set(base + ".mean", s.mean);
    fv.set(base + ".std", s.std);
    fv.set(base + ".median", s.median);
  };

  const StepAnalysis sa = step_features(rec, segments, cfg);
  set_stats("saw.step_time", sa.step_time);
  set_stats("saw.step_length", sa.step_length);
  set_stats("saw.step_width", sa.step_width);

  set_stats("saw.knee_sym", knee_angle_symmetry(rec, segments, cfg));
  set_stats("saw.step_sym", step_symmetry(rec, segments, cfg));

  const CadenceSpeed cs = cadence_and_speed(rec, segments, sa.steps, cfg);
  fv.set("saw.cadence.mean", cs.cadence.mean);
  fv.set("saw.cadence.std", cs.cadence.std);
  fv.set("saw.speed.mean", cs.speed.mean);
  fv.set("saw.speed.std", cs.speed.std);

  std::vector<double> turns;
  for (const SegmentLabel& s : segments) {
    if (s.kind == SegmentKind::TU)
      turns.push_back(s.duration_seconds(rec.fps));
  }
  if (!turns.empty()) set_stats("saw.turn_time", summarize(turns));

  for (const SegmentLabel& s : segments) {
    if (s.kind == SegmentKind::SU) {
      fv.set("saw.time_to_stand", s.duration_seconds(rec.fps));
      break;
    }
  }

  fv.check();
  return fv;
}

}  // namespace kinexam
