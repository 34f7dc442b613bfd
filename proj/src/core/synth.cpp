#include "core/synth.hpp"

#include <cmath>

#include <json.hpp>

#include "core/rng.hpp"

namespace kinexam {

using nlohmann::json;

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

// Band-limited (4-8 Hz) jitter: a fixed sum of seeded sinusoids with unit
// RMS, scaled by sigma at evaluation time.
struct Tremor {
  static constexpr int kComponents = 4;
  double freq[kComponents];
  double phase[kComponents];

  explicit Tremor(Rng& rng) {
    for (int j = 0; j < kComponents; ++j) {
      freq[j] = rng.uniform(4.0, 8.0);
      phase[j] = rng.uniform(0.0, kTau);
    }
  }

  double at(double t, double sigma) const {
    if (sigma == 0.0) return 0.0;
    double s = 0.0;
    for (int j = 0; j < kComponents; ++j)
      s += std::sin(kTau * freq[j] * t + phase[j]);
    // each sinusoid has variance 1/2; kComponents of them sum to var k/2
    return sigma * s / std::sqrt(kComponents / 2.0);
  }
};

struct SideParams {
  double freq, amp, phase, tremor;
};

SideParams side_of(const SynthParams& p, Side s) {
  return s == Side::right
             ? SideParams{p.freq_right, p.amp_right, p.phase_right,
                          p.tremor_right}
             : SideParams{p.freq_left, p.amp_left, p.phase_left,
                          p.tremor_left};
}

Keypoint2D kp(double x, double y) { return {x, y, 1.0}; }

// Static hand shape around a wrist point; only the joints the features read
// get meaningful placement, the rest just keep the layout total.
std::vector<Keypoint2D> hand_at(double cx, double cy) {
  std::vector<Keypoint2D> h(skel::kHandSlots);
  for (int k = 0; k < skel::kHandSlots; ++k) {
    const double spread = 0.02 * static_cast<double>(k % 7);
    h[static_cast<std::size_t>(k)] = kp(cx + spread, cy + 0.015 * (k / 7));
  }
  return h;
}

// Baseline 2D body; sided joints mirrored around x = cx. Forearm length
// (right wrist to elbow) is exactly 1 so normalization is the identity and
// generator parameters read back in their own units.
std::vector<Keypoint2D> body2d_at(double cx, double cy) {
  std::vector<Keypoint2D> b(skel::kBody2dSlots, kp(cx, cy));
  b[skel::b2::PELVIS] = kp(cx, cy);
  b[skel::b2::NECK] = kp(cx, cy + 1.0);
  b[skel::b2::HEAD] = kp(cx, cy + 1.25);
  for (int joint = skel::b2::kSidedFirst; joint <= skel::b2::kSidedLast;
       ++joint) {
    const double dx = 0.25 + 0.03 * (joint - skel::b2::kSidedFirst);
    b[static_cast<std::size_t>(skel::body2d_slot(joint, Side::right))] =
        kp(cx + dx, cy + 0.8);
    b[static_cast<std::size_t>(skel::body2d_slot(joint, Side::left))] =
        kp(cx - dx, cy + 0.8);
  }
  // arms: elbow directly below wrist, |wrist - elbow| = 1
  b[static_cast<std::size_t>(skel::body2d_slot(skel::b2::WRIST, Side::right))] =
      kp(cx + 0.45, cy + 0.85);
  b[static_cast<std::size_t>(skel::body2d_slot(skel::b2::ELBOW, Side::right))] =
      kp(cx + 0.45, cy - 0.15);
  b[static_cast<std::size_t>(skel::body2d_slot(skel::b2::WRIST, Side::left))] =
      kp(cx - 0.45, cy + 0.85);
  b[static_cast<std::size_t>(skel::body2d_slot(skel::b2::ELBOW, Side::left))] =
      kp(cx - 0.45, cy - 0.15);
  return b;
}

void shift_left_arm(std::vector<Keypoint2D>& b2, double shift) {
  if (shift == 0.0) return;
  for (int joint : {skel::b2::WRIST, skel::b2::ELBOW}) {
    Keypoint2D& p = b2[static_cast<std::size_t>(
        skel::body2d_slot(joint, Side::left))];
    p.x += shift * 0.5;
    p.y += shift;
  }
}

void add_noise2d(std::vector<Keypoint2D>& pts, Rng& rng, double sigma) {
  if (sigma == 0.0) return;
  for (Keypoint2D& p : pts) {
    p.x += rng.normal(0.0, sigma);
    p.y += rng.normal(0.0, sigma);
  }
}

void apply_view_offset(Frame& f, double ox, double oy) {
  if (ox == 0.0 && oy == 0.0) return;
  for (auto* group : {&f.body2d, &f.hand2d_left, &f.hand2d_right}) {
    for (Keypoint2D& p : *group) {
      p.x += ox;
      p.y += oy;
    }
  }
}

PoseRecording shell(const SynthParams& p) {
  PoseRecording rec;
  rec.fps = p.fps;
  rec.test_kind = p.test_kind;
  rec.label = p.label;
  rec.subject_id = p.subject_id;
  rec.device = p.device;
  return rec;
}

}  // namespace

void SynthParams::validate() const {
  if (!(fps > 0.0)) throw ValueError("fps must be positive");
  if (!(duration > 0.0)) throw ValueError("duration must be positive");
  for (double v : {freq_right, freq_left})
    if (!(v > 0.0)) throw ValueError("frequencies must be positive");
  for (double v : {amp_right, amp_left, tremor_right, tremor_left,
                   noise_sigma})
    if (v < 0.0) throw ValueError("amplitudes and sigmas must be >= 0");
  if (!(step_length > stance_width))
    throw ValueError("step_length must exceed stance_width");
  if (!(step_time > 0.0) || !(tu_duration > 0.0) || su_duration < 0.0)
    throw ValueError("gait durations must be positive");
  if (steps_per_pass < 2) throw ValueError("steps_per_pass must be >= 2");
  if (n_passes < 1) throw ValueError("n_passes must be >= 1");
  if (!(knee_drive > 0.0) || knee_rom_right < 0.0 || knee_rom_left < 0.0)
    throw ValueError("knee swing parameters must be positive");
}

PoseRecording gen_ft(const SynthParams& p) {
  p.validate();
  PoseRecording rec = shell(p);
  Rng rng(p.seed);
  Rng noise = rng.fork(1);
  Tremor tremor_r(rng), tremor_l(rng);

  const int n = static_cast<int>(std::lround(p.duration * p.fps));
  const SideParams r = side_of(p, Side::right);
  const SideParams l = side_of(p, Side::left);
  // tap direction: fingers separate along a fixed diagonal
  const double ux = 1.0 / std::sqrt(2.0), uy = 1.0 / std::sqrt(2.0);

  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / p.fps;
    Frame f;
    f.body2d = body2d_at(0.0, 0.0);
    shift_left_arm(f.body2d, p.posture_shift);
    const double dr = r.amp * (1.0 - std::cos(kTau * r.freq * t + r.phase)) / 2.0 +
                      tremor_r.at(t, r.tremor);
    const double dl = l.amp * (1.0 - std::cos(kTau * l.freq * t + l.phase)) / 2.0 +
                      tremor_l.at(t, l.tremor);

    f.hand2d_right = hand_at(0.5, 1.0);
    f.hand2d_right[skel::h2::THUMB_TIP] = kp(0.5, 1.0);
    f.hand2d_right[skel::h2::INDEX_TIP] = kp(0.5 + dr * ux, 1.0 + dr * uy);
    f.hand2d_left = hand_at(-0.5, 1.0);
    f.hand2d_left[skel::h2::THUMB_TIP] = kp(-0.5, 1.0);
    f.hand2d_left[skel::h2::INDEX_TIP] = kp(-0.5 - dl * ux, 1.0 + dl * uy);

    add_noise2d(f.body2d, noise, p.noise_sigma);
    add_noise2d(f.hand2d_left, noise, p.noise_sigma);
    add_noise2d(f.hand2d_right, noise, p.noise_sigma);
    apply_view_offset(f, p.view_offset_x, p.view_offset_y);
    rec.frames.push_back(std::move(f));
  }
  validate_recording(rec);
  return rec;
}

PoseRecording gen_ftf(const SynthParams& p) {
  p.validate();
  PoseRecording rec = shell(p);
  Rng rng(p.seed);
  Rng noise = rng.fork(1);
  Tremor tremor_rx(rng), tremor_ry(rng), tremor_lx(rng), tremor_ly(rng);

  const int n = static_cast<int>(std::lround(p.duration * p.fps));
  const SideParams r = side_of(p, Side::right);
  const SideParams l = side_of(p, Side::left);
  const double y_chest = 0.9;

  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / p.fps;
    Frame f;
    f.body2d = body2d_at(0.0, 0.0);
    shift_left_arm(f.body2d, p.posture_shift);

    // Index-mid joints ride mirrored parabolas: raised at the outer reach,
    // meeting near the midline at chest height.
    auto arc = [&](const SideParams& s, double sign, const Tremor& tx,
                   const Tremor& ty, double& x, double& y) {
      const double u =
          (1.0 + std::cos(kTau * s.freq * t + s.phase)) / 2.0;  // 1 raised
      const double xr = p.arc_meet + p.arc_width * u;
      const double yr = y_chest + p.arc_rise * (xr - p.arc_meet) /
                                      p.arc_width * (xr - p.arc_meet) /
                                      p.arc_width;
      x = sign * (xr + tx.at(t, s.tremor));
      y = yr + ty.at(t, s.tremor);
    };
    double xr, yr, xl, yl;
    arc(r, +1.0, tremor_rx, tremor_ry, xr, yr);
    arc(l, -1.0, tremor_lx, tremor_ly, xl, yl);

    f.hand2d_right = hand_at(xr, yr);
    f.hand2d_right[skel::h2::INDEX_MID] = kp(xr, yr);
    f.hand2d_left = hand_at(xl, yl);
    f.hand2d_left[skel::h2::INDEX_MID] = kp(xl, yl);

    add_noise2d(f.body2d, noise, p.noise_sigma);
    add_noise2d(f.hand2d_left, noise, p.noise_sigma);
    add_noise2d(f.hand2d_right, noise, p.noise_sigma);
    apply_view_offset(f, p.view_offset_x, p.view_offset_y);
    rec.frames.push_back(std::move(f));
  }
  validate_recording(rec);
  return rec;
}

PoseRecording gen_fr(const SynthParams& p) {
  p.validate();
  PoseRecording rec = shell(p);
  Rng rng(p.seed);
  Rng noise = rng.fork(1);
  Tremor tremor_r(rng), tremor_l(rng);

  const int n = static_cast<int>(std::lround(p.duration * p.fps));
  const SideParams r = side_of(p, Side::right);
  const SideParams l = side_of(p, Side::left);

  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / p.fps;
    Frame f;
    f.body2d = body2d_at(0.0, 0.0);

    // Wrists roll around each other in antiphase; the elbow sits one forearm
    // length below the wrist rest height so the reference length medians to 1.
    const double yr = 0.85 + (r.amp / 2.0) * std::sin(kTau * r.freq * t + r.phase) +
                      tremor_r.at(t, r.tremor);
    const double yl = 0.85 + (l.amp / 2.0) *
                                 std::sin(kTau * l.freq * t + l.phase + 3.14159265358979323846) +
                      tremor_l.at(t, l.tremor);
    const int wr = skel::body2d_slot(skel::b2::WRIST, Side::right);
    const int wl = skel::body2d_slot(skel::b2::WRIST, Side::left);
    f.body2d[static_cast<std::size_t>(wr)] = kp(0.2, yr);
    f.body2d[static_cast<std::size_t>(wl)] = kp(-0.2, yl);
    f.body2d[static_cast<std::size_t>(
        skel::body2d_slot(skel::b2::ELBOW, Side::right))] = kp(0.2, -0.15);
    f.body2d[static_cast<std::size_t>(
        skel::body2d_slot(skel::b2::ELBOW, Side::left))] =
        kp(-0.2 + p.posture_shift * 0.5, -0.15 + p.posture_shift);

    f.hand2d_right = hand_at(0.2, yr + 0.1);
    f.hand2d_left = hand_at(-0.2, yl + 0.1);

    add_noise2d(f.body2d, noise, p.noise_sigma);
    add_noise2d(f.hand2d_left, noise, p.noise_sigma);
    add_noise2d(f.hand2d_right, noise, p.noise_sigma);
    apply_view_offset(f, p.view_offset_x, p.view_offset_y);
    rec.frames.push_back(std::move(f));
  }
  validate_recording(rec);
  return rec;
}

namespace {

struct GaitPhase {
  bool walking = false;
  bool standing_up = false;
  double stride_phase = 0.0;  // advances pi per step while walking
  double pelvis_x = 0.0;
  double pelvis_y = 0.0;
  int direction = 1;
};

// Piecewise timeline: [stand-up][settle][pass][turn][pass]...[tail].
GaitPhase gait_phase_at(const SynthParams& p, double t) {
  constexpr double kSettle = 0.05;
  const double pass_duration = p.steps_per_pass * p.step_time;
  const double v = p.step_length / p.step_time;
  const double y_sit = -p.su_speed * p.su_duration;

  GaitPhase g;
  g.pelvis_y = y_sit;
  double at = 0.0;
  if (p.su_duration > 0.0) {
    if (t < p.su_duration) {
      g.standing_up = true;
      g.pelvis_y = y_sit + p.su_speed * t;
      return g;
    }
    at = p.su_duration;
    g.pelvis_y = 0.0;
  } else {
    g.pelvis_y = 0.0;
  }
  if (t < at + kSettle) return g;
  at += kSettle;

  double x = 0.0;
  int dir = 1;
  for (int pass = 0; pass < p.n_passes; ++pass) {
    if (t < at + pass_duration) {
      g.walking = true;
      g.direction = dir;
      g.stride_phase = 3.14159265358979323846 * (t - at) / p.step_time;
      g.pelvis_x = x + dir * v * (t - at);
      return g;
    }
    at += pass_duration;
    x += dir * v * pass_duration;
    dir = -dir;
    if (pass + 1 < p.n_passes) {
      if (t < at + p.tu_duration) {
        g.pelvis_x = x;
        return g;
      }
      at += p.tu_duration;
    }
  }
  g.pelvis_x = x;
  return g;
}

}  // namespace

PoseRecording gen_saw(const SynthParams& p) {
  p.validate();
  PoseRecording rec = shell(p);
  Rng rng(p.seed);
  Rng noise = rng.fork(1);

  constexpr double kSettle = 0.05, kTail = 0.5;
  const double pass_duration = p.steps_per_pass * p.step_time;
  const double total = (p.su_duration > 0.0 ? p.su_duration : 0.0) + kSettle +
                       p.n_passes * pass_duration +
                       (p.n_passes - 1) * p.tu_duration + kTail;
  const int n = static_cast<int>(std::lround(total * p.fps));

  // Forward foot excursion keeping the peak feet distance at step_length.
  const double half_amp =
      std::sqrt(p.step_length * p.step_length -
                p.stance_width * p.stance_width) / 2.0;
  const double hip_y = -0.10, foot_y = -0.85;

  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / p.fps;
    const GaitPhase g = gait_phase_at(p, t);

    Frame f;
    f.body2d = body2d_at(g.pelvis_x, g.pelvis_y);
    f.body3d.assign(skel::kBody3dSlots, {0.0, 0.0, 0.0});
    f.body3d[skel::b3::PELVIS] = {0.0, 0.0, 0.0};
    f.body3d[skel::b3::SPINE] = {0.0, 0.45, 0.0};
    f.body3d[14] = {0.0, 0.7, 0.0};
    f.body3d[15] = {0.0, 0.9, 0.0};
    f.body3d[16] = {0.0, 1.05, 0.0};

    for (Side side : {Side::right, Side::left}) {
      const double zs = (side == Side::right ? 0.5 : -0.5) * p.stance_width;
      const double sign = side == Side::right ? 1.0 : -1.0;
      const double bump =
          side == Side::right ? p.knee_bump_right : p.knee_bump_left;
      const double scale =
          side == Side::right ? p.foot_scale_right : p.foot_scale_left;
      const double rom =
          side == Side::right ? p.knee_rom_right : p.knee_rom_left;

      // forward excursion: right leads on the positive half-stride
      double fx = 0.0;
      if (g.walking) {
        const double s = std::sin(g.stride_phase);
        const double lead = sign * s > 0.0 ? scale : 1.0;
        fx = g.direction * sign * half_amp * lead * s;
      }

      // knee angle: swing flexion clamped to the achievable range plus any
      // compensatory stance-phase bump; flexion is zero at step boundaries
      // so the waveform stays continuous across pass edges
      double theta = p.knee_max;
      if (g.walking) {
        const double s = std::sin(
            g.stride_phase + (side == Side::left ? 3.14159265358979323846 : 0.0));
        const double swing = s > 0.0 ? s * s : 0.0;
        const double stance = s < 0.0 ? s * s : 0.0;
        const double flex =
            std::min(swing, rom / p.knee_drive) + bump * stance;
        theta = p.knee_max - p.knee_drive * flex;
      } else if (g.standing_up) {
        theta = p.knee_max -
                p.knee_drive * (1.0 - t / std::max(p.su_duration, 1e-9));
      }

      const double hx = 0.0, hy = hip_y;
      const double fx2 = fx, fy2 = foot_y;
      const double mx = (hx + fx2) / 2.0, my = (hy + fy2) / 2.0;
      const double ux = fx2 - hx, uy = fy2 - hy;
      const double ulen = std::hypot(ux, uy);
      double nx = -uy / ulen, ny = ux / ulen;
      if (nx < 0.0) {
        nx = -nx;
        ny = -ny;
      }
      const double off = (ulen / 2.0) / std::tan(theta / 2.0);
      const double kx = mx + nx * off, ky = my + ny * off;

      f.body3d[static_cast<std::size_t>(
          skel::body3d_slot(skel::b3::HIP, side))] = {hx, hy, zs};
      f.body3d[static_cast<std::size_t>(
          skel::body3d_slot(skel::b3::KNEE, side))] = {kx, ky, zs};
      f.body3d[static_cast<std::size_t>(
          skel::body3d_slot(skel::b3::FOOT, side))] = {fx2, fy2, zs};
      // remaining sided joints (shoulder/elbow/wrist) static
      f.body3d[static_cast<std::size_t>(
          skel::body3d_slot(5, side))] = {0.0, 0.75, zs};
      f.body3d[static_cast<std::size_t>(
          skel::body3d_slot(6, side))] = {0.05, 0.5, zs};
      f.body3d[static_cast<std::size_t>(
          skel::body3d_slot(7, side))] = {0.1, 0.3, zs};
    }

    add_noise2d(f.body2d, noise, p.noise_sigma);
    if (p.noise_sigma > 0.0) {
      for (Keypoint3D& q : f.body3d) {
        q.x += noise.normal(0.0, p.noise_sigma);
        q.y += noise.normal(0.0, p.noise_sigma);
        q.z += noise.normal(0.0, p.noise_sigma);
      }
    }
    apply_view_offset(f, p.view_offset_x, p.view_offset_y);
    rec.frames.push_back(std::move(f));
  }
  validate_recording(rec);
  return rec;
}

PoseRecording generate(const SynthParams& p) {
  switch (p.test_kind) {
    case TestKind::FT: return gen_ft(p);
    case TestKind::FTF: return gen_ftf(p);
    case TestKind::FR: return gen_fr(p);
    case TestKind::SAW: return gen_saw(p);
  }
  throw ValueError("bad test kind");
}

namespace {

SynthParams base_params(TestKind kind, Rng& rng) {
  SynthParams p;
  p.test_kind = kind;
  switch (kind) {
    case TestKind::FT: {
      const double f = rng.uniform(1.7, 2.3);
      const double a = rng.uniform(0.4, 0.6);
      p.freq_right = f * rng.uniform(0.97, 1.03);
      p.freq_left = f * rng.uniform(0.97, 1.03);
      p.amp_right = a * rng.uniform(0.95, 1.05);
      p.amp_left = a * rng.uniform(0.95, 1.05);
      p.duration = 15.0;
      break;
    }
    case TestKind::FTF: {
      const double f = rng.uniform(0.8, 1.2);
      p.freq_right = p.freq_left = f;
      p.arc_width = rng.uniform(0.5, 0.7);
      p.arc_rise = rng.uniform(0.5, 0.7);
      p.tremor_right = p.tremor_left = 0.004;  // natural micro-instability
      p.duration = 15.0;
      break;
    }
    case TestKind::FR: {
      const double f = rng.uniform(1.3, 1.7);
      const double a = rng.uniform(0.35, 0.45);
      p.freq_right = f * rng.uniform(0.98, 1.02);
      p.freq_left = f * rng.uniform(0.98, 1.02);
      p.amp_right = a * rng.uniform(0.95, 1.05);
      p.amp_left = a * rng.uniform(0.95, 1.05);
      p.duration = 15.0;
      break;
    }
    case TestKind::SAW: {
      p.step_length = rng.uniform(0.55, 0.7);
      p.step_time = rng.uniform(0.5, 0.6);
      p.su_duration = rng.uniform(1.2, 1.8);
      p.tu_duration = rng.uniform(1.0, 1.4);
      p.steps_per_pass = 10;
      p.n_passes = 4;
      break;
    }
  }
  return p;
}

void apply_impairment(SynthParams& p, Rng& rng) {
  p.label = Label::abnormal;
  switch (p.test_kind) {
    case TestKind::FT:
      // rubber band on the left hand: much smaller, slower taps there,
      // mild overall slowing and a guarded arm posture
      p.freq_left *= rng.uniform(0.45, 0.6);
      p.amp_left *= rng.uniform(0.35, 0.55);
      p.freq_right *= rng.uniform(0.85, 0.95);
      p.amp_right *= rng.uniform(0.85, 0.95);
      p.posture_shift = rng.uniform(0.06, 0.12);
      break;
    case TestKind::FTF:
      // deliberate tremor, stronger on the left, with slowed cycles
      p.tremor_right = rng.uniform(0.04, 0.08);
      p.tremor_left = p.tremor_right * 1.5;
      p.freq_right *= rng.uniform(0.75, 0.9);
      p.freq_left = p.freq_right;
      p.posture_shift = rng.uniform(0.06, 0.12);
      break;
    case TestKind::FR:
      // weighted left wrist slows both hands and shrinks both orbits,
      // the left one more
      p.freq_right *= rng.uniform(0.55, 0.7);
      p.freq_left *= rng.uniform(0.55, 0.7);
      p.amp_right *= rng.uniform(0.85, 0.95);
      p.amp_left *= rng.uniform(0.65, 0.8);
      p.posture_shift = rng.uniform(0.06, 0.12);
      break;
    case TestKind::SAW:
      // right knee brace: clamped swing, compensatory stance bump,
      // shortened right steps, slower turns
      p.knee_rom_right = p.knee_drive * 0.5;
      p.knee_bump_right = rng.uniform(0.3, 0.4);
      p.foot_scale_right = rng.uniform(0.6, 0.75);
      p.step_time *= rng.uniform(1.1, 1.25);
      p.stance_width *= rng.uniform(1.15, 1.35);
      p.su_duration *= rng.uniform(1.3, 1.6);
      p.tu_duration *= rng.uniform(1.2, 1.5);
      break;
  }
}

}  // namespace

std::vector<PoseRecording> gen_cohort(TestKind kind, int n_subjects,
                                      std::uint64_t seed) {
  if (n_subjects < 1) throw ValueError("n_subjects must be >= 1");
  std::vector<PoseRecording> out;
  Rng master(seed);
  for (int s = 0; s < n_subjects; ++s) {
    Rng subject_rng = master.fork(static_cast<std::uint64_t>(s) + 1);
    char sid[16];
    std::snprintf(sid, sizeof sid, "S%02d", s);

    const SynthParams normal_base = base_params(kind, subject_rng);
    SynthParams abnormal_base = normal_base;
    apply_impairment(abnormal_base, subject_rng);

    for (const bool abnormal : {false, true}) {
      for (const char* device : {"phone", "tablet"}) {
        SynthParams p = abnormal ? abnormal_base : normal_base;
        p.subject_id = sid;
        p.device = device;
        p.label = abnormal ? Label::abnormal : Label::normal;
        p.noise_sigma = 0.002;
        p.seed = subject_rng.next_u64();
        // recordings happen at different times and camera placements
        p.phase_right += subject_rng.uniform(0.0, kTau);
        p.phase_left += subject_rng.uniform(0.0, kTau);
        if (std::string(device) == "tablet") {
          p.view_offset_x = subject_rng.uniform(0.01, 0.03);
          p.view_offset_y = subject_rng.uniform(-0.02, 0.02);
        }
        out.push_back(generate(p));
      }
    }
  }
  return out;
}

namespace {

json params_to_flat(const SynthParams& p) {
  json j;
  j["kind"] = to_string(p.test_kind);
  j["fps"] = p.fps;
  j["duration"] = p.duration;
  j["freq.right"] = p.freq_right;
  j["freq.left"] = p.freq_left;
  j["amp.right"] = p.amp_right;
  j["amp.left"] = p.amp_left;
  j["phase.right"] = p.phase_right;
  j["phase.left"] = p.phase_left;
  j["tremor.right"] = p.tremor_right;
  j["tremor.left"] = p.tremor_left;
  j["arc.width"] = p.arc_width;
  j["arc.rise"] = p.arc_rise;
  j["arc.meet"] = p.arc_meet;
  j["gait.step_length"] = p.step_length;
  j["gait.step_time"] = p.step_time;
  j["gait.stance_width"] = p.stance_width;
  j["gait.steps_per_pass"] = p.steps_per_pass;
  j["gait.n_passes"] = p.n_passes;
  j["gait.su_duration"] = p.su_duration;
  j["gait.tu_duration"] = p.tu_duration;
  j["gait.su_speed"] = p.su_speed;
  j["gait.knee_max"] = p.knee_max;
  j["gait.knee_drive"] = p.knee_drive;
  j["gait.knee_rom.right"] = p.knee_rom_right;
  j["gait.knee_rom.left"] = p.knee_rom_left;
  j["gait.knee_bump.right"] = p.knee_bump_right;
  j["gait.knee_bump.left"] = p.knee_bump_left;
  j["gait.foot_scale.right"] = p.foot_scale_right;
  j["gait.foot_scale.left"] = p.foot_scale_left;
  j["noise_sigma"] = p.noise_sigma;
  j["posture_shift"] = p.posture_shift;
  j["view_offset.x"] = p.view_offset_x;
  j["view_offset.y"] = p.view_offset_y;
  j["seed"] = p.seed;
  j["label"] = to_string(p.label);
  j["subject_id"] = p.subject_id;
  j["device"] = p.device;
  return j;
}

}  // namespace

std::string SynthParams::to_flat_json() const {
  return params_to_flat(*this).dump(2);
}

SynthParams SynthParams::from_flat_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid params JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("params must be a JSON object");

  SynthParams p;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "kind") p.test_kind = test_kind_from_string(value.get<std::string>());
      else if (key == "fps") p.fps = value.get<double>();
      else if (key == "duration") p.duration = value.get<double>();
      else if (key == "freq.right") p.freq_right = value.get<double>();
      else if (key == "freq.left") p.freq_left = value.get<double>();
      else if (key == "amp.right") p.amp_right = value.get<double>();
      else if (key == "amp.left") p.amp_left = value.get<double>();
      else if (key == "phase.right") p.phase_right = value.get<double>();
      else if (key == "phase.left") p.phase_left = value.get<double>();
      else if (key == "tremor.right") p.tremor_right = value.get<double>();
      else if (key == "tremor.left") p.tremor_left = value.get<double>();
      else if (key == "arc.width") p.arc_width = value.get<double>();
      else if (key == "arc.rise") p.arc_rise = value.get<double>();
      else if (key == "arc.meet") p.arc_meet = value.get<double>();
      else if (key == "gait.step_length") p.step_length = value.get<double>();
      else if (key == "gait.step_time") p.step_time = value.get<double>();
      else if (key == "gait.stance_width") p.stance_width = value.get<double>();
      else if (key == "gait.steps_per_pass") p.steps_per_pass = value.get<int>();
      else if (key == "gait.n_passes") p.n_passes = value.get<int>();
      else if (key == "gait.su_duration") p.su_duration = value.get<double>();
      else if (key == "gait.tu_duration") p.tu_duration = value.get<double>();
      else if (key == "gait.su_speed") p.su_speed = value.get<double>();
      else if (key == "gait.knee_max") p.knee_max = value.get<double>();
      else if (key == "gait.knee_drive") p.knee_drive = value.get<double>();
      else if (key == "gait.knee_rom.right") p.knee_rom_right = value.get<double>();
      else if (key == "gait.knee_rom.left") p.knee_rom_left = value.get<double>();
      else if (key == "gait.knee_bump.right") p.knee_bump_right = value.get<double>();
      else if (key == "gait.knee_bump.left") p.knee_bump_left = value.get<double>();
      else if (key == "gait.foot_scale.right") p.foot_scale_right = value.get<double>();
      else if (key == "gait.foot_scale.left") p.foot_scale_left = value.get<double>();
      else if (key == "noise_sigma") p.noise_sigma = value.get<double>();
      else if (key == "posture_shift") p.posture_shift = value.get<double>();
      else if (key == "view_offset.x") p.view_offset_x = value.get<double>();
      else if (key == "view_offset.y") p.view_offset_y = value.get<double>();
      else if (key == "seed") p.seed = value.get<std::uint64_t>();
      else if (key == "label") p.label = label_from_string(value.get<std::string>());
      else if (key == "subject_id") p.subject_id = value.get<std::string>();
      else if (key == "device") p.device = value.get<std::string>();
      else throw ParseError("unknown params key: " + key);
    } catch (const json::exception&) {
      throw ParseError("bad value for params key: " + key);
    }
  }
  p.validate();
  return p;
}

}  // namespace kinexam
