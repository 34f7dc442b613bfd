#include <doctest.h>

#include <cmath>

#include "core/features_upper.hpp"
#include "core/pose_io.hpp"
#include "core/synth.hpp"

using namespace kinexam;

namespace {

constexpr double kTau = 6.283185307179586;

std::vector<Keypoint2D> flat_hand(double x, double y) {
  return std::vector<Keypoint2D>(skel::kHandSlots, {x, y, 1.0});
}

// Static torso with unit right forearm; wrists coincide when mirrored = false.
std::vector<Keypoint2D> test_body(bool equal_wrists = false) {
  std::vector<Keypoint2D> b(skel::kBody2dSlots, {0.05, 0.1, 1.0});
  b[skel::b2::PELVIS] = {0.0, 0.0, 1.0};
  b[skel::b2::NECK] = {0.0, 1.0, 1.0};
  auto set = [&](int joint, Side side, double x, double y) {
    b[static_cast<std::size_t>(skel::body2d_slot(joint, side))] = {x, y, 1.0};
  };
  set(skel::b2::WRIST, Side::right, 0.4, 0.9);
  set(skel::b2::ELBOW, Side::right, 0.4, -0.1);
  if (equal_wrists) {
    set(skel::b2::WRIST, Side::left, 0.4, 0.9);
    set(skel::b2::ELBOW, Side::left, 0.4, -0.1);
  } else {
    set(skel::b2::WRIST, Side::left, -0.4, 0.9);
    set(skel::b2::ELBOW, Side::left, -0.4, -0.1);
  }
  return b;
}

PoseRecording ft_recording_with_distance(const std::vector<double>& d,
                                         double fps = 60.0) {
  PoseRecording rec;
  rec.fps = fps;
  rec.test_kind = TestKind::FT;
  rec.subject_id = "manual";
  rec.device = "t";
  for (double di : d) {
    Frame f;
    f.body2d = test_body();
    f.hand2d_right = flat_hand(0.5, 1.0);
    f.hand2d_right[skel::h2::INDEX_TIP] = {0.5 + di, 1.0, 1.0};
    f.hand2d_left = flat_hand(-0.5, 1.0);
    f.hand2d_left[skel::h2::INDEX_TIP] = {-0.5 - di, 1.0, 1.0};
    rec.frames.push_back(std::move(f));
  }
  return rec;
}

PoseRecording ftf_recording_with_trajectory(
    const std::vector<double>& xr, const std::vector<double>& yr,
    double fps = 60.0) {
  PoseRecording rec;
  rec.fps = fps;
  rec.test_kind = TestKind::FTF;
  rec.subject_id = "manual";
  rec.device = "t";
  for (std::size_t i = 0; i < xr.size(); ++i) {
    Frame f;
    f.body2d = test_body();
    f.hand2d_right = flat_hand(xr[i], yr[i]);
    f.hand2d_right[skel::h2::INDEX_MID] = {xr[i], yr[i], 1.0};
    f.hand2d_left = flat_hand(-xr[i], yr[i]);
    f.hand2d_left[skel::h2::INDEX_MID] = {-xr[i], yr[i], 1.0};
    rec.frames.push_back(std::move(f));
  }
  return rec;
}

}  // namespace

TEST_CASE("ft_distance on degenerate and static hands") {
  const PoseRecording zeros = ft_recording_with_distance({0, 0, 0, 0});
  for (double v : ft_distance(zeros, Side::right).samples)
    CHECK(v == doctest::Approx(0.0));

  const PoseRecording pinch =
      ft_recording_with_distance(std::vector<double>(8, 0.3));
  for (Side s : {Side::right, Side::left})
    for (double v : ft_distance(pinch, s).samples)
      CHECK(v == doctest::Approx(0.3));
}

TEST_CASE("ft_distance recovers the generator waveform") {
  SynthParams p;
  p.duration = 5.0;
  p.freq_right = 2.0;
  p.amp_right = 0.45;
  const PoseRecording rec = gen_ft(p);
  const TimeSeries1D d = ft_distance(rec, Side::right);
  double hi = 0.0, lo = 1e9;
  for (double v : d.samples) {
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  CHECK(hi - lo == doctest::Approx(0.45).epsilon(0.02));
}

TEST_CASE("ft_features recovers matched generator parameters") {
  SynthParams p;
  p.duration = 10.0;
  p.freq_right = p.freq_left = 2.0;
  p.amp_right = p.amp_left = 0.5;
  const PoseRecording rec = gen_ft(p);
  const ExtractConfig cfg;
  const FeatureVector fv = ft_features(rec, cfg);

  CHECK(fv.at("ft.period.right.mean") ==
        doctest::Approx(0.5).epsilon(1.0 / 60 / 0.5));
  CHECK(fv.at("ft.period.left.mean") ==
        doctest::Approx(0.5).epsilon(1.0 / 60 / 0.5));
  CHECK(fv.at("ft.freq.asym") == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(fv.at("ft.amplitude.asym") == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(fv.at("ft.amplitude.right.mean") == doctest::Approx(0.5).epsilon(0.02));
  CHECK(fv.at("ft.taprate.right") == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("ft_features asymmetry follows the rate ratio") {
  SynthParams p;
  p.duration = 10.0;
  p.freq_right = 2.0;
  p.freq_left = 1.0;
  const PoseRecording rec = gen_ft(p);
  const FeatureVector fv = ft_features(rec, ExtractConfig{});
  CHECK(fv.at("ft.freq.asym") == doctest::Approx(1.0 / 3.0).epsilon(0.02 * 3));
}

TEST_CASE("wrist stability vanishes for coincident wrists") {
  SynthParams p;
  p.duration = 3.0;
  PoseRecording rec = gen_ft(p);
  // overwrite the torso with one whose wrists coincide exactly
  for (Frame& f : rec.frames) f.body2d = test_body(true);
  const FeatureVector fv = ft_features(rec, ExtractConfig{});
  CHECK(fv.at("ft.wrist_stability.mean") == doctest::Approx(0.0));
  CHECK(fv.at("ft.elbow_stability.mean") == doctest::Approx(0.0));
}

TEST_CASE("ft features are invariant under uniform scaling") {
  SynthParams p;
  p.duration = 6.0;
  p.seed = 3;
  const PoseRecording rec = gen_ft(p);
  const PoseRecording scaled = normalize(rec, 1.0 / 3.7);  // scale up by 3.7
  const ExtractConfig cfg;
  const FeatureVector a = ft_features(rec, cfg);
  const FeatureVector b = ft_features(scaled, cfg);
  for (const std::string& name : a.names())
    CHECK(b.at(name) == doctest::Approx(a.at(name)).epsilon(1e-9));
}

TEST_CASE("swapping hands swaps side features and keeps asymmetries") {
  SynthParams p;
  p.duration = 8.0;
  p.freq_right = 2.1;
  p.freq_left = 1.4;
  p.amp_right = 0.5;
  p.amp_left = 0.35;
  const PoseRecording rec = gen_ft(p);
  PoseRecording swapped = rec;
  for (Frame& f : swapped.frames) std::swap(f.hand2d_left, f.hand2d_right);

  const ExtractConfig cfg;
  const FeatureVector a = ft_features(rec, cfg);
  const FeatureVector b = ft_features(swapped, cfg);
  CHECK(a.at("ft.period.right.mean") == b.at("ft.period.left.mean"));
  CHECK(a.at("ft.amplitude.left.std") == b.at("ft.amplitude.right.std"));
  CHECK(a.at("ft.freq.asym") == b.at("ft.freq.asym"));
  CHECK(a.at("ft.amplitude.asym") == b.at("ft.amplitude.asym"));
}

TEST_CASE("ft extraction is bit-deterministic") {
  SynthParams p;
  p.duration = 4.0;
  p.seed = 11;
  p.noise_sigma = 0.004;
  const PoseRecording rec = gen_ft(p);
  const ExtractConfig cfg;
  const FeatureVector a = ft_features(rec, cfg);
  const FeatureVector b = ft_features(rec, cfg);
  for (const std::string& name : a.names()) CHECK(a.at(name) == b.at(name));
}

TEST_CASE("ft_features raises NoCyclesError without motion") {
  SynthParams p;
  p.amp_right = 0.0;
  p.amp_left = 0.0;
  p.duration = 3.0;
  const PoseRecording rec = gen_ft(p);
  CHECK_THROWS_AS(ft_features(rec, ExtractConfig{}), NoCyclesError);
}

TEST_CASE("ftf_symmetry on exact mirror and on unmirrored motion") {
  std::vector<double> xr, yr;
  for (int i = 0; i < 240; ++i) {
    const double t = i / 60.0;
    xr.push_back(0.3 + 0.25 * std::cos(kTau * t));
    yr.push_back(0.9 + 0.5 * std::sin(kTau * t / 2) * std::sin(kTau * t / 2));
  }
  const PoseRecording mirrored = ftf_recording_with_trajectory(xr, yr);
  const FtfSymmetry s = ftf_symmetry(mirrored);
  CHECK(s.sx == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s.sy == doctest::Approx(1.0).epsilon(1e-9));

  // left equals right (no mirroring in x): sx flips sign
  PoseRecording unmirrored = mirrored;
  for (Frame& f : unmirrored.frames) f.hand2d_left = f.hand2d_right;
  const FtfSymmetry u = ftf_symmetry(unmirrored);
  CHECK(u.sx == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(u.sy == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("tremor pushes the horizontal symmetry below 0.9") {
  SynthParams p;
  p.duration = 10.0;
  p.freq_right = p.freq_left = 1.0;
  p.tremor_left = 0.12;
  p.tremor_right = 0.12;
  p.seed = 21;
  const PoseRecording rec = gen_ftf(p);
  const FeatureVector fv = ftf_features(rec, ExtractConfig{});
  CHECK(fv.at("ftf.sx") < 0.9);
}

TEST_CASE("path smoothness is 1 on parabolic arcs and lines") {
  // generator arcs are exact parabolas
  SynthParams p;
  p.duration = 8.0;
  p.freq_right = p.freq_left = 1.0;
  const PoseRecording rec = gen_ftf(p);
  const ExtractConfig cfg;
  const StatSummary ps = ftf_path_smoothness(rec, Side::right, cfg);
  CHECK(ps.mean == doctest::Approx(1.0).epsilon(1e-3));

  // straight-line trajectory: quadratic degenerates to a line
  std::vector<double> xr, yr;
  for (int i = 0; i < 480; ++i) {
    const double t = i / 60.0;
    const double x = 0.3 + 0.25 * std::cos(kTau * t);
    xr.push_back(x);
    yr.push_back(0.9 + 0.4 * x);
  }
  const PoseRecording line = ftf_recording_with_trajectory(xr, yr);
  const StatSummary psl = ftf_path_smoothness(line, Side::right, cfg);
  CHECK(psl.mean == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("path smoothness grows with zigzag amplitude") {
  const ExtractConfig cfg;
  double previous = 1.0;
  for (double eps : {0.004, 0.012, 0.03}) {
    std::vector<double> xr, yr;
    for (int i = 0; i < 480; ++i) {
      const double t = i / 60.0;
      const double x = 0.3 + 0.25 * std::cos(kTau * t);
      const double zig = (i % 2 == 0 ? eps : -eps);
      xr.push_back(x);
      yr.push_back(0.9 + 1.2 * (x - 0.3) * (x - 0.3) + zig);
    }
    const PoseRecording rec = ftf_recording_with_trajectory(xr, yr);
    const StatSummary ps = ftf_path_smoothness(rec, Side::right, cfg);
    CHECK(ps.mean > previous);
    previous = ps.mean;
  }
  CHECK(previous > 1.0);
}

TEST_CASE("velocity-angle symmetry is exact for identical cycles") {
  SynthParams p;
  p.duration = 6.0;
  p.freq_right = p.freq_left = 1.0;
  const PoseRecording rec = gen_ftf(p);
  const ExtractConfig cfg;
  const StatSummary vas = ftf_velocity_angle_symmetry(rec, Side::left, cfg);
  CHECK(vas.mean == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(vas.std == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("two cycles give exactly one velocity-angle pair") {
  SynthParams p;
  p.duration = 3.4;  // three detected maxima span two full cycles at 1 Hz
  p.freq_right = p.freq_left = 1.0;
  const PoseRecording rec = gen_ftf(p);
  const StatSummary vas =
      ftf_velocity_angle_symmetry(rec, Side::right, ExtractConfig{});
  CHECK(vas.count == 1);
  CHECK(vas.std == doctest::Approx(0.0));
}

TEST_CASE("tremor lowers the velocity-angle symmetry") {
  SynthParams clean, shaky;
  clean.duration = shaky.duration = 10.0;
  clean.freq_right = clean.freq_left = 1.0;
  shaky.freq_right = shaky.freq_left = 1.0;
  shaky.tremor_right = shaky.tremor_left = 0.08;
  shaky.seed = clean.seed = 9;
  const ExtractConfig cfg;
  const StatSummary a =
      ftf_velocity_angle_symmetry(gen_ftf(clean), Side::right, cfg);
  const StatSummary b =
      ftf_velocity_angle_symmetry(gen_ftf(shaky), Side::right, cfg);
  CHECK(b.mean < a.mean);
}

TEST_CASE("ftf_features on a clean mirrored run") {
  SynthParams p;
  p.duration = 12.0;
  p.freq_right = p.freq_left = 1.0;
  const PoseRecording rec = gen_ftf(p);
  const FeatureVector fv = ftf_features(rec, ExtractConfig{});
  CHECK(fv.at("ftf.sx") >= 0.95);
  CHECK(fv.at("ftf.sy") >= 0.95);
  CHECK(fv.at("ftf.period.right.mean") ==
        doctest::Approx(1.0).epsilon(1.0 / 60));
  CHECK(fv.at("ftf.velangle_sym.right.mean") ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fv.at("ftf.ps.left.mean") == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(fv.at("ftf.speed.right.mean") > 0.0);
}

TEST_CASE("antiphase hands flip the horizontal symmetry sign") {
  SynthParams p;
  p.duration = 8.0;
  p.freq_right = p.freq_left = 1.0;
  p.phase_right = 3.14159265358979323846;
  const PoseRecording rec = gen_ftf(p);
  const FtfSymmetry s = ftf_symmetry(rec);
  CHECK(s.sx == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("fr_features recovers matched generator parameters") {
  SynthParams p;
  p.test_kind = TestKind::FR;
  p.duration = 10.0;
  p.freq_right = p.freq_left = 1.5;
  p.amp_right = p.amp_left = 0.4;
  const PoseRecording rec = gen_fr(p);
  const FeatureVector fv = fr_features(rec, ExtractConfig{});
  CHECK(fv.at("fr.period.right.mean") ==
        doctest::Approx(1.0 / 1.5).epsilon(1.0 / 60 / 0.667));
  CHECK(fv.at("fr.amplitude.asym") == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(fv.at("fr.amplitude.right.mean") == doctest::Approx(0.4).epsilon(0.02));
  CHECK(fv.at("fr.rollrate.right") == doctest::Approx(1.5).epsilon(0.05));
  // rolling speed = amplitude / (half period) = 0.4 / 0.333 = 1.2
  CHECK(fv.at("fr.rollspeed.right.mean") == doctest::Approx(1.2).epsilon(0.05));
}

TEST_CASE("fr period asymmetry follows a halved rate") {
  SynthParams p;
  p.test_kind = TestKind::FR;
  p.duration = 12.0;
  p.freq_right = 1.5;
  p.freq_left = 0.75;
  const PoseRecording rec = gen_fr(p);
  const FeatureVector fv = fr_features(rec, ExtractConfig{});
  CHECK(fv.at("fr.period.asym") == doctest::Approx(1.0 / 3.0).epsilon(0.06));
}

TEST_CASE("motionless elbows give a constant stability series") {
  SynthParams p;
  p.test_kind = TestKind::FR;
  p.duration = 5.0;
  const PoseRecording rec = gen_fr(p);
  const FeatureVector fv = fr_features(rec, ExtractConfig{});
  CHECK(fv.at("fr.elbow_stability.std") == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(fv.at("fr.elbow_stability.mean") ==
        doctest::Approx(fv.at("fr.elbow_stability.median")).epsilon(1e-9));
}

TEST_CASE("feature values respect their documented ranges") {
  SynthParams p;
  p.duration = 8.0;
  p.seed = 31;
  p.noise_sigma = 0.003;
  p.tremor_left = 0.05;
  for (TestKind kind : {TestKind::FT, TestKind::FTF, TestKind::FR}) {
    p.test_kind = kind;
    const FeatureVector fv = extract_features(generate(p), ExtractConfig{});
    CHECK_NOTHROW(fv.check());
    for (const std::string& name : fv.names()) {
      if (name.size() > 5 && name.compare(name.size() - 5, 5, ".asym") == 0) {
        CHECK(fv.at(name) >= 0.0);
        CHECK(fv.at(name) <= 1.0);
      }
      if (name.find(".ps.") != std::string::npos &&
          name.find(".mean") != std::string::npos)
        CHECK(fv.at(name) >= 1.0 - 1e-3);
    }
  }
}

TEST_CASE("feature vector catalogue enforcement") {
  FeatureVector fv(TestKind::FT, "x", 0);
  CHECK_THROWS_AS(fv.set("not.a.feature", 1.0), IndexError);
  CHECK_THROWS_AS(fv.at("ft.amplitude.right.mean"), IndexError);  // unset
  fv.set("ft.amplitude.right.mean", 0.5);
  CHECK(fv.at("ft.amplitude.right.mean") == 0.5);
  CHECK(fv.has("ft.amplitude.right.mean"));
  CHECK_FALSE(fv.has("ft.amplitude.left.mean"));
}
