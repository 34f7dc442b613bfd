#include <doctest.h>

#include <cmath>
#include <sstream>

#include "core/pose_io.hpp"
#include "core/synth.hpp"

using namespace kinexam;

namespace {

// Minimal valid frame content for hand-carrying tests.
std::string minimal_ft_json(int n_frames, bool with_hands = true) {
  std::ostringstream ss;
  ss << R"({"fps": 30, "test_kind": "FT", "label": "normal",)"
     << R"( "subject_id": "sx", "device": "d0", "frames": [)";
  for (int f = 0; f < n_frames; ++f) {
    if (f) ss << ",";
    ss << "{\"body2d\": [";
    for (int k = 0; k < 25; ++k) ss << (k ? "," : "") << "[0.1,0.2,1.0]";
    ss << "]";
    if (with_hands) {
      for (const char* hand : {"hand2d_left", "hand2d_right"}) {
        ss << ",\"" << hand << "\": [";
        for (int k = 0; k < 21; ++k) ss << (k ? "," : "") << "[0.3,0.4,0.9]";
        ss << "]";
      }
    }
    ss << "}";
  }
  ss << "]}";
  return ss.str();
}

PoseRecording load_json(const std::string& text) {
  std::istringstream in(text);
  return load_recording(in, RecordingFormat::json);
}

bool recordings_equal(const PoseRecording& a, const PoseRecording& b) {
  if (a.fps != b.fps || a.test_kind != b.test_kind || a.label != b.label ||
      a.subject_id != b.subject_id || a.device != b.device ||
      a.frames.size() != b.frames.size())
    return false;
  for (std::size_t i = 0; i < a.frames.size(); ++i) {
    const Frame& fa = a.frames[i];
    const Frame& fb = b.frames[i];
    auto eq2 = [](const std::vector<Keypoint2D>& x,
                  const std::vector<Keypoint2D>& y) {
      if (x.size() != y.size()) return false;
      for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k].x != y[k].x || x[k].y != y[k].y ||
            x[k].confidence != y[k].confidence)
          return false;
      }
      return true;
    };
    if (!eq2(fa.body2d, fb.body2d) || !eq2(fa.hand2d_left, fb.hand2d_left) ||
        !eq2(fa.hand2d_right, fb.hand2d_right))
      return false;
    if (fa.body3d.size() != fb.body3d.size()) return false;
    for (std::size_t k = 0; k < fa.body3d.size(); ++k) {
      if (fa.body3d[k].x != fb.body3d[k].x ||
          fa.body3d[k].y != fb.body3d[k].y ||
          fa.body3d[k].z != fb.body3d[k].z)
        return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("skeleton slot mapping is total and injective") {
  std::vector<int> seen(skel::kBody2dSlots, 0);
  for (int slot = 0; slot < skel::kBody2dSlots; ++slot) {
    int joint = -1;
    Side side = Side::center;
    skel::body2d_joint_side(slot, joint, side);
    CHECK(skel::body2d_slot(joint, side) == slot);
    seen[static_cast<std::size_t>(slot)]++;
  }
  for (int c : seen) CHECK(c == 1);

  std::vector<int> seen3(skel::kBody3dSlots, 0);
  for (int slot = 0; slot < skel::kBody3dSlots; ++slot) {
    int joint = -1;
    Side side = Side::center;
    skel::body3d_joint_side(slot, joint, side);
    CHECK(skel::body3d_slot(joint, side) == slot);
    seen3[static_cast<std::size_t>(slot)]++;
  }
  for (int c : seen3) CHECK(c == 1);

  CHECK_THROWS_AS(skel::body2d_slot(skel::b2::PELVIS, Side::left), IndexError);
  CHECK_THROWS_AS(skel::body2d_slot(99, Side::right), IndexError);
  CHECK(skel::body2d_slot(skel::b2::WRIST, Side::right) == 7);
  CHECK(skel::body3d_slot(skel::b3::KNEE, Side::right) == 3);
}

TEST_CASE("load_recording accepts a minimal FT document") {
  const PoseRecording rec = load_json(minimal_ft_json(2));
  CHECK(rec.frames.size() == 2);
  CHECK(rec.fps == doctest::Approx(30.0));
  CHECK(rec.test_kind == TestKind::FT);
  CHECK(rec.label == Label::normal);
}

TEST_CASE("load_recording rejects bad documents") {
  CHECK_THROWS_AS(load_json("{not json"), ParseError);
  CHECK_THROWS_AS(load_json("[1,2,3]"), ParseError);
  // FT without hands -> missing required keypoint group
  CHECK_THROWS_AS(load_json(minimal_ft_json(2, false)), SchemaError);

  // fps <= 0
  std::string bad_fps = minimal_ft_json(1);
  bad_fps.replace(bad_fps.find("30"), 2, "-1");
  CHECK_THROWS_AS(load_json(bad_fps), ValueError);

  // empty frames
  const std::string empty =
      R"({"fps": 30, "test_kind": "FT", "label": "normal",
          "subject_id": "s", "device": "d", "frames": []})";
  CHECK_THROWS_AS(load_json(empty), ValueError);

  // confidence out of range
  std::string bad_conf = minimal_ft_json(1);
  bad_conf.replace(bad_conf.find("0.9"), 3, "1.9");
  CHECK_THROWS_AS(load_json(bad_conf), ValueError);
}

TEST_CASE("JSON round trip is the identity for every test kind") {
  for (TestKind kind :
       {TestKind::FT, TestKind::FTF, TestKind::FR, TestKind::SAW}) {
    SynthParams p;
    p.test_kind = kind;
    p.duration = 0.4;
    p.n_passes = 1;
    p.steps_per_pass = 3;
    p.su_duration = 0.4;
    p.noise_sigma = 0.01;
    p.seed = 77;
    p.label = Label::abnormal;
    p.subject_id = "rt";
    p.device = "tablet";
    const PoseRecording rec = generate(p);

    std::ostringstream out;
    save_recording(rec, out, RecordingFormat::json);
    const PoseRecording back = load_json(out.str());
    CHECK(recordings_equal(rec, back));

    // and byte-identical re-serialization
    std::ostringstream out2;
    save_recording(back, out2, RecordingFormat::json);
    CHECK(out.str() == out2.str());
  }
}

TEST_CASE("CSV round trip preserves the recording") {
  SynthParams p;
  p.test_kind = TestKind::SAW;
  p.n_passes = 1;
  p.steps_per_pass = 3;
  p.noise_sigma = 0.005;
  p.seed = 5;
  const PoseRecording rec = gen_saw(p);

  std::ostringstream rows, meta;
  save_recording_csv(rec, rows, meta);
  std::istringstream rin(rows.str()), min(meta.str());
  const PoseRecording back = load_recording_csv(rin, min);
  CHECK(recordings_equal(rec, back));
}

TEST_CASE("keypoint_series returns stored coordinates") {
  const PoseRecording rec = load_json(minimal_ft_json(10));
  const TimeSeries1D xs = keypoint_series(rec, SkeletonGroup::hand2d,
                                          skel::h2::THUMB_TIP, Side::left,
                                          Axis::x);
  CHECK(xs.size() == 10);
  CHECK(xs.fps == doctest::Approx(30.0));
  for (double v : xs.samples) CHECK(v == doctest::Approx(0.3));

  // exhaustive agreement with stored frames on a synthetic recording
  SynthParams p;
  p.duration = 0.5;
  p.seed = 2;
  p.noise_sigma = 0.01;
  const PoseRecording syn = gen_ft(p);
  const TimeSeries1D ys = keypoint_series(syn, SkeletonGroup::hand2d,
                                          skel::h2::INDEX_TIP, Side::right,
                                          Axis::y);
  for (std::size_t i = 0; i < syn.frames.size(); ++i)
    CHECK(ys.samples[i] == syn.frames[i].hand2d_right[skel::h2::INDEX_TIP].y);

  const TimeSeries1D b2 = keypoint_series(syn, SkeletonGroup::body2d,
                                          skel::b2::ELBOW, Side::left, Axis::x);
  const int slot = skel::body2d_slot(skel::b2::ELBOW, Side::left);
  for (std::size_t i = 0; i < syn.frames.size(); ++i)
    CHECK(b2.samples[i] ==
          syn.frames[i].body2d[static_cast<std::size_t>(slot)].x);
}

TEST_CASE("keypoint_series recovers the generator's analytic samples") {
  SynthParams p;
  p.duration = 2.0;
  p.freq_right = 2.0;
  p.amp_right = 0.5;
  const PoseRecording syn = gen_ft(p);
  const TimeSeries1D x = keypoint_series(syn, SkeletonGroup::hand2d,
                                         skel::h2::INDEX_TIP, Side::right,
                                         Axis::x);
  // index tip x = thumb x + d(t)/sqrt(2), thumb at 0.5
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = static_cast<double>(i) / syn.fps;
    const double d =
        p.amp_right * (1.0 - std::cos(2 * 3.14159265358979 * 2.0 * t)) / 2.0;
    CHECK(x.samples[i] ==
          doctest::Approx(0.5 + d / std::sqrt(2.0)).epsilon(1e-9));
  }
}

TEST_CASE("keypoint_series rejects invalid joint/axis/side") {
  const PoseRecording rec = load_json(minimal_ft_json(2));
  CHECK_THROWS_AS(keypoint_series(rec, SkeletonGroup::hand2d, 3, Side::left,
                                  Axis::z),
                  IndexError);
  CHECK_THROWS_AS(keypoint_series(rec, SkeletonGroup::hand2d, 21, Side::left,
                                  Axis::x),
                  IndexError);
  CHECK_THROWS_AS(keypoint_series(rec, SkeletonGroup::hand2d, 3, Side::center,
                                  Axis::x),
                  IndexError);
  CHECK_THROWS_AS(keypoint_series(rec, SkeletonGroup::body2d, skel::b2::NECK,
                                  Side::left, Axis::x),
                  IndexError);
}

TEST_CASE("synthetic recordings always validate") {
  for (TestKind kind :
       {TestKind::FT, TestKind::FTF, TestKind::FR, TestKind::SAW}) {
    SynthParams p;
    p.test_kind = kind;
    p.duration = 0.3;
    p.n_passes = 1;
    p.steps_per_pass = 3;
    p.noise_sigma = 0.02;
    CHECK_NOTHROW(validate_recording(generate(p)));
  }
}
