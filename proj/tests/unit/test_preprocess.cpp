#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "core/preprocess.hpp"
#include "core/rng.hpp"
#include "core/synth.hpp"

using namespace kinexam;

namespace {

TimeSeries1D series_of(std::vector<double> v, double fps = 60.0) {
  TimeSeries1D ts;
  ts.samples = std::move(v);
  ts.fps = fps;
  return ts;
}

// brute-force reference for the median filter's shrinking-window policy
double median_at(const std::vector<double>& v, std::size_t i, int window) {
  const std::size_t h = static_cast<std::size_t>(window / 2);
  const std::size_t hw = std::min({h, i, v.size() - 1 - i});
  std::vector<double> w(v.begin() + static_cast<long>(i - hw),
                        v.begin() + static_cast<long>(i + hw + 1));
  std::sort(w.begin(), w.end());
  return w[hw];
}

}  // namespace

TEST_CASE("truncate keeps the requested frames") {
  SynthParams p;
  p.duration = 0.5;
  const PoseRecording rec = gen_ft(p);
  const std::size_t n = rec.frames.size();

  const PoseRecording same = truncate(rec, {0, n});
  CHECK(same.frames.size() == n);

  const PoseRecording part = truncate(rec, {10, 20});
  CHECK(part.frames.size() == 10);
  CHECK(part.frames[0].hand2d_right[3].x ==
        doctest::Approx(rec.frames[10].hand2d_right[3].x));
  CHECK(part.fps == rec.fps);
  CHECK(part.subject_id == rec.subject_id);

  CHECK_THROWS_AS(truncate(rec, {5, 5}), RangeError);
  CHECK_THROWS_AS(truncate(rec, {0, n + 1}), RangeError);
}

TEST_CASE("reference_length is the per-frame median") {
  SynthParams p;
  p.duration = 1.0;
  const PoseRecording rec = gen_ft(p);
  // generator fixes the right forearm at exactly 1
  CHECK(reference_length(rec) == doctest::Approx(1.0).epsilon(1e-12));

  // median robustness: distort one frame's wrist
  PoseRecording odd = rec;
  const int wrist = skel::body2d_slot(skel::b2::WRIST, Side::right);
  odd.frames[3].body2d[static_cast<std::size_t>(wrist)].y += 4.0;
  CHECK(reference_length(odd) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reference_length uses pelvis-neck for SAW") {
  SynthParams p;
  p.test_kind = TestKind::SAW;
  p.n_passes = 1;
  p.steps_per_pass = 4;
  const PoseRecording rec = gen_saw(p);
  CHECK(reference_length(rec) == doctest::Approx(1.0).epsilon(1e-9));
  // a torso scaled to length L reads back as L
  CHECK(reference_length(normalize(rec, 0.5)) ==
        doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("normalize scales coordinates and composes") {
  SynthParams p;
  p.duration = 0.2;
  const PoseRecording rec = gen_ft(p);

  const PoseRecording same = normalize(rec, 1.0);
  CHECK(same.frames[0].body2d[0].x == doctest::Approx(rec.frames[0].body2d[0].x));

  const PoseRecording half = normalize(rec, 2.0);
  CHECK(half.frames[0].hand2d_left[6].x ==
        doctest::Approx(rec.frames[0].hand2d_left[6].x / 2));
  CHECK(half.frames[0].hand2d_left[6].confidence ==
        doctest::Approx(rec.frames[0].hand2d_left[6].confidence));

  // group action: normalize(normalize(r,a),b) = normalize(r,ab)
  const PoseRecording ab = normalize(normalize(rec, 2.0), 3.0);
  const PoseRecording prod = normalize(rec, 6.0);
  CHECK(ab.frames[5].body2d[7].y == doctest::Approx(prod.frames[5].body2d[7].y));

  // normalize by own reference -> reference becomes 1
  const double ref = reference_length(rec);
  CHECK(reference_length(normalize(rec, ref)) == doctest::Approx(1.0));

  CHECK_THROWS_AS(normalize(rec, 0.0), ValueError);
}

TEST_CASE("repair_low_confidence interpolates gaps") {
  const TimeSeries1D s = series_of({0, 9, 2});
  const TimeSeries1D conf = series_of({1, 0, 1});
  const TimeSeries1D fixed = repair_low_confidence(s, conf, 0.5);
  CHECK(fixed.samples[0] == doctest::Approx(0.0));
  CHECK(fixed.samples[1] == doctest::Approx(1.0));
  CHECK(fixed.samples[2] == doctest::Approx(2.0));

  // identity when everything is confident
  const TimeSeries1D id = repair_low_confidence(s, series_of({1, 1, 1}), 0.5);
  CHECK(id.samples == s.samples);

  // leading/trailing gaps take the nearest confident value
  const TimeSeries1D edge = repair_low_confidence(
      series_of({7, 1, 2, 9}), series_of({0, 1, 1, 0}), 0.5);
  CHECK(edge.samples[0] == doctest::Approx(1.0));
  CHECK(edge.samples[3] == doctest::Approx(2.0));

  CHECK_THROWS_AS(repair_low_confidence(s, series_of({0, 0, 0}), 0.5),
                  AllLowConfidenceError);
}

TEST_CASE("median_filter basics and brute-force agreement") {
  const TimeSeries1D spike = series_of({0, 0, 10, 0, 0});
  const TimeSeries1D f3 = median_filter(spike, 3);
  for (double v : f3.samples) CHECK(v == doctest::Approx(0.0));

  const TimeSeries1D id = median_filter(spike, 1);
  CHECK(id.samples == spike.samples);

  CHECK_THROWS_AS(median_filter(spike, 4), ValueError);
  CHECK_THROWS_AS(median_filter(spike, -1), ValueError);

  Rng rng(3);
  std::vector<double> noisy;
  for (int i = 0; i < 64; ++i) noisy.push_back(rng.normal());
  const TimeSeries1D ts = series_of(noisy);
  for (int w : {3, 5, 9}) {
    const TimeSeries1D out = median_filter(ts, w);
    for (std::size_t i = 0; i < ts.size(); ++i)
      CHECK(out.samples[i] == doctest::Approx(median_at(noisy, i, w)));
  }

  // monotone series unchanged
  std::vector<double> mono;
  for (int i = 0; i < 30; ++i) mono.push_back(i * 0.3);
  const TimeSeries1D m = median_filter(series_of(mono), 5);
  for (std::size_t i = 0; i < mono.size(); ++i)
    CHECK(m.samples[i] == doctest::Approx(mono[i]));
}

TEST_CASE("median_filter idempotent on its own output (window 3)") {
  Rng rng(17);
  std::vector<double> noisy;
  for (int i = 0; i < 100; ++i) noisy.push_back(rng.uniform(-1, 1));
  const TimeSeries1D once = median_filter(series_of(noisy), 3);
  const TimeSeries1D twice = median_filter(once, 3);
  // no isolated single-sample spike survives
  for (std::size_t i = 1; i + 1 < twice.size(); ++i) {
    const double lo = std::min(twice.samples[i - 1], twice.samples[i + 1]);
    const double hi = std::max(twice.samples[i - 1], twice.samples[i + 1]);
    const double margin = (hi - lo) + 1e-12;
    CHECK(twice.samples[i] >= lo - margin);
    CHECK(twice.samples[i] <= hi + margin);
  }
}

TEST_CASE("savgol_filter reproduces polynomials up to its order") {
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
    const double c = rng.uniform(-2, 2), d = rng.uniform(-2, 2);
    std::vector<double> poly;
    for (int i = 0; i < 80; ++i) {
      const double t = i * 0.05;
      poly.push_back(a + b * t + c * t * t + d * t * t * t);
    }
    const TimeSeries1D out = savgol_filter(series_of(poly), 11, 3);
    for (std::size_t i = 0; i < poly.size(); ++i)
      CHECK(std::abs(out.samples[i] - poly[i]) < 1e-9);
  }

  // constant series unchanged
  const TimeSeries1D c5 = savgol_filter(series_of({5, 5, 5, 5, 5, 5, 5}), 5, 2);
  for (double v : c5.samples) CHECK(v == doctest::Approx(5.0));

  CHECK_THROWS_AS(savgol_filter(series_of({1, 2, 3}), 4, 2), ValueError);
  CHECK_THROWS_AS(savgol_filter(series_of({1, 2, 3}), 3, 3), ValueError);
}

TEST_CASE("savgol_filter denoises a sinusoid") {
  Rng rng(23);
  const double fps = 60.0;
  std::vector<double> clean, noisy;
  for (int i = 0; i < 600; ++i) {
    const double t = i / fps;
    clean.push_back(std::sin(2 * 3.14159265358979 * 1.5 * t));
    noisy.push_back(clean.back() + rng.normal(0.0, 0.15));
  }
  const TimeSeries1D out = savgol_filter(series_of(noisy, fps), 11, 3);
  double before = 0.0, after = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    before += (noisy[i] - clean[i]) * (noisy[i] - clean[i]);
    after += (out.samples[i] - clean[i]) * (out.samples[i] - clean[i]);
  }
  CHECK(after < before);
}

TEST_CASE("filters preserve length and fps") {
  Rng rng(9);
  std::vector<double> v;
  for (int i = 0; i < 57; ++i) v.push_back(rng.normal());
  const TimeSeries1D ts = series_of(v, 42.0);
  for (const TimeSeries1D& out :
       {median_filter(ts, 5), savgol_filter(ts, 9, 2)}) {
    CHECK(out.size() == ts.size());
    CHECK(out.fps == ts.fps);
  }
}

TEST_CASE("scaled_odd_window tracks the frame rate") {
  CHECK(scaled_odd_window(5, 60.0) == 5);
  CHECK(scaled_odd_window(11, 60.0) == 11);
  CHECK(scaled_odd_window(11, 30.0) == 5);
  CHECK(scaled_odd_window(5, 30.0) == 3);
  CHECK(scaled_odd_window(11, 120.0) == 23);
  CHECK(scaled_odd_window(3, 10.0) == 3);  // never below 3
}

TEST_CASE("preprocess config validation") {
  PreprocessConfig cfg;
  cfg.median_window = 4;
  CHECK_THROWS_AS(cfg.validate(), ValueError);
  cfg = {};
  cfg.savgol_order = 11;
  CHECK_THROWS_AS(cfg.validate(), ValueError);
  cfg = {};
  cfg.confidence_threshold = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ValueError);
  CHECK_NOTHROW(PreprocessConfig{}.validate());
}
