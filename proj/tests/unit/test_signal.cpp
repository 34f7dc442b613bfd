#include <doctest.h>

#include <cmath>

#include "core/rng.hpp"
#include "core/signal.hpp"
#include "core/stats.hpp"

using namespace kinexam;

namespace {

constexpr double kTau = 6.283185307179586;

TimeSeries1D make_series(std::vector<double> v, double fps = 60.0) {
  TimeSeries1D ts;
  ts.samples = std::move(v);
  ts.fps = fps;
  return ts;
}

TimeSeries1D sine(double freq, double fps, double seconds, double amp = 1.0,
                  double phase = 0.0) {
  TimeSeries1D ts;
  ts.fps = fps;
  const int n = static_cast<int>(seconds * fps);
  for (int i = 0; i < n; ++i)
    ts.samples.push_back(amp * std::sin(kTau * freq * i / fps + phase));
  return ts;
}

}  // namespace

TEST_CASE("asymmetry matches its definition") {
  CHECK(asymmetry(2.0, 2.0) == doctest::Approx(0.0));
  CHECK(asymmetry(3.0, 1.0) == doctest::Approx(0.5));
  CHECK(asymmetry(1.0, 0.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(asymmetry(0.0, 0.0), ValueError);
  CHECK_THROWS_AS(asymmetry(-1.0, 2.0), ValueError);
}

TEST_CASE("asymmetry is symmetric and scale invariant") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const double a = rng.uniform(0.0, 10.0);
    const double b = rng.uniform(1e-6, 10.0);
    const double c = rng.uniform(0.1, 50.0);
    CHECK(asymmetry(a, b) == doctest::Approx(asymmetry(b, a)).epsilon(1e-12));
    CHECK(asymmetry(c * a, c * b) ==
          doctest::Approx(asymmetry(a, b)).epsilon(1e-12));
    CHECK(asymmetry(a, b) >= 0.0);
    CHECK(asymmetry(a, b) <= 1.0);
  }
}

TEST_CASE("pearson_cc on exact relationships") {
  const auto x = sine(1.0, 60.0, 2.0);
  CHECK(pearson_cc(x, x) == doctest::Approx(1.0));
  auto neg = x;
  for (double& v : neg.samples) v = -v;
  CHECK(pearson_cc(x, neg) == doctest::Approx(-1.0));

  // hand-evaluated value
  CHECK(pearson_cc(std::vector<double>{1, 2, 3},
                   std::vector<double>{1, 2, 3.5}) ==
        doctest::Approx(0.993391).epsilon(1e-4));

  CHECK_THROWS_AS(
      pearson_cc(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}),
      DegenerateError);
  CHECK_THROWS_AS(
      pearson_cc(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}),
      ValueError);
}

TEST_CASE("pearson_cc invariant under positive affine maps") {
  Rng rng(11);
  std::vector<double> x, y;
  for (int i = 0; i < 50; ++i) {
    x.push_back(rng.normal());
    y.push_back(rng.normal());
  }
  const double base = pearson_cc(x, y);
  std::vector<double> x2;
  for (double v : x) x2.push_back(3.7 * v + 11.0);
  CHECK(pearson_cc(x2, y) == doctest::Approx(base).epsilon(1e-9));
  CHECK(std::abs(base) <= 1.0);
}

TEST_CASE("find_extrema recovers sinusoid period and amplitude") {
  // 2 Hz sinusoid at 60 fps for 5 s, prominence 0.2
  const auto ts = sine(2.0, 60.0, 5.0);
  const CycleSet cs = find_extrema(ts, 0.2);
  CHECK(mean_of(cs.periods) == doctest::Approx(0.5).epsilon(1.0 / 60 / 0.5));
  CHECK(mean_of(cs.amplitudes) == doctest::Approx(2.0).epsilon(0.01));
  // alternation
  for (std::size_t k = 0; k + 1 < cs.maxima_idx.size(); ++k) {
    bool has_min_between = false;
    for (std::size_t m : cs.minima_idx) {
      if (m > cs.maxima_idx[k] && m < cs.maxima_idx[k + 1])
        has_min_between = true;
    }
    CHECK(has_min_between);
  }
  CHECK(cs.periods.size() == cs.maxima_idx.size() - 1);
}

TEST_CASE("find_extrema rejects monotone and low-prominence ripple") {
  TimeSeries1D ramp = make_series({0, 1, 2, 3, 4, 5, 6, 7});
  CHECK_THROWS_AS(find_extrema(ramp, 0.2), NoCyclesError);

  // sinusoid with a 5%-prominence ripple: ripple extrema must vanish
  TimeSeries1D two_tone;
  two_tone.fps = 60.0;
  for (int i = 0; i < 300; ++i) {
    const double t = i / 60.0;
    two_tone.samples.push_back(std::sin(kTau * 1.0 * t) +
                               0.025 * std::sin(kTau * 13.0 * t));
  }
  const CycleSet cs = find_extrema(two_tone, 0.2);
  CHECK(mean_of(cs.periods) == doctest::Approx(1.0).epsilon(0.05));
  CHECK(cs.maxima_idx.size() <= 6);
}

TEST_CASE("find_extrema invariant under positive affine transforms") {
  const auto ts = sine(1.5, 60.0, 4.0);
  auto scaled = ts;
  for (double& v : scaled.samples) v = 2.5 * v + 7.0;
  const CycleSet a = find_extrema(ts, 0.25);
  const CycleSet b = find_extrema(scaled, 0.25);
  CHECK(a.maxima_idx == b.maxima_idx);
  CHECK(a.minima_idx == b.minima_idx);
  REQUIRE(a.amplitudes.size() == b.amplitudes.size());
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
    CHECK(b.amplitudes[i] == doctest::Approx(2.5 * a.amplitudes[i]));
}

TEST_CASE("derivative of linear and constant series") {
  TimeSeries1D lin = make_series({0, 2, 4, 6, 8}, 10.0);
  const TimeSeries1D d = derivative(lin, 1);
  for (double v : d.samples) CHECK(v == doctest::Approx(20.0));

  TimeSeries1D c = make_series({3, 3, 3, 3}, 10.0);
  for (double v : derivative(c, 1).samples) CHECK(v == doctest::Approx(0.0));
  for (double v : derivative(c, 2).samples) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("derivative peak of a sinusoid approaches the analytic bound") {
  const double f = 1.0, fps = 60.0;
  const auto ts = sine(f, fps, 3.0);
  const TimeSeries1D d = derivative(ts, 1);
  double peak = 0.0;
  for (std::size_t i = 1; i + 1 < d.samples.size(); ++i)
    peak = std::max(peak, std::abs(d.samples[i]));
  CHECK(peak == doctest::Approx(kTau * f).epsilon(0.02));
}

TEST_CASE("velocity_angle on axis-aligned and circular motion") {
  TimeSeries1D x = make_series({0, 1, 2, 3, 4}, 10.0);
  TimeSeries1D y = make_series({0, 0, 0, 0, 0}, 10.0);
  const VelocityAngle va = velocity_angle(x, y);
  for (std::size_t i = 1; i + 1 < va.angle.size(); ++i) {
    CHECK(va.angle.samples[i] == doctest::Approx(0.0));
    CHECK(va.valid[i]);
  }
  const VelocityAngle vb = velocity_angle(y, x);
  for (std::size_t i = 1; i + 1 < vb.angle.size(); ++i)
    CHECK(vb.angle.samples[i] == doctest::Approx(kTau / 4));

  // circle: angle advances linearly (unwrapped steps ~ omega/fps)
  const double w = kTau * 0.5;
  TimeSeries1D cx, cy;
  cx.fps = cy.fps = 60.0;
  for (int i = 0; i < 240; ++i) {
    cx.samples.push_back(std::cos(w * i / 60.0));
    cy.samples.push_back(std::sin(w * i / 60.0));
  }
  const VelocityAngle vc = velocity_angle(cx, cy);
  for (std::size_t i = 1; i + 1 < vc.angle.size(); ++i) {
    double diff = vc.angle.samples[i + 1] - vc.angle.samples[i];
    while (diff > kTau / 2) diff -= kTau;
    while (diff < -kTau / 2) diff += kTau;
    CHECK(diff == doctest::Approx(w / 60.0).epsilon(0.05));
  }

  // zero velocity flagged invalid
  TimeSeries1D still = make_series({1, 1, 1, 1}, 10.0);
  const VelocityAngle vs = velocity_angle(still, still);
  CHECK_FALSE(vs.valid[1]);
  CHECK(vs.angle.samples[1] == 0.0);
}

TEST_CASE("velocity_angle is invariant under trajectory translation") {
  Rng rng(19);
  TimeSeries1D x, y;
  x.fps = y.fps = 30.0;
  for (int i = 0; i < 90; ++i) {
    x.samples.push_back(std::sin(0.2 * i) + 0.1 * rng.normal());
    y.samples.push_back(std::cos(0.17 * i) + 0.1 * rng.normal());
  }
  TimeSeries1D xs = x, ys = y;
  for (double& v : xs.samples) v += 42.0;
  for (double& v : ys.samples) v -= 17.0;
  const VelocityAngle a = velocity_angle(x, y);
  const VelocityAngle b = velocity_angle(xs, ys);
  for (std::size_t i = 0; i < a.angle.size(); ++i) {
    if (a.valid[i] && b.valid[i])
      CHECK(b.angle.samples[i] ==
            doctest::Approx(a.angle.samples[i]).epsilon(1e-6));
  }
}

TEST_CASE("align_by_lag recovers a constructed shift") {
  const auto a = sine(1.0, 60.0, 4.0);
  for (long k : {-9L, 0L, 5L, 17L}) {
    TimeSeries1D b;
    b.fps = a.fps;
    b.samples.resize(a.size());
    // b[i + k] = a[i], periodic fill
    const long n = static_cast<long>(a.size());
    for (long i = 0; i < n; ++i)
      b.samples[static_cast<std::size_t>(i)] =
          a.samples[static_cast<std::size_t>(((i - k) % n + n) % n)];
    const LagResult r = align_by_lag(a, b, 25);
    CHECK(r.lag == k);
    CHECK(r.cc == doctest::Approx(1.0).epsilon(1e-6));
  }

  auto neg = a;
  for (double& v : neg.samples) v = -v;
  const LagResult r = align_by_lag(a, neg, 0);
  CHECK(r.lag == 0);
  CHECK(r.cc == doctest::Approx(-1.0));

  CHECK_THROWS_AS(align_by_lag(a, a, a.size()), ValueError);
  TimeSeries1D flat = make_series({1, 1, 1, 1, 1, 1, 1, 1}, 10.0);
  CHECK_THROWS_AS(align_by_lag(flat, flat, 2), DegenerateError);
}

TEST_CASE("resample_linear identity, ramp exactness and round trip") {
  TimeSeries1D ramp = make_series({0, 1, 2, 3, 4, 5}, 10.0);
  const TimeSeries1D same = resample_linear(ramp, ramp.size());
  for (std::size_t i = 0; i < ramp.size(); ++i)
    CHECK(same.samples[i] == doctest::Approx(ramp.samples[i]));

  const TimeSeries1D up = resample_linear(ramp, 11);
  for (std::size_t i = 0; i < up.size(); ++i)
    CHECK(up.samples[i] == doctest::Approx(0.5 * static_cast<double>(i)));

  // sinusoid round trip, 25 samples per cycle on the way down
  const auto s = sine(2.0, 60.0, 2.0);  // 4 cycles, 120 samples
  const TimeSeries1D down = resample_linear(s, 100);
  const TimeSeries1D back = resample_linear(down, s.size());
  double rms = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    rms += (back.samples[i] - s.samples[i]) * (back.samples[i] - s.samples[i]);
    ref += s.samples[i] * s.samples[i];
  }
  CHECK(std::sqrt(rms / ref) < 0.01);

  CHECK_THROWS_AS(resample_linear(ramp, 1), ValueError);
}
