#include "core/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/stats.hpp"

namespace kinexam {

double asymmetry(double fr, double fl) {
  if (fr < 0.0 || fl < 0.0)
    throw ValueError("asymmetry requires nonnegative inputs");
  const double sum = fr + fl;
  if (!(sum > 0.0)) throw ValueError("asymmetry undefined for two zeros");
  return std::abs(fr - fl) / sum;
}

namespace {

bool effectively_constant(const std::vector<double>& v) {
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  const double scale = std::max({1.0, std::abs(*mn), std::abs(*mx)});
  return (*mx - *mn) <= 1e-12 * scale;
}

}  // namespace

double pearson_cc(const std::vector<double>& x1,
                  const std::vector<double>& x2) {
  if (x1.size() != x2.size())
    throw ValueError("pearson_cc requires equal lengths");
  if (x1.size() < 2) throw ValueError("pearson_cc requires length >= 2");
  if (effectively_constant(x1) || effectively_constant(x2))
    throw DegenerateError("pearson_cc of a constant series");

  const double m1 = mean_of(x1);
  const double m2 = mean_of(x2);
  double dot = 0.0, ss1 = 0.0, ss2 = 0.0;
  for (std::size_t i = 0; i < x1.size(); ++i) {
    const double a = x1[i] - m1;
    const double b = x2[i] - m2;
    dot += a * b;
    ss1 += a * a;
    ss2 += b * b;
  }
  if (ss1 <= 0.0 || ss2 <= 0.0)
    throw DegenerateError("pearson_cc zero denominator");
  const double cc = dot / std::sqrt(ss1 * ss2);
  return std::clamp(cc, -1.0, 1.0);
}

double pearson_cc(const TimeSeries1D& x1, const TimeSeries1D& x2) {
  return pearson_cc(x1.samples, x2.samples);
}

namespace {

struct Extremum {
  std::size_t idx;
  bool is_max;
  double value;
};

// Candidate extrema with plateau midpoints; edge samples never qualify.
std::vector<Extremum> raw_extrema(const std::vector<double>& v) {
  std::vector<Extremum> out;
  const std::size_t n = v.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    if (v[i] == v[i - 1]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && v[j + 1] == v[i]) ++j;
    if (j + 1 >= n) break;
    const bool rising_in = v[i] > v[i - 1];
    const bool falling_out = v[j + 1] < v[i];
    if (rising_in == falling_out)
      out.push_back({(i + j) / 2, rising_in, v[i]});
    i = j + 1;
  }
  return out;
}

// Topographic prominence: peak height above the higher of the two interval
// minima toward the nearest strictly higher samples (or the signal ends).
double prominence_at(const std::vector<double>& v, std::size_t p,
                     bool is_max) {
  const double sign = is_max ? 1.0 : -1.0;
  const double peak = sign * v[p];
  double left_min = peak;
  for (std::size_t i = p; i-- > 0;) {
    const double x = sign * v[i];
    if (x > peak) break;
    left_min = std::min(left_min, x);
  }
  double right_min = peak;
  for (std::size_t i = p + 1; i < v.size(); ++i) {
    const double x = sign * v[i];
    if (x > peak) break;
    right_min = std::min(right_min, x);
  }
  return peak - std::max(left_min, right_min);
}

}  // namespace

CycleSet find_extrema(const TimeSeries1D& series, double prominence_frac) {
  const std::vector<double>& v = series.samples;
  if (v.size() < 3) throw ValueError("find_extrema requires length >= 3");
  if (!(prominence_frac > 0.0 && prominence_frac < 1.0))
    throw ValueError("prominence_frac must lie in (0,1)");

  const double range = max_of(v) - min_of(v);
  if (range <= 0.0) throw NoCyclesError("constant series has no cycles");
  const double threshold = prominence_frac * range;

  std::vector<Extremum> kept;
  for (const Extremum& e : raw_extrema(v)) {
    if (prominence_at(v, e.idx, e.is_max) >= threshold) kept.push_back(e);
  }

  // Alternation: of adjacent same-type extrema keep the more extreme one.
  std::vector<Extremum> alt;
  for (const Extremum& e : kept) {
    if (!alt.empty() && alt.back().is_max == e.is_max) {
      const bool replace =
          e.is_max ? e.value > alt.back().value : e.value < alt.back().value;
      if (replace) alt.back() = e;
    } else {
      alt.push_back(e);
    }
  }

  CycleSet cs;
  for (const Extremum& e : alt) {
    (e.is_max ? cs.maxima_idx : cs.minima_idx).push_back(e.idx);
  }
  if (cs.maxima_idx.size() < 2)
    throw NoCyclesError("fewer than 2 maxima detected");

  for (std::size_t k = 0; k + 1 < cs.maxima_idx.size(); ++k) {
    cs.periods.push_back(
        static_cast<double>(cs.maxima_idx[k + 1] - cs.maxima_idx[k]) /
        series.fps);
  }
  for (std::size_t k = 0; k + 1 < alt.size(); ++k) {
    cs.amplitudes.push_back(std::abs(alt[k + 1].value - alt[k].value));
  }
  return cs;
}

TimeSeries1D derivative(const TimeSeries1D& series, int order) {
  if (series.size() < 3) throw ValueError("derivative requires length >= 3");
  if (order != 1 && order != 2) throw ValueError("derivative order must be 1 or 2");

  const std::vector<double>& v = series.samples;
  const std::size_t n = v.size();
  TimeSeries1D out;
  out.fps = series.fps;
  out.t0 = series.t0;
  out.samples.resize(n);
  out.samples[0] = (v[1] - v[0]) * series.fps;
  out.samples[n - 1] = (v[n - 1] - v[n - 2]) * series.fps;
  for (std::size_t i = 1; i + 1 < n; ++i)
    out.samples[i] = (v[i + 1] - v[i - 1]) * series.fps * 0.5;

  return order == 1 ? out : derivative(out, 1);
}

VelocityAngle velocity_angle(const TimeSeries1D& x, const TimeSeries1D& y) {
  if (x.size() != y.size())
    throw ValueError("velocity_angle requires equal lengths");
  const TimeSeries1D dx = derivative(x, 1);
  const TimeSeries1D dy = derivative(y, 1);

  // Speeds at numerical-dust level (e.g. at turning points of an exactly
  // periodic trajectory) carry no direction; treat them as zero velocity.
  double peak = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    peak = std::max(peak, std::hypot(dx.samples[i], dy.samples[i]));
  const double floor = 1e-9 * peak;

  VelocityAngle va;
  va.angle.fps = x.fps;
  va.angle.t0 = x.t0;
  va.angle.samples.resize(x.size());
  va.valid.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool moving = std::hypot(dx.samples[i], dy.samples[i]) > floor;
    va.valid[i] = moving;
    va.angle.samples[i] =
        moving ? std::atan2(dy.samples[i], dx.samples[i]) : 0.0;
  }
  return va;
}

LagResult align_by_lag(const TimeSeries1D& a, const TimeSeries1D& b,
                       std::size_t max_lag) {
  if (a.size() != b.size())
    throw ValueError("align_by_lag requires equal lengths");
  const std::size_t n = a.size();
  if (max_lag >= n / 2) throw ValueError("max_lag must be < length/2");

  bool found = false;
  LagResult best;
  for (long lag = -static_cast<long>(max_lag);
       lag <= static_cast<long>(max_lag); ++lag) {
    const std::size_t lo = lag < 0 ? static_cast<std::size_t>(-lag) : 0;
    const std::size_t hi = lag > 0 ? n - static_cast<std::size_t>(lag) : n;
    std::vector<double> xs, ys;
    xs.reserve(hi - lo);
    ys.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
      xs.push_back(a.samples[i]);
      ys.push_back(b.samples[i + static_cast<std::size_t>(lag)]);
    }
    double cc;
    try {
      cc = pearson_cc(xs, ys);
    } catch (const DegenerateError&) {
      continue;
    } catch (const ValueError&) {
      continue;
    }
    const bool better =
        !found || cc > best.cc ||
        (cc == best.cc && (std::abs(lag) < std::abs(best.lag) ||
                           (std::abs(lag) == std::abs(best.lag) &&
                            lag < best.lag)));
    if (better) {
      best = {lag, cc};
      found = true;
    }
  }
  if (!found) throw DegenerateError("no lag yields a non-constant overlap");
  return best;
}

TimeSeries1D resample_linear(const TimeSeries1D& series, std::size_t n) {
  if (n < 2) throw ValueError("resample_linear requires n >= 2");
  if (series.size() < 2)
    throw ValueError("resample_linear requires length >= 2");

  const std::size_t len = series.size();
  TimeSeries1D out;
  out.t0 = series.t0;
  out.fps = static_cast<double>(n - 1) * series.fps /
            static_cast<double>(len - 1);
  out.samples.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double pos = static_cast<double>(j) *
                       static_cast<double>(len - 1) /
                       static_cast<double>(n - 1);
    const std::size_t i0 = std::min(static_cast<std::size_t>(pos), len - 2);
    const double frac = pos - static_cast<double>(i0);
    out.samples[j] =
        series.samples[i0] * (1.0 - frac) + series.samples[i0 + 1] * frac;
  }
  return out;
}

}  // namespace kinexam
