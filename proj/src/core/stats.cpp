#include "core/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kinexam {

double mean_of(const std::vector<double>& v) {
  if (v.empty()) throw ValueError("mean of empty set");
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v) {
  if (v.empty()) throw ValueError("std of empty set");
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

double median_of(std::vector<double> v) {
  if (v.empty()) throw ValueError("median of empty set");
  const std::size_t n = v.size();
  std::sort(v.begin(), v.end());
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double min_of(const std::vector<double>& v) {
  if (v.empty()) throw ValueError("min of empty set");
  return *std::min_element(v.begin(), v.end());
}

double max_of(const std::vector<double>& v) {
  if (v.empty()) throw ValueError("max of empty set");
  return *std::max_element(v.begin(), v.end());
}

StatSummary summarize(const std::vector<double>& v) {
  StatSummary s;
  s.mean = mean_of(v);
  s.std = std_of(v);
  s.median = median_of(v);
  s.count = v.size();
  return s;
}

}  // namespace kinexam
