#pragma once

#include <vector>

#include "core/errors.hpp"

namespace kinexam {

// Mean/STD/median of a per-cycle quantity. STD is the population form
// (divide by n), so a single value summarizes to std 0.
struct StatSummary {
  double mean = 0.0;
  double std = 0.0;
  double median = 0.0;
  std::size_t count = 0;
};

double mean_of(const std::vector<double>& v);
double std_of(const std::vector<double>& v);
double median_of(std::vector<double> v);  // by value: sorts a copy
double min_of(const std::vector<double>& v);
double max_of(const std::vector<double>& v);

StatSummary summarize(const std::vector<double>& v);

}  // namespace kinexam
