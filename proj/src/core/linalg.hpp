#pragma once

#include <vector>

#include "core/errors.hpp"

namespace kinexam {

// Gaussian elimination with partial pivoting for small dense systems
// (row-major a of size n*n). Throws DegenerateError on a singular matrix.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b);

}  // namespace kinexam
