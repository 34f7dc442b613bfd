#pragma once

#include <string>

namespace kinexam {

// Shortest decimal form that round-trips the exact double, for deterministic
// CSV/JSON emission.
std::string fmt_double(double v);

double parse_double_strict(const std::string& s);

}  // namespace kinexam
