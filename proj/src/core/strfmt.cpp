#include "core/strfmt.hpp"

#include <cstdlib>

#include <json.hpp>

#include "core/errors.hpp"

namespace kinexam {

std::string fmt_double(double v) { return nlohmann::json(v).dump(); }

double parse_double_strict(const std::string& s) {
  if (s.empty()) throw ParseError("empty numeric field");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw ParseError("invalid numeric field: " + s);
  return v;
}

}  // namespace kinexam
