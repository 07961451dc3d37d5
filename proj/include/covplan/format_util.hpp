#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace covplan {

// Shortest decimal form that parses back to the same double; keeps emitted
// files byte-stable across runs.
inline std::string format_double(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace covplan
