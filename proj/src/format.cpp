#include "fracdiff/format.hpp"

#include <cstdio>

namespace fracdiff {

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace fracdiff
