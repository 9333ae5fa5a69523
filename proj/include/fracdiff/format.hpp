#pragma once

#include <string>

namespace fracdiff {

/// %.17g: enough digits to round-trip a double exactly, so repeated runs
/// emit byte-identical CSV.
std::string fmt_real(double v);

}  // namespace fracdiff
