#pragma once

#include <filesystem>
#include <string>

#include "fracdiff/marcher.hpp"

namespace fracdiff {

/// Parses the flat key=value config format. Keys: gamma, alpha, beta, dt, dx,
/// nx, ny, steps, strategy, L, a, eta, threshold, snapshot_every, init
/// (semicolon-separated j,l,value triples), out_dir. Blank lines and lines
/// starting with '#' are ignored. Unknown keys are rejected; strategy-specific
/// keys are required exactly when that strategy is selected. Diagnostics name
/// the offending line and key.
SimConfig parse_config(const std::string& text);

SimConfig parse_config_file(const std::filesystem::path& path);

/// Inverse of parse_config: emits every field with reals at 17 significant
/// digits, so parse_config(serialize_config(c)) == c.
std::string serialize_config(const SimConfig& cfg);

}  // namespace fracdiff
