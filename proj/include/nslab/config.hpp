#pragma once

#include <string>

#include "nslab/solver.hpp"

namespace nslab {

// Flat key=value run configuration.  Recognized keys:
//   preset, N, eps, dt, T, z, delta, a, b, L0, seed, L, out_dir
// '#' starts a comment; blank lines are skipped; unknown keys are rejected
// with a line diagnostic.
struct LabConfig {
    SimConfig sim;
    std::string out_dir = ".";
};

LabConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");
LabConfig parse_config_file(const std::string& path);

std::string config_to_string(const LabConfig& cfg);

}  // namespace nslab
