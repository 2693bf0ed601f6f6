#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nslab/config.hpp"

namespace nslab {

inline constexpr const char* kToolVersion = "nslab 0.1.0";

struct RunOptions {
    std::string out_dir;
    int jobs = 0;  // 0 = hardware concurrency
};

// Each subcommand writes its CSV/JSON outputs plus a manifest.json into
// out_dir and returns 0 when every asserted property passed.
int cmd_constants(const LabConfig& cfg, const RunOptions& opt);
int cmd_noise_check(const LabConfig& cfg, const RunOptions& opt);
int cmd_checks(const LabConfig& cfg, const RunOptions& opt);
int cmd_converge(const LabConfig& cfg, const RunOptions& opt);
int cmd_simulate(const LabConfig& cfg, const RunOptions& opt);

// Deterministic chunked parallel map: results are merged in chunk order, so
// the output is independent of thread scheduling.
void parallel_chunks(int n_items, int jobs, const std::function<void(int)>& fn);

}  // namespace nslab
