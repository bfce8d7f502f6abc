#pragma once

#include <string>

#include "cbottle/quantum.hpp"

namespace cbottle::cli {

// Everything a command needs, resolved from the config file plus flags.
// The config file is flat `key = value` UTF-8 text; '#' starts a comment;
// unknown keys are errors. Flags override file values.
struct RunConfig {
    quantum::QuantumConfig q;

    // Classical monodromy loop (ellipse in the (E, j) plane).
    double loop_center_e = 0.2;
    double loop_center_j = 0.0;
    double loop_semi_e = 0.4;
    double loop_semi_j = 0.5;
    int loop_samples = 256;

    // Quantum/spectral transport loop.
    double qloop_center_e = 0.25;
    double qloop_center_j = 0.0;
    double qloop_semi_e = 0.40;
    double qloop_semi_j = 0.35;
    int qloop_samples = 256;

    // Tolerance overrides.
    double quad_rel_tol = 1e-10;
    double snap_fraction = 0.35;
    double round_tol = 0.2;

    std::string out_dir = ".";
    int threads = 0;  // 0 = library default
    long seed = 0;
    bool force = false;
    bool non_enclosing = false;

    void validate() const;
};

/// Parse `key = value` lines from path into cfg. Throws ConfigError for
/// unknown keys, malformed lines, or unreadable files.
void apply_config_file(RunConfig& cfg, const std::string& path);

/// One `key = value` line per setting, in a fixed order (used verbatim in
/// provenance headers).
std::string render_config(const RunConfig& cfg);

}  // namespace cbottle::cli
