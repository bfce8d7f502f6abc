#pragma once

#include <string>
#include <vector>

#include "cbottle/classical.hpp"
#include "cbottle/lattice.hpp"
#include "cbottle/run_config.hpp"

namespace cbottle::cli {

// classical-scan: critical-curve CSV (r, E, j+, j-), image-boundary polyline
// CSV (E, j), potential profile CSV (r, V), and SVG figures for both curves.
void cmd_classical_scan(const RunConfig& cfg);

struct ClassicalMonodromyResult {
    classical::IntMatrix2 matrix;
    double winding = 0.0;  // accumulated delta-Theta over the loop
    bool trivial = false;
};

// classical-monodromy: Theta winding over the configured loop; writes the
// per-vertex Theta CSV and a text report.
ClassicalMonodromyResult cmd_classical_monodromy(const RunConfig& cfg);

// quantum-spectrum: joint spectrum CSV (m,n,E,j,re,im) and the scatter SVG
// of the rescaled perturbed spectrum.
void cmd_quantum_spectrum(const RunConfig& cfg);

struct QuantumMonodromyResult {
    classical::IntMatrix2 joint_matrix;
    classical::IntMatrix2 spectral_matrix;  // via chi^-1 of the P_eps lattice
    lattice::ConjugacyInvariants invariants;
    bool spectral_matches_joint = false;
};

// quantum-monodromy: transport on the joint spectrum and on chi^-1 of the
// perturbed spectrum; writes a report and an annotated SVG with the initial
// and final cells.
QuantumMonodromyResult cmd_quantum_monodromy(const RunConfig& cfg);

/// The loop used by the monodromy commands: the configured ellipse, or the
/// non-enclosing preset when cfg.non_enclosing is set.
std::vector<classical::EMValue> monodromy_loop(const RunConfig& cfg,
                                               bool quantum);

/// Sets the OpenMP thread cap when cfg.threads > 0.
void apply_thread_cap(const RunConfig& cfg);

}  // namespace cbottle::cli
