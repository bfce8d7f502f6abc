#pragma once

#include <span>
#include <vector>

#include "cbottle/classical.hpp"

namespace cbottle::lattice {

struct Vec2 {
    double x = 0.0, y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const;
};

// Anchor plus two basis vectors; all four parallelogram corners coincide
// with cloud points within the matching tolerance.
struct LatticeCell {
    Vec2 anchor;
    Vec2 v1, v2;
};

struct TransportResult {
    classical::IntMatrix2 matrix;
    std::vector<double> residuals;  // per-station fit residual, rescaled units
    int steps = 0;
    LatticeCell initial_cell;  // original coordinates
    LatticeCell final_cell;    // transported basis at the starting anchor
};

struct TransportOptions {
    double snap_fraction = 0.35;  // of min rescaled cell edge / lattice unit
    double round_tol = 0.2;       // max |entry - nearest integer|
    int min_fit_points = 4;       // points required for a frame fit
};

struct ConjugacyInvariants {
    int trace = 0;
    int det = 0;
    bool unipotent_nonidentity = false;  // (M - I)^2 = 0 and M != I
};

/// Basic cell of the cloud near anchor_hint, after rescaling coordinates by
/// (1/scale.x, 1/scale.y): the shortest neighbor offset plus the shortest
/// independent one completing a parallelogram present in the cloud. Returned
/// in original coordinates. Throws NumericalError("not locally a lattice").
LatticeCell estimate_cell(std::span<const Vec2> cloud, const Vec2& anchor_hint,
                          const Vec2& scale);

/// Parallel transport of cell0 around the closed loop. At each loop vertex
/// the frame is re-fit to the points of its 3x3 cell neighborhood (each point
/// snapped to the nearest integer lattice position, accepted within
/// snap_fraction of a cell); the basis is Gauss-reduced for navigation with
/// the integer change of basis undone in the result. The final basis is
/// expressed in the initial one and rounded; entry residuals >= round_tol
/// raise "non-integral holonomy", fit failures "transport broke at step k".
TransportResult transport_cell(std::span<const Vec2> cloud,
                               const LatticeCell& cell0,
                               std::span<const Vec2> loop, const Vec2& scale,
                               const TransportOptions& opt = {});

/// trace, det, and whether M is unipotent and not the identity.
/// Throws NumericalError unless det M = +-1.
ConjugacyInvariants conjugacy_invariants(const classical::IntMatrix2& m);

}  // namespace cbottle::lattice
