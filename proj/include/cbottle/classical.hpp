#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace cbottle::classical {

// Point (x1, x2, xi1, xi2) of the four-dimensional phase space.
struct PhasePoint {
    double x1 = 0.0, x2 = 0.0, xi1 = 0.0, xi2 = 0.0;
};

// Value c = (E, j) of the momentum map (energy, angular momentum).
struct EMValue {
    double energy = 0.0;
    double j = 0.0;
};

enum class SingularityType {
    Regular,
    RankOneTransverseElliptic,
    RankZeroFocusFocus,
};

// Radial action, radial period, and rotation angle per radial period
// at a regular value of the momentum map.
struct ActionData {
    double radial_action = 0.0;   // I_r
    double radial_period = 0.0;   // T_r
    double rotation_angle = 0.0;  // Theta, radians, sign(Theta) = sign(j)
};

// 2x2 integer matrix; monodromy outputs always have det = +-1.
struct IntMatrix2 {
    int a = 1, b = 0, c = 0, d = 1;

    int det() const { return a * d - b * c; }
    int trace() const { return a + d; }
    bool operator==(const IntMatrix2&) const = default;
};

IntMatrix2 operator*(const IntMatrix2& lhs, const IntMatrix2& rhs);

double hamiltonian(const PhasePoint& p);
double angular_momentum(const PhasePoint& p);
EMValue momentum_map(const PhasePoint& p);

// Gradients in the order (x1, x2, xi1, xi2).
std::array<double, 4> grad_hamiltonian(const PhasePoint& p);
std::array<double, 4> grad_angular_momentum(const PhasePoint& p);

/// V(r) = r^4 - r^2.
double potential(double r);

/// V_eff(r) = j^2/(2 r^2) + r^4 - r^2 for r > 0.
double effective_potential(double r, double j);

/// Symplectic leapfrog trajectory of the H-flow, including the start point;
/// energy and angular momentum drift O(dt^2). Throws on non-finite states.
std::vector<PhasePoint> integrate_flow(const PhasePoint& p0, double dt,
                                       int steps);

/// Largest |j| in the image of the momentum map at energy e (boundary curve).
double jmax_at_energy(double e);

/// Inside the image of the momentum map (boundary included).
bool is_in_image(const EMValue& c);

/// Strictly inside the image, off the boundary curve, and not the
/// focus-focus value (0, 0).
bool is_regular_value(const EMValue& c);

// Both critical values at parameter r >= 1/sqrt(2): energy 3r^4 - 2r^2 and
// angular momentum +-sqrt(4r^6 - 2r^4). The component ordering is fixed by
// the rank-1 condition dH = lambda dJ, not by either printed convention.
struct CriticalPair {
    EMValue plus;
    EMValue minus;
};
CriticalPair critical_value_curve(double r);

/// A phase-space point generating the rank-1 critical value at parameter r
/// (sign picks the branch of j). Satisfies dH = lambda dJ with
/// lambda = sign * sqrt(4r^2 - 2).
PhasePoint critical_point_on_curve(double r, int sign);

/// Radial turning points (r_min, r_max) of a regular value: the top two roots
/// of 2u^3 - 2u^2 - 2Eu + j^2 in u = r^2. Throws NumericalError
/// ("no classical annulus") outside the regular region.
std::pair<double, double> turning_points(const EMValue& c);

/// Eigenvalues of the linearized flow of H + b*J at a rank-0 critical point.
std::array<std::complex<double>, 4> linearization_eigenvalues(
    const PhasePoint& p, double b);

/// Classify a (numerically) critical point by the eigenvalue pattern of the
/// linearization; regular points return Regular. Throws
/// NumericalError("degenerate") when the nondegeneracy test fails.
SingularityType classify_point(const PhasePoint& p, double tol = 1e-9);

/// I_r, T_r, Theta at a regular value. The square-root turning-point factors
/// are peeled off analytically and the remaining smooth factors integrated by
/// the weighted Gauss rules (node count doubled until two results agree to
/// quad_rel_tol); Theta(E, 0) = 0 by the odd-in-j convention.
ActionData action_data(const EMValue& c, double quad_rel_tol = 1e-10);

/// Accumulated continuous variation of Theta along a closed polyline of
/// regular values (unwrapped modulo 2*pi between consecutive samples).
/// Throws when a vertex is non-regular or a step is too coarse to unwrap.
double winding_angle(std::span<const EMValue> loop,
                     double quad_rel_tol = 1e-10);

/// Monodromy in the cycle basis (S^1-orbit cycle, radial cycle):
/// [[1,0],[k,1]] with 2*pi*k the accumulated winding of Theta.
IntMatrix2 classical_monodromy(std::span<const EMValue> loop,
                               double quad_rel_tol = 1e-10);

/// Ellipse with the given center and semi-axes, sampled at n parameter
/// values offset by half a step (no vertex falls exactly on j = 0).
std::vector<EMValue> ellipse_loop(const EMValue& center, double semi_e,
                                  double semi_j, int n);

}  // namespace cbottle::classical
