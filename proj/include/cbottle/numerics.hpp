#pragma once

#include <functional>
#include <vector>

namespace cbottle::numerics {

using Fn = std::function<double(double)>;

// a3*u^3 + a2*u^2 + a1*u + a0, real coefficients (monic not required).
struct Cubic {
    double a3 = 0.0, a2 = 0.0, a1 = 0.0, a0 = 0.0;

    double eval(double u) const { return ((a3 * u + a2) * u + a1) * u + a0; }
    double deriv(double u) const { return (3.0 * a3 * u + 2.0 * a2) * u + a1; }
};

/// All real roots, ascending, repeated according to multiplicity.
/// Closed form (trigonometric / Cardano) followed by a Newton polish;
/// falls back to the quadratic or linear formula when leading coefficients
/// vanish. Throws NumericalError("zero polynomial") if all coefficients do.
std::vector<double> cubic_real_roots(const Cubic& c);

/// int_a^b sqrt((r-a)(b-r)) g(r) dr by n-node Gauss-Chebyshev (second kind).
double integrate_sqrt_weight(const Fn& g, double a, double b, int n);

/// int_a^b g(r)/sqrt((r-a)(b-r)) dr by n-node Gauss-Chebyshev (first kind).
double integrate_inv_sqrt_weight(const Fn& g, double a, double b, int n);

// Node-doubling versions: start at n0 nodes and double until two successive
// results agree to rel_tol (relative to max(1,|I|)) or n exceeds n_max.
double integrate_sqrt_weight_adaptive(const Fn& g, double a, double b,
                                      double rel_tol = 1e-10, int n0 = 128,
                                      int n_max = 1 << 15);
double integrate_inv_sqrt_weight_adaptive(const Fn& g, double a, double b,
                                          double rel_tol = 1e-10, int n0 = 128,
                                          int n_max = 1 << 15);

// Symmetric tridiagonal matrix: diag[0..N), off[0..N-1) couples i and i+1.
struct TridiagonalSym {
    std::vector<double> diag;
    std::vector<double> off;

    int size() const { return static_cast<int>(diag.size()); }
};

/// Number of eigenvalues strictly below lambda: sign changes of the leading
/// principal minor sequence of T - lambda*I, rescaled every 32 steps so the
/// recurrence cannot overflow on large grids.
int sturm_count_below(const TridiagonalSym& t, double lambda);

/// All eigenvalues of t in (lo, hi), ascending. Each one is isolated by its
/// Sturm count and refined by bisection to relative tolerance rel_tol.
/// Clustered eigenvalues are emitted once per Sturm count, never merged.
std::vector<double> tridiag_eigenvalues(const TridiagonalSym& t, double lo,
                                        double hi, double rel_tol = 1e-12);

/// Brent's method on a bracket [a, b] with f(a)*f(b) < 0. Stops when
/// |f| <= 1e-13 * max(1,|f(a0)|,|f(b0)|) or the bracket narrows below
/// 1e-14 * max(|a|,|b|,1). Throws NumericalError when there is no sign change.
double brent_root(const Fn& f, double a, double b);

}  // namespace cbottle::numerics
