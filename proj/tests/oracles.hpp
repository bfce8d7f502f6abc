// Test-only reference implementations, independent of the library paths they
// check: sign-change root scans, endpoint-substitution trapezoid quadrature,
// characteristic-polynomial eigenvalue scans, and a 4x4 characteristic
// polynomial via the Faddeev-LeVerrier recursion.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracles {

constexpr double kPi = 3.14159265358979323846;

// Roots of f on [lo, hi] located by a sign-change scan at the given step and
// polished by plain bisection.
inline std::vector<double> bisection_grid_roots(
    const std::function<double(double)>& f, double lo, double hi, double step,
    double tol = 1e-13) {
    std::vector<double> roots;
    double a = lo;
    double fa = f(a);
    while (a < hi) {
        double b = std::min(a + step, hi);
        double fb = f(b);
        if (fa == 0.0) {
            roots.push_back(a);
        } else if (fa * fb < 0.0) {
            double x0 = a, x1 = b, f0 = fa;
            while (x1 - x0 > tol) {
                const double mid = 0.5 * (x0 + x1);
                const double fm = f(mid);
                if (f0 * fm <= 0.0)
                    x1 = mid;
                else {
                    x0 = mid;
                    f0 = fm;
                }
            }
            roots.push_back(0.5 * (x0 + x1));
        }
        a = b;
        fa = fb;
    }
    if (fa == 0.0 && (roots.empty() || roots.back() < hi)) roots.push_back(hi);
    return roots;
}

// int_a^b w(r) g(r) dr with w = sqrt((r-a)(b-r)) or its reciprocal, via the
// substitution r = a + (b-a) sin^2(theta) and a doubling refinement of the
// open (midpoint) trapezoid variant. The substitution removes both endpoint
// singularities; the open rule also never evaluates g at the endpoints, where
// callers may have removable 0/0 forms.
inline double substitution_trapezoid(const std::function<double(double)>& g,
                                     double a, double b, bool sqrt_weight,
                                     double rel_tol = 1e-12) {
    const double len = b - a;
    auto integrand = [&](double th) {
        const double s = std::sin(th), c = std::cos(th);
        const double r = a + len * s * s;
        // dr = 2 len s c dtheta; sqrt((r-a)(b-r)) = len s c.
        if (sqrt_weight) return 2.0 * len * len * s * s * c * c * g(r);
        return 2.0 * g(r);
    };
    auto midpoint = [&](int m) {
        double sum = 0.0;
        for (int i = 0; i < m; ++i)
            sum += integrand((i + 0.5) * kPi / (2.0 * m));
        return sum * kPi / (2.0 * m);
    };
    int n = 64;
    double prev = midpoint(n);
    for (int it = 0; it < 16; ++it) {
        n *= 2;
        const double cur = midpoint(n);
        if (std::fabs(cur - prev) <= rel_tol * std::max(1.0, std::fabs(cur)))
            return cur;
        prev = cur;
    }
    return prev;
}

// Characteristic polynomial det(T - x I) of a symmetric tridiagonal matrix
// by the classic three-term recurrence (no rescaling: for small test sizes).
inline double tridiag_charpoly(const std::vector<double>& d,
                               const std::vector<double>& e, double x) {
    double pm = 1.0;
    double pc = d[0] - x;
    for (std::size_t i = 1; i < d.size(); ++i) {
        const double pn = (d[i] - x) * pc - e[i - 1] * e[i - 1] * pm;
        pm = pc;
        pc = pn;
    }
    return pc;
}

// All eigenvalues in [lo, hi] of a small symmetric tridiagonal matrix,
// located by a fine sign-change grid on the characteristic polynomial.
inline std::vector<double> tridiag_eigs_charpoly(const std::vector<double>& d,
                                                 const std::vector<double>& e,
                                                 double lo, double hi,
                                                 int grid = 200000) {
    auto f = [&](double x) { return tridiag_charpoly(d, e, x); };
    return bisection_grid_roots(f, lo, hi, (hi - lo) / grid, 1e-14);
}

// Coefficients of det(x I - A) = x^4 + c3 x^3 + c2 x^2 + c1 x + c0 for a
// 4x4 matrix (Faddeev-LeVerrier).
inline std::array<double, 4> charpoly4(
    const std::array<std::array<double, 4>, 4>& a) {
    auto mul = [](const std::array<std::array<double, 4>, 4>& x,
                  const std::array<std::array<double, 4>, 4>& y) {
        std::array<std::array<double, 4>, 4> z{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) z[i][j] += x[i][k] * y[k][j];
        return z;
    };
    auto tr = [](const std::array<std::array<double, 4>, 4>& x) {
        return x[0][0] + x[1][1] + x[2][2] + x[3][3];
    };
    std::array<std::array<double, 4>, 4> m = a;
    const double c3 = -tr(m);
    auto add_diag = [](std::array<std::array<double, 4>, 4> x, double v) {
        for (int i = 0; i < 4; ++i) x[i][i] += v;
        return x;
    };
    m = mul(a, add_diag(m, c3));
    const double c2 = -tr(m) / 2.0;
    m = mul(a, add_diag(m, c2));
    const double c1 = -tr(m) / 3.0;
    m = mul(a, add_diag(m, c1));
    const double c0 = -tr(m) / 4.0;
    return {c3, c2, c1, c0};
}

inline std::complex<double> eval_charpoly4(const std::array<double, 4>& c,
                                           std::complex<double> x) {
    return (((x + c[0]) * x + c[1]) * x + c[2]) * x + c[3];
}

}  // namespace oracles
