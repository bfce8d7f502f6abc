#include "cbottle/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cbottle/errors.hpp"

namespace cbottle::numerics {

namespace {

constexpr double kPi = 3.14159265358979323846;

// One or two Newton steps against the original cubic; keeps the closed-form
// value when the iteration does not reduce |p|.
double polish(const Cubic& c, double u) {
    for (int it = 0; it < 3; ++it) {
        const double f = c.eval(u);
        const double df = c.deriv(u);
        if (df == 0.0) break;
        const double step = f / df;
        const double u2 = u - step;
        if (!std::isfinite(u2) || std::fabs(c.eval(u2)) >= std::fabs(f)) break;
        u = u2;
    }
    return u;
}

std::vector<double> quadratic_real_roots(double a, double b, double c) {
    std::vector<double> roots;
    if (a == 0.0) {
        if (b != 0.0) roots.push_back(-c / b);
        return roots;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return roots;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    if (q != 0.0) {
        roots.push_back(q / a);
        roots.push_back(c / q);
    } else {
        roots.push_back(0.0);
        roots.push_back(-b / a);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace

std::vector<double> cubic_real_roots(const Cubic& c) {
    const double scale = std::max({std::fabs(c.a3), std::fabs(c.a2),
                                   std::fabs(c.a1), std::fabs(c.a0)});
    if (scale == 0.0) throw NumericalError("zero polynomial");
    if (std::fabs(c.a3) <= 1e-14 * scale)
        return quadratic_real_roots(c.a2, c.a1, c.a0);

    // Depressed form t^3 + p t + q with u = t - b/3.
    const double b = c.a2 / c.a3;
    const double cc = c.a1 / c.a3;
    const double d = c.a0 / c.a3;
    const double shift = b / 3.0;
    const double p = cc - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * cc / 3.0 + d;
    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    const double disc_scale =
        std::max(std::fabs(p) * p * p, 27.0 * q * q) + 1e-300;

    std::vector<double> roots;
    if (std::fabs(disc) <= 1e-12 * std::fabs(disc_scale)) {
        // Multiple roots.
        if (std::fabs(p) <= 1e-12 * std::max(1.0, b * b)) {
            roots = {-shift, -shift, -shift};  // triple
        } else {
            const double dbl = -3.0 * q / (2.0 * p);
            const double simple = 3.0 * q / p;
            roots = {dbl - shift, dbl - shift, polish(c, simple - shift)};
        }
    } else if (disc > 0.0) {
        // Three distinct real roots, trigonometric form.
        const double m = 2.0 * std::sqrt(-p / 3.0);
        double arg = 3.0 * q / (p * m);
        arg = std::clamp(arg, -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            roots.push_back(
                polish(c, m * std::cos(theta - 2.0 * kPi * k / 3.0) - shift));
    } else {
        // One real root, Cardano in a cancellation-safe arrangement.
        const double w = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        const double s = (q >= 0.0) ? -q / 2.0 - w : -q / 2.0 + w;
        const double t1 = std::cbrt(s);
        const double t = (t1 != 0.0) ? t1 - p / (3.0 * t1) : 0.0;
        roots.push_back(polish(c, t - shift));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

double integrate_sqrt_weight(const Fn& g, double a, double b, int n) {
    if (!(a < b)) throw NumericalError("empty interval");
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double th = i * kPi / (n + 1);
        const double s = std::sin(th);
        sum += s * s * g(mid + half * std::cos(th));
    }
    return half * half * kPi / (n + 1) * sum;
}

double integrate_inv_sqrt_weight(const Fn& g, double a, double b, int n) {
    if (!(a < b)) throw NumericalError("empty interval");
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double th = (2.0 * i - 1.0) * kPi / (2.0 * n);
        sum += g(mid + half * std::cos(th));
    }
    return kPi / n * sum;
}

namespace {

double adapt(const std::function<double(int)>& rule, double rel_tol, int n0,
             int n_max) {
    double prev = rule(n0);
    for (int n = 2 * n0; n <= n_max; n *= 2) {
        const double cur = rule(n);
        if (std::fabs(cur - prev) <= rel_tol * std::max(1.0, std::fabs(cur)))
            return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace

double integrate_sqrt_weight_adaptive(const Fn& g, double a, double b,
                                      double rel_tol, int n0, int n_max) {
    return adapt([&](int n) { return integrate_sqrt_weight(g, a, b, n); },
                 rel_tol, n0, n_max);
}

double integrate_inv_sqrt_weight_adaptive(const Fn& g, double a, double b,
                                          double rel_tol, int n0, int n_max) {
    return adapt([&](int n) { return integrate_inv_sqrt_weight(g, a, b, n); },
                 rel_tol, n0, n_max);
}

int sturm_count_below(const TridiagonalSym& t, double lambda) {
    const int n = t.size();
    if (n == 0) return 0;
    double prev = 1.0;
    double cur = t.diag[0] - lambda;
    if (cur == 0.0) cur = -std::numeric_limits<double>::min();
    int count = (cur < 0.0) ? 1 : 0;
    for (int i = 1; i < n; ++i) {
        double next =
            (t.diag[i] - lambda) * cur - t.off[i - 1] * t.off[i - 1] * prev;
        if (next == 0.0)
            next = -std::numeric_limits<double>::min() * (cur < 0.0 ? -1.0 : 1.0);
        if ((next < 0.0) != (cur < 0.0)) ++count;
        prev = cur;
        cur = next;
        if (i % 32 == 0) {
            const double s = std::max(std::fabs(prev), std::fabs(cur));
            if (s > 0.0) {
                prev /= s;
                cur /= s;
            }
        }
    }
    return count;
}

std::vector<double> tridiag_eigenvalues(const TridiagonalSym& t, double lo,
                                        double hi, double rel_tol) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw NumericalError("bad eigenvalue window");
    const int below_lo = sturm_count_below(t, lo);
    const int below_hi = sturm_count_below(t, hi);
    std::vector<double> out;
    out.reserve(below_hi - below_lo);
    for (int k = below_lo; k < below_hi; ++k) {
        double a = lo, b = hi;
        for (int it = 0; it < 200; ++it) {
            if (b - a <= rel_tol * std::max({1.0, std::fabs(a), std::fabs(b)}))
                break;
            const double mid = 0.5 * (a + b);
            if (sturm_count_below(t, mid) > k)
                b = mid;
            else
                a = mid;
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

double brent_root(const Fn& f, double a, double b) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw NumericalError("brent_root: no sign change");
    const double fscale = std::max({1.0, std::fabs(fa), std::fabs(fb)});

    double c = a, fc = fa;
    double e = b - a, dstep = e;
    for (int it = 0; it < 200; ++it) {
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol =
            1e-14 * std::max({std::fabs(a), std::fabs(b), 1.0});
        const double xm = 0.5 * (c - b);
        if (std::fabs(fb) <= 1e-13 * fscale || std::fabs(xm) <= tol) return b;
        if (std::fabs(e) >= tol && std::fabs(fa) > std::fabs(fb)) {
            // Inverse quadratic / secant step.
            const double s = fb / fa;
            double pp, qq;
            if (a == c) {
                pp = 2.0 * xm * s;
                qq = 1.0 - s;
            } else {
                const double q0 = fa / fc;
                const double r0 = fb / fc;
                pp = s * (2.0 * xm * q0 * (q0 - r0) - (b - a) * (r0 - 1.0));
                qq = (q0 - 1.0) * (r0 - 1.0) * (s - 1.0);
            }
            if (pp > 0.0) qq = -qq;
            pp = std::fabs(pp);
            if (2.0 * pp < std::min(3.0 * xm * qq - std::fabs(tol * qq),
                                    std::fabs(e * qq))) {
                e = dstep;
                dstep = pp / qq;
            } else {
                dstep = xm;
                e = dstep;
            }
        } else {
            dstep = xm;
            e = dstep;
        }
        a = b;
        fa = fb;
        b += (std::fabs(dstep) > tol) ? dstep : (xm > 0.0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            e = dstep = b - a;
        }
    }
    return b;
}

}  // namespace cbottle::numerics
