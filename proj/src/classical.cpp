#include "cbottle/classical.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "cbottle/errors.hpp"
#include "cbottle/numerics.hpp"

namespace cbottle::classical {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHMin = -0.25;  // bottom of the circular well

using Mat4 = std::array<std::array<double, 4>, 4>;

double sq(double x) { return x * x; }

Mat4 d2_hamiltonian(const PhasePoint& p) {
    const double r2 = p.x1 * p.x1 + p.x2 * p.x2;
    Mat4 m{};
    m[0][0] = 4.0 * r2 + 8.0 * p.x1 * p.x1 - 2.0;
    m[1][1] = 4.0 * r2 + 8.0 * p.x2 * p.x2 - 2.0;
    m[0][1] = m[1][0] = 8.0 * p.x1 * p.x2;
    m[2][2] = m[3][3] = 1.0;
    return m;
}

Mat4 d2_angular_momentum() {
    // J = x1*xi2 - x2*xi1; constant Hessian.
    Mat4 m{};
    m[0][3] = m[3][0] = 1.0;
    m[1][2] = m[2][1] = -1.0;
    return m;
}

// A = J_symp * S: the linearization matrix of the flow whose Hamiltonian has
// Hessian S at the critical point (coordinates x1, x2, xi1, xi2).
Mat4 linearization_from_hessian(const Mat4& s) {
    Mat4 a{};
    for (int j = 0; j < 4; ++j) {
        a[0][j] = s[2][j];
        a[1][j] = s[3][j];
        a[2][j] = -s[0][j];
        a[3][j] = -s[1][j];
    }
    return a;
}

double trace_of_square(const Mat4& a) {
    double t = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t += a[i][j] * a[j][i];
    return t;
}

double det4(Mat4 a) {
    // Gaussian elimination with partial pivoting.
    double det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < 4; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int cc = col; cc < 4; ++cc) a[r][cc] -= f * a[col][cc];
        }
    }
    return det;
}

// Roots of z^2 - s z + p = 0 (z = lambda^2 for a Hamiltonian matrix whose
// characteristic polynomial is even).
std::pair<std::complex<double>, std::complex<double>> lambda_squared_roots(
    double s, double p) {
    const std::complex<double> disc = std::sqrt(std::complex<double>(
        s * s - 4.0 * p, 0.0));
    return {0.5 * (s + disc), 0.5 * (s - disc)};
}

std::array<std::complex<double>, 4> quadruple_from_hessian(const Mat4& hess) {
    const Mat4 a = linearization_from_hessian(hess);
    const double s = 0.5 * trace_of_square(a);
    const double p = det4(a);
    auto [z1, z2] = lambda_squared_roots(s, p);
    const std::complex<double> l1 = std::sqrt(z1);
    const std::complex<double> l2 = std::sqrt(z2);
    return {l1, -l1, l2, -l2};
}

// Roots u1 <= u2 <= u3 of the turning-point cubic 2u^3 - 2u^2 - 2Eu + j^2.
std::array<double, 3> turning_cubic_roots(const EMValue& c) {
    const numerics::Cubic cubic{2.0, -2.0, -2.0 * c.energy, c.j * c.j};
    const auto roots = numerics::cubic_real_roots(cubic);
    if (roots.size() != 3) throw NumericalError("no classical annulus");
    return {roots[0], roots[1], roots[2]};
}

}  // namespace

IntMatrix2 operator*(const IntMatrix2& lhs, const IntMatrix2& rhs) {
    return {lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
            lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d};
}

double hamiltonian(const PhasePoint& p) {
    const double r2 = p.x1 * p.x1 + p.x2 * p.x2;
    return 0.5 * (p.xi1 * p.xi1 + p.xi2 * p.xi2) + r2 * r2 - r2;
}

double angular_momentum(const PhasePoint& p) {
    return p.x1 * p.xi2 - p.x2 * p.xi1;
}

EMValue momentum_map(const PhasePoint& p) {
    return {hamiltonian(p), angular_momentum(p)};
}

std::array<double, 4> grad_hamiltonian(const PhasePoint& p) {
    const double r2 = p.x1 * p.x1 + p.x2 * p.x2;
    return {2.0 * p.x1 * (2.0 * r2 - 1.0), 2.0 * p.x2 * (2.0 * r2 - 1.0),
            p.xi1, p.xi2};
}

std::array<double, 4> grad_angular_momentum(const PhasePoint& p) {
    return {p.xi2, -p.xi1, -p.x2, p.x1};
}

double potential(double r) { return sq(sq(r)) - sq(r); }

double effective_potential(double r, double j) {
    if (!(r > 0.0)) throw NumericalError("effective_potential: r must be > 0");
    return 0.5 * j * j / (r * r) + potential(r);
}

std::vector<PhasePoint> integrate_flow(const PhasePoint& p0, double dt,
                                       int steps) {
    if (!(dt > 0.0)) throw NumericalError("integrate_flow: dt must be > 0");
    auto force = [](const PhasePoint& p, double& f1, double& f2) {
        const double r2 = p.x1 * p.x1 + p.x2 * p.x2;
        f1 = -2.0 * p.x1 * (2.0 * r2 - 1.0);
        f2 = -2.0 * p.x2 * (2.0 * r2 - 1.0);
    };
    std::vector<PhasePoint> traj;
    traj.reserve(steps + 1);
    PhasePoint p = p0;
    traj.push_back(p);
    double f1, f2;
    force(p, f1, f2);
    for (int k = 0; k < steps; ++k) {
        p.xi1 += 0.5 * dt * f1;
        p.xi2 += 0.5 * dt * f2;
        p.x1 += dt * p.xi1;
        p.x2 += dt * p.xi2;
        force(p, f1, f2);
        p.xi1 += 0.5 * dt * f1;
        p.xi2 += 0.5 * dt * f2;
        if (!std::isfinite(p.x1) || !std::isfinite(p.x2) ||
            !std::isfinite(p.xi1) || !std::isfinite(p.xi2))
            throw NumericalError("integrate_flow: state became non-finite");
        traj.push_back(p);
    }
    return traj;
}

double jmax_at_energy(double e) {
    if (e < kHMin) return 0.0;
    const double u = (1.0 + std::sqrt(1.0 + 3.0 * e)) / 3.0;
    return std::sqrt(std::max(0.0, 4.0 * u * u * u - 2.0 * u * u));
}

bool is_in_image(const EMValue& c) {
    return c.energy >= kHMin && std::fabs(c.j) <= jmax_at_energy(c.energy);
}

bool is_regular_value(const EMValue& c) {
    if (c.energy == 0.0 && c.j == 0.0) return false;
    return c.energy > kHMin && std::fabs(c.j) < jmax_at_energy(c.energy);
}

CriticalPair critical_value_curve(double r) {
    constexpr double r_min = 0.70710678118654752440;  // 1/sqrt(2)
    if (r < r_min * (1.0 - 1e-12))
        throw NumericalError("critical_value_curve: r below 1/sqrt(2)");
    const double u = r * r;
    // Both components vanish to first order through delta = u - 1/2; inputs
    // within a rounding of 1/sqrt(2) are snapped onto the exact endpoint
    // (j has infinite slope in r there, so the raw formula would turn one
    // ulp of input error into ~1e-8 of j).
    double delta = std::max(0.0, u - 0.5);
    if (delta < 8.0 * std::numeric_limits<double>::epsilon()) delta = 0.0;
    const double e = -0.25 + delta * (3.0 * u - 0.5);
    const double j = 2.0 * u * std::sqrt(delta);
    return {{e, j}, {e, -j}};
}

PhasePoint critical_point_on_curve(double r, int sign) {
    const auto pair = critical_value_curve(r);
    const double j = (sign >= 0) ? pair.plus.j : pair.minus.j;
    return {r, 0.0, 0.0, j / r};
}

std::pair<double, double> turning_points(const EMValue& c) {
    if (!is_regular_value(c)) throw NumericalError("no classical annulus");
    const auto [u1, u2, u3] = turning_cubic_roots(c);
    if (!(u3 > u2) || u3 <= 0.0) throw NumericalError("no classical annulus");
    return {std::sqrt(std::max(0.0, u2)), std::sqrt(u3)};
}

std::array<std::complex<double>, 4> linearization_eigenvalues(
    const PhasePoint& p, double b) {
    Mat4 hess = d2_hamiltonian(p);
    const Mat4 dj = d2_angular_momentum();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) hess[i][j] += b * dj[i][j];
    return quadruple_from_hessian(hess);
}

SingularityType classify_point(const PhasePoint& p, double tol) {
    const auto gh = grad_hamiltonian(p);
    const auto gj = grad_angular_momentum(p);
    double nh = 0.0, nj = 0.0, dot = 0.0;
    for (int i = 0; i < 4; ++i) {
        nh += gh[i] * gh[i];
        nj += gj[i] * gj[i];
        dot += gh[i] * gj[i];
    }
    nh = std::sqrt(nh);
    nj = std::sqrt(nj);
    const double pscale = std::max({1.0, std::fabs(p.x1), std::fabs(p.x2),
                                    std::fabs(p.xi1), std::fabs(p.xi2)});

    if (nh <= tol * pscale && nj <= tol * pscale) {
        // Rank 0: classify the H + b*J linearization by its lambda^2 roots.
        for (double b : {1.0, std::sqrt(2.0) / 3.0}) {
            Mat4 hess = d2_hamiltonian(p);
            const Mat4 dj = d2_angular_momentum();
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) hess[i][j] += b * dj[i][j];
            const Mat4 a = linearization_from_hessian(hess);
            auto [z1, z2] =
                lambda_squared_roots(0.5 * trace_of_square(a), det4(a));
            const double zmag = std::max({std::abs(z1), std::abs(z2), 1.0});
            if (std::fabs(z1.imag()) > 1e-8 * zmag &&
                std::fabs(z2.imag()) > 1e-8 * zmag)
                return SingularityType::RankZeroFocusFocus;
        }
        throw NumericalError("degenerate");
    }

    if (nj > tol * pscale) {
        const double lambda = dot / (nj * nj);
        double resid = 0.0;
        for (int i = 0; i < 4; ++i) resid += sq(gh[i] - lambda * gj[i]);
        resid = std::sqrt(resid);
        if (resid <= tol * std::max({nh, nj, 1.0})) {
            // Rank 1: transverse Hessian of K = H - lambda*J must be elliptic,
            // i.e. lambda^2 roots {0, -omega^2}.
            Mat4 hess = d2_hamiltonian(p);
            const Mat4 dj = d2_angular_momentum();
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) hess[i][j] -= lambda * dj[i][j];
            const Mat4 a = linearization_from_hessian(hess);
            auto [z1, z2] =
                lambda_squared_roots(0.5 * trace_of_square(a), det4(a));
            if (std::abs(z1) < std::abs(z2)) std::swap(z1, z2);  // z1 = big
            const double zmag = std::max(std::abs(z1), 1.0);
            const bool small_is_zero = std::abs(z2) <= 1e-6 * zmag;
            const bool big_is_negative_real =
                z1.real() < 0.0 && std::fabs(z1.imag()) <= 1e-6 * zmag;
            if (small_is_zero && big_is_negative_real)
                return SingularityType::RankOneTransverseElliptic;
            throw NumericalError("degenerate");
        }
    }
    return SingularityType::Regular;
}

ActionData action_data(const EMValue& c, double quad_rel_tol) {
    if (!is_regular_value(c)) throw NumericalError("not a regular value");
    const auto [u1, u2, u3] = turning_cubic_roots(c);
    if (!(u3 > u2)) throw NumericalError("no classical annulus");

    ActionData out;
    if (c.j == 0.0 && c.energy > 0.0) {
        // r_min = 0: integrate over the symmetric interval [-r_max, r_max],
        // where 2(E - V) = 2(r^2 - u1)(r_max^2 - r^2) and u1 < 0.
        const double b = std::sqrt(u3);
        const double um = u1;
        auto g_act = [um](double r) { return std::sqrt(2.0 * (r * r - um)); };
        auto g_per = [um](double r) {
            return 1.0 / std::sqrt(2.0 * (r * r - um));
        };
        out.radial_action =
            numerics::integrate_sqrt_weight_adaptive(g_act, -b, b,
                                                     quad_rel_tol) /
            (2.0 * kPi);
        out.radial_period = numerics::integrate_inv_sqrt_weight_adaptive(
            g_per, -b, b, quad_rel_tol);
        out.rotation_angle = 0.0;
        return out;
    }

    // In u = r^2: 2(E - V_eff) = 2(u - u1)(u - u2)(u3 - u)/u on [u2, u3].
    auto g_act = [u1](double u) {
        return std::sqrt(2.0 * (u - u1)) / (2.0 * u);
    };
    auto g_per = [u1](double u) { return 1.0 / std::sqrt(2.0 * (u - u1)); };
    auto g_rot = [u1](double u) {
        return 1.0 / (u * std::sqrt(2.0 * (u - u1)));
    };
    out.radial_action = numerics::integrate_sqrt_weight_adaptive(
                            g_act, u2, u3, quad_rel_tol) /
                        kPi;
    out.radial_period = numerics::integrate_inv_sqrt_weight_adaptive(
        g_per, u2, u3, quad_rel_tol);
    out.rotation_angle = c.j * numerics::integrate_inv_sqrt_weight_adaptive(
                                   g_rot, u2, u3, quad_rel_tol);
    return out;
}

double winding_angle(std::span<const EMValue> loop, double quad_rel_tol) {
    const int n = static_cast<int>(loop.size());
    if (n < 3) throw NumericalError("winding_angle: loop too short");
    std::vector<double> theta(n);
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            theta[i] = action_data(loop[i], quad_rel_tol).rotation_angle;
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double d = theta[(i + 1) % n] - theta[i];
        while (d > kPi) d -= 2.0 * kPi;
        while (d <= -kPi) d += 2.0 * kPi;
        if (std::fabs(d) >= kPi / 2.0) throw NumericalError("refine loop");
        total += d;
    }
    return total;
}

IntMatrix2 classical_monodromy(std::span<const EMValue> loop,
                               double quad_rel_tol) {
    for (const auto& c : loop)
        if (!is_regular_value(c))
            throw NumericalError("loop touches non-regular value");
    const double w = winding_angle(loop, quad_rel_tol);
    const double k = w / (2.0 * kPi);
    const int ki = static_cast<int>(std::lround(k));
    if (std::fabs(k - ki) > 1e-3)
        throw NumericalError("winding not an integer multiple of 2*pi");
    return {1, 0, ki, 1};
}

std::vector<EMValue> ellipse_loop(const EMValue& center, double semi_e,
                                  double semi_j, int n) {
    if (n < 8) throw NumericalError("ellipse_loop: too few samples");
    std::vector<EMValue> loop;
    loop.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * (i + 0.5) / n;
        loop.push_back({center.energy + semi_e * std::cos(t),
                        center.j + semi_j * std::sin(t)});
    }
    return loop;
}

}  // namespace cbottle::classical
