#include "cbottle/quantum.hpp"

#include <algorithm>
#include <cmath>

#include "cbottle/classical.hpp"
#include "cbottle/errors.hpp"

namespace cbottle::quantum {

namespace {

// Window for the sector eigensolve. The spectrum is bounded below by
// -1/4 - O(h); -0.5 leaves ample slack at any h <= 1.
constexpr double kLambdaLo = -0.5;

int estimate_m_max(const QuantumConfig& cfg) {
    const double jtop = classical::jmax_at_energy(cfg.e_max);
    return static_cast<int>(std::ceil(jtop / cfg.h)) + 3;
}

}  // namespace

void QuantumConfig::validate() const {
    if (!(h > 0.0)) throw ConfigError("quantum config: h must be > 0");
    if (epsilon < 0.0) throw ConfigError("quantum config: epsilon must be >= 0");
    if (grid_n < 200) throw ConfigError("quantum config: grid_n must be >= 200");
    const double wall = radius * radius * radius * radius - radius * radius;
    if (wall < e_max + 1.0)
        throw ConfigError(
            "quantum config: V(radius) must exceed e_max by at least 1");
}

numerics::TridiagonalSym radial_matrix(int m, const QuantumConfig& cfg) {
    const int n = cfg.grid_n;
    const double dr = cfg.radius / n;
    const double kin = cfg.h * cfg.h / (dr * dr);
    const double ang = (static_cast<double>(m) * m - 0.25) * cfg.h * cfg.h / 2.0;
    numerics::TridiagonalSym t;
    t.diag.resize(n);
    t.off.assign(n - 1, -0.5 * kin);
    for (int i = 0; i < n; ++i) {
        const double r = (i + 0.5) * dr;
        t.diag[i] = kin + ang / (r * r) + classical::potential(r);
    }
    return t;
}

std::vector<double> sector_eigenvalues(int m, const QuantumConfig& cfg) {
    cfg.validate();
    return numerics::tridiag_eigenvalues(radial_matrix(m, cfg), kLambdaLo,
                                         cfg.e_max);
}

int auto_m_max(const QuantumConfig& cfg) {
    if (cfg.m_max >= 0) return cfg.m_max;
    // The sector bottom rises monotonically for m >= 1; a Sturm count at
    // e_max detects the first empty sector without a full solve.
    const int hard_cap = 4 * estimate_m_max(cfg) + 16;
    for (int m = 1; m <= hard_cap; ++m) {
        if (numerics::sturm_count_below(radial_matrix(m, cfg), cfg.e_max) == 0)
            return m - 1;
    }
    return hard_cap;
}

namespace {

std::vector<SpectrumPoint> assemble(
    const QuantumConfig& cfg, const std::vector<std::vector<double>>& sectors) {
    std::vector<SpectrumPoint> out;
    const int m_top = static_cast<int>(sectors.size()) - 1;
    for (int m = -m_top; m <= m_top; ++m) {
        const auto& eigs = sectors[std::abs(m)];
        for (int n = 0; n < static_cast<int>(eigs.size()); ++n)
            out.push_back({n, m, eigs[n], m * cfg.h});
    }
    return out;
}

}  // namespace

std::vector<SpectrumPoint> joint_spectrum(const QuantumConfig& cfg) {
    cfg.validate();
    const int m_top = auto_m_max(cfg);
    std::vector<std::vector<double>> sectors(m_top + 1);
#pragma omp parallel for schedule(dynamic)
    for (int m = 0; m <= m_top; ++m) sectors[m] = sector_eigenvalues(m, cfg);
    return assemble(cfg, sectors);
}

std::vector<SpectrumPoint> joint_spectrum_serial(const QuantumConfig& cfg) {
    cfg.validate();
    const int m_top = auto_m_max(cfg);
    std::vector<std::vector<double>> sectors(m_top + 1);
    for (int m = 0; m <= m_top; ++m) sectors[m] = sector_eigenvalues(m, cfg);
    return assemble(cfg, sectors);
}

std::vector<ComplexSpectrumPoint> perturbed_spectrum(
    const std::vector<SpectrumPoint>& js, double epsilon) {
    if (epsilon < 0.0) throw NumericalError("perturbed_spectrum: epsilon < 0");
    std::vector<ComplexSpectrumPoint> out;
    out.reserve(js.size());
    for (const auto& p : js) out.push_back({p.energy, epsilon * p.j});
    return out;
}

std::array<double, 2> chi(const std::array<double, 2>& u, double epsilon) {
    return {u[0], epsilon * u[1]};
}

std::array<double, 2> chi_inverse(const std::array<double, 2>& u,
                                  double epsilon) {
    if (epsilon == 0.0) throw NumericalError("chi_inverse: epsilon is zero");
    return {u[0], u[1] / epsilon};
}

}  // namespace cbottle::quantum
