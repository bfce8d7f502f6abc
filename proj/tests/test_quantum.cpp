#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cbottle/classical.hpp"
#include "cbottle/errors.hpp"
#include "cbottle/quantum.hpp"

using namespace cbottle;
using quantum::QuantumConfig;

namespace {

constexpr double kPi_q = 3.14159265358979323846;

QuantumConfig small_cfg() {
    QuantumConfig cfg;
    cfg.grid_n = 800;
    cfg.e_max = 0.8;
    return cfg;
}

}  // namespace

TEST_CASE("config validation") {
    QuantumConfig bad;
    bad.h = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = QuantumConfig{};
    bad.grid_n = 50;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = QuantumConfig{};
    bad.radius = 1.2;  // V(R) too small for the default e_max
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    CHECK_NOTHROW(QuantumConfig{}.validate());
}

TEST_CASE("radial matrix: hand-computed N=3 entries and m symmetry") {
    // h = 1, R = 3, N = 3: dr = 1, grid r = 0.5, 1.5, 2.5.
    QuantumConfig cfg;
    cfg.h = 1.0;
    cfg.radius = 3.0;
    cfg.grid_n = 3;
    const auto t = quantum::radial_matrix(0, cfg);
    REQUIRE(t.size() == 3);
    // diag = 1/dr^2 - 1/(8 r^2) + r^4 - r^2
    CHECK(t.diag[0] == doctest::Approx(1.0 - 0.5 + 0.0625 - 0.25).epsilon(1e-15));
    CHECK(t.diag[1] ==
          doctest::Approx(1.0 - 0.125 / 2.25 + 5.0625 - 2.25).epsilon(1e-15));
    CHECK(t.diag[2] ==
          doctest::Approx(1.0 - 0.125 / 6.25 + 39.0625 - 6.25).epsilon(1e-15));
    CHECK(t.off[0] == -0.5);
    CHECK(t.off[1] == -0.5);

    QuantumConfig real_cfg = small_cfg();
    const auto a = quantum::radial_matrix(2, real_cfg);
    const auto b = quantum::radial_matrix(-2, real_cfg);
    REQUIRE(a.diag.size() == b.diag.size());
    for (std::size_t i = 0; i < a.diag.size(); ++i)
        CHECK(a.diag[i] == b.diag[i]);  // bitwise
    // check a middle entry against the formula
    const double dr2 = real_cfg.radius / real_cfg.grid_n;
    const int i = 100;
    const double r = (i + 0.5) * dr2;
    const double expect = real_cfg.h * real_cfg.h / (dr2 * dr2) +
                          (4.0 - 0.25) * real_cfg.h * real_cfg.h /
                              (2.0 * r * r) +
                          (r * r * r * r - r * r);
    CHECK(a.diag[i] == doctest::Approx(expect).epsilon(1e-15));
    CHECK(a.off[i] == doctest::Approx(-0.5 * real_cfg.h * real_cfg.h /
                                      (dr2 * dr2)).epsilon(1e-15));
}

TEST_CASE("sector eigenvalues: symmetry, bounds, interlacing") {
    const auto cfg = small_cfg();
    const auto e1 = quantum::sector_eigenvalues(1, cfg);
    const auto e1m = quantum::sector_eigenvalues(-1, cfg);
    REQUIRE(e1.size() == e1m.size());
    for (std::size_t i = 0; i < e1.size(); ++i) CHECK(e1[i] == e1m[i]);

    REQUIRE(e1.size() >= 2);
    for (std::size_t i = 0; i + 1 < e1.size(); ++i) CHECK(e1[i] < e1[i + 1]);
    for (double e : e1) {
        CHECK(e >= -0.26);
        CHECK(e <= cfg.e_max);
    }
}

TEST_CASE("ground level near -1/4 + h at h = 0.05") {
    QuantumConfig cfg;
    cfg.h = 0.05;
    cfg.grid_n = 8000;
    cfg.e_max = 0.0;
    const auto eigs = quantum::sector_eigenvalues(0, cfg);
    REQUIRE(!eigs.empty());
    // harmonic approximation at the well bottom: omega = sqrt(V''(r0)) = 2
    CHECK(std::fabs(eigs[0] - (-0.25 + cfg.h)) <= 0.1 * cfg.h);
}

TEST_CASE("no eigenvalue below -1/4 - 0.01 at h <= 0.1") {
    for (double h : {0.1, 0.05}) {
        QuantumConfig cfg = small_cfg();
        cfg.h = h;
        for (int m : {0, 1, 3}) {
            const auto eigs = quantum::sector_eigenvalues(m, cfg);
            for (double e : eigs) CHECK(e >= -0.26);
        }
    }
}

TEST_CASE("grid convergence is second order away from m = 0") {
    QuantumConfig cfg;
    cfg.e_max = 0.8;
    cfg.h = 0.1;
    for (int m : {1, 2}) {
        QuantumConfig c1 = cfg, c2 = cfg, c4 = cfg;
        c1.grid_n = 500;
        c2.grid_n = 1000;
        c4.grid_n = 2000;
        const auto e1 = quantum::sector_eigenvalues(m, c1);
        const auto e2 = quantum::sector_eigenvalues(m, c2);
        const auto e4 = quantum::sector_eigenvalues(m, c4);
        for (int n = 0; n < 2; ++n) {
            const double ratio =
                (e1[n] - e2[n]) / (e2[n] - e4[n]);
            CHECK(ratio >= 3.5);
            CHECK(ratio <= 4.5);
        }
    }
}

TEST_CASE("m = 0 sector converges, at reduced order") {
    // The transformed eigenfunction behaves like sqrt(r) at the origin for
    // m = 0, which costs the scheme its second order in that sector alone.
    QuantumConfig c1, c2, c4;
    c1.e_max = c2.e_max = c4.e_max = 0.8;
    c1.grid_n = 1000;
    c2.grid_n = 2000;
    c4.grid_n = 4000;
    const auto e1 = quantum::sector_eigenvalues(0, c1);
    const auto e2 = quantum::sector_eigenvalues(0, c2);
    const auto e4 = quantum::sector_eigenvalues(0, c4);
    for (int n = 0; n < 3; ++n) {
        const double ratio = (e1[n] - e2[n]) / (e2[n] - e4[n]);
        CHECK(ratio > 1.1);   // converging
        CHECK(ratio < 3.2);   // but visibly below the ratio-4 of m >= 1
    }
}

TEST_CASE("point count at h=0.1, e_max=1 matches the Weyl estimate") {
    QuantumConfig cfg;
    cfg.e_max = 1.0;
    cfg.grid_n = 2000;
    const auto js = quantum::joint_spectrum(cfg);

    // Phase-space volume of {H <= 1} by Monte Carlo over a bounding box.
    // r stays below the V(r) = 1 shell and |xi|^2/2 <= e_max + 1/4.
    std::mt19937 rng(1u);
    const double xbound = 1.28, pbound = std::sqrt(2.0 * 1.25);
    std::uniform_real_distribution<double> ux(-xbound, xbound);
    std::uniform_real_distribution<double> up(-pbound, pbound);
    const int samples = 2'000'000;
    int hits = 0;
    for (int i = 0; i < samples; ++i) {
        const classical::PhasePoint p{ux(rng), ux(rng), up(rng), up(rng)};
        if (classical::hamiltonian(p) <= cfg.e_max) ++hits;
    }
    const double box = std::pow(2.0 * xbound, 2) * std::pow(2.0 * pbound, 2);
    const double volume = box * hits / samples;
    const double weyl = volume / std::pow(2.0 * kPi_q * cfg.h, 2);
    CHECK(std::fabs(static_cast<double>(js.size()) - weyl) <= 0.2 * weyl);
}

TEST_CASE("truncation insensitivity in the radius") {
    QuantumConfig a = small_cfg(), b = small_cfg();
    b.radius = a.radius * 1.2;
    b.grid_n = static_cast<int>(a.grid_n * 1.2);  // same dr
    const auto ea = quantum::sector_eigenvalues(0, a);
    const auto eb = quantum::sector_eigenvalues(0, b);
    REQUIRE(ea.size() <= eb.size());
    for (std::size_t i = 0; i < ea.size(); ++i)
        CHECK(std::fabs(ea[i] - eb[i]) < 1e-9);
}

TEST_CASE("joint spectrum: merge order, symmetry, auto m_max") {
    const auto cfg = small_cfg();
    const auto js = quantum::joint_spectrum(cfg);
    REQUIRE(!js.empty());

    // sorted by (m, n)
    for (std::size_t i = 1; i < js.size(); ++i) {
        const bool ordered = js[i - 1].m < js[i].m ||
                             (js[i - 1].m == js[i].m && js[i - 1].n < js[i].n);
        CHECK(ordered);
    }
    // symmetric under (E, j) -> (E, -j)
    for (const auto& p : js) {
        bool found = false;
        for (const auto& q : js)
            if (q.m == -p.m && q.n == p.n && q.energy == p.energy) {
                found = true;
                break;
            }
        CHECK(found);
    }
    // widest sectors are nonempty, next one is empty
    int m_top = 0;
    for (const auto& p : js) m_top = std::max(m_top, p.m);
    CHECK(!quantum::sector_eigenvalues(m_top, cfg).empty());
    CHECK(quantum::sector_eigenvalues(m_top + 1, cfg).empty());
    // every point respects the cutoff and the j = m*h relation
    for (const auto& p : js) {
        CHECK(p.energy <= cfg.e_max);
        CHECK(p.j == p.m * cfg.h);
    }
}

TEST_CASE("parallel and serial joint spectra are identical") {
    const auto cfg = small_cfg();
    const auto par = quantum::joint_spectrum(cfg);
    const auto ser = quantum::joint_spectrum_serial(cfg);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].m == ser[i].m);
        CHECK(par[i].n == ser[i].n);
        CHECK(par[i].energy == ser[i].energy);  // bitwise
    }
}

TEST_CASE("explicit m_max is honored") {
    QuantumConfig cfg = small_cfg();
    cfg.m_max = 2;
    const auto js = quantum::joint_spectrum(cfg);
    int m_top = 0;
    for (const auto& p : js) m_top = std::max(m_top, std::abs(p.m));
    CHECK(m_top == 2);
}

TEST_CASE("perturbed spectrum and chi") {
    const auto cfg = small_cfg();
    const auto js = quantum::joint_spectrum(cfg);
    const auto ps = quantum::perturbed_spectrum(js, 0.0);
    for (const auto& p : ps) CHECK(p.im == 0.0);

    const double eps = cfg.epsilon;
    const auto ps2 = quantum::perturbed_spectrum(js, eps);
    REQUIRE(ps2.size() == js.size());
    double im_bound = 0.0;
    for (const auto& p : js)
        im_bound = std::max(im_bound, eps * std::fabs(p.j));
    for (std::size_t i = 0; i < ps2.size(); ++i) {
        CHECK(ps2[i].re == js[i].energy);
        CHECK(std::fabs(ps2[i].im) <= im_bound);
        const auto u = quantum::chi_inverse({ps2[i].re, ps2[i].im}, eps);
        CHECK(u[0] == js[i].energy);
        CHECK(u[1] == doctest::Approx(js[i].j).epsilon(1e-15));
    }

    CHECK(quantum::chi({1.0, 2.0}, 0.5)[1] == 1.0);
    CHECK(quantum::chi({1.0, 0.0}, 0.5)[1] == 0.0);
    const auto round_trip = quantum::chi_inverse(quantum::chi({0.3, -0.7}, 0.25), 0.25);
    CHECK(round_trip[0] == 0.3);
    CHECK(round_trip[1] == doctest::Approx(-0.7).epsilon(1e-15));
    CHECK_THROWS_AS(quantum::chi_inverse({1.0, 1.0}, 0.0), NumericalError);
}

TEST_CASE("joint spectrum sits inside the inflated classical image") {
    const auto cfg = small_cfg();
    const auto js = quantum::joint_spectrum(cfg);
    int inside = 0;
    for (const auto& p : js) {
        const classical::EMValue c{p.energy, p.j};
        if (classical::is_in_image(c)) {
            ++inside;
            continue;
        }
        // allow margin 5h around the image
        const double margin = 5.0 * cfg.h;
        if (p.energy >= -0.25 - margin &&
            std::fabs(p.j) <=
                classical::jmax_at_energy(std::max(p.energy, -0.25)) + margin)
            ++inside;
    }
    CHECK(inside == static_cast<int>(js.size()));
}
