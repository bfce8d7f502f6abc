#include "cbottle/commands.hpp"

#include <cmath>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cbottle/errors.hpp"
#include "cbottle/outputs.hpp"
#include "cbottle/quantum.hpp"

namespace cbottle::cli {

namespace {

namespace cl = cbottle::classical;
namespace qm = cbottle::quantum;
namespace lt = cbottle::lattice;

constexpr double kRWell = 0.70710678118654752440;  // 1/sqrt(2)

std::string fmt(double v) { return io::format_double(v); }

// Points of the critical-value curve up to an energy roof, +j branch,
// parametrized by r.
std::vector<std::pair<double, cl::EMValue>> critical_samples(double e_top,
                                                             int count) {
    const double u_top = (1.0 + std::sqrt(1.0 + 3.0 * e_top)) / 3.0;
    const double r_top = std::sqrt(u_top);
    std::vector<std::pair<double, cl::EMValue>> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double r = kRWell + (r_top - kRWell) * i / (count - 1.0);
        out.push_back({r, cl::critical_value_curve(r).plus});
    }
    return out;
}

std::string matrix_lines(const cl::IntMatrix2& m) {
    std::ostringstream os;
    os << "[[" << m.a << ", " << m.b << "], [" << m.c << ", " << m.d << "]]";
    return os.str();
}

lt::TransportOptions transport_options(const RunConfig& cfg) {
    lt::TransportOptions opt;
    opt.snap_fraction = cfg.snap_fraction;
    opt.round_tol = cfg.round_tol;
    return opt;
}

}  // namespace

void apply_thread_cap(const RunConfig& cfg) {
#ifdef _OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#else
    (void)cfg;
#endif
}

std::vector<cl::EMValue> monodromy_loop(const RunConfig& cfg, bool quantum) {
    if (cfg.non_enclosing) {
        // A small loop well inside the regular region, away from (0, 0).
        return cl::ellipse_loop({0.55, 0.35}, 0.2, 0.18,
                                quantum ? cfg.qloop_samples : cfg.loop_samples);
    }
    if (quantum)
        return cl::ellipse_loop({cfg.qloop_center_e, cfg.qloop_center_j},
                                cfg.qloop_semi_e, cfg.qloop_semi_j,
                                cfg.qloop_samples);
    return cl::ellipse_loop({cfg.loop_center_e, cfg.loop_center_j},
                            cfg.loop_semi_e, cfg.loop_semi_j,
                            cfg.loop_samples);
}

void cmd_classical_scan(const RunConfig& cfg) {
    cfg.validate();
    const std::string prov = render_config(cfg);
    const double e_top = std::max(1.0, 1.2 * cfg.q.e_max);
    const auto curve = critical_samples(e_top, 400);

    io::CsvWriter crit("r,E,j_plus,j_minus", prov);
    for (const auto& [r, c] : curve)
        crit.add_row({fmt(r), fmt(c.energy), fmt(c.j), fmt(-c.j)});

    // Image boundary as one closed polyline: +j branch out, -j branch back.
    io::CsvWriter boundary("E,j", prov);
    for (auto it = curve.rbegin(); it != curve.rend(); ++it)
        boundary.add_row({fmt(it->second.energy), fmt(it->second.j)});
    for (const auto& [r, c] : curve)
        boundary.add_row({fmt(c.energy), fmt(-c.j)});

    io::CsvWriter pot("r,V", prov);
    const int n_pot = 400;
    for (int i = 0; i < n_pot; ++i) {
        const double r = 1.6 * i / (n_pot - 1.0);
        pot.add_row({fmt(r), fmt(cl::potential(r))});
    }

    io::SvgCanvas pot_svg(0.0, 1.6, -0.35, 1.0);
    pot_svg.set_provenance(prov);
    {
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i < n_pot; ++i) {
            const double r = 1.6 * i / (n_pot - 1.0);
            pts.push_back({r, cl::potential(r)});
        }
        pot_svg.polyline(pts, "steelblue", 2.0);
        pot_svg.text(0.9, 0.8, "V(r) = r^4 - r^2");
    }

    const double j_top = cl::jmax_at_energy(e_top);
    io::SvgCanvas crit_svg(-0.4, e_top * 1.05, -1.1 * j_top, 1.1 * j_top);
    crit_svg.set_provenance(prov);
    {
        std::vector<std::pair<double, double>> plus, minus;
        for (const auto& [r, c] : curve) {
            plus.push_back({c.energy, c.j});
            minus.push_back({c.energy, -c.j});
        }
        crit_svg.polyline(plus, "firebrick", 2.0);
        crit_svg.polyline(minus, "firebrick", 2.0);
        crit_svg.circle(0.0, 0.0, 3.0, "black");
        crit_svg.text(0.05, 0.08, "(0,0)");
    }

    io::write_file(cfg.out_dir, "critical_curve.csv", crit.str(), cfg.force);
    io::write_file(cfg.out_dir, "image_boundary.csv", boundary.str(),
                   cfg.force);
    io::write_file(cfg.out_dir, "potential.csv", pot.str(), cfg.force);
    io::write_file(cfg.out_dir, "potential.svg", pot_svg.str(), cfg.force);
    io::write_file(cfg.out_dir, "critical_values.svg", crit_svg.str(),
                   cfg.force);
}

ClassicalMonodromyResult cmd_classical_monodromy(const RunConfig& cfg) {
    cfg.validate();
    apply_thread_cap(cfg);
    const auto loop = monodromy_loop(cfg, /*quantum=*/false);
    for (const auto& c : loop)
        if (!cl::is_regular_value(c))
            throw NumericalError("monodromy loop leaves the regular region");

    ClassicalMonodromyResult res;
    res.winding = cl::winding_angle(loop, cfg.quad_rel_tol);
    res.matrix = cl::classical_monodromy(loop, cfg.quad_rel_tol);
    res.trivial = (res.matrix == cl::IntMatrix2{});

    const std::string prov = render_config(cfg);
    io::CsvWriter theta_csv("E,j,theta", prov);
    for (const auto& c : loop)
        theta_csv.add_row(
            {fmt(c.energy), fmt(c.j),
             fmt(cl::action_data(c, cfg.quad_rel_tol).rotation_angle)});

    std::ostringstream report;
    report << "classical monodromy\n"
           << "loop vertices: " << loop.size() << "\n"
           << "accumulated winding: " << fmt(res.winding) << "\n"
           << "matrix (S^1 cycle, radial cycle basis): "
           << matrix_lines(res.matrix) << "\n"
           << (res.trivial ? "trivial holonomy\n" : "non-trivial holonomy\n");

    io::write_file(cfg.out_dir, "loop_theta.csv", theta_csv.str(), cfg.force);
    io::write_file(cfg.out_dir, "classical_monodromy.txt", report.str(),
                   cfg.force);
    return res;
}

void cmd_quantum_spectrum(const RunConfig& cfg) {
    cfg.validate();
    apply_thread_cap(cfg);
    const std::string prov = render_config(cfg);
    const auto spectrum = qm::joint_spectrum(cfg.q);
    const auto perturbed = qm::perturbed_spectrum(spectrum, cfg.q.epsilon);

    io::CsvWriter csv("m,n,E,j,re,im", prov);
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        const auto& p = spectrum[i];
        csv.add_row({std::to_string(p.m), std::to_string(p.n), fmt(p.energy),
                     fmt(p.j), fmt(perturbed[i].re), fmt(perturbed[i].im)});
    }

    // Scatter of chi^-1(sigma(P_eps)) with the critical curve overlaid.
    const double j_top = cl::jmax_at_energy(cfg.q.e_max) * 1.15;
    io::SvgCanvas svg(-0.35, cfg.q.e_max * 1.1, -j_top, j_top);
    svg.set_provenance(prov);
    const auto curve = critical_samples(cfg.q.e_max * 1.05, 300);
    std::vector<std::pair<double, double>> plus, minus;
    for (const auto& [r, c] : curve) {
        plus.push_back({c.energy, c.j});
        minus.push_back({c.energy, -c.j});
    }
    svg.polyline(plus, "firebrick", 1.5);
    svg.polyline(minus, "firebrick", 1.5);
    for (std::size_t i = 0; i < perturbed.size(); ++i) {
        if (cfg.q.epsilon > 0.0) {
            const auto u = qm::chi_inverse({perturbed[i].re, perturbed[i].im},
                                           cfg.q.epsilon);
            svg.circle(u[0], u[1], 2.0, "midnightblue");
        } else {
            svg.circle(spectrum[i].energy, spectrum[i].j, 2.0, "midnightblue");
        }
    }

    io::write_file(cfg.out_dir, "spectrum.csv", csv.str(), cfg.force);
    io::write_file(cfg.out_dir, "spectrum_chi_inverse.svg", svg.str(),
                   cfg.force);
}

QuantumMonodromyResult cmd_quantum_monodromy(const RunConfig& cfg) {
    cfg.validate();
    apply_thread_cap(cfg);
    if (cfg.q.epsilon <= 0.0)
        throw ConfigError("quantum-monodromy requires epsilon > 0");
    const auto spectrum = qm::joint_spectrum(cfg.q);
    const auto loop_em = monodromy_loop(cfg, /*quantum=*/true);

    std::vector<lt::Vec2> cloud;
    cloud.reserve(spectrum.size());
    for (const auto& p : spectrum) cloud.push_back({p.energy, p.j});
    std::vector<lt::Vec2> loop;
    loop.reserve(loop_em.size());
    for (const auto& c : loop_em) loop.push_back({c.energy, c.j});
    const lt::Vec2 scale{cfg.q.h, cfg.q.h};

    const auto opt = transport_options(cfg);
    const auto cell = lt::estimate_cell(cloud, loop[0], scale);
    const auto joint = lt::transport_cell(cloud, cell, loop, scale, opt);

    // Same experiment on chi^-1 of the perturbed spectrum.
    const auto perturbed = qm::perturbed_spectrum(spectrum, cfg.q.epsilon);
    std::vector<lt::Vec2> cloud_chi;
    cloud_chi.reserve(perturbed.size());
    for (const auto& p : perturbed) {
        const auto u = qm::chi_inverse({p.re, p.im}, cfg.q.epsilon);
        cloud_chi.push_back({u[0], u[1]});
    }
    const auto cell_chi = lt::estimate_cell(cloud_chi, loop[0], scale);
    const auto spectral =
        lt::transport_cell(cloud_chi, cell_chi, loop, scale, opt);

    QuantumMonodromyResult res;
    res.joint_matrix = joint.matrix;
    res.spectral_matrix = spectral.matrix;
    res.invariants = lt::conjugacy_invariants(joint.matrix);
    res.spectral_matches_joint = (joint.matrix == spectral.matrix);

    const std::string prov = render_config(cfg);
    std::ostringstream report;
    report << "quantum monodromy (lattice transport)\n"
           << "spectrum points: " << spectrum.size() << "\n"
           << "loop vertices: " << loop.size() << "\n"
           << "joint-spectrum matrix: " << matrix_lines(joint.matrix) << "\n"
           << "chi^-1 spectral matrix: " << matrix_lines(spectral.matrix)
           << "\n"
           << "trace: " << res.invariants.trace
           << "  det: " << res.invariants.det << "  unipotent non-identity: "
           << (res.invariants.unipotent_nonidentity ? "yes" : "no") << "\n"
           << "spectral transport matches joint: "
           << (res.spectral_matches_joint ? "yes" : "no") << "\n";

    double j_top = 0.0;
    for (const auto& p : cloud) j_top = std::max(j_top, std::fabs(p.y));
    io::SvgCanvas svg(-0.35, cfg.q.e_max * 1.1, -1.1 * j_top, 1.1 * j_top);
    svg.set_provenance(prov);
    for (const auto& p : cloud) svg.circle(p.x, p.y, 2.0, "midnightblue");
    std::vector<std::pair<double, double>> loop_pts;
    for (const auto& c : loop_em) loop_pts.push_back({c.energy, c.j});
    loop_pts.push_back(loop_pts.front());
    svg.polyline(loop_pts, "darkorange", 1.5);
    const auto& ic = joint.initial_cell;
    const auto& fc = joint.final_cell;
    svg.parallelogram(ic.anchor.x, ic.anchor.y, ic.v1.x, ic.v1.y, ic.v2.x,
                      ic.v2.y, "forestgreen");
    svg.parallelogram(fc.anchor.x, fc.anchor.y, fc.v1.x, fc.v1.y, fc.v2.x,
                      fc.v2.y, "crimson");
    svg.text(ic.anchor.x, ic.anchor.y - 0.1, "initial cell");
    svg.text(fc.anchor.x, fc.anchor.y + 0.15, "transported cell");

    io::write_file(cfg.out_dir, "quantum_monodromy.txt", report.str(),
                   cfg.force);
    io::write_file(cfg.out_dir, "quantum_monodromy.svg", svg.str(), cfg.force);
    return res;
}

}  // namespace cbottle::cli
