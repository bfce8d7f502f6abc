// Command-line front end: classical and quantum champagne-bottle
// computations driven by a flat key=value config file plus flags.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "cbottle/commands.hpp"
#include "cbottle/errors.hpp"

namespace {

using cbottle::cli::RunConfig;

void add_common_flags(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
    cmd->set_help_flag("--help", "print help");  // frees -h / --h
    cmd->add_option("--config", config_path, "key = value config file");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--h", cfg.q.h, "semiclassical parameter");
    cmd->add_option("--epsilon", cfg.q.epsilon, "perturbation strength");
    cmd->add_option("--emax", cfg.q.e_max, "energy cutoff");
    cmd->add_option("--grid-n", cfg.q.grid_n, "radial grid points");
    cmd->add_option("--radius", cfg.q.radius, "domain truncation radius");
    cmd->add_option("--mmax", cfg.q.m_max, "largest |m| (-1 = auto)");
    cmd->add_option("--threads", cfg.threads, "parallel sector solves cap");
    cmd->add_option("--seed", cfg.seed, "seed echoed into outputs");
    cmd->add_flag("--force", cfg.force, "overwrite existing outputs");
    cmd->add_flag("--non-enclosing", cfg.non_enclosing,
                  "use the preset loop that does not enclose (0,0)");
}

void print_matrix(const char* label, const cbottle::classical::IntMatrix2& m) {
    std::printf("%s [[%d, %d], [%d, %d]]\n", label, m.a, m.b, m.c, m.d);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classical, quantum, and spectral monodromy of the "
                 "champagne-bottle system"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;

    auto* scan = app.add_subcommand(
        "classical-scan", "critical curve, image boundary, potential profile");
    auto* cmono = app.add_subcommand("classical-monodromy",
                                     "rotation-number winding around (0,0)");
    auto* qspec = app.add_subcommand("quantum-spectrum",
                                     "joint spectrum of (H, J) and P_eps");
    auto* qmono = app.add_subcommand(
        "quantum-monodromy", "lattice-cell transport on the joint spectrum");
    for (auto* cmd : {scan, cmono, qspec, qmono})
        add_common_flags(cmd, cfg, config_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (!config_path.empty()) {
            // File first, then flags override: re-parse flags on top.
            RunConfig file_cfg;
            cbottle::cli::apply_config_file(file_cfg, config_path);
            std::swap(cfg, file_cfg);
            try {
                app.clear();
                app.parse(argc, argv);
            } catch (const CLI::ParseError& e) {
                return app.exit(e) == 0 ? 0 : 2;
            }
        }
        cfg.validate();

        if (scan->parsed()) {
            cbottle::cli::cmd_classical_scan(cfg);
            std::printf("classical-scan: wrote critical_curve.csv, "
                        "image_boundary.csv, potential.csv and figures to %s\n",
                        cfg.out_dir.c_str());
        } else if (cmono->parsed()) {
            const auto res = cbottle::cli::cmd_classical_monodromy(cfg);
            print_matrix("monodromy matrix:", res.matrix);
            std::printf("winding: %.12f (%s)\n", res.winding,
                        res.trivial ? "trivial" : "non-trivial");
        } else if (qspec->parsed()) {
            cbottle::cli::cmd_quantum_spectrum(cfg);
            std::printf("quantum-spectrum: wrote spectrum.csv and "
                        "spectrum_chi_inverse.svg to %s\n",
                        cfg.out_dir.c_str());
        } else if (qmono->parsed()) {
            const auto res = cbottle::cli::cmd_quantum_monodromy(cfg);
            print_matrix("joint-spectrum matrix:", res.joint_matrix);
            print_matrix("chi^-1 spectral matrix:", res.spectral_matrix);
            std::printf("trace %d, det %d, unipotent non-identity: %s\n",
                        res.invariants.trace, res.invariants.det,
                        res.invariants.unipotent_nonidentity ? "yes" : "no");
            std::printf("spectral transport matches joint: %s\n",
                        res.spectral_matches_joint ? "yes" : "no");
        }
    } catch (const cbottle::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const cbottle::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const cbottle::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
