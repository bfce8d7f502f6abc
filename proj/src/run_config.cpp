#include "cbottle/run_config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "cbottle/errors.hpp"

namespace cbottle::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': bad number '" + v + "'");
    }
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': bad integer '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config key '" + key + "': bad boolean '" + v + "'");
}

}  // namespace

void RunConfig::validate() const {
    q.validate();
    if (loop_samples < 8 || qloop_samples < 8)
        throw ConfigError("loop sample counts must be >= 8");
    if (!(quad_rel_tol > 0.0) || !(snap_fraction > 0.0) ||
        snap_fraction >= 0.5 || !(round_tol > 0.0) || round_tol >= 0.5)
        throw ConfigError("tolerances out of range");
    if (threads < 0) throw ConfigError("threads must be >= 0");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);

    const std::map<std::string, std::function<void(const std::string&,
                                                   const std::string&)>>
        setters = {
            {"h", [&](auto& k, auto& v) { cfg.q.h = parse_double(k, v); }},
            {"epsilon",
             [&](auto& k, auto& v) { cfg.q.epsilon = parse_double(k, v); }},
            {"radius",
             [&](auto& k, auto& v) { cfg.q.radius = parse_double(k, v); }},
            {"grid_n",
             [&](auto& k, auto& v) {
                 cfg.q.grid_n = static_cast<int>(parse_long(k, v));
             }},
            {"m_max",
             [&](auto& k, auto& v) {
                 cfg.q.m_max = static_cast<int>(parse_long(k, v));
             }},
            {"e_max",
             [&](auto& k, auto& v) { cfg.q.e_max = parse_double(k, v); }},
            {"loop_center_e",
             [&](auto& k, auto& v) { cfg.loop_center_e = parse_double(k, v); }},
            {"loop_center_j",
             [&](auto& k, auto& v) { cfg.loop_center_j = parse_double(k, v); }},
            {"loop_semi_e",
             [&](auto& k, auto& v) { cfg.loop_semi_e = parse_double(k, v); }},
            {"loop_semi_j",
             [&](auto& k, auto& v) { cfg.loop_semi_j = parse_double(k, v); }},
            {"loop_samples",
             [&](auto& k, auto& v) {
                 cfg.loop_samples = static_cast<int>(parse_long(k, v));
             }},
            {"qloop_center_e",
             [&](auto& k, auto& v) { cfg.qloop_center_e = parse_double(k, v); }},
            {"qloop_center_j",
             [&](auto& k, auto& v) { cfg.qloop_center_j = parse_double(k, v); }},
            {"qloop_semi_e",
             [&](auto& k, auto& v) { cfg.qloop_semi_e = parse_double(k, v); }},
            {"qloop_semi_j",
             [&](auto& k, auto& v) { cfg.qloop_semi_j = parse_double(k, v); }},
            {"qloop_samples",
             [&](auto& k, auto& v) {
                 cfg.qloop_samples = static_cast<int>(parse_long(k, v));
             }},
            {"quad_rel_tol",
             [&](auto& k, auto& v) { cfg.quad_rel_tol = parse_double(k, v); }},
            {"snap_fraction",
             [&](auto& k, auto& v) { cfg.snap_fraction = parse_double(k, v); }},
            {"round_tol",
             [&](auto& k, auto& v) { cfg.round_tol = parse_double(k, v); }},
            {"out_dir", [&](auto&, auto& v) { cfg.out_dir = v; }},
            {"threads",
             [&](auto& k, auto& v) {
                 cfg.threads = static_cast<int>(parse_long(k, v));
             }},
            {"seed", [&](auto& k, auto& v) { cfg.seed = parse_long(k, v); }},
            {"non_enclosing",
             [&](auto& k, auto& v) { cfg.non_enclosing = parse_bool(k, v); }},
        };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end())
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        it->second(key, val);
    }
}

std::string render_config(const RunConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "h = " << cfg.q.h << "\n"
       << "epsilon = " << cfg.q.epsilon << "\n"
       << "radius = " << cfg.q.radius << "\n"
       << "grid_n = " << cfg.q.grid_n << "\n"
       << "m_max = " << cfg.q.m_max << "\n"
       << "e_max = " << cfg.q.e_max << "\n"
       << "loop_center_e = " << cfg.loop_center_e << "\n"
       << "loop_center_j = " << cfg.loop_center_j << "\n"
       << "loop_semi_e = " << cfg.loop_semi_e << "\n"
       << "loop_semi_j = " << cfg.loop_semi_j << "\n"
       << "loop_samples = " << cfg.loop_samples << "\n"
       << "qloop_center_e = " << cfg.qloop_center_e << "\n"
       << "qloop_center_j = " << cfg.qloop_center_j << "\n"
       << "qloop_semi_e = " << cfg.qloop_semi_e << "\n"
       << "qloop_semi_j = " << cfg.qloop_semi_j << "\n"
       << "qloop_samples = " << cfg.qloop_samples << "\n"
       << "quad_rel_tol = " << cfg.quad_rel_tol << "\n"
       << "snap_fraction = " << cfg.snap_fraction << "\n"
       << "round_tol = " << cfg.round_tol << "\n"
       << "out_dir = " << cfg.out_dir << "\n"
       << "threads = " << cfg.threads << "\n"
       << "seed = " << cfg.seed << "\n"
       << "non_enclosing = " << (cfg.non_enclosing ? "true" : "false") << "\n";
    return os.str();
}

}  // namespace cbottle::cli
