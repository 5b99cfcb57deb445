#include "wavekin/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace wavekin {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& key, int line, const std::string& v) {
    const std::string t = trim(v);
    double out = 0.0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
        throw ConfigError(key, line, "expected a number, got '" + t + "'");
    return out;
}

int parse_int(const std::string& key, int line, const std::string& v) {
    const std::string t = trim(v);
    int out = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
        throw ConfigError(key, line, "expected an integer, got '" + t + "'");
    return out;
}

std::uint64_t parse_u64(const std::string& key, int line, const std::string& v) {
    const std::string t = trim(v);
    std::uint64_t out = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
        throw ConfigError(key, line, "expected an unsigned integer, got '" + t + "'");
    return out;
}

bool parse_bool(const std::string& key, int line, const std::string& v) {
    const std::string t = trim(v);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ConfigError(key, line, "expected a boolean, got '" + t + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, sep)) out.push_back(cur);
    return out;
}

void require(bool ok, const std::string& key, int line, const std::string& what) {
    if (!ok) throw ConfigError(key, line, what);
}

}  // namespace

RunManifest parse_config(const std::string& text) {
    RunManifest m;
    bool sweep_pairs_given = false;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(stripped, lineno, "expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ConfigError("", lineno, "empty key");

        if (key == "rho") {
            const double v = parse_double(key, lineno, value);
            require(v >= 1.0, key, lineno, "rho must be >= 1");
            m.sim.disp = DispersionRelation(v);
        } else if (key == "sigma") {
            const double v = parse_double(key, lineno, value);
            require(v >= 0.0, key, lineno, "sigma must be >= 0");
            m.sim.params.sigma = v;
        } else if (key == "gamma") {
            const double v = parse_double(key, lineno, value);
            require(v >= 0.0, key, lineno, "gamma must be >= 0");
            m.sim.params.gamma = v;
        } else if (key == "c1") {
            const double v = parse_double(key, lineno, value);
            require(v >= 0.0, key, lineno, "c1 must be >= 0");
            m.sim.params.c1 = v;
        } else if (key == "c2") {
            const double v = parse_double(key, lineno, value);
            require(v >= 0.0, key, lineno, "c2 must be >= 0");
            m.sim.params.c2 = v;
        } else if (key == "omega_min") {
            const double v = parse_double(key, lineno, value);
            require(v > 0.0, key, lineno, "omega_min must be > 0");
            m.sim.omega_min = v;
        } else if (key == "omega_max") {
            const double v = parse_double(key, lineno, value);
            require(v > 0.0, key, lineno, "omega_max must be > 0");
            m.sim.omega_max = v;
        } else if (key == "cells") {
            const int v = parse_int(key, lineno, value);
            require(v >= 2, key, lineno, "cells must be >= 2");
            m.sim.cells = v;
        } else if (key == "dt") {
            const double v = parse_double(key, lineno, value);
            require(v > 0.0, key, lineno, "dt must be > 0");
            m.sim.dt = v;
        } else if (key == "t_end") {
            const double v = parse_double(key, lineno, value);
            require(v >= 0.0, key, lineno, "t_end must be >= 0");
            m.sim.t_end = v;
        } else if (key == "ic") {
            try {
                m.sim.ic = ic_kind_from_name(value);
            } catch (const std::exception& e) {
                throw ConfigError(key, lineno, e.what());
            }
        } else if (key == "ic_file") {
            m.ic_file = value;
        } else if (key == "integrator") {
            try {
                m.sim.integrator = integrator_from_name(value);
            } catch (const std::exception& e) {
                throw ConfigError(key, lineno, e.what());
            }
        } else if (key == "snapshot_times") {
            m.sim.snapshot_times.clear();
            for (const auto& part : split(value, ','))
                if (!trim(part).empty())
                    m.sim.snapshot_times.push_back(parse_double(key, lineno, part));
        } else if (key == "deterministic") {
            m.sim.deterministic = parse_bool(key, lineno, value);
        } else if (key == "negativity_clamp") {
            m.sim.negativity_clamp = parse_bool(key, lineno, value);
        } else if (key == "sweep") {
            if (value == "none") m.axis = SweepAxis::none;
            else if (value == "c1c2") m.axis = SweepAxis::c1c2;
            else if (value == "sigma_gamma") m.axis = SweepAxis::sigma_gamma;
            else throw ConfigError(key, lineno, "expected none | c1c2 | sigma_gamma");
        } else if (key == "sweep_pairs") {
            m.sweep_tuples.clear();
            for (const auto& pair_str : split(value, ';')) {
                const std::string ps = trim(pair_str);
                if (ps.empty()) continue;
                const auto parts = split(ps, ',');
                require(parts.size() == 2, key, lineno, "expected 'a,b' pairs separated by ';'");
                m.sweep_tuples.emplace_back(parse_double(key, lineno, parts[0]),
                                            parse_double(key, lineno, parts[1]));
            }
            require(!m.sweep_tuples.empty(), key, lineno, "no pairs given");
            sweep_pairs_given = true;
        } else if (key == "levels") {
            m.levels.clear();
            for (const auto& part : split(value, ',')) {
                const int v = parse_int(key, lineno, part);
                require(v >= 2, key, lineno, "levels must be >= 2");
                m.levels.push_back(v);
            }
            require(!m.levels.empty(), key, lineno, "no levels given");
        } else if (key == "trials") {
            const int v = parse_int(key, lineno, value);
            require(v >= 1, key, lineno, "trials must be >= 1");
            m.oracle_trials = v;
        } else if (key == "max_cells") {
            const int v = parse_int(key, lineno, value);
            require(v >= 2 && v <= 20, key, lineno, "max_cells must be in [2, 20]");
            m.oracle_max_cells = v;
        } else if (key == "seed") {
            m.seed = parse_u64(key, lineno, value);
        } else if (key == "threads") {
            const int v = parse_int(key, lineno, value);
            require(v >= 1, key, lineno, "threads must be >= 1");
            m.threads = v;
        } else if (key == "out_dir") {
            m.out_dir = value;
        } else {
            throw ConfigError(key, lineno, "unknown key");
        }
    }

    require(m.sim.omega_min < m.sim.omega_max, "omega_max", 0,
            "omega_min must be below omega_max");
    for (double t : m.sim.snapshot_times)
        require(t >= 0.0 && t <= m.sim.t_end, "snapshot_times", 0,
                "snapshot times must lie in [0, t_end]");
    if (m.axis != SweepAxis::none && !sweep_pairs_given) {
        // representative default set; an artifact choice, the source material
        // does not tabulate which combinations appear in each figure
        m.sweep_tuples = {{1.0, 1.0}, {1.0, 0.5}, {0.5, 1.0}, {1.0, 0.0}, {0.0, 1.0}};
    }
    m.sim.threads = m.threads;
    return m;
}

RunManifest load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace wavekin
