#pragma once

// Experiment configuration: built-in defaults per experiment kind plus a
// strict structured-text override file. Format: [section] headers with
// key = value lines; '#' or ';' start comments. Unknown sections or keys
// are errors. Sections: [grid] [norm] [cone] [leaves] [indicator] [corpus]
// [sweep].

#include <array>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "aniso/corpus.hpp"
#include "aniso/indicator.hpp"
#include "aniso/leaves.hpp"

namespace aniso::lab {

struct ExperimentConfig {
    std::string kind = "lemmas";  // strichartz | multiplier | lemmas | kernel-decay | corpus

    // [grid]
    int d = 1;
    int d_s = 1;
    double L = std::numbers::pi;
    double K_rad = std::numbers::pi / 4.0;

    // [sweep]
    std::vector<int> N_list;

    // [norm]
    std::vector<double> p_list;
    double s = -0.4, t = 0.2, r = 3.0;
    std::vector<std::array<double, 3>> tuples;  // (p, s, t)
    double t_min = -1.25, t_max = 1.25, t_step = 0.125;

    // [cone]
    std::vector<double> cone_axis;
    double theta_deg = 30.0;

    // [leaves]
    LeafFamilyConfig leaves;

    // [indicator]
    IndicatorKind ind_kind = IndicatorKind::half_space;
    std::vector<double> ind_normal;
    double ind_offset = 0.0;
    double ind_width = 0.0;  // 0 -> K_rad / 2
    std::vector<std::string> eps_list = {"0", "h"};

    // [corpus]
    CorpusConfig corpus;

    // runtime (CLI flags)
    std::uint64_t seed = 1;
    int workers = 1;
    std::string format = "csv";
    std::string out_dir = ".";

    UnstableCone cone() const {
        return make_cone(d_s, d - d_s, cone_axis, theta_deg * std::numbers::pi / 180.0);
    }
    IndicatorSpec indicator(double eps) const {
        IndicatorSpec spec;
        spec.kind = ind_kind;
        spec.normal = ind_normal;
        spec.offset = ind_offset;
        spec.width = ind_width > 0.0 ? ind_width : K_rad / 2.0;
        spec.eps = eps;
        return spec;
    }
    GridSpec grid_at(int N) const { return make_grid(d, d_s, N, L, K_rad); }
};

inline ExperimentConfig default_config(const std::string& kind) {
    ExperimentConfig c;
    c.kind = kind;
    if (kind == "strichartz" || kind == "corpus") {
        c.d = 1;
        c.d_s = 1;
        c.L = std::numbers::pi;
        c.K_rad = c.L / 4.0;
        c.N_list = {128, 256, 512, 1024};
        c.p_list = {1.5, 2.0, 4.0};
        c.ind_kind = IndicatorKind::half_space;
        c.ind_normal = {1.0};
    } else if (kind == "multiplier") {
        c.d = 2;
        c.d_s = 1;
        c.L = std::numbers::pi / 2.0;
        c.K_rad = c.L / 4.0;
        c.N_list = {64, 128, 256, 512};
        c.tuples = {{2.0, -0.4, 0.2}, {1.5, -0.3, 0.2}, {4.0, -0.5, 0.3}};
        c.cone_axis = {0.0, 1.0};
        c.ind_kind = IndicatorKind::strip;
        c.ind_normal = {1.0, 0.0};
    } else if (kind == "lemmas") {
        c.d = 2;
        c.d_s = 1;
        c.L = std::numbers::pi / 2.0;
        c.K_rad = c.L / 4.0;
        c.N_list = {128, 256};
        c.cone_axis = {0.0, 1.0};
        c.ind_normal = {1.0, 0.0};
        c.ind_kind = IndicatorKind::strip;
    } else if (kind == "kernel-decay") {
        c.d = 2;
        c.d_s = 1;
        c.L = std::numbers::pi / 2.0;
        c.K_rad = c.L / 4.0;
        c.N_list = {512};
        c.cone_axis = {0.0, 1.0};
        c.ind_normal = {1.0, 0.0};
    } else {
        throw std::invalid_argument("default_config: unknown experiment kind '" + kind + "'");
    }
    return c;
}

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

inline double parse_double(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw std::invalid_argument("config: bad numeric value for '" + key + "': " + v);
    }
}

inline int parse_int(const std::string& v, const std::string& key) {
    const double x = parse_double(v, key);
    if (x != std::floor(x))
        throw std::invalid_argument("config: expected integer for '" + key + "': " + v);
    return static_cast<int>(x);
}

inline bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument("config: expected boolean for '" + key + "': " + v);
}

}  // namespace detail

// Apply a single key from section `sec` onto the config; throws on unknown
// keys, which keeps config files honest.
inline void apply_config_key(ExperimentConfig& c, const std::string& sec,
                             const std::string& key, const std::string& value) {
    using detail::parse_bool;
    using detail::parse_double;
    using detail::parse_int;
    auto list_d = [&](const std::string& v) {
        std::vector<double> out;
        for (const auto& tok : detail::split(v, ',')) out.push_back(parse_double(tok, key));
        return out;
    };
    if (sec == "grid") {
        if (key == "d") c.d = parse_int(value, key);
        else if (key == "d_s") c.d_s = parse_int(value, key);
        else if (key == "L") c.L = parse_double(value, key);
        else if (key == "K_rad") c.K_rad = parse_double(value, key);
        else throw std::invalid_argument("config: unknown key '" + key + "' in [grid]");
    } else if (sec == "sweep") {
        if (key == "N_list") {
            c.N_list.clear();
            for (const auto& tok : detail::split(value, ','))
                c.N_list.push_back(parse_int(tok, key));
        } else throw std::invalid_argument("config: unknown key '" + key + "' in [sweep]");
    } else if (sec == "norm") {
        if (key == "p_list") c.p_list = list_d(value);
        else if (key == "s") c.s = parse_double(value, key);
        else if (key == "t") c.t = parse_double(value, key);
        else if (key == "r") c.r = parse_double(value, key);
        else if (key == "t_min") c.t_min = parse_double(value, key);
        else if (key == "t_max") c.t_max = parse_double(value, key);
        else if (key == "t_step") c.t_step = parse_double(value, key);
        else if (key == "tuples") {
            c.tuples.clear();
            for (const auto& tok : detail::split(value, ',')) {
                const auto parts = detail::split(tok, ':');
                if (parts.size() != 3)
                    throw std::invalid_argument("config: tuples entries must be p:s:t");
                c.tuples.push_back({parse_double(parts[0], key), parse_double(parts[1], key),
                                    parse_double(parts[2], key)});
            }
        } else throw std::invalid_argument("config: unknown key '" + key + "' in [norm]");
    } else if (sec == "cone") {
        if (key == "axis") c.cone_axis = list_d(value);
        else if (key == "theta_deg") c.theta_deg = parse_double(value, key);
        else throw std::invalid_argument("config: unknown key '" + key + "' in [cone]");
    } else if (sec == "leaves") {
        if (key == "affine") c.leaves.affine_count = parse_int(value, key);
        else if (key == "sinusoidal") c.leaves.sinusoidal_count = parse_int(value, key);
        else if (key == "quadratic") c.leaves.quadratic_count = parse_int(value, key);
        else if (key == "translations") c.leaves.translations = parse_int(value, key);
        else if (key == "translation_step") c.leaves.translation_step = parse_double(value, key);
        else if (key == "C_F") c.leaves.C_F = parse_double(value, key);
        else if (key == "r") c.leaves.r = parse_double(value, key);
        else if (key == "margin_deg") c.leaves.margin_deg = parse_double(value, key);
        else if (key == "slope_fill") c.leaves.slope_fill = parse_double(value, key);
        else throw std::invalid_argument("config: unknown key '" + key + "' in [leaves]");
    } else if (sec == "indicator") {
        if (key == "kind") {
            if (value == "half_space") c.ind_kind = IndicatorKind::half_space;
            else if (value == "strip") c.ind_kind = IndicatorKind::strip;
            else throw std::invalid_argument("config: indicator kind must be half_space|strip");
        } else if (key == "normal") c.ind_normal = list_d(value);
        else if (key == "offset") c.ind_offset = parse_double(value, key);
        else if (key == "width") c.ind_width = parse_double(value, key);
        else if (key == "eps_list") {
            c.eps_list.clear();
            for (const auto& tok : detail::split(value, ',')) {
                if (tok != "0" && tok != "h")
                    throw std::invalid_argument("config: eps_list entries must be 0 or h");
                c.eps_list.push_back(tok);
            }
        } else throw std::invalid_argument("config: unknown key '" + key + "' in [indicator]");
    } else if (sec == "corpus") {
        if (key == "seed") c.corpus.seed = static_cast<std::uint64_t>(parse_double(value, key));
        else if (key == "reference_n_max") c.corpus.reference_n_max = parse_int(value, key);
        else if (key == "include_scaled") c.corpus.include_scaled = parse_bool(value, key);
        else throw std::invalid_argument("config: unknown key '" + key + "' in [corpus]");
    } else {
        throw std::invalid_argument("config: unknown section [" + sec + "]");
    }
}

inline ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base) {
    std::istringstream is(text);
    std::string line, sec;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config: malformed section at line " +
                                            std::to_string(lineno));
            sec = detail::trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value at line " +
                                        std::to_string(lineno));
        if (sec.empty())
            throw std::invalid_argument("config: key outside any section at line " +
                                        std::to_string(lineno));
        apply_config_key(base, sec, detail::trim(line.substr(0, eq)),
                         detail::trim(line.substr(eq + 1)));
    }
    return base;
}

inline ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str(), std::move(base));
}

}  // namespace aniso::lab
