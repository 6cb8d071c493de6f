#include "koenigs/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace koenigs::io {

using nlohmann::json;

namespace {

double get_num(const json& j, const std::string& key, double fallback,
               bool required = false) {
    if (!j.contains(key)) {
        if (required) throw config_error("config: missing field '" + key + "'");
        return fallback;
    }
    if (!j.at(key).is_number()) throw config_error("config: field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

} // namespace

RunConfig parse_config(const json& j) {
    RunConfig cfg;
    if (!j.contains("space") || !j.at("space").is_string())
        throw config_error("config: missing field 'space' (K_I, K_II or K_III)");
    const std::string space = j.at("space").get<std::string>();

    Constants consts;
    if (j.contains("constants")) {
        consts.m = get_num(j.at("constants"), "m", 1.0);
        consts.hbar = get_num(j.at("constants"), "hbar", 1.0);
    }
    if (!j.contains("metric")) throw config_error("config: missing section 'metric'");
    const json& met = j.at("metric");
    const json pot = j.value("potential", json::object());

    if (space == "K_I") {
        KoenigsI g;
        g.alpha = get_num(met, "alpha", 0.0);
        g.beta = get_num(met, "beta", 0.0);
        g.gamma = get_num(met, "gamma", 0.0);
        g.delta = get_num(met, "delta", 0.0, true);
        g.omega = get_num(pot, "omega", 1.0);
        g.kx = get_num(pot, "kx", 0.5);
        g.ky = get_num(pot, "ky", 0.5);
        cfg.spec = {g, consts};
    } else if (space == "K_II") {
        KoenigsII g;
        g.alpha = get_num(met, "alpha", 0.0);
        g.beta = get_num(met, "beta", 0.0);
        g.gamma = get_num(met, "gamma", 0.0);
        g.delta = get_num(met, "delta", 0.0, true);
        g.omega = get_num(pot, "omega", 1.0);
        g.kx = get_num(pot, "kx", 0.5);
        g.ky_lin = get_num(pot, "ky_lin", 0.0);
        cfg.spec = {g, consts};
    } else if (space == "K_III") {
        KoenigsIII g;
        g.alpha1 = get_num(met, "alpha1", 0.0);
        g.beta = get_num(met, "beta", 0.0);
        g.gamma = get_num(met, "gamma", 0.0);
        g.delta = get_num(met, "delta", 0.0, true);
        g.alpha2 = get_num(pot, "alpha2", 1.0);
        g.k1 = get_num(pot, "k1", 0.5);
        g.k2 = get_num(pot, "k2", 0.5);
        cfg.spec = {g, consts};
    } else {
        throw config_error("config: unknown space '" + space + "'");
    }

    if (j.contains("solver")) {
        const json& s = j.at("solver");
        cfg.solver.scan_points = static_cast<int>(get_num(s, "scan_points", cfg.solver.scan_points));
        cfg.solver.tol_abs = get_num(s, "tol_abs", cfg.solver.tol_abs);
        cfg.solver.tol_rel = get_num(s, "tol_rel", cfg.solver.tol_rel);
        cfg.solver.max_iter = static_cast<int>(get_num(s, "max_iter", cfg.solver.max_iter));
        cfg.solver.quad_points = static_cast<int>(get_num(s, "quad_points", cfg.solver.quad_points));
        cfg.solver.series_terms_max =
            static_cast<int>(get_num(s, "series_terms_max", cfg.solver.series_terms_max));
    }
    cfg.solver.check();

    if (j.contains("window")) {
        const json& w = j.at("window");
        auto range = [&](const std::string& key, double& lo, double& hi) {
            if (!w.contains(key)) return;
            const json& r = w.at(key);
            if (!r.is_array() || r.size() != 2)
                throw config_error("config: window '" + key + "' must be [lo, hi]");
            lo = r[0].get<double>();
            hi = r[1].get<double>();
        };
        range("x", cfg.window.x_lo, cfg.window.x_hi);
        range("y", cfg.window.y_lo, cfg.window.y_hi);
    }
    if (j.contains("grid")) {
        cfg.r_max = get_num(j.at("grid"), "r_max", 0.0);
        cfg.y_half = get_num(j.at("grid"), "y_half", 6.0);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config: parse error: ") + e.what());
    }
    return parse_config(j);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string spectrum_csv(const quantize::Spectrum& s) {
    std::ostringstream os;
    os << "space,n1,n2,N,E,residual,bracket_lo,bracket_hi,method\n";
    const SpaceKind kind = s.spec.kind();
    for (const auto& lvl : s.levels) {
        os << to_string(kind) << ',' << lvl.qn.n1 << ',' << lvl.qn.n2 << ','
           << format_double(lvl.qn.principal(kind)) << ',' << format_double(lvl.E) << ','
           << format_double(lvl.residual) << ',' << format_double(lvl.bracket_lo) << ','
           << format_double(lvl.bracket_hi) << ',' << to_string(lvl.method) << '\n';
    }
    return os.str();
}

namespace {

json spec_to_json(const SpaceSpec& spec) {
    json j;
    j["space"] = to_string(spec.kind());
    j["constants"] = {{"m", spec.consts.m}, {"hbar", spec.consts.hbar}};
    switch (spec.kind()) {
    case SpaceKind::KI: {
        const auto& g = spec.ki();
        j["metric"] = {{"alpha", g.alpha}, {"beta", g.beta}, {"gamma", g.gamma}, {"delta", g.delta}};
        j["potential"] = {{"omega", g.omega}, {"kx", g.kx}, {"ky", g.ky}};
        break;
    }
    case SpaceKind::KII: {
        const auto& g = spec.kii();
        j["metric"] = {{"alpha", g.alpha}, {"beta", g.beta}, {"gamma", g.gamma}, {"delta", g.delta}};
        j["potential"] = {{"omega", g.omega}, {"kx", g.kx}, {"ky_lin", g.ky_lin}};
        break;
    }
    default: {
        const auto& g = spec.kiii();
        j["metric"] = {{"alpha1", g.alpha1}, {"beta", g.beta}, {"gamma", g.gamma}, {"delta", g.delta}};
        j["potential"] = {{"alpha2", g.alpha2}, {"k1", g.k1}, {"k2", g.k2}};
        break;
    }
    }
    return j;
}

} // namespace

json spectrum_to_json(const quantize::Spectrum& s) {
    json j;
    j["spec"] = spec_to_json(s.spec);
    j["settings"] = {{"scan_points", s.settings.scan_points},
                     {"tol_abs", s.settings.tol_abs},
                     {"tol_rel", s.settings.tol_rel},
                     {"max_iter", s.settings.max_iter},
                     {"quad_points", s.settings.quad_points},
                     {"series_terms_max", s.settings.series_terms_max}};
    j["warnings"] = s.warnings;
    json levels = json::array();
    for (const auto& lvl : s.levels) {
        levels.push_back({{"n1", lvl.qn.n1},
                          {"n2", lvl.qn.n2},
                          {"E", lvl.E},
                          {"residual", lvl.residual},
                          {"bracket_lo", lvl.bracket_lo},
                          {"bracket_hi", lvl.bracket_hi},
                          {"method", to_string(lvl.method)}});
    }
    j["levels"] = levels;
    return j;
}

quantize::Spectrum spectrum_from_json(const json& j) {
    quantize::Spectrum s;
    json cfgj = j.at("spec");
    RunConfig cfg = parse_config(cfgj);
    s.spec = cfg.spec;
    const json& st = j.at("settings");
    s.settings.scan_points = st.at("scan_points").get<int>();
    s.settings.tol_abs = st.at("tol_abs").get<double>();
    s.settings.tol_rel = st.at("tol_rel").get<double>();
    s.settings.max_iter = st.at("max_iter").get<int>();
    s.settings.quad_points = st.at("quad_points").get<int>();
    s.settings.series_terms_max = st.at("series_terms_max").get<int>();
    s.warnings = j.at("warnings").get<std::vector<std::string>>();
    for (const auto& lj : j.at("levels")) {
        EnergyLevel lvl;
        lvl.qn.n1 = lj.at("n1").get<int>();
        lvl.qn.n2 = lj.at("n2").get<int>();
        lvl.E = lj.at("E").get<double>();
        lvl.residual = lj.at("residual").get<double>();
        lvl.bracket_lo = lj.at("bracket_lo").get<double>();
        lvl.bracket_hi = lj.at("bracket_hi").get<double>();
        const std::string method = lj.at("method").get<std::string>();
        lvl.method = method == "bracketing" ? SolveMethod::bracketing
                     : method == "polynomial" ? SolveMethod::polynomial
                                              : SolveMethod::closed_form;
        s.levels.push_back(lvl);
    }
    return s;
}

std::string wavefunction_csv(const wavefun::WavefunctionGrid& g) {
    std::ostringstream os;
    os << "coord1,coord2,psi,f_weight\n";
    const double d1 = (g.grid.c1_hi - g.grid.c1_lo) / g.grid.n1;
    const double d2 = (g.grid.c2_hi - g.grid.c2_lo) / g.grid.n2;
    for (int i = 0; i < g.grid.n1; ++i) {
        for (int j = 0; j < g.grid.n2; ++j) {
            const size_t idx = static_cast<size_t>(i) * g.grid.n2 + j;
            os << format_double(g.grid.c1_lo + (i + 0.5) * d1) << ','
               << format_double(g.grid.c2_lo + (j + 0.5) * d2) << ','
               << format_double(g.values[idx]) << ',' << format_double(g.f_weight[idx])
               << '\n';
        }
    }
    return os.str();
}

wavefun::GridSpec grid_for(const RunConfig& cfg, const EnergyLevel& level,
                           int n1, int n2) {
    wavefun::GridSpec grid;
    grid.n1 = n1;
    grid.n2 = n2;
    const auto par = effective_params(cfg.spec, level.E, level.qn);
    switch (cfg.spec.kind()) {
    case SpaceKind::KI: {
        double r_max = cfg.r_max;
        if (r_max <= 0.0) {
            // oscillator decay scale sqrt((2N+lambda)/s), padded
            const double s = cfg.spec.consts.m * par.omega_tilde.value_or(1.0) /
                             cfg.spec.consts.hbar;
            const double lam = par.lambda.value_or(2.0);
            r_max = 4.0 * std::sqrt((2.0 * level.qn.n1 + lam + 1.0) / std::max(s, 1e-8));
        }
        grid.c1_lo = 0.0;
        grid.c1_hi = r_max;
        grid.c2_lo = 0.0;
        grid.c2_hi = M_PI_2;
        break;
    }
    case SpaceKind::KII: {
        double x_max = cfg.r_max;
        if (x_max <= 0.0) {
            const double s = cfg.spec.consts.m * par.omega_tilde.value_or(1.0) /
                             cfg.spec.consts.hbar;
            x_max = 4.0 * std::sqrt((2.0 * level.qn.n1 + par.kx_tilde.value_or(0.5) + 1.0) /
                                    std::max(s, 1e-8));
        }
        grid.c1_lo = 0.0;
        grid.c1_hi = x_max;
        const double yc = par.y_shift.value_or(0.0);
        grid.c2_lo = yc - cfg.y_half;
        grid.c2_hi = yc + cfg.y_half;
        break;
    }
    default: {
        double r_max = cfg.r_max;
        if (r_max <= 0.0) {
            // Coulomb decay scale a (n + lambda + 1/2), padded generously
            const auto& g = cfg.spec.kiii();
            const double at = g.alpha2 - g.alpha1 * level.E;
            const double a = cfg.spec.consts.hbar * cfg.spec.consts.hbar /
                             (cfg.spec.consts.m * std::max(at, 1e-8));
            r_max = 30.0 * a * (level.qn.n1 + par.lambda.value_or(1.0) + 0.5);
        }
        grid.c1_lo = 0.0;
        grid.c1_hi = r_max;
        grid.c2_lo = 0.0;
        grid.c2_hi = M_PI;
        break;
    }
    }
    return grid;
}

} // namespace koenigs::io
