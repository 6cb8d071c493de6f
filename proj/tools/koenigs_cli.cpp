#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "koenigs/green.hpp"
#include "koenigs/io.hpp"
#include "koenigs/quantize.hpp"
#include "koenigs/verify.hpp"
#include "koenigs/wavefun.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitVerify = 4;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw koenigs::config_error("cannot write output file '" + path + "'");
    out << content;
}

koenigs::io::RunConfig load_and_validate(const std::string& path) {
    auto cfg = koenigs::io::load_config(path);
    const auto report = koenigs::validate_spec(cfg.spec, cfg.window);
    if (!report.pass) {
        std::ostringstream os;
        os << "invalid configuration:";
        for (const auto& v : report.violations) os << "\n  " << v;
        throw koenigs::config_error(os.str());
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bound-state spectra, wavefunctions and Green functions for "
                 "quantum motion on Koenigs spaces"};
    app.require_subcommand(1);

    std::string config_path, out_path, format = "csv", grid_str = "64x64";
    int qn_bound = 2, level_index = 0, points = 400;
    double emin = 0.0, emax = 0.0;

    auto* sc_spectrum = app.add_subcommand("spectrum", "Enumerate bound-state levels");
    sc_spectrum->add_option("--config", config_path)->required();
    sc_spectrum->add_option("--qn-bound", qn_bound);
    sc_spectrum->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    sc_spectrum->add_option("--out", out_path);

    auto* sc_verify = app.add_subcommand("verify", "Run the cross-validation report");
    sc_verify->add_option("--config", config_path)->required();
    sc_verify->add_option("--out", out_path);

    auto* sc_wave = app.add_subcommand("wavefunction", "Sample a normalized bound state");
    sc_wave->add_option("--config", config_path)->required();
    sc_wave->add_option("--level", level_index);
    sc_wave->add_option("--grid", grid_str);
    sc_wave->add_option("--out", out_path)->required();
    sc_wave->add_option("--qn-bound", qn_bound);

    auto* sc_green = app.add_subcommand("green-scan", "Scan the resolvent over an energy range");
    sc_green->add_option("--config", config_path)->required();
    sc_green->add_option("--emin", emin)->required();
    sc_green->add_option("--emax", emax)->required();
    sc_green->add_option("--points", points);
    sc_green->add_option("--out", out_path)->required();
    sc_green->add_option("--qn-bound", qn_bound);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc_spectrum->parsed()) {
            const auto cfg = load_and_validate(config_path);
            const auto spectrum = koenigs::quantize::enumerate_spectrum(cfg.spec, qn_bound, cfg.solver);
            if (format == "json")
                write_output(out_path, koenigs::io::spectrum_to_json(spectrum).dump(2) + "\n");
            else
                write_output(out_path, koenigs::io::spectrum_csv(spectrum));
            return kExitOk;
        }

        if (sc_verify->parsed()) {
            const auto cfg = load_and_validate(config_path);
            const auto report = koenigs::verify::run_verify(cfg.spec, cfg.solver, cfg.window);
            write_output(out_path, koenigs::verify::to_text(report));
            return report.pass() ? kExitOk : kExitVerify;
        }

        if (sc_wave->parsed()) {
            const auto cfg = load_and_validate(config_path);
            int n1 = 0, n2 = 0;
            if (std::sscanf(grid_str.c_str(), "%dx%d", &n1, &n2) != 2 || n1 < 2 || n2 < 2)
                throw koenigs::config_error("--grid must look like 64x64");
            const auto spectrum = koenigs::quantize::enumerate_spectrum(
                cfg.spec, std::max(qn_bound, 2), cfg.solver);
            if (level_index < 0 || static_cast<size_t>(level_index) >= spectrum.levels.size())
                throw koenigs::config_error("--level index outside the enumerated spectrum");
            const auto& lvl = spectrum.levels[level_index];
            const auto grid = koenigs::io::grid_for(cfg, lvl, n1, n2);
            const auto wf = koenigs::wavefun::assemble_and_normalize(cfg.spec, lvl, grid, cfg.solver);
            write_output(out_path, koenigs::io::wavefunction_csv(wf));
            return kExitOk;
        }

        if (sc_green->parsed()) {
            const auto cfg = load_and_validate(config_path);
            if (cfg.spec.kind() == koenigs::SpaceKind::KII)
                throw koenigs::config_error("green-scan supports K_I and K_III only");
            if (!(emax > emin)) throw koenigs::config_error("need emin < emax");
            if (points < 2) throw koenigs::config_error("need at least 2 points");
            const auto spectrum =
                koenigs::quantize::enumerate_spectrum(cfg.spec, qn_bound, cfg.solver);
            const auto poles = koenigs::green::pole_scan(cfg.spec, {emin, emax},
                                                         std::max(points * 4, 2000), spectrum);
            koenigs::green::PolarPoint p1{1.0, M_PI / 4.0}, p2{2.0, M_PI / 4.0};
            std::ostringstream os;
            os << "E,green_value,gamma_argument,is_pole\n";
            const double cell = (emax - emin) / (points - 1);
            for (int i = 0; i < points; ++i) {
                const double E = emin + cell * i;
                double g = std::numeric_limits<double>::quiet_NaN();
                double value = std::numeric_limits<double>::quiet_NaN();
                bool is_pole = false;
                for (const auto& p : poles.poles)
                    if (std::abs(p.E - E) <= 0.5 * cell) is_pole = true;
                try {
                    g = koenigs::green::gamma_argument(cfg.spec, 0, 0, E);
                    value = koenigs::green::green_value(cfg.spec, p1, p2, E, 12,
                                                        cfg.solver.series_terms_max)
                                .value;
                } catch (const koenigs::error&) {
                    // outside domain or too close to a pole: row keeps NaN
                }
                os << koenigs::io::format_double(E) << ','
                   << koenigs::io::format_double(value) << ','
                   << koenigs::io::format_double(g) << ',' << (is_pole ? 1 : 0) << '\n';
            }
            write_output(out_path, os.str());
            return kExitOk;
        }
    } catch (const koenigs::config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const koenigs::convergence_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const koenigs::validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerify;
    } catch (const koenigs::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolver;
    }
    return kExitOk;
}
