#pragma once

#include <string>

#include <json.hpp>

#include "koenigs/model.hpp"
#include "koenigs/quantize.hpp"
#include "koenigs/wavefun.hpp"

namespace koenigs::io {

struct RunConfig {
    SpaceSpec spec;
    SolverSettings solver;
    Window window;
    // Grid extents for the wavefunction subcommand (coord ranges are
    // derived per space; see grid_for).
    double r_max = 0.0;   // 0 = pick a default per space
    double y_half = 6.0;  // KII: y window half-width around the shift
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// 17-significant-digit decimal, '.' separator; the reproducibility contract.
std::string format_double(double v);

std::string spectrum_csv(const quantize::Spectrum& s);
nlohmann::json spectrum_to_json(const quantize::Spectrum& s);
quantize::Spectrum spectrum_from_json(const nlohmann::json& j);

std::string wavefunction_csv(const wavefun::WavefunctionGrid& g);

wavefun::GridSpec grid_for(const RunConfig& cfg, const EnergyLevel& level,
                           int n1, int n2);

} // namespace koenigs::io
