#pragma once

#include <vector>

#include "koenigs/model.hpp"
#include "koenigs/quantize.hpp"

namespace koenigs::green {

struct GreenEvaluation {
    double value = 0.0;
    int terms = 0;
    double truncation_error_estimate = 0.0;
    double E = 0.0;
};

struct PolarPoint {
    double r = 1.0;
    double phi = 0.7853981633974483; // pi/4
};

// Truncated angular sum of the energy-domain resolvent for KI or KIII.
// The Whittaker M factor always takes the smaller radius, W the larger.
// Throws on pole proximity (gamma argument within 1e-6 of a nonpositive
// integer for any retained channel).
GreenEvaluation green_value(const SpaceSpec& spec, PolarPoint p1, PolarPoint p2,
                            double E, int n_max, int series_terms_max = 500);

// Euclidean-time kernel for KI: truncated angular sum of PT pairs times
// the radial oscillator kernel at imaginary time tau, with the
// energy-dependent coefficients evaluated at E_ref.
double kernel_value(const SpaceSpec& spec, PolarPoint p1, PolarPoint p2,
                    double tau, double E_ref, int n_max);

// Argument of the Gamma factor whose nonpositive-integer zeros are the
// bound states: (1+lambda-deltaE/(hbar omega~))/2 + n_r for KI,
// 1/2+lambda-kappa+n_r for KIII.
double gamma_argument(const SpaceSpec& spec, int n_phi, int n_r, double E);

struct PoleHit {
    double E = 0.0;
    QuantumNumbers qn;     // (n_r, n_phi) channel
    bool matched = false;  // spectrum level within 1e-8
    double level_E = 0.0;
};

struct PoleReport {
    std::vector<PoleHit> poles;
    std::vector<EnergyLevel> unmatched_levels; // in-range levels with no pole
    bool pass() const {
        if (!unmatched_levels.empty()) return false;
        for (const auto& p : poles)
            if (!p.matched) return false;
        return true;
    }
};

// Locates Gamma-argument zeros channel by channel over E_range and checks
// them against the spectrum.
PoleReport pole_scan(const SpaceSpec& spec, Interval E_range, int n_points,
                     const quantize::Spectrum& spectrum, bool parallel = true);

// Optional cross-check (flat KI): Richardson estimate of
// lim (E-E_N) G against -Phi(phi') R(r') Phi(phi'') R(r'') built from the
// separated one-dimensional factors.  Returns the relative deviation.
double residue_check(const SpaceSpec& spec, const EnergyLevel& level,
                     PolarPoint p1, PolarPoint p2, int n_max = 16);

} // namespace koenigs::green
