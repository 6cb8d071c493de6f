#pragma once

#include <string>
#include <utility>
#include <vector>

#include "koenigs/model.hpp"

namespace koenigs::quantize {

// Quantization condition F(E); a root of F is a bound-state energy.
//   KI:   F = delta E - hbar wt (2N + kxt + kyt)
//   KII:  F = delta E - (ky - gamma E)^2/(8 m wt^2) - hbar wt (N + kxt)
//   KIII: F = (alpha2 - alpha1 E)/hbar sqrt(-m/(2 delta E))
//             - (1 + n_phi + n_r + kt1/2 + kt2/2)
// Throws domain_error when a radicand is negative at E.
double condition_value(const SpaceSpec& spec, const QuantumNumbers& qn, double E);

struct SolveResult {
    std::vector<EnergyLevel> levels; // all roots found for this qn
    std::vector<std::string> warnings;
};

// Scans the physical domain (bounded via analytic pinch windows, with a
// conjugate-product Cauchy bound as fallback), brackets sign changes and
// bisects to machine precision.
SolveResult solve_level(const SpaceSpec& spec, const QuantumNumbers& qn,
                        const SolverSettings& settings);

struct Spectrum {
    std::vector<EnergyLevel> levels; // sorted ascending by E
    SpaceSpec spec;
    SolverSettings settings;
    std::vector<std::string> warnings;
};

Spectrum enumerate_spectrum(const SpaceSpec& spec, int qn_bound,
                            const SolverSettings& settings,
                            bool parallel = true);

// Real-coefficient polynomial obtained by multiplying the condition over
// all sign branches of its radicals (8 factors for KI/KIII, 4 for KII).
struct PolynomialForm {
    std::vector<double> coefficients; // ascending powers of E
    int declared_degree = 0;
    double max_imag_residue = 0.0;
    std::vector<double> sample_nodes;
    // Extended-precision tails of the coefficients (coefficient k is
    // coefficients[k] + coeff_tail[k]); root clusters near the domain edge
    // are not resolvable at 1e-8 from double coefficients alone.
    std::vector<double> coeff_tail;
};

PolynomialForm eliminate_radicals(const SpaceSpec& spec, const QuantumNumbers& qn);

// All real roots, via recursive bracketing on the derivative chain.
// Roots closer than 1e-9 * scale are merged.
std::vector<double> poly_real_roots(const PolynomialForm& p);

struct CrossValidation {
    std::vector<std::pair<double, double>> matched; // (bracket root, poly root)
    std::vector<double> spurious_poly_roots;        // fail the residual filter
    std::vector<double> unconfirmed_poly_roots;     // pass the filter, no partner
    std::vector<double> unmatched_bracket_roots;    // failure
    int declared_degree = 0;

    bool pass() const {
        return unmatched_bracket_roots.empty() && unconfirmed_poly_roots.empty();
    }
};

CrossValidation cross_validate(const SpaceSpec& spec, const QuantumNumbers& qn,
                               const SolverSettings& settings);

enum class SpecialCase { flat_KI, flat_KII, hydrogenlike_KIII, quad_KIII_k0, zeropot_KIII };

struct ClosedFormResult {
    std::vector<EnergyLevel> levels;
    std::vector<std::string> notes; // variant-formula diagnostics
};

ClosedFormResult closed_form_special(const SpaceSpec& spec, const QuantumNumbers& qn,
                                     SpecialCase c);

// Large-N Coulomb tail -m alpha2^2 / (2 delta hbar^2 N^2) of the KIII levels.
double coulomb_asymptote(const SpaceSpec& spec, int N);

// Exposed for tests: bounded scan windows in the scan variable
// (t = E for KI/KII, t = sqrt(|E|) for KIII).
struct ScanPlan {
    std::vector<Interval> windows;
    bool kiii_sqrt_variable = false;
    std::vector<std::string> warnings;
};

ScanPlan scan_plan(const SpaceSpec& spec, const QuantumNumbers& qn);

} // namespace koenigs::quantize
