#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "koenigs/common.hpp"

namespace koenigs {

struct Constants {
    double m = 1.0;    // mass
    double hbar = 1.0; // reduced Planck constant
};

// Conformal factor f_I = alpha (x^2+y^2) + beta/x^2 + gamma/y^2 + delta,
// with a singular isotropic oscillator as the residual potential.
struct KoenigsI {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 1.0;
    double omega = 1.0; // oscillator frequency, >= 0
    double kx = 0.5;    // centrifugal index in x, >= 0
    double ky = 0.5;    // centrifugal index in y, >= 0
};

// Conformal factor f_II = alpha (x^2+4y^2) + beta/x^2 + gamma y + delta,
// Holt-type residual potential (anisotropic oscillator plus linear term).
struct KoenigsII {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 1.0;
    double omega = 1.0;  // frequency, >= 0
    double kx = 0.5;     // centrifugal index in x, >= 0
    double ky_lin = 0.0; // linear-potential strength (any sign)
};

// Conformal factor f_III = -alpha1/r + (beta/cos^2(phi/2) +
// gamma/sin^2(phi/2))/(4r^2) + delta, Coulomb-type residual potential.
struct KoenigsIII {
    double alpha1 = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 1.0;
    double alpha2 = 1.0; // Coulomb strength (any sign)
    double k1 = 0.5;     // half-angle centrifugal index, >= 0
    double k2 = 0.5;     // half-angle centrifugal index, >= 0
};

enum class SpaceKind { KI, KII, KIII };

struct SpaceSpec {
    std::variant<KoenigsI, KoenigsII, KoenigsIII> geom;
    Constants consts;

    SpaceKind kind() const { return static_cast<SpaceKind>(geom.index()); }
    const KoenigsI& ki() const { return std::get<KoenigsI>(geom); }
    const KoenigsII& kii() const { return std::get<KoenigsII>(geom); }
    const KoenigsIII& kiii() const { return std::get<KoenigsIII>(geom); }
    double delta() const;
};

// One separable quantum-number tuple.  Semantics per space:
//   KI:   n1 = n_r,  n2 = n_phi,  N = n_r + n_phi + 1
//   KII:  n1 = n_x,  n2 = n_y,    N = n_x + 2 n_y + 3/2
//   KIII: n1 = n_r,  n2 = n_phi,  N = 1 + n_phi + n_r
struct QuantumNumbers {
    int n1 = 0;
    int n2 = 0;

    double principal(SpaceKind kind) const {
        switch (kind) {
        case SpaceKind::KII: return n1 + 2.0 * n2 + 1.5;
        default: return n1 + n2 + 1.0;
        }
    }
    bool operator==(const QuantumNumbers&) const = default;
};

// Energy-dependent derived quantities at a trial energy E.  Fields that
// would require imaginary values are left unset rather than made complex.
struct EffectiveParams {
    double E = 0.0;
    double omega_tilde_sq = 0.0;
    std::optional<double> omega_tilde;
    double kx_tilde_sq = 0.0; // k1 for KIII
    std::optional<double> kx_tilde;
    double ky_tilde_sq = 0.0; // k2 for KIII
    std::optional<double> ky_tilde;
    std::optional<double> lambda;  // angular index (KI, KIII; needs qn)
    std::optional<double> kappa;   // Coulomb index (KIII, needs delta*E < 0)
    std::optional<double> y_shift; // oscillator shift y_E (KII)
};

enum class SolveMethod { bracketing, polynomial, closed_form };

struct EnergyLevel {
    double E = 0.0;
    QuantumNumbers qn;
    double residual = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    SolveMethod method = SolveMethod::bracketing;
};

struct SolverSettings {
    int scan_points = 2000;
    double tol_abs = 1e-12;
    double tol_rel = 1e-12;
    int max_iter = 200;
    int quad_points = 256;     // quadrature nodes per axis
    int series_terms_max = 500;

    void check() const;
};

struct ValidationReport {
    bool pass = true;
    std::vector<std::string> violations;
};

struct Window {
    double x_lo = 0.1, x_hi = 2.0;
    double y_lo = 0.1, y_hi = 2.0;
};

// Samples f > 0 on a 32x32 grid over the window (skipping singular axes)
// and checks delta != 0, m > 0, hbar > 0 and the index sign constraints.
ValidationReport validate_spec(const SpaceSpec& spec, const Window& window);

// Conformal factor f(x,y).  KIII uses r = sqrt(x^2+y^2), phi = atan2(y,x).
double metric_value(const SpaceSpec& spec, double x, double y);

EffectiveParams effective_params(const SpaceSpec& spec, double E,
                                 std::optional<QuantumNumbers> qn = {});

// Maximal intervals on which every radicand of the quantization condition
// is nonnegative (and delta*E < 0 for KIII).  Empty when no E qualifies.
std::vector<Interval> physical_energy_domain(const SpaceSpec& spec);

enum class DarbouxClass { D_I, D_II, flat, generic };

DarbouxClass darboux_classify(const SpaceSpec& spec);

std::string to_string(DarbouxClass c);
std::string to_string(SpaceKind k);
std::string to_string(SolveMethod m);

} // namespace koenigs
