#include "koenigs/model.hpp"

#include <cmath>
#include <sstream>

namespace koenigs {

double SpaceSpec::delta() const {
    switch (kind()) {
    case SpaceKind::KI: return ki().delta;
    case SpaceKind::KII: return kii().delta;
    default: return kiii().delta;
    }
}

void SolverSettings::check() const {
    if (scan_points < 100) throw config_error("scan_points must be >= 100");
    if (tol_abs <= 0 || tol_rel <= 0) throw config_error("tolerances must be positive");
    if (max_iter <= 0) throw config_error("max_iter must be positive");
    if (quad_points <= 0) throw config_error("quad_points must be positive");
    if (series_terms_max <= 0) throw config_error("series_terms_max must be positive");
}

double metric_value(const SpaceSpec& spec, double x, double y) {
    switch (spec.kind()) {
    case SpaceKind::KI: {
        const auto& g = spec.ki();
        if ((g.beta != 0.0 && x == 0.0) || (g.gamma != 0.0 && y == 0.0))
            throw domain_error("metric_value: singular coordinate axis");
        double f = g.alpha * (x * x + y * y) + g.delta;
        if (g.beta != 0.0) f += g.beta / (x * x);
        if (g.gamma != 0.0) f += g.gamma / (y * y);
        return f;
    }
    case SpaceKind::KII: {
        const auto& g = spec.kii();
        if (g.beta != 0.0 && x == 0.0)
            throw domain_error("metric_value: singular coordinate axis");
        double f = g.alpha * (x * x + 4.0 * y * y) + g.gamma * y + g.delta;
        if (g.beta != 0.0) f += g.beta / (x * x);
        return f;
    }
    default: {
        const auto& g = spec.kiii();
        const double r2 = x * x + y * y;
        if (r2 == 0.0) throw domain_error("metric_value: origin is singular");
        const double r = std::sqrt(r2);
        const double phi = std::atan2(y, x);
        double f = -g.alpha1 / r + g.delta;
        if (g.beta != 0.0 || g.gamma != 0.0) {
            const double c = std::cos(0.5 * phi), s = std::sin(0.5 * phi);
            if ((g.beta != 0.0 && c == 0.0) || (g.gamma != 0.0 && s == 0.0))
                throw domain_error("metric_value: singular half-angle ray");
            if (g.beta != 0.0) f += g.beta / (4.0 * r2 * c * c);
            if (g.gamma != 0.0) f += g.gamma / (4.0 * r2 * s * s);
        }
        return f;
    }
    }
}

ValidationReport validate_spec(const SpaceSpec& spec, const Window& window) {
    ValidationReport rep;
    auto fail = [&rep](const std::string& msg) {
        rep.pass = false;
        rep.violations.push_back(msg);
    };

    if (spec.consts.m <= 0) fail("mass m must be positive");
    if (spec.consts.hbar <= 0) fail("hbar must be positive");
    if (spec.delta() == 0.0) fail("delta must be nonzero");

    switch (spec.kind()) {
    case SpaceKind::KI:
        if (spec.ki().omega < 0) fail("omega must be nonnegative");
        if (spec.ki().kx < 0 || spec.ki().ky < 0) fail("centrifugal indices must be nonnegative");
        break;
    case SpaceKind::KII:
        if (spec.kii().omega < 0) fail("omega must be nonnegative");
        if (spec.kii().kx < 0) fail("centrifugal index kx must be nonnegative");
        break;
    case SpaceKind::KIII:
        if (spec.kiii().k1 < 0 || spec.kiii().k2 < 0)
            fail("centrifugal indices k1, k2 must be nonnegative");
        break;
    }

    // Positivity of f is sampled, not proved: check a 32x32 grid of cell
    // midpoints, which also keeps the samples off the singular axes.
    constexpr int n = 32;
    const double dx = (window.x_hi - window.x_lo) / n;
    const double dy = (window.y_hi - window.y_lo) / n;
    if (dx <= 0 || dy <= 0) {
        fail("coordinate window is empty");
        return rep;
    }
    double fmin = kInf;
    double xmin = 0, ymin = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = window.x_lo + (i + 0.5) * dx;
            const double y = window.y_lo + (j + 0.5) * dy;
            if (x == 0.0 || y == 0.0) continue;
            double f;
            try {
                f = metric_value(spec, x, y);
            } catch (const domain_error&) {
                continue;
            }
            if (f < fmin) {
                fmin = f;
                xmin = x;
                ymin = y;
            }
        }
    }
    if (fmin <= 0.0) {
        std::ostringstream os;
        os << "metric not positive on window: f(" << xmin << ", " << ymin
           << ") = " << fmin;
        fail(os.str());
    }
    return rep;
}

namespace {

std::optional<double> real_sqrt(double sq) {
    if (sq < 0.0) return std::nullopt;
    return std::sqrt(sq);
}

} // namespace

EffectiveParams effective_params(const SpaceSpec& spec, double E,
                                 std::optional<QuantumNumbers> qn) {
    const double m = spec.consts.m;
    const double hbar = spec.consts.hbar;
    const double h2 = hbar * hbar;
    EffectiveParams p;
    p.E = E;

    switch (spec.kind()) {
    case SpaceKind::KI: {
        const auto& g = spec.ki();
        p.omega_tilde_sq = g.omega * g.omega - 2.0 * g.alpha * E / m;
        p.kx_tilde_sq = g.kx * g.kx - 2.0 * m * g.beta * E / h2;
        p.ky_tilde_sq = g.ky * g.ky - 2.0 * m * g.gamma * E / h2;
        p.omega_tilde = real_sqrt(p.omega_tilde_sq);
        p.kx_tilde = real_sqrt(p.kx_tilde_sq);
        p.ky_tilde = real_sqrt(p.ky_tilde_sq);
        if (qn && p.kx_tilde && p.ky_tilde)
            p.lambda = 2.0 * qn->n2 + *p.kx_tilde + *p.ky_tilde + 1.0;
        break;
    }
    case SpaceKind::KII: {
        const auto& g = spec.kii();
        p.omega_tilde_sq = g.omega * g.omega - 2.0 * g.alpha * E / m;
        p.kx_tilde_sq = g.kx * g.kx - 2.0 * m * g.beta * E / h2;
        p.omega_tilde = real_sqrt(p.omega_tilde_sq);
        p.kx_tilde = real_sqrt(p.kx_tilde_sq);
        if (p.omega_tilde_sq > 0.0)
            p.y_shift = (g.ky_lin - g.gamma * E) / (4.0 * m * p.omega_tilde_sq);
        break;
    }
    default: {
        const auto& g = spec.kiii();
        p.kx_tilde_sq = g.k1 * g.k1 - 2.0 * m * g.beta * E / h2;
        p.ky_tilde_sq = g.k2 * g.k2 - 2.0 * m * g.gamma * E / h2;
        p.kx_tilde = real_sqrt(p.kx_tilde_sq);
        p.ky_tilde = real_sqrt(p.ky_tilde_sq);
        // omega has no analog here; keep the oscillator slots at zero.
        p.omega_tilde_sq = 0.0;
        const double dE = g.delta * E;
        if (dE < 0.0) {
            const double alpha_tilde = g.alpha2 - g.alpha1 * E;
            p.kappa = (alpha_tilde / hbar) * std::sqrt(-m / (2.0 * dE));
        }
        if (qn && p.kx_tilde && p.ky_tilde)
            p.lambda = qn->n2 + 0.5 * *p.kx_tilde + 0.5 * *p.ky_tilde + 0.5;
        break;
    }
    }
    return p;
}

namespace {

// Intersects {c - d E >= 0} into the interval.
void clip_linear_radicand(Interval& iv, double c, double d) {
    if (d > 0.0)
        iv.hi = std::min(iv.hi, c / d);
    else if (d < 0.0)
        iv.lo = std::max(iv.lo, c / d);
    else if (c < 0.0)
        iv = {1.0, -1.0}; // empty
}

} // namespace

std::vector<Interval> physical_energy_domain(const SpaceSpec& spec) {
    if (spec.delta() == 0.0)
        throw domain_error("physical_energy_domain requires delta != 0");
    const double m = spec.consts.m;
    const double h2 = spec.consts.hbar * spec.consts.hbar;

    Interval iv;
    switch (spec.kind()) {
    case SpaceKind::KI: {
        const auto& g = spec.ki();
        clip_linear_radicand(iv, g.omega * g.omega, 2.0 * g.alpha / m);
        clip_linear_radicand(iv, g.kx * g.kx, 2.0 * m * g.beta / h2);
        clip_linear_radicand(iv, g.ky * g.ky, 2.0 * m * g.gamma / h2);
        break;
    }
    case SpaceKind::KII: {
        const auto& g = spec.kii();
        clip_linear_radicand(iv, g.omega * g.omega, 2.0 * g.alpha / m);
        clip_linear_radicand(iv, g.kx * g.kx, 2.0 * m * g.beta / h2);
        break;
    }
    default: {
        const auto& g = spec.kiii();
        clip_linear_radicand(iv, g.k1 * g.k1, 2.0 * m * g.beta / h2);
        clip_linear_radicand(iv, g.k2 * g.k2, 2.0 * m * g.gamma / h2);
        // delta * E < 0
        if (g.delta > 0.0)
            iv.hi = std::min(iv.hi, 0.0);
        else
            iv.lo = std::max(iv.lo, 0.0);
        break;
    }
    }
    if (iv.empty()) return {};
    return {iv};
}

DarbouxClass darboux_classify(const SpaceSpec& spec) {
    double alpha, beta, gamma, delta;
    switch (spec.kind()) {
    case SpaceKind::KI:
        alpha = spec.ki().alpha; beta = spec.ki().beta;
        gamma = spec.ki().gamma; delta = spec.ki().delta;
        break;
    case SpaceKind::KII:
        alpha = spec.kii().alpha; beta = spec.kii().beta;
        gamma = spec.kii().gamma; delta = spec.kii().delta;
        break;
    default:
        alpha = spec.kiii().alpha1; beta = spec.kiii().beta;
        gamma = spec.kiii().gamma; delta = spec.kiii().delta;
        break;
    }
    if (spec.kind() == SpaceKind::KII && alpha == 0 && beta == 0 && delta == 0 && gamma != 0)
        return DarbouxClass::D_I;
    if (beta != 0 && alpha == 0 && gamma == 0 && delta == 0)
        return DarbouxClass::D_II;
    if (alpha == 0 && beta == 0 && gamma == 0 && delta != 0)
        return DarbouxClass::flat;
    return DarbouxClass::generic;
}

std::string to_string(DarbouxClass c) {
    switch (c) {
    case DarbouxClass::D_I: return "D_I";
    case DarbouxClass::D_II: return "D_II";
    case DarbouxClass::flat: return "flat";
    default: return "generic";
    }
}

std::string to_string(SpaceKind k) {
    switch (k) {
    case SpaceKind::KI: return "K_I";
    case SpaceKind::KII: return "K_II";
    default: return "K_III";
    }
}

std::string to_string(SolveMethod m) {
    switch (m) {
    case SolveMethod::bracketing: return "bracketing";
    case SolveMethod::polynomial: return "polynomial";
    default: return "closed-form";
    }
}

} // namespace koenigs
