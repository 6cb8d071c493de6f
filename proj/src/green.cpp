#include "koenigs/green.hpp"

#include <algorithm>
#include <cmath>

#include "koenigs/specfun.hpp"
#include "koenigs/wavefun.hpp"

namespace koenigs::green {

namespace {

using specfun::log_gamma;
using specfun::WhittakerKind;

// Gamma on the whole real axis via reflection; module-internal (the
// public specfun surface stays positive-argument only).
double real_gamma(double x) {
    if (x > 0.0) return std::exp(log_gamma(x));
    const double s = std::sin(M_PI * x);
    if (std::abs(s) < 1e-300) throw domain_error("real_gamma: pole at nonpositive integer");
    return M_PI / (s * std::exp(log_gamma(1.0 - x)));
}

double pole_distance(double g) {
    // distance of the gamma argument to the nearest nonpositive integer
    if (g > 0.5) return g; // nearest pole is 0 at distance g
    return std::abs(g - std::round(g));
}

} // namespace

double gamma_argument(const SpaceSpec& spec, int n_phi, int n_r, double E) {
    const auto par = effective_params(spec, E, QuantumNumbers{n_r, n_phi});
    if (spec.kind() == SpaceKind::KI) {
        if (!par.omega_tilde || !(*par.omega_tilde > 0.0) || !par.lambda)
            throw domain_error("gamma_argument: effective parameters undefined");
        const double de = spec.ki().delta * E;
        return 0.5 * (1.0 + *par.lambda - de / (spec.consts.hbar * *par.omega_tilde)) + n_r;
    }
    if (spec.kind() == SpaceKind::KIII) {
        if (!par.lambda || !par.kappa)
            throw domain_error("gamma_argument: effective parameters undefined");
        return 0.5 + *par.lambda - *par.kappa + n_r;
    }
    throw domain_error("gamma_argument: KI and KIII only");
}

GreenEvaluation green_value(const SpaceSpec& spec, PolarPoint p1, PolarPoint p2,
                            double E, int n_max, int series_terms_max) {
    if (spec.kind() == SpaceKind::KII)
        throw domain_error("green_value: KII is handled through its spectrum expansion");
    if (!(p1.r > 0.0) || !(p2.r > 0.0))
        throw domain_error("green_value: radii must be positive");
    if (n_max < 8) throw domain_error("green_value: n_max must be >= 8");

    const double m = spec.consts.m, hbar = spec.consts.hbar;
    const auto par = effective_params(spec, E);
    const double r_sm = std::min(p1.r, p2.r), r_lg = std::max(p1.r, p2.r);

    GreenEvaluation out;
    out.E = E;
    double last = 0.0;

    if (spec.kind() == SpaceKind::KI) {
        if (!par.omega_tilde || !(*par.omega_tilde > 0.0) || !par.kx_tilde || !par.ky_tilde)
            throw domain_error("green_value: E outside the physical domain");
        const double wt = *par.omega_tilde;
        const double kx = *par.kx_tilde, ky = *par.ky_tilde;
        const double de = spec.ki().delta * E;
        const double s = m * wt / hbar;
        const double kap = de / (2.0 * hbar * wt);
        for (int n = 0; n <= n_max; ++n) {
            const double lambda = 2.0 * n + kx + ky + 1.0;
            const double g = 0.5 * (1.0 + lambda - de / (hbar * wt));
            if (pole_distance(g) < 1e-6)
                throw domain_error("green_value: E within 1e-6 of a bound-state pole");
            const double ang = wavefun::angular_pt(n, ky, kx, p2.phi) *
                               wavefun::angular_pt(n, ky, kx, p1.phi);
            const double rad =
                real_gamma(g) / (hbar * wt * std::sqrt(p1.r * p2.r) *
                                 std::exp(log_gamma(1.0 + lambda))) *
                specfun::whittaker(WhittakerKind::W, kap, 0.5 * lambda, s * r_lg * r_lg,
                                   series_terms_max) *
                specfun::whittaker(WhittakerKind::M, kap, 0.5 * lambda, s * r_sm * r_sm,
                                   series_terms_max);
            last = ang * rad;
            out.value += last;
            out.terms = n + 1;
        }
    } else {
        if (!par.kx_tilde || !par.ky_tilde || !par.kappa)
            throw domain_error("green_value: E outside the physical domain");
        const double k1 = *par.kx_tilde, k2 = *par.ky_tilde;
        const double kap = *par.kappa;
        const double de = spec.kiii().delta * E;
        const double pref = std::sqrt(-m / (2.0 * de)) / hbar;
        const double zs = std::sqrt(-8.0 * m * de) / hbar;
        for (int n = 0; n <= n_max; ++n) {
            const double lambda = n + 0.5 * k1 + 0.5 * k2 + 0.5;
            const double g = 0.5 + lambda - kap + 0.0;
            if (pole_distance(g + 0.0) < 1e-6 || pole_distance(g) < 1e-6)
                throw domain_error("green_value: E within 1e-6 of a bound-state pole");
            const double ang = wavefun::angular_pt(n, k2, k1, 0.5 * p2.phi) *
                               wavefun::angular_pt(n, k2, k1, 0.5 * p1.phi);
            // W takes r_>, M takes r_< (the printed form repeats r_> in
            // both slots; resolved as a typo by analogy with KI).
            const double rad =
                pref * real_gamma(g) / std::exp(log_gamma(2.0 * lambda + 1.0)) *
                specfun::whittaker(WhittakerKind::W, kap, lambda, zs * r_lg,
                                   series_terms_max) *
                specfun::whittaker(WhittakerKind::M, kap, lambda, zs * r_sm,
                                   series_terms_max);
            last = ang * rad;
            out.value += last;
            out.terms = n + 1;
        }
    }
    out.truncation_error_estimate = std::abs(last);
    return out;
}

double kernel_value(const SpaceSpec& spec, PolarPoint p1, PolarPoint p2,
                    double tau, double E_ref, int n_max) {
    if (spec.kind() != SpaceKind::KI)
        throw domain_error("kernel_value: KI only");
    if (!(tau > 0.0)) throw domain_error("kernel_value: tau must be positive");
    const double m = spec.consts.m, hbar = spec.consts.hbar;
    const auto par = effective_params(spec, E_ref);
    if (!par.omega_tilde || !(*par.omega_tilde > 0.0) || !par.kx_tilde || !par.ky_tilde)
        throw domain_error("kernel_value: reference energy outside the physical domain");
    const double wt = *par.omega_tilde;
    if (wt * tau > 700.0) throw domain_error("kernel_value: tau*omega~ overflows");
    const double kx = *par.kx_tilde, ky = *par.ky_tilde;
    const double sh = std::sinh(wt * tau), ch = std::cosh(wt * tau);
    const double pre = m * wt * std::sqrt(p1.r * p2.r) / (hbar * sh);
    const double expo = std::exp(-(m * wt / (2.0 * hbar)) * (p1.r * p1.r + p2.r * p2.r) *
                                 (ch / sh));
    const double barg = m * wt * p1.r * p2.r / (hbar * sh);

    double sum = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const double lambda = 2.0 * n + kx + ky + 1.0;
        sum += wavefun::angular_pt(n, ky, kx, p2.phi) *
               wavefun::angular_pt(n, ky, kx, p1.phi) * pre * expo *
               specfun::bessel_i(lambda, barg);
    }
    return sum;
}

PoleReport pole_scan(const SpaceSpec& spec, Interval E_range, int n_points,
                     const quantize::Spectrum& spectrum, bool parallel) {
    if (spec.kind() == SpaceKind::KII)
        throw domain_error("pole_scan: KI and KIII only");
    if (n_points < 10) throw domain_error("pole_scan: need at least 10 points");
    PoleReport rep;

    int max1 = 3, max2 = 3;
    for (const auto& lvl : spectrum.levels) {
        max1 = std::max(max1, lvl.qn.n1);
        max2 = std::max(max2, lvl.qn.n2);
    }

    std::vector<QuantumNumbers> channels;
    for (int nr = 0; nr <= max1; ++nr)
        for (int nphi = 0; nphi <= max2; ++nphi) channels.push_back({nr, nphi});

    std::vector<std::vector<PoleHit>> found(channels.size());
    const long nch = static_cast<long>(channels.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long c = 0; c < nch; ++c) {
        const int nr = channels[c].n1, nphi = channels[c].n2;
        auto g = [&](double E) {
            try {
                return gamma_argument(spec, nphi, nr, E);
            } catch (const domain_error&) {
                return std::numeric_limits<double>::quiet_NaN();
            }
        };
        double prev = 0.0, gprev = std::numeric_limits<double>::quiet_NaN();
        for (int i = 0; i <= n_points; ++i) {
            const double E = E_range.lo + (E_range.hi - E_range.lo) * i / n_points;
            const double gE = g(E);
            if (std::isfinite(gE) && std::isfinite(gprev) &&
                (gE < 0.0) != (gprev < 0.0)) {
                double lo = prev, hi = E, glo = gprev;
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (mid == lo || mid == hi) break;
                    const double gm = g(mid);
                    if (!std::isfinite(gm)) break;
                    if ((gm < 0.0) == (glo < 0.0)) {
                        lo = mid;
                        glo = gm;
                    } else {
                        hi = mid;
                    }
                }
                PoleHit hit;
                hit.E = 0.5 * (lo + hi);
                hit.qn = {nr, nphi};
                found[c].push_back(hit);
            }
            prev = E;
            gprev = gE;
        }
    }

    for (auto& ch : found)
        for (auto& hit : ch) {
            for (const auto& lvl : spectrum.levels) {
                if (lvl.qn == hit.qn &&
                    std::abs(lvl.E - hit.E) <= 1e-8 * std::max(1.0, std::abs(hit.E))) {
                    hit.matched = true;
                    hit.level_E = lvl.E;
                    break;
                }
            }
            rep.poles.push_back(hit);
        }
    std::sort(rep.poles.begin(), rep.poles.end(), [](const PoleHit& a, const PoleHit& b) {
        if (a.E != b.E) return a.E < b.E;
        if (a.qn.n1 != b.qn.n1) return a.qn.n1 < b.qn.n1;
        return a.qn.n2 < b.qn.n2;
    });

    for (const auto& lvl : spectrum.levels) {
        if (!E_range.contains(lvl.E)) continue;
        if (lvl.qn.n1 > max1 || lvl.qn.n2 > max2) continue;
        const bool hasPole = std::any_of(rep.poles.begin(), rep.poles.end(),
                                         [&](const PoleHit& p) {
                                             return p.qn == lvl.qn &&
                                                    std::abs(p.E - lvl.E) <=
                                                        1e-8 * std::max(1.0, std::abs(lvl.E));
                                         });
        if (!hasPole) rep.unmatched_levels.push_back(lvl);
    }
    return rep;
}

double residue_check(const SpaceSpec& spec, const EnergyLevel& level,
                     PolarPoint p1, PolarPoint p2, int n_max) {
    if (spec.kind() != SpaceKind::KI)
        throw domain_error("residue_check: KI only");
    const auto par = effective_params(spec, level.E, level.qn);
    if (!par.omega_tilde || !par.kx_tilde || !par.ky_tilde || !par.lambda)
        throw domain_error("residue_check: effective parameters undefined");

    // Richardson limit of (E - E_N) G(E) from both sides.
    const double h = 1e-3;
    auto r_of = [&](double dE) {
        return dE * green_value(spec, p1, p2, level.E + dE, n_max).value;
    };
    const double plus = 2.0 * r_of(0.5 * h) - r_of(h);
    const double minus = 2.0 * r_of(-0.5 * h) - r_of(-h);
    const double residue = 0.5 * (plus + minus);

    wavefun::RadialParams rp;
    rp.lambda = *par.lambda;
    rp.scale = spec.consts.m * *par.omega_tilde / spec.consts.hbar;
    const double kx = *par.kx_tilde, ky = *par.ky_tilde;
    auto psi1d = [&](const PolarPoint& p) {
        return wavefun::angular_pt(level.qn.n2, ky, kx, p.phi) *
               wavefun::radial_basis(wavefun::RadialKind::rho, level.qn.n1, rp, p.r);
    };
    const double expected = -psi1d(p1) * psi1d(p2);
    return std::abs(residue - expected) / std::max(std::abs(expected), 1e-300);
}

} // namespace koenigs::green
