#include "koenigs/wavefun.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "koenigs/quadrature.hpp"
#include "koenigs/specfun.hpp"

namespace koenigs::wavefun {

using specfun::log_gamma;

double angular_pt(int n, double a, double b, double u) {
    if (n < 0) throw domain_error("angular_pt: n must be >= 0");
    if (a <= -0.5 || b <= -0.5) throw domain_error("angular_pt: indices must exceed -1/2");
    if (!(u > 0.0) || !(u < M_PI_2)) throw domain_error("angular_pt: u outside (0, pi/2)");
    const double logC2 = std::log(2.0 * (a + b + 2.0 * n + 1.0)) + log_gamma(n + 1.0) +
                         log_gamma(a + b + n + 1.0) - log_gamma(a + n + 1.0) -
                         log_gamma(b + n + 1.0);
    const double su = std::sin(u), cu = std::cos(u);
    return std::exp(0.5 * logC2 + (a + 0.5) * std::log(su) + (b + 0.5) * std::log(cu)) *
           specfun::jacobi(n, a, b, std::cos(2.0 * u));
}

double radial_basis(RadialKind kind, int n, const RadialParams& p, double r_or_y) {
    if (n < 0) throw domain_error("radial_basis: n must be >= 0");
    switch (kind) {
    case RadialKind::rho: {
        if (p.lambda <= -1.0) throw domain_error("radial_basis rho: lambda must be > -1");
        if (!(p.scale > 0.0)) throw domain_error("radial_basis rho: scale must be positive");
        const double r = r_or_y;
        if (!(r > 0.0)) throw domain_error("radial_basis rho: r must be positive");
        const double s = p.scale;
        const double logN2 = std::log(2.0) + log_gamma(n + 1.0) +
                             (p.lambda + 1.0) * std::log(s) - log_gamma(n + p.lambda + 1.0);
        return std::exp(0.5 * logN2 + (p.lambda + 0.5) * std::log(r) - 0.5 * s * r * r) *
               specfun::laguerre(n, p.lambda, s * r * r);
    }
    case RadialKind::shifted_ho: {
        if (!(p.omega_full > 0.0))
            throw domain_error("radial_basis shifted_ho: frequency must be positive");
        const double w = std::sqrt(p.m * p.omega_full / p.hbar);
        const double xi = w * (r_or_y - p.center);
        const double logN = 0.25 * std::log(p.m * p.omega_full / (M_PI * p.hbar)) -
                            0.5 * (n * std::log(2.0) + log_gamma(n + 1.0));
        return std::exp(logN - 0.5 * xi * xi) * specfun::hermite(n, xi);
    }
    default: {
        if (p.lambda <= -0.5) throw domain_error("radial_basis coulomb: lambda must be > -1/2");
        if (!(p.a_bohr > 0.0)) throw domain_error("radial_basis coulomb: a must be positive");
        const double r = r_or_y;
        if (!(r > 0.0)) throw domain_error("radial_basis coulomb: r must be positive");
        const double c = p.a_bohr * (n + p.lambda + 0.5);
        const double rho = 2.0 * r / c;
        // int_0^inf rho^{2L+1} e^{-rho} L_n^{(2L)}(rho)^2 drho
        //   = (2n+2L+1) Gamma(n+2L+1)/n!
        const double logN2 = std::log(4.0) + log_gamma(n + 1.0) - 2.0 * std::log(c) -
                             std::log(2.0 * n + 2.0 * p.lambda + 1.0) -
                             log_gamma(n + 2.0 * p.lambda + 1.0);
        return std::exp(0.5 * logN2 + p.lambda * std::log(rho) - 0.5 * rho) *
               specfun::laguerre(n, 2.0 * p.lambda, rho);
    }
    }
}

namespace {

// Separated bound state as a product of a coord1 and a coord2 factor,
// with the 2D measure jacobian.
struct ProductState {
    std::function<double(double)> f1; // radial/x factor (2D form)
    std::function<double(double)> f2; // angular/y factor
    bool polar = false;               // jacobian r on coord1
    bool check_c2_ends = false;       // unbounded coord2 (KII y-axis)
};

ProductState build_state(const SpaceSpec& spec, const EnergyLevel& level) {
    const auto par = effective_params(spec, level.E, level.qn);
    const double m = spec.consts.m, hbar = spec.consts.hbar;
    ProductState st;
    switch (spec.kind()) {
    case SpaceKind::KI: {
        if (!par.omega_tilde || !(*par.omega_tilde > 0.0) || !par.kx_tilde || !par.ky_tilde)
            throw domain_error("assemble: effective parameters undefined at this energy");
        const double kx = *par.kx_tilde, ky = *par.ky_tilde;
        const double lambda = 2.0 * level.qn.n2 + kx + ky + 1.0;
        RadialParams rp;
        rp.lambda = lambda;
        rp.scale = m * *par.omega_tilde / hbar;
        const int nr = level.qn.n1, nphi = level.qn.n2;
        st.f1 = [rp, nr](double r) {
            return radial_basis(RadialKind::rho, nr, rp, r) / std::sqrt(r);
        };
        st.f2 = [ky, kx, nphi](double phi) { return angular_pt(nphi, ky, kx, phi); };
        st.polar = true;
        return st;
    }
    case SpaceKind::KII: {
        if (!par.omega_tilde || !(*par.omega_tilde > 0.0) || !par.kx_tilde || !par.y_shift)
            throw domain_error("assemble: effective parameters undefined at this energy");
        RadialParams rx;
        rx.lambda = *par.kx_tilde;
        rx.scale = m * *par.omega_tilde / hbar;
        RadialParams ry;
        ry.omega_full = 2.0 * *par.omega_tilde; // 4y^2 doubles the frequency
        ry.center = *par.y_shift;
        ry.m = m;
        ry.hbar = hbar;
        const int nx = level.qn.n1, ny = level.qn.n2;
        st.f1 = [rx, nx](double x) { return radial_basis(RadialKind::rho, nx, rx, x); };
        st.f2 = [ry, ny](double y) { return radial_basis(RadialKind::shifted_ho, ny, ry, y); };
        st.check_c2_ends = true;
        return st;
    }
    default: {
        if (!par.kx_tilde || !par.ky_tilde || !par.kappa)
            throw domain_error("assemble: effective parameters undefined at this energy");
        const double k1 = *par.kx_tilde, k2 = *par.ky_tilde;
        const double lambda = level.qn.n2 + 0.5 * k1 + 0.5 * k2 + 0.5;
        const auto& g = spec.kiii();
        const double alpha_tilde = g.alpha2 - g.alpha1 * level.E;
        if (!(alpha_tilde > 0.0))
            throw domain_error("assemble: effective Coulomb strength must be positive");
        RadialParams rp;
        rp.lambda = lambda;
        rp.a_bohr = hbar * hbar / (m * alpha_tilde);
        const int nr = level.qn.n1, nphi = level.qn.n2;
        st.f1 = [rp, nr](double r) { return radial_basis(RadialKind::coulomb, nr, rp, r); };
        st.f2 = [k2, k1, nphi](double phi) { return angular_pt(nphi, k2, k1, 0.5 * phi); };
        st.polar = true;
        return st;
    }
    }
}

} // namespace

WavefunctionGrid assemble_and_normalize(const SpaceSpec& spec, const EnergyLevel& level,
                                        const GridSpec& grid, const SolverSettings& settings,
                                        bool parallel) {
    settings.check();
    const ProductState st = build_state(spec, level);

    WavefunctionGrid out;
    out.grid = grid;
    out.level = level;

    const auto rule1 = quadrature::composite_gauss(grid.c1_lo, grid.c1_hi, settings.quad_points);
    const auto rule2 = quadrature::composite_gauss(grid.c2_lo, grid.c2_hi, settings.quad_points);
    const size_t nq1 = rule1.x.size(), nq2 = rule2.x.size();
    out.q1 = rule1.x;
    out.q2 = rule2.x;
    out.qpsi.resize(nq1 * nq2);
    out.qwf.resize(nq1 * nq2);

    // Per-axis factors once, tensor assembly after.
    std::vector<double> f1v(nq1), f2v(nq2);
    const long n1l = static_cast<long>(nq1), n2l = static_cast<long>(nq2);
#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i < n1l; ++i) f1v[i] = st.f1(rule1.x[i]);
#pragma omp parallel for schedule(static) if (parallel)
    for (long j = 0; j < n2l; ++j) f2v[j] = st.f2(rule2.x[j]);

#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i < n1l; ++i) {
        const double c1 = rule1.x[i];
        const double jac = st.polar ? c1 : 1.0;
        for (long j = 0; j < n2l; ++j) {
            double x, y;
            if (st.polar) {
                x = c1 * std::cos(rule2.x[j]);
                y = c1 * std::sin(rule2.x[j]);
            } else {
                x = c1;
                y = rule2.x[j];
            }
            const size_t idx = static_cast<size_t>(i) * nq2 + j;
            out.qpsi[idx] = f1v[i] * f2v[j];
            out.qwf[idx] = rule1.w[i] * rule2.w[j] * jac * metric_value(spec, x, y);
        }
    }

    std::vector<double> contrib(nq1 * nq2);
    for (size_t idx = 0; idx < contrib.size(); ++idx)
        contrib[idx] = out.qpsi[idx] * out.qpsi[idx] * out.qwf[idx];
    const double norm = quadrature::pairwise_sum(contrib);
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw domain_error("assemble: norm quadrature failed");

    // Boundary mass on the outermost panels of the unbounded directions.
    constexpr size_t kPanel = 16;
    double boundary = 0.0;
    for (size_t i = nq1 - std::min(kPanel, nq1); i < nq1; ++i)
        for (size_t j = 0; j < nq2; ++j) boundary += contrib[i * nq2 + j];
    if (st.check_c2_ends) {
        for (size_t i = 0; i < nq1; ++i) {
            for (size_t j = 0; j < std::min(kPanel, nq2); ++j)
                boundary += contrib[i * nq2 + j];
            for (size_t j = nq2 - std::min(kPanel, nq2); j < nq2; ++j)
                boundary += contrib[i * nq2 + j];
        }
    }
    if (boundary > 1e-8 * norm) {
        std::ostringstream os;
        os << "grid window too small: boundary density " << boundary / norm
           << " of total exceeds 1e-8";
        throw domain_error(os.str());
    }

    const double inv = 1.0 / std::sqrt(norm);
    for (double& v : out.qpsi) v *= inv;
    for (size_t idx = 0; idx < contrib.size(); ++idx)
        contrib[idx] = out.qpsi[idx] * out.qpsi[idx] * out.qwf[idx];
    out.norm_estimate = quadrature::pairwise_sum(contrib);

    // Display samples at cell midpoints.
    out.values.resize(static_cast<size_t>(grid.n1) * grid.n2);
    out.f_weight.resize(out.values.size());
    const double d1 = (grid.c1_hi - grid.c1_lo) / grid.n1;
    const double d2 = (grid.c2_hi - grid.c2_lo) / grid.n2;
    const long gn1 = grid.n1;
#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i < gn1; ++i) {
        const double c1 = grid.c1_lo + (i + 0.5) * d1;
        const double v1 = st.f1(c1);
        for (int j = 0; j < grid.n2; ++j) {
            const double c2 = grid.c2_lo + (j + 0.5) * d2;
            double x, y;
            if (st.polar) {
                x = c1 * std::cos(c2);
                y = c1 * std::sin(c2);
            } else {
                x = c1;
                y = c2;
            }
            const size_t idx = static_cast<size_t>(i) * grid.n2 + j;
            out.values[idx] = inv * v1 * st.f2(c2);
            out.f_weight[idx] = metric_value(spec, x, y);
        }
    }
    return out;
}

double overlap(const WavefunctionGrid& g1, const WavefunctionGrid& g2,
               const SpaceSpec& spec) {
    (void)spec;
    if (!(g1.grid == g2.grid) || g1.qpsi.size() != g2.qpsi.size())
        throw domain_error("overlap: grids differ");
    std::vector<double> contrib(g1.qpsi.size());
    for (size_t i = 0; i < contrib.size(); ++i)
        contrib[i] = g1.qpsi[i] * g2.qpsi[i] * g1.qwf[i];
    return quadrature::pairwise_sum(contrib);
}

} // namespace koenigs::wavefun
