#include "koenigs/specfun.hpp"

#include <cmath>
#include <string>

#include "detail/ddreal.hpp"

namespace koenigs::specfun {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kZWindowKummer = 50.0;
constexpr double kZWindowBessel = 60.0;

bool is_nonpositive_integer(double x, double tol = 0.0) {
    return x <= 0.5 && std::abs(x - std::round(x)) <= tol && std::round(x) <= 0.0;
}

} // namespace

double log_gamma(double z) {
    if (!(z > 0.0)) throw domain_error("log_gamma requires z > 0");
    if (z < 0.5) return log_gamma(z + 1.0) - std::log(z);
    // Lanczos, g = 7, 9 coefficients.
    static const double g = 7.0;
    static const double c[9] = {
        0.99999999999980993,      676.5203681218851,   -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,  12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    const double x = z - 1.0;
    double s = c[0];
    for (int i = 1; i < 9; ++i) s += c[i] / (x + i);
    const double t = x + g + 0.5;
    return 0.5 * std::log(kTwoPi) + (x + 0.5) * std::log(t) - t + std::log(s);
}

SeriesResult kummer_m(double a, double b, double z, int terms_max) {
    if (is_nonpositive_integer(b))
        throw domain_error("kummer_m: b must not be a nonpositive integer");
    if (std::abs(z) > kZWindowKummer)
        throw domain_error("kummer_m: |z| outside declared window (<= 50)");
    if (z < 0.0) {
        // Kummer transform keeps every series term positive-signed late.
        SeriesResult r = kummer_m(b - a, b, -z, terms_max);
        r.value *= std::exp(z);
        return r;
    }
    double term = 1.0, sum = 1.0;
    int small_streak = 0;
    for (int n = 0; n < terms_max; ++n) {
        term *= (a + n) / (b + n) * z / (n + 1);
        sum += term;
        if (std::abs(term) <= 1e-16 * std::abs(sum) + 1e-300) {
            if (++small_streak >= 2) return {sum, n + 1, true};
        } else {
            small_streak = 0;
        }
    }
    throw convergence_error("kummer_m: series did not converge within " +
                            std::to_string(terms_max) + " terms");
}

namespace {

using detail::dd;

struct DdSeries {
    dd sum{1.0};
    double max_mag = 1.0;
    bool converged = false;
    int terms = 0;
};

DdSeries kummer_m_dd(dd a, dd b, double z, int terms_max) {
    DdSeries out;
    const dd zdd(z);
    dd term(1.0);
    int small_streak = 0;
    for (int n = 0; n < terms_max; ++n) {
        term = term * (a + static_cast<double>(n)) /
               (b + static_cast<double>(n)) * zdd / dd(n + 1.0);
        out.sum = out.sum + term;
        out.max_mag = std::max(out.max_mag, std::abs(term.hi));
        out.terms = n + 1;
        if (std::abs(term.hi) <= 1e-33 * std::abs(out.sum.hi) + 1e-300) {
            if (++small_streak >= 2) {
                out.converged = true;
                return out;
            }
        } else {
            small_streak = 0;
        }
    }
    return out;
}

// Connection formula U = G(1-b)/G(a-b+1) M(a,b,z)
//                      + G(b-1)/G(a) z^{1-b} M(a-b+1,2-b,z),
// with the gamma ratios built from the entire function 1/Gamma so that
// poles of 1/G(a) and 1/G(a-b+1) silently kill their term.
SeriesResult kummer_u_conn(dd a, dd b, double z, int terms_max) {
    const dd one_minus_b = dd(1.0) - b;
    const dd a_b1 = a + one_minus_b; // a - b + 1

    auto inv_gamma = [](dd x) -> dd {
        dd prod(1.0);
        dd y = x;
        while (y.hi < 0.5) {
            prod = prod * y;
            y = y + 1.0;
        }
        while (y.hi > 1.5) {
            y = y - 1.0;
            prod = prod / y;
        }
        dd s(0.0);
        for (int k = 47; k >= 0; --k)
            s = s * y + dd{detail::kInvGammaTaylor[k][0], detail::kInvGammaTaylor[k][1]};
        s = s * y;
        return prod * s;
    };

    const dd inv_g_1mb = inv_gamma(one_minus_b);
    const dd inv_g_bm1 = inv_gamma(b - 1.0);
    if (inv_g_1mb.hi == 0.0 || inv_g_bm1.hi == 0.0)
        throw domain_error("kummer_u: connection-formula gamma pole at integer b");
    const dd c1 = inv_gamma(a_b1) / inv_g_1mb;
    const dd c2 = inv_gamma(a) / inv_g_bm1;

    const DdSeries s1 = kummer_m_dd(a, b, z, terms_max);
    const DdSeries s2 = kummer_m_dd(a_b1, dd(2.0) - b, z, terms_max);
    if (!s1.converged || !s2.converged)
        throw convergence_error("kummer_u: series did not converge");

    const dd zpow = detail::dd_pow(dd(z), one_minus_b);
    const dd t1 = c1 * s1.sum;
    const dd t2 = c2 * zpow * s2.sum;
    const dd u = t1 + t2;

    const double big = std::max(std::abs(c1.hi) * s1.max_mag,
                                std::abs(c2.hi * zpow.hi) * s2.max_mag);
    const double loss = big / std::max(std::abs(u.hi), 1e-300);
    if (loss * 3e-31 > 1e-9)
        throw precision_error("kummer_u: cancellation exceeds the accuracy budget");

    return {u.value(), s1.terms + s2.terms, true};
}

} // namespace

SeriesResult kummer_u(double a, double b, double z, int terms_max) {
    if (!(z > 0.0)) throw domain_error("kummer_u requires z > 0");
    if (z > kZWindowKummer)
        throw domain_error("kummer_u: z outside declared window (<= 50)");
    const double b_round = std::round(b);
    if (std::abs(b - b_round) < 1e-6) {
        // Integer b degenerates the connection formula; evaluate at the
        // symmetric perturbations and average (pole parts cancel).
        const SeriesResult lo = kummer_u_conn(dd(a), dd(b_round) - dd(1e-6), z, terms_max);
        const SeriesResult hi = kummer_u_conn(dd(a), dd(b_round) + dd(1e-6), z, terms_max);
        return {0.5 * (lo.value + hi.value), lo.terms_used + hi.terms_used,
                lo.converged && hi.converged};
    }
    return kummer_u_conn(dd(a), dd(b), z, terms_max);
}

double whittaker(WhittakerKind kind, double kappa, double mu, double z,
                 int terms_max) {
    if (!(z > 0.0) || z > kZWindowKummer)
        throw domain_error("whittaker: z outside window (0, 50]");
    const double a = mu - kappa + 0.5;
    const double b = 1.0 + 2.0 * mu;
    const double shape = std::exp(-0.5 * z) * std::pow(z, mu + 0.5);
    if (kind == WhittakerKind::M) {
        if (is_nonpositive_integer(b, 1e-14))
            throw domain_error("whittaker M: 1+2mu must not be a nonpositive integer");
        return shape * kummer_m(a, b, z, terms_max).value;
    }
    return shape * kummer_u(a, b, z, terms_max).value;
}

double bessel_i(double nu, double z, int terms_max) {
    if (nu < 0.0 || nu > 100.0) throw domain_error("bessel_i: nu outside [0, 100]");
    if (z < 0.0 || z > kZWindowBessel) throw domain_error("bessel_i: z outside [0, 60]");
    if (z == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    const double q = 0.25 * z * z;
    const double lead = std::exp(nu * std::log(0.5 * z) - log_gamma(nu + 1.0));
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < terms_max; ++k) {
        term *= q / (k * (nu + k));
        sum += term;
        if (term <= 1e-16 * sum) return lead * sum;
    }
    throw convergence_error("bessel_i: series did not converge");
}

double laguerre(int n, double lambda, double x) {
    if (n < 0) throw domain_error("laguerre: n must be >= 0");
    if (lambda <= -1.0) throw domain_error("laguerre: lambda must be > -1");
    if (n == 0) return 1.0;
    double lm1 = 1.0;
    double l = 1.0 + lambda - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + lambda - x) * l - (k + lambda) * lm1) / (k + 1.0);
        lm1 = l;
        l = next;
    }
    return l;
}

double jacobi(int n, double a, double b, double x) {
    if (n < 0) throw domain_error("jacobi: n must be >= 0");
    if (a <= -1.0 || b <= -1.0) throw domain_error("jacobi: parameters must be > -1");
    if (n == 0) return 1.0;
    double pm1 = 1.0;
    double p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    for (int k = 2; k <= n; ++k) {
        const double c = 2.0 * k + a + b;
        const double a1 = 2.0 * k * (k + a + b) * (c - 2.0);
        const double a2 = (c - 1.0) * (a * a - b * b);
        const double a3 = (c - 2.0) * (c - 1.0) * c;
        const double a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
        const double next = ((a2 + a3 * x) * p - a4 * pm1) / a1;
        pm1 = p;
        p = next;
    }
    return p;
}

double hermite(int n, double x) {
    if (n < 0) throw domain_error("hermite: n must be >= 0");
    if (n == 0) return 1.0;
    double hm1 = 1.0;
    double h = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * h - 2.0 * k * hm1;
        hm1 = h;
        h = next;
    }
    return h;
}

double orthopoly(PolyFamily family, int n, PolyParams params, double x) {
    switch (family) {
    case PolyFamily::laguerre: return laguerre(n, params.a, x);
    case PolyFamily::jacobi: return jacobi(n, params.a, params.b, x);
    default: return hermite(n, x);
    }
}

} // namespace koenigs::specfun
