#pragma once

// Compact double-double ("dd") arithmetic: an unevaluated sum of two
// doubles giving ~31 significant digits.  Used only inside specfun, where
// the Kummer-U connection formula cancels catastrophically in plain
// doubles.  Algorithms follow the classic error-free transformations
// (two_sum / fma-based two_prod).

#include <cmath>
#include <stdexcept>

#include "detail/dd_constants.hpp"

namespace koenigs::detail {

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    dd() = default;
    constexpr dd(double h, double l) : hi(h), lo(l) {}
    explicit constexpr dd(double x) : hi(x), lo(0.0) {}

    double value() const { return hi + lo; }
};

inline dd two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

// Requires |a| >= |b| or a == 0.
inline dd quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd operator+(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    const dd t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
    const double q1 = a.hi / b.hi;
    dd r = a - dd(q1) * b;
    const double q2 = r.hi / b.hi;
    r = r - dd(q2) * b;
    const double q3 = r.hi / b.hi;
    dd q = quick_two_sum(q1, q2);
    return q + dd(q3);
}

inline dd operator+(dd a, double b) { return a + dd(b); }
inline dd operator-(dd a, double b) { return a - dd(b); }
inline dd operator*(dd a, double b) { return a * dd(b); }
inline dd operator/(dd a, double b) { return a / dd(b); }

inline dd dd_ldexp(dd a, int k) { return {std::ldexp(a.hi, k), std::ldexp(a.lo, k)}; }

inline dd dd_abs(dd a) { return a.hi < 0.0 ? -a : a; }

inline dd dd_exp(dd x) {
    if (x.hi > 700.0) throw std::overflow_error("dd_exp overflow");
    if (x.hi < -700.0) return dd(0.0);
    const dd ln2{kLn2[0][0], kLn2[0][1]};
    const int k = static_cast<int>(std::lround(x.hi / ln2.hi));
    const dd r = x - ln2 * static_cast<double>(k);
    // |r| <= ln2/2; 24 Taylor terms reach ~1e-35.
    dd sum(0.0);
    dd p(1.0);
    for (int n = 0; n < 25; ++n) {
        sum = sum + p * dd{kExpTaylor[n][0], kExpTaylor[n][1]};
        p = p * r;
    }
    return dd_ldexp(sum, k);
}

inline dd dd_log(dd x) {
    if (x.hi <= 0.0) throw std::domain_error("dd_log requires positive argument");
    // Newton refinement of the double-precision seed.
    const double y0 = std::log(x.hi);
    dd y(y0);
    const dd e = dd_exp(-y);
    return y + x * e - dd(1.0);
}

inline dd dd_pow(dd base, dd expo) { return dd_exp(expo * dd_log(base)); }

// Gamma at a dd argument that is not a nonpositive integer, |x| < ~170.
// Shifts the argument into [0.5, 1.5] with the recurrence, then sums the
// Maclaurin series of the entire function 1/Gamma.
inline dd dd_gamma(dd x) {
    if (x.hi <= 0.0 && x.hi == std::floor(x.hi) && std::abs(x.lo) == 0.0)
        throw std::domain_error("dd_gamma pole at nonpositive integer");
    dd num(1.0), den(1.0);
    dd y = x;
    while (y.hi > 1.5) {
        y = y - 1.0;     // Gamma(y+1) = y Gamma(y)
        num = num * y;
    }
    while (y.hi < 0.5) {
        den = den * y;   // Gamma(y) = Gamma(y+1)/y
        y = y + 1.0;
    }
    dd inv(0.0);
    for (int k = 47; k >= 0; --k) {
        inv = inv * y + dd{kInvGammaTaylor[k][0], kInvGammaTaylor[k][1]};
    }
    inv = inv * y; // series starts at x^1
    return num / (inv * den);
}

} // namespace koenigs::detail
