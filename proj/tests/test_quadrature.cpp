#include <doctest.h>

#include <cmath>
#include <numeric>

#include "koenigs/quadrature.hpp"

using namespace koenigs;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    const auto rule = quadrature::gauss_legendre(8);
    REQUIRE(rule.nodes.size() == 8);
    double wsum = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    // degree 15 is exact for an 8-point rule
    double val = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        val += rule.weights[i] * std::pow(rule.nodes[i], 14);
    CHECK(val == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("composite rule reproduces smooth integrals") {
    const auto rule = quadrature::composite_gauss(0.0, 2.0, 128);
    double val = 0.0;
    for (size_t i = 0; i < rule.x.size(); ++i) val += rule.w[i] * std::exp(rule.x[i]);
    CHECK(val == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-13));
    CHECK_THROWS_AS(quadrature::composite_gauss(1.0, 1.0, 16), domain_error);
}

TEST_CASE("pairwise sum is deterministic and accurate") {
    std::vector<double> v(10000);
    for (size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / (1.0 + i);
    const double s1 = quadrature::pairwise_sum(v);
    const double s2 = quadrature::pairwise_sum(v);
    CHECK(s1 == s2);
    long double exact = 0.0L;
    for (double x : v) exact += x;
    CHECK(std::abs(s1 - static_cast<double>(exact)) < 1e-12);
}
