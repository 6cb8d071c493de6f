#include <doctest.h>

#include <cmath>
#include <random>

#include "koenigs/quantize.hpp"

using namespace koenigs;
using quantize::SpecialCase;

namespace {

const SpaceSpec kFlatKI{KoenigsI{0, 0, 0, 1, 1, 0.5, 0.5}, {}};
const SpaceSpec kCurvedKI{KoenigsI{0.1, 0, 0, 1, 1, 0.5, 0.5}, {}};
const SpaceSpec kHydrogenKIII{KoenigsIII{0, 0, 0, 1, 1.0, 0.5, 0.5}, {}};

// positive root of E^2 + 1.8 E - 9 = 0, the squared curved-KI condition
const double kCurvedRoot = (-1.8 + std::sqrt(39.24)) / 2.0;

} // namespace

TEST_CASE("condition_value examples") {
    CHECK(quantize::condition_value(kFlatKI, {0, 0}, 3.0) == doctest::Approx(0.0));
    CHECK(quantize::condition_value(kCurvedKI, {0, 0}, 2.0) ==
          doctest::Approx(2.0 - 3.0 * std::sqrt(0.6)).epsilon(1e-14));
    CHECK(quantize::condition_value(kHydrogenKIII, {0, 0}, -2.0 / 9.0) ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS(quantize::condition_value(kCurvedKI, {0, 0}, 100.0), domain_error);
    CHECK_THROWS_AS(quantize::condition_value(kHydrogenKIII, {0, 0}, 1.0), domain_error);
}

TEST_CASE("solve_level finds the documented roots") {
    SUBCASE("curved KI ground state") {
        const auto r = quantize::solve_level(kCurvedKI, {0, 0}, {});
        REQUIRE(r.levels.size() == 1);
        CHECK(r.levels[0].E == doctest::Approx(kCurvedRoot).epsilon(1e-12));
        CHECK(r.levels[0].E == doctest::Approx(2.2320919).epsilon(1e-7));
        CHECK(r.levels[0].residual < 1e-12 + 1e-12 * std::abs(r.levels[0].E));
        CHECK(r.levels[0].bracket_lo <= r.levels[0].E);
        CHECK(r.levels[0].bracket_hi >= r.levels[0].E);
    }
    SUBCASE("hydrogen-like KIII ground state") {
        const auto r = quantize::solve_level(kHydrogenKIII, {0, 0}, {});
        REQUIRE(r.levels.size() == 1);
        CHECK(r.levels[0].E == doctest::Approx(-2.0 / 9.0).epsilon(1e-13));
    }
    SUBCASE("zero-potential KIII case with no roots") {
        SpaceSpec z{KoenigsIII{1.0, 1.0, 1.0, 1.0, 0.0, 0.5, 0.5}, {}};
        const auto r = quantize::solve_level(z, {0, 0}, {});
        CHECK(r.levels.empty());
        // agreement with a 10x denser scan
        SolverSettings dense;
        dense.scan_points = 20000;
        CHECK(quantize::solve_level(z, {0, 0}, dense).levels.empty());
    }
}

TEST_CASE("enumerate_spectrum flat examples") {
    SUBCASE("KI flat ladder 3,5,5,7") {
        const auto sp = quantize::enumerate_spectrum(kFlatKI, 1, {});
        REQUIRE(sp.levels.size() == 4);
        const double expect[4] = {3, 5, 5, 7};
        for (int i = 0; i < 4; ++i)
            CHECK(sp.levels[i].E == doctest::Approx(expect[i]).epsilon(1e-12));
    }
    SUBCASE("KII flat ladder 2,3,4,4,5,...") {
        SpaceSpec s{KoenigsII{0, 0, 0, 1, 1, 0.5, 0.0}, {}};
        const auto sp = quantize::enumerate_spectrum(s, 2, {});
        REQUIRE(sp.levels.size() == 9);
        const double expect[9] = {2, 3, 4, 4, 5, 6, 6, 7, 8};
        for (int i = 0; i < 9; ++i)
            CHECK(sp.levels[i].E == doctest::Approx(expect[i]).epsilon(1e-12));
    }
    SUBCASE("KIII hydrogen-like ladder") {
        const auto sp = quantize::enumerate_spectrum(kHydrogenKIII, 1, {});
        REQUIRE(sp.levels.size() == 4);
        CHECK(sp.levels[0].E == doctest::Approx(-2.0 / 9.0).epsilon(1e-12));
        CHECK(sp.levels[1].E == doctest::Approx(-2.0 / 25.0).epsilon(1e-12));
        CHECK(sp.levels[2].E == doctest::Approx(-2.0 / 25.0).epsilon(1e-12));
        CHECK(sp.levels[3].E == doctest::Approx(-2.0 / 49.0).epsilon(1e-12));
    }
}

TEST_CASE("N-degeneracy is exact for KI and KIII") {
    SpaceSpec s{KoenigsI{0.07, 0.02, 0.05, 1.3, 0.9, 0.4, 0.8}, {}};
    const auto sp = quantize::enumerate_spectrum(s, 3, {});
    CHECK(sp.warnings.empty());
    for (const auto& a : sp.levels)
        for (const auto& b : sp.levels)
            if (a.qn.n1 + a.qn.n2 == b.qn.n1 + b.qn.n2)
                CHECK(std::abs(a.E - b.E) <= 10.0 * sp.settings.tol_abs);
}

TEST_CASE("monotone growth in N for KI with nonnegative alpha") {
    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        SpaceSpec s{KoenigsI{u(rng), 0, 0, 0.5 + 1.5 * u(rng), 0.2 + 0.8 * u(rng),
                             u(rng), u(rng)},
                    {}};
        double prev = -kInf;
        for (int N = 1; N <= 8; ++N) {
            const auto r = quantize::solve_level(s, {N - 1, 0}, {});
            REQUIRE(r.levels.size() == 1);
            CHECK(r.levels[0].E > prev);
            prev = r.levels[0].E;
        }
    }
}

TEST_CASE("flat-limit continuity is first order in the metric perturbation") {
    auto root_at = [](double eps) {
        SpaceSpec s{KoenigsI{eps, eps, eps, 1, 1, 0.5, 0.5}, {}};
        const auto r = quantize::solve_level(s, {0, 0}, {});
        REQUIRE(r.levels.size() == 1);
        return r.levels[0].E;
    };
    const double e0 = 3.0;
    const double d3 = std::abs(root_at(1e-3) - e0);
    const double d4 = std::abs(root_at(1e-4) - e0);
    const double ratio = d3 / d4;
    CHECK(ratio > 8.0);
    CHECK(ratio < 12.0);
}

TEST_CASE("eliminate_radicals structure") {
    SUBCASE("generic KI is eighth order") {
        SpaceSpec s{KoenigsI{0.1, 0.02, 0.03, 1, 1, 1.0, 1.0}, {}};
        const auto p = quantize::eliminate_radicals(s, {0, 0});
        CHECK(p.declared_degree == 8);
        double cmax = 0.0;
        for (double c : p.coefficients) cmax = std::max(cmax, std::abs(c));
        CHECK(p.max_imag_residue < 1e-8 * cmax);
        CHECK(std::abs(p.coefficients.back()) > 1e-12 * cmax);
        CHECK(p.sample_nodes.size() >= 11);
    }
    SUBCASE("flat KI keeps all eight sign branches") {
        const auto p = quantize::eliminate_radicals(kFlatKI, {0, 0});
        CHECK(p.declared_degree == 8);
        const auto roots = quantize::poly_real_roots(p);
        // roots +- (2N +- kx +- ky): {1, 2, 2, 3} and mirrors
        REQUIRE(roots.size() == 6); // 2 is a double root on each side
        CHECK(roots[0] == doctest::Approx(-3.0).epsilon(1e-10));
        CHECK(roots[1] == doctest::Approx(-2.0).epsilon(1e-7));
        CHECK(roots[2] == doctest::Approx(-1.0).epsilon(1e-10));
        CHECK(roots[5] == doctest::Approx(3.0).epsilon(1e-10));
    }
    SUBCASE("curved KI polynomial contains the bracketing root") {
        const auto p = quantize::eliminate_radicals(kCurvedKI, {0, 0});
        const auto roots = quantize::poly_real_roots(p);
        bool found = false;
        for (double r : roots) found = found || std::abs(r - kCurvedRoot) < 1e-8;
        CHECK(found);
    }
}

TEST_CASE("poly_real_roots on hand-built polynomials") {
    SUBCASE("E^2 - 1") {
        quantize::PolynomialForm p;
        p.coefficients = {-1.0, 0.0, 1.0};
        p.declared_degree = 2;
        const auto roots = quantize::poly_real_roots(p);
        REQUIRE(roots.size() == 2);
        CHECK(roots[0] == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(roots[1] == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("(E+1)^2 double root reported once") {
        quantize::PolynomialForm p;
        p.coefficients = {1.0, 2.0, 1.0};
        p.declared_degree = 2;
        const auto roots = quantize::poly_real_roots(p);
        REQUIRE(roots.size() == 1);
        CHECK(roots[0] == doctest::Approx(-1.0).epsilon(1e-12));
    }
    SUBCASE("degree-5 with a triple root") {
        // (E-1)^3 (E+2)^2 = E^5 + E^4 - 5E^3 + E^2 + 8E - 4... expand:
        quantize::PolynomialForm p;
        p.coefficients = {-4.0, 8.0, 1.0, -5.0, 1.0, 1.0};
        p.declared_degree = 5;
        const auto roots = quantize::poly_real_roots(p);
        REQUIRE(roots.size() == 2);
        CHECK(roots[0] == doctest::Approx(-2.0).epsilon(1e-6));
        CHECK(roots[1] == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("degree zero rejected") {
        quantize::PolynomialForm p;
        p.coefficients = {1.0};
        CHECK_THROWS_AS(quantize::poly_real_roots(p), domain_error);
    }
}

TEST_CASE("cross_validate on the documented cases") {
    SUBCASE("curved KI") {
        const auto cv = quantize::cross_validate(kCurvedKI, {0, 0}, {});
        CHECK(cv.pass());
        REQUIRE(cv.matched.size() == 1);
        CHECK(cv.matched[0].first == doctest::Approx(kCurvedRoot).epsilon(1e-10));
        CHECK(!cv.spurious_poly_roots.empty());
    }
    SUBCASE("flat KI") {
        const auto cv = quantize::cross_validate(kFlatKI, {0, 0}, {});
        CHECK(cv.pass());
        REQUIRE(cv.matched.size() == 1);
        CHECK(cv.matched[0].first == doctest::Approx(3.0));
    }
    SUBCASE("zero-potential no-root case") {
        SpaceSpec z{KoenigsIII{1.0, 1.0, 1.0, 1.0, 0.0, 0.5, 0.5}, {}};
        const auto cv = quantize::cross_validate(z, {0, 0}, {});
        CHECK(cv.matched.empty());
        CHECK(cv.unmatched_bracket_roots.empty());
        CHECK(cv.unconfirmed_poly_roots.empty());
    }
}

TEST_CASE("two-route agreement on random draws per space") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto qn_of = [](int trial) { return QuantumNumbers{trial % 2, (trial / 2) % 2}; };
    for (int trial = 0; trial < 100; ++trial) {
        const auto qn = qn_of(trial);
        SpaceSpec s1{KoenigsI{0.05 + 0.95 * u(rng), 0.05 + 0.95 * u(rng),
                              0.05 + 0.95 * u(rng), 0.5 + 1.5 * u(rng),
                              0.3 + 0.7 * u(rng), 0.1 + 0.9 * u(rng), 0.1 + 0.9 * u(rng)},
                    {}};
        SpaceSpec s2{KoenigsII{0.05 + 0.95 * u(rng), 0.05 + 0.95 * u(rng),
                               0.05 + 0.95 * u(rng), 0.5 + 1.5 * u(rng),
                               0.3 + 0.7 * u(rng), 0.1 + 0.9 * u(rng),
                               2.0 * u(rng) - 1.0},
                     {}};
        SpaceSpec s3{KoenigsIII{0.05 + 0.95 * u(rng), 0.05 + 0.95 * u(rng),
                                0.05 + 0.95 * u(rng), 0.5 + 1.5 * u(rng),
                                0.3 + 0.7 * u(rng), 0.05 + 0.95 * u(rng),
                                0.05 + 0.95 * u(rng)},
                     {}};
        CHECK(quantize::cross_validate(s1, qn, {}).pass());
        CHECK(quantize::cross_validate(s2, qn, {}).pass());
        CHECK(quantize::cross_validate(s3, qn, {}).pass());
    }
}

TEST_CASE("closed forms") {
    SUBCASE("flat KII with a linear term") {
        SpaceSpec s{KoenigsII{0, 0, 0, 1, 1, 0.5, 0.0}, {}};
        const auto cf = quantize::closed_form_special(s, {0, 0}, SpecialCase::flat_KII);
        REQUIRE(cf.levels.size() == 1);
        CHECK(cf.levels[0].E == doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("hydrogen-like KIII") {
        const auto cf =
            quantize::closed_form_special(kHydrogenKIII, {0, 0}, SpecialCase::hydrogenlike_KIII);
        REQUIRE(cf.levels.size() == 1);
        CHECK(cf.levels[0].E == doctest::Approx(-2.0 / 9.0).epsilon(1e-14));
    }
    SUBCASE("KIII k1=k2=0 quadratic degenerates to the Coulomb ladder") {
        SpaceSpec s{KoenigsIII{0, 0, 0, 1, 1.0, 0.0, 0.0}, {}};
        const auto cf = quantize::closed_form_special(s, {0, 0}, SpecialCase::quad_KIII_k0);
        REQUIRE(cf.levels.size() == 1);
        CHECK(cf.levels[0].E == doctest::Approx(-0.5).epsilon(1e-14));
        // printed-coefficient diagnostic is reported, not asserted
        bool note = false;
        for (const auto& n : cf.notes) note = note || n.find("a1") != std::string::npos;
        CHECK(note);
    }
    SUBCASE("flat KI reports the relabeling variant") {
        const auto cf = quantize::closed_form_special(kFlatKI, {0, 0}, SpecialCase::flat_KI);
        REQUIRE(cf.levels.size() == 1);
        CHECK(cf.levels[0].E == doctest::Approx(3.0));
        bool note = false;
        for (const auto& n : cf.notes) note = note || n.find("relabeling") != std::string::npos;
        CHECK(note);
    }
    SUBCASE("pattern mismatch throws") {
        CHECK_THROWS_AS(quantize::closed_form_special(kCurvedKI, {0, 0}, SpecialCase::flat_KI),
                        domain_error);
    }
}

TEST_CASE("quad_KIII_k0 agrees with the solver on random root-bearing draws") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int with_roots = 0;
    for (int trial = 0; trial < 200 && with_roots < 20; ++trial) {
        SpaceSpec s{KoenigsIII{u(rng), u(rng), u(rng), 0.5 + 1.5 * u(rng),
                               0.3 + 0.7 * u(rng), 0.0, 0.0},
                    {}};
        const QuantumNumbers qn{trial % 3, 0};
        const auto cf = quantize::closed_form_special(s, qn, SpecialCase::quad_KIII_k0);
        const auto sr = quantize::solve_level(s, qn, {});
        REQUIRE(cf.levels.size() == sr.levels.size());
        for (size_t i = 0; i < cf.levels.size(); ++i)
            CHECK(std::abs(cf.levels[i].E - sr.levels[i].E) <=
                  1e-10 * std::max(1.0, std::abs(cf.levels[i].E)));
        if (!cf.levels.empty()) ++with_roots;
    }
    CHECK(with_roots >= 20);
}

TEST_CASE("zero-potential closed form matches the solver") {
    // root-bearing regime: alpha1^2 > 4 beta delta
    SpaceSpec s{KoenigsIII{2.0, 0.1, 0.1, 1.0, 0.0, 0.5, 0.5}, {}};
    for (int N = 1; N <= 4; ++N) {
        const QuantumNumbers qn{N - 1, 0};
        const auto cf = quantize::closed_form_special(s, qn, SpecialCase::zeropot_KIII);
        const auto sr = quantize::solve_level(s, qn, {});
        REQUIRE(cf.levels.size() == sr.levels.size());
        REQUIRE(cf.levels.size() == 1);
        CHECK(cf.levels[0].E ==
              doctest::Approx(sr.levels[0].E).epsilon(1e-10));
    }
}

TEST_CASE("coulomb asymptote formula and convergence") {
    SpaceSpec s{KoenigsIII{0, 0, 0, 1, 1.0, 0.5, 0.5}, {}};
    CHECK(quantize::coulomb_asymptote(s, 10) == doctest::Approx(-0.005).epsilon(1e-15));
    CHECK(quantize::coulomb_asymptote(s, 100) == doctest::Approx(-5e-5).epsilon(1e-15));
    SpaceSpec z{KoenigsIII{0, 0, 0, 1, 0.0, 0.5, 0.5}, {}};
    CHECK(quantize::coulomb_asymptote(z, 7) == 0.0);

    // deviation shrinks from N=100 to N=200 in a curved regime
    SpaceSpec c{KoenigsIII{0.05, 0.05, 0.05, 1, 1.0, 0.0, 0.0}, {}};
    auto dev = [&](int N) {
        const auto r = quantize::solve_level(c, {N - 1, 0}, {});
        REQUIRE(r.levels.size() == 1);
        return std::abs(r.levels[0].E / quantize::coulomb_asymptote(c, N) - 1.0);
    };
    const double d100 = dev(100), d200 = dev(200);
    CHECK(d100 < 1e-2);
    CHECK(d200 < d100);
}

TEST_CASE("zero-potential growth is oscillator-like in sqrt(-E)") {
    SpaceSpec s{KoenigsIII{2.0, 0.1, 0.1, 1.0, 0.0, 0.5, 0.5}, {}};
    std::vector<double> svals;
    for (int N = 1; N <= 10; ++N) {
        const auto r = quantize::solve_level(s, {N - 1, 0}, {});
        REQUIRE(r.levels.size() == 1);
        svals.push_back(std::sqrt(-r.levels[0].E));
    }
    // successive gaps of sqrt(-E_N) converge
    std::vector<double> gaps;
    for (size_t i = 1; i < svals.size(); ++i) gaps.push_back(svals[i] - svals[i - 1]);
    for (size_t i = 2; i < gaps.size(); ++i)
        CHECK(std::abs(gaps[i] - gaps[i - 1]) < std::abs(gaps[i - 1] - gaps[i - 2]) + 1e-12);
    CHECK(std::abs(gaps.back() - gaps[gaps.size() - 2]) < 1e-3 * gaps.back());
}

TEST_CASE("scan plan windows are bounded and hold the roots") {
    const auto plan = quantize::scan_plan(kHydrogenKIII, {0, 0});
    REQUIRE(!plan.windows.empty());
    CHECK(plan.kiii_sqrt_variable);
    for (const auto& w : plan.windows) {
        CHECK(std::isfinite(w.lo));
        CHECK(std::isfinite(w.hi));
    }
    // the ground state s = sqrt(2/9)... sqrt(-E) = sqrt(2)/3 must lie inside
    const double s0 = std::sqrt(2.0) / 3.0;
    bool inside = false;
    for (const auto& w : plan.windows) inside = inside || w.contains(s0);
    CHECK(inside);
}
