#include <doctest.h>

#include <cmath>
#include <random>

#include "koenigs/model.hpp"

using namespace koenigs;

TEST_CASE("metric values at hand-computed points") {
    SpaceSpec ki{KoenigsI{1, 1, 1, 1, 1, 0.5, 0.5}, {}};
    CHECK(metric_value(ki, 1.0, 1.0) == doctest::Approx(5.0).epsilon(1e-15));

    SpaceSpec kii{KoenigsII{1, 0, 0, 0, 1, 0.5, 0.0}, {}};
    CHECK(metric_value(kii, 1.0, 1.0) == doctest::Approx(5.0).epsilon(1e-15));

    SpaceSpec kiii{KoenigsIII{0, 0, 0, 3.25, 1, 0.5, 0.5}, {}};
    CHECK(metric_value(kiii, 0.3, -1.7) == doctest::Approx(3.25).epsilon(1e-15));
}

TEST_CASE("metric singularities raise domain errors") {
    SpaceSpec ki{KoenigsI{0, 1, 0, 1, 1, 0.5, 0.5}, {}};
    CHECK_THROWS_AS(metric_value(ki, 0.0, 1.0), domain_error);
    SpaceSpec kiii{KoenigsIII{1, 0, 0, 1, 1, 0.5, 0.5}, {}};
    CHECK_THROWS_AS(metric_value(kiii, 0.0, 0.0), domain_error);
}

TEST_CASE("metric x<->y symmetry when beta equals gamma") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int i = 0; i < 200; ++i) {
        SpaceSpec s{KoenigsI{u(rng), 0.7, 0.7, u(rng), 1, 0.5, 0.5}, {}};
        const double x = u(rng), y = u(rng);
        CHECK(metric_value(s, x, y) == metric_value(s, y, x));
    }
}

TEST_CASE("validate_spec examples") {
    Window w{0.1, 2.0, 0.1, 2.0};
    SpaceSpec ok{KoenigsI{0, 0, 0, 1, 1, 0.5, 0.5}, {}};
    CHECK(validate_spec(ok, w).pass);

    SpaceSpec bad_delta{KoenigsI{0, 0, 0, 0, 1, 0.5, 0.5}, {}};
    const auto r1 = validate_spec(bad_delta, w);
    CHECK_FALSE(r1.pass);
    bool found = false;
    for (const auto& v : r1.violations) found = found || v.find("delta") != std::string::npos;
    CHECK(found);

    // f = r^2 - 10 < 0 on [0.1, 0.5]^2
    SpaceSpec neg{KoenigsI{1, 0, 0, -10, 1, 0.5, 0.5}, {}};
    Window w2{0.1, 0.5, 0.1, 0.5};
    CHECK_FALSE(validate_spec(neg, w2).pass);
}

TEST_CASE("effective parameters") {
    SUBCASE("alpha = 0 leaves omega unchanged") {
        SpaceSpec s{KoenigsI{0, 0.2, 0.1, 1, 1, 0.5, 0.5}, {}};
        const auto p = effective_params(s, 17.0);
        CHECK(p.omega_tilde.value() == 1.0);
    }
    SUBCASE("direct substitution at the curved example") {
        SpaceSpec s{KoenigsI{0.1, 0, 0, 1, 1, 0.5, 0.5}, {}};
        const auto p = effective_params(s, 2.2320919);
        CHECK(p.omega_tilde.value() ==
              doctest::Approx(std::sqrt(1.0 - 0.2 * 2.2320919)).epsilon(1e-12));
        CHECK(p.omega_tilde.value() == doctest::Approx(0.744030).epsilon(1e-6));
    }
    SUBCASE("Coulomb index at the hydrogen-like level") {
        SpaceSpec s{KoenigsIII{0, 0, 0, 1, 1, 0.5, 0.5}, {}};
        const auto p = effective_params(s, -2.0 / 9.0);
        CHECK(p.kappa.value() == doctest::Approx(1.5).epsilon(1e-14));
    }
    SUBCASE("negative radicand leaves the field unset") {
        SpaceSpec s{KoenigsI{1.0, 0, 0, 1, 1, 0.5, 0.5}, {}};
        const auto p = effective_params(s, 10.0);
        CHECK_FALSE(p.omega_tilde.has_value());
        CHECK(p.omega_tilde_sq < 0.0);
    }
}

TEST_CASE("effective parameter identity omega~^2 + 2 alpha E / m = omega^2") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        Constants c{0.5 + u(rng), 0.5 + u(rng)};
        SpaceSpec s{KoenigsI{u(rng), u(rng), u(rng), 1.0, 0.2 + u(rng), u(rng), u(rng)}, c};
        const double E = 4.0 * (u(rng) - 0.5);
        const auto p = effective_params(s, E);
        const auto& g = s.ki();
        CHECK(p.omega_tilde_sq + 2.0 * g.alpha * E / c.m ==
              doctest::Approx(g.omega * g.omega).epsilon(1e-14));
        CHECK(p.kx_tilde_sq + 2.0 * c.m * g.beta * E / (c.hbar * c.hbar) ==
              doctest::Approx(g.kx * g.kx).epsilon(1e-14));
    }
}

TEST_CASE("physical energy domain") {
    SUBCASE("no constraints") {
        SpaceSpec s{KoenigsI{0, 0, 0, 1, 1, 0.5, 0.5}, {}};
        const auto d = physical_energy_domain(s);
        REQUIRE(d.size() == 1);
        CHECK(d[0].lo == -kInf);
        CHECK(d[0].hi == kInf);
    }
    SUBCASE("binding centrifugal constraint") {
        SpaceSpec s{KoenigsI{0.1, 0.5, 0, 1, 1, 0.5, 0.5}, {}};
        const auto d = physical_energy_domain(s);
        REQUIRE(d.size() == 1);
        CHECK(d[0].lo == -kInf);
        CHECK(d[0].hi == doctest::Approx(0.25).epsilon(1e-15));
    }
    SUBCASE("KIII sign constraint") {
        SpaceSpec s{KoenigsIII{0, 0, 0, 1, 1, 0.5, 0.5}, {}};
        const auto d = physical_energy_domain(s);
        REQUIRE(d.size() == 1);
        CHECK(d[0].hi == 0.0);
    }
}

TEST_CASE("physical domain membership is exactly the radicand sign structure") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int inside_checked = 0, outside_checked = 0;
    for (int i = 0; i < 20000 && (inside_checked < 1000 || outside_checked < 1000); ++i) {
        SpaceSpec s{KoenigsIII{u(rng), u(rng), u(rng), 0.5 + 1.5 * u(rng), u(rng),
                               u(rng), u(rng)},
                    {}};
        const auto dom = physical_energy_domain(s);
        const double E = 20.0 * (u(rng) - 0.5);
        bool in = false;
        for (const auto& iv : dom) in = in || iv.contains(E);
        const auto p = effective_params(s, E);
        const bool radicands_ok = p.kx_tilde_sq >= 0.0 && p.ky_tilde_sq >= 0.0 &&
                                  s.kiii().delta * E < 0.0;
        if (in) {
            CHECK(radicands_ok);
            ++inside_checked;
        } else {
            CHECK_FALSE(radicands_ok);
            ++outside_checked;
        }
    }
    CHECK(inside_checked >= 1000);
    CHECK(outside_checked >= 1000);
}

TEST_CASE("Darboux classification") {
    SpaceSpec d1{KoenigsII{0, 0, 1, 0, 1, 0.5, 0.0}, {}};
    CHECK(darboux_classify(d1) == DarbouxClass::D_I);

    SpaceSpec d2{KoenigsI{0, 2, 0, 0, 1, 0.5, 0.5}, {}};
    CHECK(darboux_classify(d2) == DarbouxClass::D_II);

    SpaceSpec flat{KoenigsI{0, 0, 0, 1, 1, 0.5, 0.5}, {}};
    CHECK(darboux_classify(flat) == DarbouxClass::flat);

    SpaceSpec gen{KoenigsI{0.1, 0.2, 0.3, 1, 1, 0.5, 0.5}, {}};
    CHECK(darboux_classify(gen) == DarbouxClass::generic);

    CHECK(to_string(darboux_classify(d1)) == "D_I");
}

TEST_CASE("quantum number bookkeeping") {
    QuantumNumbers qn{1, 2};
    CHECK(qn.principal(SpaceKind::KI) == 4.0);
    CHECK(qn.principal(SpaceKind::KII) == doctest::Approx(6.5));
    CHECK(qn.principal(SpaceKind::KIII) == 4.0);
}

TEST_CASE("solver settings validation") {
    SolverSettings s;
    CHECK_NOTHROW(s.check());
    s.scan_points = 10;
    CHECK_THROWS_AS(s.check(), config_error);
}
