#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "csusy/potentials.hpp"
#include "csusy/spectral.hpp"

using namespace csusy;

TEST_CASE("discretize: particle in a box") {
    const double L = 1.0;
    const Grid g = make_grid(-L, L, 401);
    const auto V = SampledFunction::sample(g, [](double) { return 0.0; });
    const auto op = discretize(V);
    CHECK(op.dim() == g.n - 2);
    const auto ev = lowest_eigenvalues(op, 3);
    for (int k = 1; k <= 3; ++k) {
        const double exact = std::pow(k * M_PI / (2.0 * L), 2);
        CHECK(ev[static_cast<std::size_t>(k - 1)] == doctest::Approx(exact).epsilon(1e-4));
    }
    CHECK_THROWS_AS(discretize(SampledFunction::sample(make_grid(0, 1, 5), [](double) { return 0.0; })),
                    std::invalid_argument);
}

TEST_CASE("oscillator eigenvalues") {
    const Grid g = make_grid(-10.0, 10.0, 2001);
    const auto V = SampledFunction::sample(g, [](double x) { return x * x; });
    const auto op = discretize(V);
    CHECK(lowest_eigenvalues(op, 1)[0] == doctest::Approx(1.0).epsilon(1e-4));
    const auto ev = lowest_eigenvalues(op, 5);
    for (int n = 0; n < 5; ++n) {
        CHECK(std::abs(ev[static_cast<std::size_t>(n)] - (2.0 * n + 1.0)) < 1e-3);
    }
    CHECK_THROWS_AS(lowest_eigenvalues(op, 0), std::invalid_argument);
    CHECK_THROWS_AS(lowest_eigenvalues(op, op.dim() + 1), std::invalid_argument);
}

TEST_CASE("constant shift moves every eigenvalue by the shift") {
    const Grid g = make_grid(-10.0, 10.0, 1201);
    const auto V = SampledFunction::sample(g, [](double x) { return x * x; });
    const auto Vs = SampledFunction::sample(g, [](double x) { return x * x + 2.5; });
    const auto ev = lowest_eigenvalues(discretize(V), 4);
    const auto evs = lowest_eigenvalues(discretize(Vs), 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(evs[static_cast<std::size_t>(i)] - ev[static_cast<std::size_t>(i)] ==
              doctest::Approx(2.5).epsilon(1e-9));
    }
}

TEST_CASE("Poschl-Teller single bound state") {
    const Grid g = make_grid(-15.0, 15.0, 3001);
    const Potential pt = Potential::poschl_teller(1.0);
    const auto V = SampledFunction::sample(g, [&pt](double x) { return pt.evaluate(x); });
    const auto ev = lowest_eigenvalues(discretize(V), 1);
    CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-4));
}

TEST_CASE("eigenvalue count is self-consistent with the computed levels") {
    const Grid g = make_grid(-10.0, 10.0, 1501);
    const auto V = SampledFunction::sample(g, [](double x) { return x * x; });
    const auto op = discretize(V);
    const auto ev = lowest_eigenvalues(op, 6);
    for (double lambda : {0.5, 2.0, 6.1, 11.9}) {
        int below = 0;
        for (double e : ev) {
            if (e < lambda) ++below;
        }
        CHECK(eigenvalue_count_below(op, lambda) == below);
    }
}

TEST_CASE("ground-state discretization error drops by ~4x when h halves") {
    auto e0_error = [](int n) {
        const Grid g = make_grid(-10.0, 10.0, n);
        const auto V = SampledFunction::sample(g, [](double x) { return x * x; });
        return std::abs(lowest_eigenvalues(discretize(V), 1)[0] - 1.0);
    };
    const double coarse = e0_error(1001);
    const double fine = e0_error(2001);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("residual: exact and offset eigenpairs") {
    const Grid g = make_grid(-10.0, 10.0, 2001);
    const auto V = SampledFunction::sample(g, [](double x) { return x * x; });
    const auto psi0 = SampledFunction::sample(
        g, [](double x) { return std::pow(M_PI, -0.25) * std::exp(-x * x / 2.0); });
    CHECK(residual(V, psi0, 1.0) < 1e-5);
    const double off = residual(V, psi0, 1.1);
    CHECK(off > 0.05);
    CHECK(off < 0.15);
    CHECK_THROWS_AS(residual(V, SampledFunction::sample(make_grid(-1, 1, 11), [](double) { return 1.0; }), 1.0),
                    std::invalid_argument);
}

TEST_CASE("compare_spectra: matching, extras, deletions") {
    using Expected = std::vector<std::pair<std::string, double>>;

    SUBCASE("clean match") {
        const Expected exp{{"E0", 1.0}, {"E1", 3.0}, {"E2", 5.0}, {"E3", 7.0}};
        const auto rpt = compare_spectra(exp, {1.0002, 2.9998, 5.001, 6.999}, 1e-2);
        CHECK(rpt.pass);
        CHECK(rpt.matches.size() == 4);
    }

    SUBCASE("missing level fails") {
        const Expected exp{{"E0", 1.0}, {"created", 8.0}};
        CHECK_FALSE(compare_spectra(exp, {1.0001, 3.0}, 1e-2).pass);
    }

    SUBCASE("unpredicted extra level below the band fails") {
        const Expected exp{{"E0", 1.0}, {"E1", 3.0}};
        CHECK_FALSE(compare_spectra(exp, {1.0, 2.0, 3.0}, 1e-2).pass);
    }

    SUBCASE("deletion: empty expected passes iff nothing sits below the threshold") {
        const Expected none{};
        CHECK(compare_spectra(none, {0.011, 0.04, 0.1}, 1e-2, 0.0).pass);
        CHECK_FALSE(compare_spectra(none, {-0.4, 0.011}, 1e-2, 0.0).pass);
    }

    SUBCASE("box continuum above the threshold is ignored") {
        const Expected exp{{"E0", -1.0}};
        CHECK(compare_spectra(exp, {-1.0002, 0.011, 0.044}, 5e-3, 0.0).pass);
    }

    SUBCASE("input validation") {
        const Expected exp{{"E0", 3.0}, {"E1", 1.0}};
        CHECK_THROWS_AS(compare_spectra(exp, {1.0}, 1e-2), std::invalid_argument);
        CHECK_THROWS_AS(compare_spectra({{"E0", 1.0}}, {}, 1e-2), std::invalid_argument);
        CHECK_THROWS_AS(compare_spectra({{"E0", 1.0}}, {1.0}, 0.0), std::invalid_argument);
    }
}
