#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "casimir/kernel.hpp"
#include "casimir/rng.hpp"

using namespace casimir;
using Catch::Approx;

TEST_CASE("retarded kernel at unit arguments") {
    // -23/(4 pi)
    CHECK(retarded_vdw(1.0, 1.0) == Approx(-23.0 / (4.0 * constants::pi)).epsilon(1e-15));
    CHECK(retarded_vdw(1.0, 1.0) == Approx(-1.8302818).epsilon(1e-6));
    CHECK(retarded_vdw(2.0, 1.0) == Approx(retarded_vdw(1.0, 1.0) / 128.0).epsilon(1e-15));
    CHECK(retarded_vdw(1.0, 2.0) == Approx(4.0 * retarded_vdw(1.0, 1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(retarded_vdw(0.0, 1.0), domain_error);
    CHECK_THROWS_AS(retarded_vdw(-1.0, 1.0), domain_error);
}

TEST_CASE("retarded kernel r^-7 homogeneity") {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const double r = std::exp(rng.uniform(-2.0, 2.0));
        const double lam = std::exp(rng.uniform(-1.5, 1.5));
        const double alpha = rng.uniform(0.1, 3.0);
        CHECK(retarded_vdw(lam * r, alpha) ==
              Approx(retarded_vdw(r, alpha) / std::pow(lam, 7)).epsilon(1e-12));
    }
}

TEST_CASE("Clausius-Mossotti mapping") {
    CHECK(n_alpha_from_epsilon(1.0) == 0.0);
    CHECK(n_alpha_from_epsilon(epsilon_infinity) ==
          Approx(3.0 / (4.0 * constants::pi)).epsilon(1e-15));
    CHECK(n_alpha_from_epsilon(epsilon_infinity) == Approx(0.2387324).epsilon(1e-6));
    CHECK(n_alpha_from_epsilon(4.0) == Approx(0.1193662).epsilon(1e-6));
    CHECK_THROWS_AS(n_alpha_from_epsilon(0.5), domain_error);
}

TEST_CASE("Clausius-Mossotti is monotone with supremum 3/4pi") {
    double prev = -1.0;
    for (double eps = 1.0; eps < 1e6; eps *= 1.7) {
        const double v = n_alpha_from_epsilon(eps);
        CHECK(v > prev);
        CHECK(v < n_alpha_perfect_conductor);
        prev = v;
    }
}

TEST_CASE("material consistency invariant") {
    const auto m = Material::from_epsilon(4.0, 2.0);
    CHECK(m.consistent());
    CHECK(m.n_alpha() == Approx(n_alpha_from_epsilon(4.0)).epsilon(1e-15));
    auto broken = m;
    broken.number_density *= 1.0 + 1e-6;
    CHECK_FALSE(broken.consistent());
    CHECK(Material::perfect_conductor().n_alpha() ==
          Approx(n_alpha_perfect_conductor).epsilon(1e-15));
    CHECK(Material::vacuum().n_alpha() == 0.0);
}

TEST_CASE("Casimir-Polder potential") {
    CHECK(casimir_polder_potential(1.0, 1.0) ==
          Approx(-3.0 / (8.0 * constants::pi)).epsilon(1e-15));
    CHECK(casimir_polder_potential(1.0, 1.0) == Approx(-0.1193662).epsilon(1e-6));
    CHECK(casimir_polder_potential(2.0, 1.0) ==
          Approx(casimir_polder_potential(1.0, 1.0) / 16.0).epsilon(1e-15));
    CHECK_THROWS_AS(casimir_polder_potential(0.0, 1.0), domain_error);
}

TEST_CASE("plate pressure") {
    CHECK(casimir_plate_pressure(1.0) ==
          Approx(-constants::pi * constants::pi / 240.0).epsilon(1e-15));
    CHECK(casimir_plate_pressure(1.0) == Approx(-0.0411234).epsilon(1e-5));
    CHECK(casimir_plate_pressure(10.0) == Approx(-4.11234e-6).epsilon(1e-5));
    CHECK_THROWS_AS(casimir_plate_pressure(-1.0), domain_error);
}

TEST_CASE("gradient force on the Casimir-Polder profile") {
    const double alpha = 1.0;
    auto profile = [&](double d) { return casimir_polder_potential(d, alpha); };
    // -dV/dd at d=1 is -3 alpha/(2 pi): attraction toward the wall.
    const double f = gradient_force(profile, ProfileKind::Potential, alpha, 1.0);
    CHECK(f == Approx(-3.0 / (2.0 * constants::pi)).epsilon(1e-8));
    CHECK(std::abs(f) == Approx(0.4774648).epsilon(1e-6));
}

TEST_CASE("gradient force on uniform and quadratic profiles") {
    auto uniform = [](double) { return 4.2; };
    CHECK(gradient_force(uniform, ProfileKind::Potential, 1.0, 0.3) == Approx(0.0).margin(1e-12));
    // <E^2> = x^2 at x=1 with alpha=2: +(alpha/2) d<E^2>/dx = +2.
    auto esq = [](double x) { return x * x; };
    CHECK(gradient_force(esq, ProfileKind::MeanSquareField, 2.0, 1.0) ==
          Approx(2.0).epsilon(1e-9));
}

TEST_CASE("gradient force matches analytic derivatives of polynomials") {
    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        const double c3 = rng.uniform(-2.0, 2.0);
        const double c2 = rng.uniform(-2.0, 2.0);
        const double c1 = rng.uniform(-2.0, 2.0);
        const double x = rng.uniform(-1.5, 1.5);
        auto poly = [&](double t) { return c3 * t * t * t + c2 * t * t + c1 * t; };
        const double analytic = -(3.0 * c3 * x * x + 2.0 * c2 * x + c1);
        const double numeric = gradient_force(poly, ProfileKind::Potential, 1.0, x, 1e-5);
        CHECK(numeric == Approx(analytic).margin(1e-8).epsilon(1e-8));
    }
}

TEST_CASE("gradient force propagates profile domain errors") {
    auto restricted = [](double x) {
        if (x <= 0.0)
            throw domain_error("profile domain");
        return 1.0 / x;
    };
    CHECK_THROWS_AS(gradient_force(restricted, ProfileKind::Potential, 1.0, 5e-6), domain_error);
}

TEST_CASE("3d gradient force") {
    auto esq = [](const std::array<double, 3>& p) { return p[0] * p[0] + 2.0 * p[1]; };
    const auto f = gradient_force3(esq, ProfileKind::MeanSquareField, 2.0, {1.0, 0.0, 0.0});
    CHECK(f[0] == Approx(2.0).epsilon(1e-9));
    CHECK(f[1] == Approx(2.0).epsilon(1e-9));
    CHECK(f[2] == Approx(0.0).margin(1e-9));
}
