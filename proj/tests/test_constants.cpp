#include <catch2/catch_amalgamated.hpp>

#include "casimir/constants.hpp"
#include "casimir/rng.hpp"

using namespace casimir;

TEST_CASE("convert_energy matches hbar*c at unit length") {
    // Product of CODATA hbar and c.
    CHECK(convert_energy(1.0, 1.0) == Catch::Approx(3.16153e-26).epsilon(1e-5));
    CHECK(convert_energy(0.0, 12.3) == 0.0);
}

TEST_CASE("convert_energy rejects non-positive length unit") {
    CHECK_THROWS_AS(convert_energy(1.0, 0.0), domain_error);
    CHECK_THROWS_AS(convert_energy(1.0, -2.0), domain_error);
}

TEST_CASE("convert_energy is linear in the value") {
    Rng rng(12345);
    for (int i = 0; i < 200; ++i) {
        const double v = rng.uniform(-5.0, 5.0);
        const double w = rng.uniform(-5.0, 5.0);
        const double unit = std::exp(rng.uniform(-20.0, 3.0));
        const double lhs = convert_energy(v + w, unit);
        const double rhs = convert_energy(v, unit) + convert_energy(w, unit);
        CHECK(lhs == Catch::Approx(rhs).margin(1e-300).epsilon(1e-12));
        CHECK(convert_energy(3.0 * v, unit) ==
              Catch::Approx(3.0 * convert_energy(v, unit)).margin(1e-300).epsilon(1e-12));
    }
}

TEST_CASE("SI round trip preserves value to 1e-12") {
    Rng rng(99);
    for (int i = 0; i < 200; ++i) {
        const double unit = std::exp(rng.uniform(-12.0, 0.0));
        const auto units = UnitSystem::si(unit);
        const double value = rng.uniform(-1e3, 1e3);
        const double back = units.energy_from_si(units.energy_to_si(value));
        CHECK(back == Catch::Approx(value).margin(1e-300).epsilon(1e-12));
    }
}

TEST_CASE("pressure conversion scales as length^-4") {
    const auto u1 = UnitSystem::si(1e-8);
    const auto u2 = UnitSystem::si(1e-7);
    CHECK(u1.pressure_to_si(1.0) / u2.pressure_to_si(1.0) == Catch::Approx(1e4));
}

TEST_CASE("unit system rejects bad length unit") {
    CHECK_THROWS_AS(UnitSystem::si(0.0), domain_error);
}
