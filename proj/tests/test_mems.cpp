#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "casimir/mems.hpp"

using namespace casimir;
using Catch::Approx;

namespace {

OscillatorConfig config_for_lambda(double lambda) {
    // Fix k, d0, m and solve for the area.
    OscillatorConfig cfg;
    cfg.spring_constant = 0.02;
    cfg.rest_gap = 200e-9;
    cfg.plate_mass = 1e-9;
    const double d05 = std::pow(cfg.rest_gap, 5);
    cfg.plate_area = lambda * 240.0 * cfg.spring_constant * d05 /
                     (constants::pi * constants::pi * constants::hbar_c);
    return cfg;
}

} // namespace

TEST_CASE("lambda parameter arithmetic") {
    OscillatorConfig cfg;
    cfg.spring_constant = 0.02;
    cfg.rest_gap = 200e-9;
    cfg.plate_area = 2.5e-7;  // (500 um)^2
    cfg.plate_mass = 1e-9;
    // pi^2 hbar c A / (240 k d0^5) with d0^5 = 3.2e-34 m^5.
    CHECK(lambda_param(cfg) == Approx(50.786).epsilon(1e-3));
    CHECK(lambda_param(cfg) > lambda_critical);  // deep collapse regime

    auto no_area = cfg;
    no_area.plate_area = 0.0;
    CHECK(lambda_param(no_area) == 0.0);

    auto doubled = cfg;
    doubled.rest_gap *= 2.0;
    CHECK(lambda_param(doubled) == Approx(lambda_param(cfg) / 32.0).epsilon(1e-12));
}

TEST_CASE("equilibria across the bistability boundary") {
    CHECK(equilibria_for_lambda(0.0).size() == 1);
    CHECK(equilibria_for_lambda(0.0)[0].delta == 1.0);
    CHECK(equilibria_for_lambda(0.0)[0].stability == Stability::Stable);

    const auto marginal = equilibria_for_lambda(lambda_critical);
    REQUIRE(marginal.size() == 1);
    CHECK(marginal[0].delta == Approx(0.8).epsilon(1e-12));
    CHECK(marginal[0].stability == Stability::Marginal);

    const auto below = equilibria_for_lambda(lambda_critical * (1.0 - 1e-9));
    REQUIRE(below.size() == 2);
    CHECK(below[0].stability == Stability::Unstable);
    CHECK(below[1].stability == Stability::Stable);
    CHECK(below[0].delta < 0.8);
    CHECK(below[1].delta > 0.8);

    CHECK(equilibria_for_lambda(lambda_critical * (1.0 + 1e-9)).empty());
}

TEST_CASE("equilibria satisfy the balance to 1e-12 and match a grid scan") {
    const double lambda = 0.04;
    const auto roots = equilibria_for_lambda(lambda);
    REQUIRE(roots.size() == 2);
    for (const auto& root : roots) {
        const double d4 = std::pow(root.delta, 4);
        CHECK(std::abs((1.0 - root.delta) * d4 - lambda) < 1e-12);
    }
    // Brute-force sign scan of the net force g(delta) on a 10^6 grid.
    int crossings = 0;
    double prev = (1.0 - 1e-6) * std::pow(1e-6, 4) - lambda;
    std::vector<double> located;
    const int n = 1'000'000;
    for (int i = 2; i <= n; ++i) {
        const double delta = static_cast<double>(i) / n;
        const double g = (1.0 - delta) * std::pow(delta, 4) - lambda;
        if ((g > 0.0) != (prev > 0.0)) {
            ++crossings;
            located.push_back(delta);
        }
        prev = g;
    }
    REQUIRE(crossings == 2);
    CHECK(located[0] == Approx(roots[0].delta).margin(2e-6));
    CHECK(located[1] == Approx(roots[1].delta).margin(2e-6));
}

TEST_CASE("undamped small oscillation conserves energy") {
    auto cfg = config_for_lambda(0.04);
    const auto eqs = equilibria(cfg);
    const double stable = eqs[1].delta * cfg.rest_gap;

    const double omega0 = std::sqrt(cfg.spring_constant / cfg.plate_mass);
    const double period = 2.0 * constants::pi / omega0;
    const double dt = period / 2500.0;
    const double duration = 100.0 * period;  // unit-test scale; acceptance runs 1e4
    const auto traj =
        simulate(cfg, stable * (1.0 + 1e-3), 0.0, duration, dt, 1 << 20);
    CHECK_FALSE(traj.contact);
    CHECK(traj.energy_drift < 1e-6);
}

TEST_CASE("starting below the unstable root collapses") {
    auto cfg = config_for_lambda(0.04);
    const auto eqs = equilibria(cfg);
    const double unstable = eqs[0].delta;
    const double omega0 = std::sqrt(cfg.spring_constant / cfg.plate_mass);
    const double period = 2.0 * constants::pi / omega0;
    const auto traj = simulate(cfg, 0.9 * unstable * cfg.rest_gap, 0.0, 400.0 * period,
                               period / 400.0, 1 << 16);
    CHECK(traj.contact);
    CHECK(traj.contact_time > 0.0);
    CHECK(traj.final_gap == Approx(cfg.contact_floor_factor * cfg.rest_gap).epsilon(1e-9));
}

TEST_CASE("above the critical load every start collapses") {
    auto cfg = config_for_lambda(0.09);
    const double omega0 = std::sqrt(cfg.spring_constant / cfg.plate_mass);
    const double period = 2.0 * constants::pi / omega0;
    for (double start : {1.0, 0.9, 0.5}) {
        const auto traj = simulate(cfg, start * cfg.rest_gap, 0.0, 500.0 * period,
                                   period / 200.0, 1 << 16);
        CHECK(traj.contact);
    }
}

TEST_CASE("damped trajectory settles onto the stable equilibrium") {
    auto cfg = config_for_lambda(0.04);
    const double omega0 = std::sqrt(cfg.spring_constant / cfg.plate_mass);
    cfg.damping = 0.8 * cfg.plate_mass * omega0;  // underdamped
    const auto eqs = equilibria(cfg);
    const double stable = eqs[1].delta;
    const double period = 2.0 * constants::pi / omega0;
    const auto traj = simulate(cfg, cfg.rest_gap, 0.0, 300.0 * period, period / 300.0,
                               1 << 16);
    CHECK_FALSE(traj.contact);
    CHECK(traj.final_gap / cfg.rest_gap == Approx(stable).margin(1e-6));
}

TEST_CASE("simulate validates its preconditions") {
    auto cfg = config_for_lambda(0.04);
    const double omega0 = std::sqrt(cfg.spring_constant / cfg.plate_mass);
    const double period = 2.0 * constants::pi / omega0;
    CHECK_THROWS_AS(simulate(cfg, 2.0 * cfg.rest_gap, 0.0, period, period / 100.0),
                    domain_error);
    CHECK_THROWS_AS(simulate(cfg, cfg.rest_gap, 0.0, period, period / 10.0), domain_error);
}

TEST_CASE("hysteresis sweep records pull-in within one step of the critical load") {
    auto cfg = config_for_lambda(0.02);
    // Sweep the spring constant downward: lambda rises through lambda*.
    const double k0 = cfg.spring_constant;
    const double lambda0 = lambda_param(cfg);
    const double k_end = k0 * lambda0 / (1.5 * lambda_critical);
    const int steps = 400;
    const auto diagram = hysteresis_sweep(cfg, SweepParameter::SpringConstant, k0, k_end,
                                          steps);
    REQUIRE(diagram.pull_in_lambda.has_value());
    const double step_ratio = std::pow(k_end / k0, 1.0 / (steps - 1));
    CHECK(*diagram.pull_in_lambda >= lambda_critical);
    CHECK(*diagram.pull_in_lambda <= lambda_critical / step_ratio * 1.01);
    // Just before pull-in the branch sits near delta = 0.8.
    const SweepPoint* last_stable = nullptr;
    for (const auto& pt : diagram.forward)
        if (pt.stable_delta)
            last_stable = &pt;
    REQUIRE(last_stable != nullptr);
    CHECK(*last_stable->stable_delta == Approx(0.8).margin(0.02));
    // After collapse the reverse sweep stays latched.
    CHECK_FALSE(diagram.released_on_reverse);
    for (const auto& pt : diagram.backward)
        CHECK(pt.collapsed);
}

TEST_CASE("sweep inside the bistable region has no jump") {
    auto cfg = config_for_lambda(0.03);
    const double k0 = cfg.spring_constant;
    const auto diagram = hysteresis_sweep(cfg, SweepParameter::SpringConstant, k0,
                                          k0 * 0.03 / 0.05, 50);
    CHECK_FALSE(diagram.pull_in_lambda.has_value());
    for (const auto& pt : diagram.forward) {
        CHECK(pt.stable_delta.has_value());
        CHECK(pt.lambda < 0.055);
    }
    for (const auto& pt : diagram.backward)
        CHECK(pt.stable_delta.has_value());
}

TEST_CASE("pressure at gap in SI") {
    const auto p10 = pressure_at_gap(10e-9);
    CHECK(p10.pascals == Approx(1.30e5).epsilon(1e-2));
    CHECK(p10.atmospheres == Approx(1.283).epsilon(1e-2));
    CHECK(pressure_at_gap(1e-6).pascals == Approx(1.30e-3).epsilon(1e-2));
    CHECK(pressure_at_gap(100e-9).pascals == Approx(13.0).epsilon(1e-2));
    CHECK_THROWS_AS(pressure_at_gap(0.0), domain_error);
}
