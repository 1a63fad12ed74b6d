#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "casimir/geometry.hpp"
#include "casimir/pairwise.hpp"
#include "casimir/quadrature.hpp"

using namespace casimir;
using Catch::Approx;

namespace {

// Closed form for the ball self-energy (radius a, cutoff s):
// E(s) = N^2 a^2 [ 23 pi/96 a^-1 ... ] -- see the r-integral of the exact
// ball density against the r^-7 kernel.
double ball_energy_exact(double a, double n2a2, double s) {
    const double pi = constants::pi;
    return n2a2 * (23.0 * pi / 96.0 / a - 23.0 * pi / 6.0 * a * a * a / std::pow(s, 4) +
                   23.0 * pi / 6.0 * a * a / std::pow(s, 3) - 23.0 * pi / 24.0 / s);
}

// Exact I(s) = int_s^2 gamma2(r) r^-5 dr for the unit disk.
double disk_integral_exact(double s) {
    const double theta = std::asin(0.5 * s);
    const double sn = std::sin(theta), cs = std::cos(theta);
    return ((constants::pi - 2.0 * theta - std::sin(2.0 * theta)) / (4.0 * std::pow(sn, 4)) -
            std::pow(cs / sn, 3) / 3.0) /
           16.0;
}

} // namespace

TEST_CASE("atom vs half-space quadrature matches the closed form") {
    const auto mat = Material::from_alpha_density(1.0, 1.0);
    for (double d : {0.5, 1.0, 2.0}) {
        const PointAtom atom{d, 1.0};
        const HalfSpace wall{0.0, -1};
        const auto e = interaction_energy_disjoint(atom, wall, mat);
        CHECK_FALSE(e.per_area);
        CHECK(e.value == Approx(atom_half_space_pairwise(d, 1.0, 1.0)).epsilon(1e-9));
    }
}

TEST_CASE("atom vs half-space scales as d^-4 over four decades") {
    const auto mat = Material::from_alpha_density(1.0, 1.0);
    const double base =
        interaction_energy_disjoint(PointAtom{1.0, 1.0}, HalfSpace{0.0, -1}, mat).value;
    for (double d : {1e-2, 1e-1, 1e1, 1e2}) {
        const auto e = interaction_energy_disjoint(PointAtom{d, 1.0}, HalfSpace{0.0, -1}, mat);
        CHECK(e.value == Approx(base / std::pow(d, 4)).epsilon(1e-8));
    }
}

TEST_CASE("two half-spaces: energy per area and derived pressure match Eq-4 values") {
    // Perfect-conductor Clausius-Mossotti: N alpha = 3/(4 pi).
    const auto mat = Material::perfect_conductor();
    const double n2a2 = mat.n_alpha() * mat.n_alpha();
    const double d = 1.0;
    const auto e = interaction_energy_disjoint(HalfSpace{0.0, -1}, HalfSpace{d, +1}, mat);
    CHECK(e.per_area);
    CHECK(e.value == Approx(-23.0 / 120.0 * n2a2 / (d * d * d)).epsilon(1e-9));

    // Pressure by central difference of the per-area energy.
    const double h = 1e-5;
    const double e_hi =
        interaction_energy_disjoint(HalfSpace{0.0, -1}, HalfSpace{d + h, +1}, mat).value;
    const double e_lo =
        interaction_energy_disjoint(HalfSpace{0.0, -1}, HalfSpace{d - h, +1}, mat).value;
    const double pressure = -(e_hi - e_lo) / (2.0 * h);
    CHECK(pressure == Approx(plate_plate_pairwise_pressure(d)).epsilon(1e-6));
}

TEST_CASE("atom vs slab equals the difference of two half-space results") {
    const auto mat = Material::from_alpha_density(0.7, 2.0);
    const double gap = 0.8, thickness = 1.3;
    const PointAtom atom{gap, 1.4};
    const Slab slab{thickness, -thickness};  // occupies [-thickness, 0]
    const auto e = interaction_energy_disjoint(atom, slab, mat);
    const double half_near = -23.0 / 40.0 * atom.alpha * mat.alpha * mat.number_density /
                             std::pow(gap, 4);
    const double half_far = -23.0 / 40.0 * atom.alpha * mat.alpha * mat.number_density /
                            std::pow(gap + thickness, 4);
    CHECK(e.value == Approx(half_near - half_far).epsilon(1e-9));
}

TEST_CASE("two slabs converge to the half-space pair as they thicken") {
    const auto mat = Material::perfect_conductor();
    const double d = 1.0;
    const double reference =
        interaction_energy_disjoint(HalfSpace{0.0, -1}, HalfSpace{d, +1}, mat).value;
    const auto thick =
        interaction_energy_disjoint(Slab{50.0, -50.0}, Slab{50.0, d}, mat);
    CHECK(thick.per_area);
    CHECK(thick.value == Approx(reference).epsilon(1e-6));
}

TEST_CASE("atom vs ball approaches the point-kernel limit at large distance") {
    const auto mat = Material::from_alpha_density(1.0, 1.0);
    const double a = 1.0, R = 50.0;
    const auto e = interaction_energy_disjoint(PointAtom{R, 1.0}, Ball{a}, mat);
    const double volume = 4.0 / 3.0 * constants::pi * a * a * a;
    const double point_limit = retarded_vdw(R, 1.0) * mat.number_density * volume;
    CHECK(e.value == Approx(point_limit).epsilon(2e-3));
    // And the exact cap-measure value at moderate distance, via independent
    // quadrature of the cap area formula.
    const double R2 = 2.0;
    const auto e2 = interaction_energy_disjoint(PointAtom{R2, 1.0}, Ball{a}, mat);
    const auto oracle = integrate(
        [&](double r) {
            const double q = constants::pi * r / R2 * (a * a - (R2 - r) * (R2 - r));
            return -23.0 / (4.0 * constants::pi) * q / std::pow(r, 7);
        },
        R2 - a, R2 + a, 1e-13);
    CHECK(e2.value == Approx(oracle.value).epsilon(1e-10));
}

TEST_CASE("atom-atom pair energy uses both polarizabilities") {
    const auto mat = Material::vacuum();
    const auto e =
        interaction_energy_disjoint(PointAtom{0.0, 2.0}, PointAtom{1.5, 3.0}, mat);
    CHECK(e.value == Approx(retarded_vdw_pair(1.5, 2.0, 3.0)).epsilon(1e-15));
}

TEST_CASE("empty material gives zero interaction") {
    const auto mat = Material::vacuum();
    CHECK(interaction_energy_disjoint(PointAtom{1.0, 1.0}, HalfSpace{0.0, -1}, mat).value ==
          0.0);
    CHECK(interaction_energy_disjoint(HalfSpace{0.0, -1}, HalfSpace{1.0, +1}, mat).value ==
          0.0);
}

TEST_CASE("overlap and contact are domain errors; exotic pairs are capability errors") {
    const auto mat = Material::perfect_conductor();
    CHECK_THROWS_AS(
        interaction_energy_disjoint(PointAtom{-0.5, 1.0}, HalfSpace{0.0, -1}, mat),
        domain_error);
    CHECK_THROWS_AS(
        interaction_energy_disjoint(HalfSpace{0.0, -1}, HalfSpace{0.0, +1}, mat),
        domain_error);
    CHECK_THROWS_AS(
        interaction_energy_disjoint(Slab{1.0, 0.0}, Slab{1.0, 0.5}, mat), domain_error);
    CHECK_THROWS_AS(interaction_energy_disjoint(PointAtom{0.3, 1.0}, Ball{1.0}, mat),
                    domain_error);
    CHECK_THROWS_AS(interaction_energy_disjoint(Ball{1.0}, Ball{1.0}, mat),
                    capability_error);
    CHECK_THROWS_AS(interaction_energy_disjoint(Cube{1.0}, HalfSpace{0.0, -1}, mat),
                    capability_error);
}

TEST_CASE("ball self-energy from the analytic density matches the closed form") {
    const auto conductor = Material::perfect_conductor();
    const double n2a2_conductor = conductor.n_alpha() * conductor.n_alpha();
    for (double a : {1.0, 2.0}) {
        const auto pdd = analytic_ball_density(a);
        for (double s : {0.02, 0.1, 0.3}) {
            const double e = self_energy_with_cutoff(pdd, conductor, s * a);
            CHECK(e == Approx(ball_energy_exact(a, n2a2_conductor, s * a)).epsilon(1e-12));
        }
    }
    const auto eps4 = Material::from_epsilon(4.0);
    const double n2a2_eps4 = eps4.n_alpha() * eps4.n_alpha();
    const auto pdd = analytic_ball_density(1.0);
    CHECK(self_energy_with_cutoff(pdd, eps4, 0.1) ==
          Approx(ball_energy_exact(1.0, n2a2_eps4, 0.1)).epsilon(1e-12));
}

TEST_CASE("ball self-energy magnitude shrinks as the cutoff grows") {
    const auto pdd = analytic_ball_density(1.0);
    const auto mat = Material::perfect_conductor();
    double prev = -std::numeric_limits<double>::infinity();
    for (double s = 0.02; s < 0.9; s *= 1.4) {
        const double e = self_energy_with_cutoff(pdd, mat, s);
        CHECK(e < 0.0);
        CHECK(e > prev);  // less negative: divergent mass removed
        prev = e;
    }
}

TEST_CASE("cutoff domain validation") {
    const auto pdd = analytic_ball_density(1.0);
    const auto mat = Material::perfect_conductor();
    CHECK_THROWS_AS(self_energy_with_cutoff(pdd, mat, 0.0), domain_error);
    CHECK_THROWS_AS(self_energy_with_cutoff(pdd, mat, 1.0), domain_error);
    CHECK_THROWS_AS(self_energy_with_cutoff(pdd, mat, 5.0), domain_error);
}

TEST_CASE("cylinder self-energy: exact kernel integral against adaptive quadrature") {
    for (double s : {0.02, 0.1, 0.3}) {
        const auto quad = integrate(
            [](double r) { return disk_covariance(r, 1.0) / std::pow(r, 5); }, s, 2.0,
            1e-13);
        CHECK(disk_integral_exact(s) == Approx(quad.value).epsilon(1e-10));
    }
    // Self-energy per unit length through the pair-measure machinery.
    const auto pdd = analytic_disk_density(1.0);
    const auto mat = Material::perfect_conductor();
    const double n2a2 = mat.n_alpha() * mat.n_alpha();
    for (double s : {0.05, 0.2}) {
        const double want = -92.0 / 15.0 * n2a2 * disk_integral_exact(s);
        CHECK(self_energy_with_cutoff(pdd, mat, s) == Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("cylinder scaling: E(s; a) = a^-2 E(s/a; 1)") {
    const auto mat = Material::perfect_conductor();
    const auto p1 = analytic_disk_density(1.0);
    const auto p2 = analytic_disk_density(2.0);
    for (double s : {0.05, 0.2}) {
        CHECK(self_energy_with_cutoff(p2, mat, 2.0 * s) ==
              Approx(self_energy_with_cutoff(p1, mat, s) / 4.0).epsilon(1e-12));
    }
}

TEST_CASE("grid ball self-energy tracks the analytic value to 0.5% for s >= 0.05a") {
    PdConfig cfg;
    cfg.method = PdMethod::GridAutocorrelation;
    cfg.resolution = 128;
    cfg.workers = 2;
    const auto grid = pair_distance_density(Ball{1.0}, cfg);
    const auto mat = Material::perfect_conductor();
    const double n2a2 = mat.n_alpha() * mat.n_alpha();
    for (double s : {0.05, 0.1, 0.2, 0.4}) {
        const double got = self_energy_with_cutoff(grid, mat, s);
        const double want = ball_energy_exact(1.0, n2a2, s);
        CHECK(got == Approx(want).epsilon(5e-3));
    }
}

TEST_CASE("cube self-energy from the grid matches the exact first-branch expansion") {
    // For s < a the cube E(s) is exactly
    //   -(23/8pi) N^2 a^2 [ (pi-3) + I1 + pi s^-4 - 2 pi s^-3 + 4 s^-2 - s^-1 ]
    // where I1 = int_1^sqrt3 P r^-7 dr = 0.0521727... (angular-average value).
    PdConfig cfg;
    cfg.method = PdMethod::GridAutocorrelation;
    cfg.resolution = 128;
    cfg.workers = 2;
    const auto grid = pair_distance_density(Cube{1.0}, cfg);
    const auto mat = Material::perfect_conductor();
    const double n2a2 = mat.n_alpha() * mat.n_alpha();
    const double i1 = 0.0521727176;
    const double pi = constants::pi;
    for (double s : {0.05, 0.1, 0.2}) {
        const double want = -(23.0 / (8.0 * pi)) * n2a2 *
                            ((pi - 3.0) + i1 + pi / std::pow(s, 4) - 2.0 * pi / std::pow(s, 3) +
                             4.0 / (s * s) - 1.0 / s);
        CHECK(self_energy_with_cutoff(grid, mat, s) == Approx(want).epsilon(5e-3));
    }
}
