#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "casimir/kernel.hpp"
#include "casimir/rational_pi.hpp"

namespace casimir {

// Closed-form pairwise-summation results for the retarded kernel, written
// as (rational * pi^n) coefficients times the obvious power of the length.

/// Atom at distance d from a half-space, pairwise sum:
/// V(d) = -(23/40) (alpha/d^4) N*alpha.
inline double atom_half_space_pairwise(double d, double alpha, double n_alpha) {
    if (!(d > 0.0))
        throw domain_error("atom_half_space_pairwise: distance must be positive");
    return -23.0 / 40.0 * alpha / (d * d * d * d) * n_alpha;
}

/// True when N*alpha corresponds to some epsilon in [1, inf].
inline bool n_alpha_physical(double n_alpha) {
    return n_alpha >= 0.0 && n_alpha <= n_alpha_perfect_conductor * (1.0 + 1e-12);
}

/// Pairwise pressure between two half-spaces in the perfect-conductor
/// limit: F(d) = -207 / (640 pi^2 d^4).
inline double plate_plate_pairwise_pressure(double d) {
    if (!(d > 0.0))
        throw domain_error("plate_plate_pairwise_pressure: gap must be positive");
    return -207.0 / (640.0 * constants::pi * constants::pi * d * d * d * d);
}

/// Pure (cutoff-independent) pairwise self-energy of a dielectric ball:
/// V(a) = +(207 / 1536 pi a) [(eps-1)/(eps+2)]^2. Positive: repulsive.
inline double ball_pairwise_pure(double a, double epsilon) {
    if (!(a > 0.0))
        throw domain_error("ball_pairwise_pure: radius must be positive");
    double cm = std::isinf(epsilon) ? 1.0 : (epsilon - 1.0) / (epsilon + 2.0);
    if (!std::isinf(epsilon) && !(epsilon >= 1.0))
        throw domain_error("ball_pairwise_pure: epsilon must be >= 1");
    return 207.0 / (1536.0 * constants::pi * a) * cm * cm;
}

// Coefficients as exact rationals-times-pi for identity checks.
inline constexpr RationalPi atom_half_space_coefficient{-69, 160, -1};  // conductor, * alpha/d^4
inline constexpr RationalPi plate_plate_coefficient{-207, 640, -2};     // * 1/d^4
inline constexpr RationalPi ball_pure_coefficient{207, 1536, -1};       // conductor, * 1/a

enum class ForceSign { Attractive, Repulsive, Zero };

/// One row of the pairwise-vs-exact comparison.
struct DeviationRow {
    std::string quantity;
    double pairwise = 0.0;      ///< pairwise-approximation value
    double exact = 0.0;         ///< exact reference value
    double ratio = 0.0;         ///< pairwise / exact
    bool ratio_is_exact = false;///< ratio formed from rational-pi coefficients
    ForceSign pairwise_force = ForceSign::Zero;
    ForceSign exact_force = ForceSign::Zero;
    std::string note;
};

// Exact reference constants quoted for comparison. The cube value is quoted
// without units in the source literature; it is treated as hbar*c/a here.
inline constexpr double sphere_shell_exact_energy = 0.09;  // * hbar c / a
inline constexpr double cube_exact_energy = 0.092;         // * hbar c / a (units assumed)

/// Pairwise-approximation vs exact-result table: atom-wall, plate-plate and
/// the ball/spherical-shell self-energy. All entries are recomputed from the
/// operations above; only the exact reference values are constants.
inline std::vector<DeviationRow> deviation_report() {
    std::vector<DeviationRow> rows;

    {
        DeviationRow row;
        row.quantity = "atom-wall energy (d=1, alpha=1, conductor)";
        row.pairwise = atom_half_space_pairwise(1.0, 1.0, n_alpha_perfect_conductor);
        row.exact = casimir_polder_potential(1.0, 1.0);
        row.ratio = (atom_half_space_coefficient / casimir_polder_coefficient).value();
        row.ratio_is_exact = true;
        row.pairwise_force = ForceSign::Attractive;
        row.exact_force = ForceSign::Attractive;
        row.note = "pairwise is 15% larger in magnitude";
        rows.push_back(row);
    }
    {
        DeviationRow row;
        row.quantity = "plate-plate pressure (d=1, conductor)";
        row.pairwise = plate_plate_pairwise_pressure(1.0);
        row.exact = casimir_plate_pressure(1.0);
        row.ratio = (plate_plate_coefficient / casimir_plate_coefficient).value();
        row.ratio_is_exact = true;
        row.pairwise_force = ForceSign::Attractive;
        row.exact_force = ForceSign::Attractive;
        row.note = "pairwise is 20% smaller in magnitude";
        rows.push_back(row);
    }
    {
        DeviationRow row;
        row.quantity = "ball self-energy (a=1, conductor) vs spherical shell";
        row.pairwise = ball_pairwise_pure(1.0, epsilon_infinity);
        row.exact = sphere_shell_exact_energy;
        row.ratio = row.pairwise / row.exact;
        row.ratio_is_exact = false;
        // E(a) = +C/a: force -dE/da = +C/a^2 pushes the radius outward.
        row.pairwise_force = ForceSign::Repulsive;
        row.exact_force = ForceSign::Repulsive;
        row.note = "same counter-intuitive repulsive sign, same order";
        rows.push_back(row);
    }
    return rows;
}

} // namespace casimir
