#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/rational_pi.hpp"

namespace casimir {

/// Sentinel for the perfect-conductor limit epsilon -> infinity.
inline constexpr double epsilon_infinity = std::numeric_limits<double>::infinity();

/// Clausius-Mossotti: N*alpha = (3/4pi)(eps - 1)/(eps + 2). The infinite
/// sentinel maps to the supremum 3/4pi (perfect conductor).
inline double n_alpha_from_epsilon(double epsilon) {
    if (std::isinf(epsilon))
        return 3.0 / (4.0 * constants::pi);
    if (!(epsilon >= 1.0))
        throw domain_error("n_alpha_from_epsilon: epsilon must be >= 1");
    return 3.0 / (4.0 * constants::pi) * (epsilon - 1.0) / (epsilon + 2.0);
}

inline constexpr double n_alpha_perfect_conductor = 3.0 / (4.0 * constants::pi);

/// Homogeneous material: static polarizability alpha (length^3), number
/// density N (length^-3), and optionally the dielectric constant they
/// realize through Clausius-Mossotti.
struct Material {
    double alpha = 0.0;
    double number_density = 0.0;
    std::optional<double> epsilon;

    /// Material consistent with a given dielectric constant; alpha is a free
    /// choice, the density follows from Clausius-Mossotti.
    static Material from_epsilon(double eps, double alpha = 1.0) {
        if (!(alpha > 0.0))
            throw domain_error("Material: alpha must be positive");
        Material m;
        m.alpha = alpha;
        m.number_density = n_alpha_from_epsilon(eps) / alpha;
        m.epsilon = eps;
        return m;
    }

    static Material from_alpha_density(double alpha, double number_density) {
        if (alpha < 0.0 || number_density < 0.0)
            throw domain_error("Material: alpha and number density must be >= 0");
        Material m;
        m.alpha = alpha;
        m.number_density = number_density;
        return m;
    }

    static Material perfect_conductor() { return from_epsilon(epsilon_infinity); }

    static Material vacuum() { return from_alpha_density(0.0, 0.0); }

    double n_alpha() const { return number_density * alpha; }

    /// Clausius-Mossotti consistency when epsilon is set; 1e-12 relative.
    bool consistent() const {
        if (alpha < 0.0 || number_density < 0.0)
            return false;
        if (!epsilon)
            return true;
        const double want = n_alpha_from_epsilon(*epsilon);
        const double got = n_alpha();
        const double scale = std::max(std::abs(want), 1e-300);
        return std::abs(got - want) <= 1e-12 * scale;
    }
};

/// Retarded van der Waals pair energy V(r) = -(23/4pi) alpha^2 / r^7
/// in reduced units (hbar = c = 1).
inline double retarded_vdw(double r, double alpha) {
    if (!(r > 0.0))
        throw domain_error("retarded_vdw: separation must be positive (kernel singular)");
    const double r7 = r * r * r * r * r * r * r;
    return -23.0 / (4.0 * constants::pi) * alpha * alpha / r7;
}

/// Unlike-atom variant, proportional to the product of polarizabilities.
inline double retarded_vdw_pair(double r, double alpha_a, double alpha_b) {
    if (!(r > 0.0))
        throw domain_error("retarded_vdw_pair: separation must be positive");
    const double r7 = r * r * r * r * r * r * r;
    return -23.0 / (4.0 * constants::pi) * alpha_a * alpha_b / r7;
}

/// Casimir-Polder atom-wall potential V(d) = -3 alpha / (8 pi d^4),
/// perfect conductor, reduced units.
inline double casimir_polder_potential(double d, double alpha) {
    if (!(d > 0.0))
        throw domain_error("casimir_polder_potential: distance must be positive");
    return -3.0 * alpha / (8.0 * constants::pi * d * d * d * d);
}

/// Casimir pressure between perfectly conducting plates,
/// F = -pi^2 / (240 d^4) per unit area, reduced units.
inline double casimir_plate_pressure(double d) {
    if (!(d > 0.0))
        throw domain_error("casimir_plate_pressure: gap must be positive");
    return -constants::pi * constants::pi / (240.0 * d * d * d * d);
}

// Exact coefficients of the formulas above, for identity checks.
inline constexpr RationalPi casimir_polder_coefficient{-3, 8, -1};   // * alpha/d^4
inline constexpr RationalPi casimir_plate_coefficient{-1, 240, 2};   // * 1/d^4

/// How the scalar profile handed to gradient_force is to be read.
enum class ProfileKind {
    Potential,       ///< profile is the particle potential V(x); force = -dV/dx
    MeanSquareField  ///< profile is <E^2>(x); force = +(alpha/2) d<E^2>/dx
};

namespace detail {

inline double central_difference_step(double x, double step) {
    if (step > 0.0)
        return step;
    return 1e-5 * std::max(std::abs(x), 1.0);
}

} // namespace detail

/// Force on a polarizable particle from a scalar profile along one axis,
/// by central differences. Evaluations that leave the profile's domain
/// should throw from the profile itself.
template <class Profile>
double gradient_force(Profile&& profile, ProfileKind kind, double alpha, double x,
                      double step = 0.0) {
    const double h = detail::central_difference_step(x, step);
    const double derivative = (profile(x + h) - profile(x - h)) / (2.0 * h);
    if (kind == ProfileKind::Potential)
        return -derivative;
    return 0.5 * alpha * derivative;
}

/// Three-dimensional variant; returns the force vector.
template <class Profile>
std::array<double, 3> gradient_force3(Profile&& profile, ProfileKind kind, double alpha,
                                      const std::array<double, 3>& x, double step = 0.0) {
    std::array<double, 3> force{};
    for (int axis = 0; axis < 3; ++axis) {
        const double h = detail::central_difference_step(x[axis], step);
        auto shifted = x;
        shifted[axis] = x[axis] + h;
        const double up = profile(shifted);
        shifted[axis] = x[axis] - h;
        const double down = profile(shifted);
        const double derivative = (up - down) / (2.0 * h);
        force[axis] = (kind == ProfileKind::Potential) ? -derivative
                                                       : 0.5 * alpha * derivative;
    }
    return force;
}

} // namespace casimir
