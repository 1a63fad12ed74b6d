#pragma once

#include <cmath>
#include <utility>
#include <variant>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/spline.hpp"

namespace casimir {

// Spectral energy densities rho(omega) in SI: J s / m^3 against omega in
// rad/s. This module works in SI throughout; it sits at the I/O boundary.

struct VacuumSpectrum {};

struct PlanckSpectrum {
    double temperature = 0.0;  // K
};

struct ScaledVacuumSpectrum {
    double factor = 1.0;
};

class TabulatedSpectrum {
public:
    TabulatedSpectrum(std::vector<double> omega, std::vector<double> rho)
        : omega_(std::move(omega)), rho_(std::move(rho)) {
        if (omega_.size() != rho_.size() || omega_.size() < 3)
            throw domain_error("TabulatedSpectrum: need >= 3 matching samples");
        for (std::size_t i = 0; i < omega_.size(); ++i) {
            if (rho_[i] < 0.0)
                throw domain_error("TabulatedSpectrum: rho must be >= 0");
            if (i > 0 && !(omega_[i] > omega_[i - 1]))
                throw domain_error("TabulatedSpectrum: grid must be strictly increasing");
        }
        spline_ = CubicSpline(omega_, rho_);
    }

    const std::vector<double>& omega_grid() const { return omega_; }
    const std::vector<double>& rho_values() const { return rho_; }
    const CubicSpline& spline() const { return spline_; }

private:
    std::vector<double> omega_, rho_;
    CubicSpline spline_;
};

using SpectralDensity =
    std::variant<VacuumSpectrum, PlanckSpectrum, ScaledVacuumSpectrum, TabulatedSpectrum>;

struct SpectralSample {
    double rho = 0.0;          // J s / m^3
    double drho_domega = 0.0;  // J s^2 / m^3
};

/// Vacuum spectral energy density rho0(omega) = hbar omega^3 / (2 pi^2 c^3).
inline double vacuum_rho(double omega) {
    constexpr double c = constants::speed_of_light;
    return constants::hbar * omega * omega * omega / (2.0 * constants::pi * constants::pi * c * c * c);
}

/// Planck thermal density rho(omega) = hbar omega^3 / (pi^2 c^3 (e^x - 1)),
/// x = hbar omega / k T.
inline double planck_rho(double omega, double temperature) {
    if (temperature <= 0.0)
        return 0.0;
    constexpr double c = constants::speed_of_light;
    const double x = constants::hbar * omega / (constants::boltzmann * temperature);
    return constants::hbar * omega * omega * omega /
           (constants::pi * constants::pi * c * c * c * std::expm1(x));
}

/// rho(omega) and its analytic derivative (spline derivative for tabulated).
inline SpectralSample eval_spectral(const SpectralDensity& sd, double omega) {
    if (!(omega > 0.0))
        throw domain_error("eval_spectral: omega must be positive");
    struct Visitor {
        double omega;
        SpectralSample operator()(const VacuumSpectrum&) const {
            const double rho = vacuum_rho(omega);
            return {rho, 3.0 * rho / omega};
        }
        SpectralSample operator()(const ScaledVacuumSpectrum& s) const {
            const double rho = s.factor * vacuum_rho(omega);
            return {rho, 3.0 * rho / omega};
        }
        SpectralSample operator()(const PlanckSpectrum& p) const {
            const double rho = planck_rho(omega, p.temperature);
            if (rho == 0.0)
                return {0.0, 0.0};
            const double x = constants::hbar * omega / (constants::boltzmann * p.temperature);
            // d/dw [w^3/(e^x-1)] = 3 rho/w - rho * x e^x/(e^x-1) / w
            const double ex_ratio = x * std::exp(x) / std::expm1(x);
            return {rho, (3.0 - ex_ratio) * rho / omega};
        }
        SpectralSample operator()(const TabulatedSpectrum& t) const {
            return {t.spline().eval(omega), t.spline().derivative(omega)};
        }
    };
    return std::visit(Visitor{omega}, sd);
}

/// The combination rho(omega) - (omega/3) drho/domega entering the drag
/// force. For the vacuum spectrum (and any multiple of it) this vanishes
/// identically; those branches return exactly 0.
inline double drag_susceptibility(const SpectralDensity& sd, double omega) {
    if (!(omega > 0.0))
        throw domain_error("drag_susceptibility: omega must be positive");
    struct Visitor {
        double omega;
        double operator()(const VacuumSpectrum&) const { return 0.0; }
        double operator()(const ScaledVacuumSpectrum&) const { return 0.0; }
        double operator()(const PlanckSpectrum& p) const {
            const double rho = planck_rho(omega, p.temperature);
            if (rho == 0.0)
                return 0.0;
            const double x = constants::hbar * omega / (constants::boltzmann * p.temperature);
            return rho * (x / 3.0) * std::exp(x) / std::expm1(x);
        }
        double operator()(const TabulatedSpectrum& t) const {
            return t.spline().eval(omega) - omega / 3.0 * t.spline().derivative(omega);
        }
    };
    return std::visit(Visitor{omega}, sd);
}

/// Two nondegenerate levels; 1 is the lower state.
struct TwoLevelAtom {
    double omega = 0.0;  // transition angular frequency, rad/s
    double b12 = 0.0;    // Einstein absorption coefficient
    double p1 = 1.0;     // lower-state occupation
    double p2 = 0.0;     // upper-state occupation

    void validate() const {
        if (!(omega > 0.0))
            throw domain_error("TwoLevelAtom: omega must be positive");
        if (b12 < 0.0)
            throw domain_error("TwoLevelAtom: B12 must be >= 0");
        if (p1 < 0.0 || p2 < 0.0 || std::abs(p1 + p2 - 1.0) > 1e-12)
            throw domain_error("TwoLevelAtom: occupations must be in [0,1] and sum to 1");
    }
};

/// Atom with thermal occupations p2/p1 = exp(-hbar omega / k T).
inline TwoLevelAtom thermal_atom(double omega, double b12, double temperature) {
    if (!(omega > 0.0))
        throw domain_error("thermal_atom: omega must be positive");
    if (!(temperature > 0.0))
        throw domain_error("thermal_atom: temperature must be positive");
    const double boltz = std::exp(-constants::hbar * omega /
                                  (constants::boltzmann * temperature));
    TwoLevelAtom atom;
    atom.omega = omega;
    atom.b12 = b12;
    atom.p1 = 1.0 / (1.0 + boltz);
    atom.p2 = boltz / (1.0 + boltz);
    return atom;
}

inline bool nonrelativistic(double v) {
    return std::abs(v) <= 0.01 * constants::speed_of_light;
}

/// Drag force on a moving two-level atom:
/// F = -(hbar omega / c^2)(p1 - p2) B12 [rho - (omega/3) rho'] v.
inline double drag_force(const TwoLevelAtom& atom, const SpectralDensity& sd, double v) {
    atom.validate();
    const double d = drag_susceptibility(sd, atom.omega);
    if (d == 0.0 || v == 0.0)
        return 0.0;
    constexpr double c = constants::speed_of_light;
    return -(constants::hbar * atom.omega / (c * c)) * (atom.p1 - atom.p2) * atom.b12 * d * v;
}

/// Unruh-Davies temperature T = hbar a / (2 pi k c).
inline double unruh_temperature(double acceleration) {
    if (!(acceleration > 0.0))
        throw domain_error("unruh_temperature: acceleration must be positive");
    return constants::hbar * acceleration /
           (2.0 * constants::pi * constants::boltzmann * constants::speed_of_light);
}

inline double unruh_acceleration(double temperature) {
    if (!(temperature > 0.0))
        throw domain_error("unruh_acceleration: temperature must be positive");
    return 2.0 * constants::pi * constants::boltzmann * constants::speed_of_light *
           temperature / constants::hbar;
}

struct VacuumBudget {
    double cutoff_length_m = 0.0;
    double cutoff_omega = 0.0;             // rad/s
    double energy_density_J_m3 = 0.0;      // integral of rho0 up to cutoff
    double mass_density_g_cm3 = 0.0;
    double observed_energy_density_J_m3 = 0.0;
    double observed_mass_density_g_cm3 = 0.0;
    double orders_of_magnitude_gap = 0.0;  // log10(predicted / observed)
};

/// Zero-point energy budget with a hard frequency cutoff omega_c = 2 pi c /
/// cutoff_length: rho = hbar omega_c^4 / (8 pi^2 c^3) = 2 pi^2 hbar c / L^4.
/// The observed bound is fixed at 4 eV/mm^3.
inline VacuumBudget vacuum_energy_budget(double cutoff_length_m) {
    if (!(cutoff_length_m > 0.0))
        throw domain_error("vacuum_energy_budget: cutoff length must be positive");
    constexpr double c = constants::speed_of_light;
    VacuumBudget out;
    out.cutoff_length_m = cutoff_length_m;
    out.cutoff_omega = 2.0 * constants::pi * c / cutoff_length_m;
    const double wc = out.cutoff_omega;
    out.energy_density_J_m3 =
        constants::hbar * wc * wc * wc * wc / (8.0 * constants::pi * constants::pi * c * c * c);
    // kg/m^3 -> g/cm^3 is a factor 1e-3.
    out.mass_density_g_cm3 = out.energy_density_J_m3 / (c * c) * 1e-3;
    out.observed_energy_density_J_m3 = 4.0 * constants::electron_volt / 1e-9;
    out.observed_mass_density_g_cm3 = out.observed_energy_density_J_m3 / (c * c) * 1e-3;
    out.orders_of_magnitude_gap =
        std::log10(out.energy_density_J_m3 / out.observed_energy_density_J_m3);
    return out;
}

} // namespace casimir
