#pragma once

#include <cmath>
#include <numbers>

#include "casimir/error.hpp"

namespace casimir {

// CODATA 2018 values, 9 significant digits. c, k and the electron-volt are
// exact by SI definition. These are the only physical constants the toolkit
// uses; everything internal runs in reduced units (hbar = c = 1) with one
// free length unit, so the constants appear only at I/O boundaries.
namespace constants {

inline constexpr double hbar = 1.05457182e-34;           // J s
inline constexpr double speed_of_light = 2.99792458e8;   // m/s (exact)
inline constexpr double boltzmann = 1.38064900e-23;      // J/K (exact)
inline constexpr double electron_volt = 1.60217663e-19;  // J (exact)
inline constexpr double atmosphere = 101325.0;           // Pa (exact)
inline constexpr double hbar_c = hbar * speed_of_light;  // J m

inline constexpr double pi = std::numbers::pi;

} // namespace constants

enum class UnitMode { Reduced, SI };

/// Reduced-unit bookkeeping: in Reduced mode energies are pure numbers in
/// units of hbar*c / L where L is the free length unit; SI mode pins L in
/// meters and converts at the boundary.
class UnitSystem {
public:
    static UnitSystem reduced() { return UnitSystem(UnitMode::Reduced, 1.0); }

    static UnitSystem si(double length_unit_m) {
        if (!(length_unit_m > 0.0))
            throw domain_error("UnitSystem: length unit must be positive");
        return UnitSystem(UnitMode::SI, length_unit_m);
    }

    UnitMode mode() const { return mode_; }
    double length_unit() const { return length_unit_m_; }

    /// Reduced energy (units hbar*c/L) -> joules.
    double energy_to_si(double reduced) const {
        return reduced * constants::hbar_c / length_unit_m_;
    }

    double energy_from_si(double joules) const {
        return joules * length_unit_m_ / constants::hbar_c;
    }

    /// Reduced pressure (units hbar*c/L^4) -> pascals.
    double pressure_to_si(double reduced) const {
        const double l = length_unit_m_;
        return reduced * constants::hbar_c / (l * l * l * l);
    }

    /// Reduced energy per unit area (hbar*c/L^3) -> J/m^2.
    double energy_per_area_to_si(double reduced) const {
        const double l = length_unit_m_;
        return reduced * constants::hbar_c / (l * l * l);
    }

    /// Reduced energy per unit length (hbar*c/L^2) -> J/m.
    double energy_per_length_to_si(double reduced) const {
        const double l = length_unit_m_;
        return reduced * constants::hbar_c / (l * l);
    }

private:
    UnitSystem(UnitMode mode, double length_unit_m)
        : mode_(mode), length_unit_m_(length_unit_m) {}

    UnitMode mode_;
    double length_unit_m_;
};

/// Energy in reduced units (hbar = c = 1, lengths in units of length_unit_m)
/// converted to joules.
inline double convert_energy(double reduced_value, double length_unit_m) {
    if (!(length_unit_m > 0.0))
        throw domain_error("convert_energy: length unit must be positive");
    return reduced_value * constants::hbar_c / length_unit_m;
}

} // namespace casimir
