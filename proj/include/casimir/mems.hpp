#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"

namespace casimir {

// Plate on a linear spring facing a fixed plate under Casimir attraction.
// Everything reduces to the single load parameter
//   lambda = pi^2 hbar c A / (240 k d0^5),
// and equilibria solve (1 - delta) delta^4 = lambda with delta = d/d0.
// Two equilibria exist for lambda < lambda* = 256/3125 (the marginal root
// sits at delta = 4/5); above lambda* the plate always collapses.

inline constexpr double lambda_critical = 256.0 / 3125.0;
inline constexpr double delta_critical = 0.8;

struct OscillatorConfig {
    double spring_constant = 0.0;  // N/m
    double rest_gap = 0.0;         // m
    double plate_area = 0.0;       // m^2
    double plate_mass = 0.0;       // kg
    double damping = 0.0;          // kg/s, >= 0
    double contact_floor_factor = 1e-3;  // contact event at d <= factor * d0

    void validate() const {
        if (!(spring_constant > 0.0) || !(rest_gap > 0.0) || !(plate_area >= 0.0) ||
            !(plate_mass > 0.0) || damping < 0.0)
            throw domain_error("OscillatorConfig: k, d0, m must be > 0; A, gamma >= 0");
        if (!(contact_floor_factor > 0.0 && contact_floor_factor < 1.0))
            throw domain_error("OscillatorConfig: contact floor must be in (0, d0)");
    }
};

/// Dimensionless Casimir load lambda = pi^2 hbar c A / (240 k d0^5).
inline double lambda_param(const OscillatorConfig& cfg) {
    cfg.validate();
    const double d0 = cfg.rest_gap;
    const double d05 = d0 * d0 * d0 * d0 * d0;
    return constants::pi * constants::pi * constants::hbar_c * cfg.plate_area /
           (240.0 * cfg.spring_constant * d05);
}

enum class Stability { Stable, Unstable, Marginal };

struct Equilibrium {
    double delta = 0.0;  // gap / rest gap
    Stability stability = Stability::Stable;
};

namespace detail {

// g(delta) = (1 - delta) delta^4 - lambda
inline double balance(double delta, double lambda) {
    const double d4 = delta * delta * delta * delta;
    return (1.0 - delta) * d4 - lambda;
}

inline double balance_derivative(double delta) {
    const double d3 = delta * delta * delta;
    return d3 * (4.0 - 5.0 * delta);
}

// Newton iteration with a bisection bracket on [lo, hi].
inline double solve_balance(double lo, double hi, double lambda) {
    double flo = balance(lo, lambda);
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double fx = balance(x, lambda);
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        const double step = fx / balance_derivative(x);
        double next = x - step;
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-16 * std::max(1.0, std::abs(x))) {
            x = next;
            break;
        }
        x = next;
    }
    return x;
}

} // namespace detail

/// Equilibrium gaps for a dimensionless load. Empty above the critical
/// load: unconditional collapse (stiction regime).
inline std::vector<Equilibrium> equilibria_for_lambda(double lambda) {
    if (lambda < 0.0)
        throw domain_error("equilibria_for_lambda: lambda must be >= 0");
    std::vector<Equilibrium> out;
    if (lambda == 0.0) {
        out.push_back({1.0, Stability::Stable});
        return out;
    }
    const double tol = 1e-14;
    if (std::abs(lambda - lambda_critical) <= tol * lambda_critical) {
        out.push_back({delta_critical, Stability::Marginal});
        return out;
    }
    if (lambda > lambda_critical)
        return out;
    // Smaller root in (0, 4/5): the net force changes from attraction-
    // dominated to spring-dominated; unstable.
    out.push_back({detail::solve_balance(1e-12, delta_critical, lambda), Stability::Unstable});
    // Larger root in (4/5, 1): stable.
    out.push_back({detail::solve_balance(delta_critical, 1.0, lambda), Stability::Stable});
    return out;
}

inline std::vector<Equilibrium> equilibria(const OscillatorConfig& cfg) {
    return equilibria_for_lambda(lambda_param(cfg));
}

struct TrajectoryPoint {
    double time = 0.0;      // s
    double gap = 0.0;       // m
    double velocity = 0.0;  // m/s
};

struct Trajectory {
    std::vector<TrajectoryPoint> samples;
    bool contact = false;
    double contact_time = 0.0;        // s, valid when contact
    double energy_drift = 0.0;        // max |H - H0| / |H0| over the run (gamma = 0)
    double final_gap = 0.0;
    double final_velocity = 0.0;
};

/// Total energy H = m v^2/2 + k (d - d0)^2/2 - pi^2 hbar c A / (720 d^3).
inline double oscillator_energy(const OscillatorConfig& cfg, double gap, double velocity) {
    const double stretch = gap - cfg.rest_gap;
    const double casimir = constants::pi * constants::pi * constants::hbar_c *
                           cfg.plate_area / (720.0 * gap * gap * gap);
    return 0.5 * cfg.plate_mass * velocity * velocity +
           0.5 * cfg.spring_constant * stretch * stretch - casimir;
}

/// Leapfrog (velocity Verlet) integration of the plate equation of motion
/// in the nondimensional variables x = d/d0, tau = t sqrt(k/m); damping is
/// applied as exact exponential half-step factors around the symplectic
/// core. Terminates early with a contact event at the contact floor.
inline Trajectory simulate(const OscillatorConfig& cfg, double initial_gap,
                           double initial_velocity, double duration, double timestep,
                           std::size_t sample_stride = 1) {
    cfg.validate();
    if (!(initial_gap > 0.0 && initial_gap <= cfg.rest_gap))
        throw domain_error("simulate: initial gap must be in (0, d0]");
    if (!(duration > 0.0) || !(timestep > 0.0))
        throw domain_error("simulate: duration and timestep must be positive");
    if (sample_stride == 0)
        sample_stride = 1;

    const double lambda = lambda_param(cfg);
    const double omega0 = std::sqrt(cfg.spring_constant / cfg.plate_mass);

    // Timestep must resolve the linearized period at the stable equilibrium
    // (spring period if the system has none) by at least 50 steps.
    double omega_ref = omega0;
    for (const auto& eq : equilibria_for_lambda(lambda)) {
        if (eq.stability == Stability::Stable) {
            const double d5 = std::pow(eq.delta, 5);
            const double stiffness = 1.0 - 4.0 * lambda / d5;  // in units of k
            if (stiffness > 0.0)
                omega_ref = omega0 * std::sqrt(stiffness);
        }
    }
    const double period = 2.0 * constants::pi / omega_ref;
    if (timestep > period / 50.0)
        throw domain_error("simulate: timestep must resolve the linearized period by >= 50 steps");

    const double dt = timestep * omega0;  // nondimensional step
    const double floor = cfg.contact_floor_factor;
    const double zeta = cfg.damping / (cfg.plate_mass * omega0);
    const double damp_half = std::exp(-0.5 * zeta * dt);

    double x = initial_gap / cfg.rest_gap;
    double v = initial_velocity / (cfg.rest_gap * omega0);
    const std::size_t n_steps = static_cast<std::size_t>(std::ceil(duration / timestep));

    auto accel = [lambda](double xx) {
        const double x4 = xx * xx * xx * xx;
        return (1.0 - xx) - lambda / x4;
    };

    Trajectory out;
    out.samples.push_back({0.0, initial_gap, initial_velocity});
    const double h0 = oscillator_energy(cfg, initial_gap, initial_velocity);
    double max_drift = 0.0;
    const bool track_energy = cfg.damping == 0.0 && std::abs(h0) > 0.0;

    double a = accel(x);
    for (std::size_t step = 1; step <= n_steps; ++step) {
        v *= damp_half;
        v += 0.5 * dt * a;
        x += dt * v;
        if (x <= floor) {
            out.contact = true;
            out.contact_time = static_cast<double>(step) * timestep;
            x = floor;
            break;
        }
        a = accel(x);
        v += 0.5 * dt * a;
        v *= damp_half;

        if (track_energy) {
            const double h = oscillator_energy(cfg, x * cfg.rest_gap,
                                               v * cfg.rest_gap * omega0);
            max_drift = std::max(max_drift, std::abs(h - h0) / std::abs(h0));
        }
        if (step % sample_stride == 0 || step == n_steps)
            out.samples.push_back({static_cast<double>(step) * timestep, x * cfg.rest_gap,
                                   v * cfg.rest_gap * omega0});
    }

    out.energy_drift = max_drift;
    out.final_gap = x * cfg.rest_gap;
    out.final_velocity = v * cfg.rest_gap * omega0;
    if (out.contact && (out.samples.empty() || out.samples.back().time != out.contact_time))
        out.samples.push_back({out.contact_time, out.final_gap, out.final_velocity});
    return out;
}

enum class SweepParameter { SpringConstant, RestGap };

struct SweepPoint {
    double parameter = 0.0;
    double lambda = 0.0;
    std::optional<double> stable_delta;  // empty when collapsed
    bool collapsed = false;
};

struct BranchDiagram {
    std::vector<SweepPoint> forward;
    std::vector<SweepPoint> backward;
    std::optional<double> pull_in_parameter;  // first forward parameter with no stable root
    std::optional<double> pull_in_lambda;
    bool released_on_reverse = false;  // stays false: stiction has no release path
};

/// Quasi-static sweep of k or d0. The stable branch is followed until it
/// vanishes (pull-in); after collapse the plate stays latched, including on
/// the reverse sweep. The model has no adhesion-release force.
inline BranchDiagram hysteresis_sweep(OscillatorConfig cfg, SweepParameter param,
                                      double from, double to, int steps) {
    cfg.validate();
    if (steps < 2)
        throw domain_error("hysteresis_sweep: need at least 2 steps");
    if (!(from > 0.0) || !(to > 0.0))
        throw domain_error("hysteresis_sweep: sweep range must be positive");

    auto apply = [&](double value) {
        OscillatorConfig c = cfg;
        if (param == SweepParameter::SpringConstant)
            c.spring_constant = value;
        else
            c.rest_gap = value;
        return c;
    };

    BranchDiagram out;
    bool collapsed = false;

    auto run_pass = [&](double a, double b, std::vector<SweepPoint>& pass, bool record_pull_in) {
        for (int i = 0; i < steps; ++i) {
            const double value = a + (b - a) * static_cast<double>(i) /
                                         static_cast<double>(steps - 1);
            const OscillatorConfig c = apply(value);
            SweepPoint pt;
            pt.parameter = value;
            pt.lambda = lambda_param(c);
            if (!collapsed) {
                std::optional<double> stable;
                for (const auto& eq : equilibria_for_lambda(pt.lambda))
                    if (eq.stability == Stability::Stable)
                        stable = eq.delta;
                if (stable) {
                    pt.stable_delta = stable;
                } else {
                    collapsed = true;
                    if (record_pull_in && !out.pull_in_parameter) {
                        out.pull_in_parameter = value;
                        out.pull_in_lambda = pt.lambda;
                    }
                }
            }
            pt.collapsed = collapsed;
            pass.push_back(pt);
        }
    };

    run_pass(from, to, out.forward, true);
    run_pass(to, from, out.backward, true);
    return out;
}

struct PressureResult {
    double pascals = 0.0;
    double atmospheres = 0.0;
};

/// Magnitude of the perfect-conductor plate pressure |pi^2 hbar c / 240 d^4|
/// at a gap in meters.
inline PressureResult pressure_at_gap(double gap_m) {
    if (!(gap_m > 0.0))
        throw domain_error("pressure_at_gap: gap must be positive");
    const double d4 = gap_m * gap_m * gap_m * gap_m;
    PressureResult out;
    out.pascals = constants::pi * constants::pi * constants::hbar_c / (240.0 * d4);
    out.atmospheres = out.pascals / constants::atmosphere;
    return out;
}

} // namespace casimir
