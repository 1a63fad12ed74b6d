#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>

#include "casimir/autocorr_grid.hpp"
#include "casimir/bodies.hpp"
#include "casimir/density_fit.hpp"
#include "casimir/error.hpp"
#include "casimir/kernel.hpp"
#include "casimir/monte_carlo.hpp"
#include "casimir/pair_density.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

struct PdConfig {
    PdMethod method = PdMethod::Analytic;
    int resolution = 256;               // grid cells across the bounding box
    std::int64_t samples = 10'000'000;  // Monte Carlo pairs
    std::uint64_t seed = 1;
    unsigned workers = 1;
    double bin_width_cells = 1.0;       // grid bin width in cells
};

/// Pair-distance measure of a body. Analytic is available for the ball and
/// the cylinder cross section; grid autocorrelation and Monte Carlo cover
/// ball, cube and cylinder.
inline PairDistanceDensity pair_distance_density(const Body& body, const PdConfig& cfg) {
    validate(body);
    switch (cfg.method) {
        case PdMethod::Analytic: {
            if (const auto* ball = std::get_if<Ball>(&body))
                return analytic_ball_density(ball->radius);
            if (const auto* cyl = std::get_if<Cylinder>(&body))
                return analytic_disk_density(cyl->radius);
            throw capability_error("pair_distance_density: no analytic form for " +
                                   body_name(body));
        }
        case PdMethod::GridAutocorrelation: {
            const auto binned =
                grid_pair_measure(body, cfg.resolution, cfg.workers, cfg.bin_width_cells);
            Provenance prov;
            prov.method = PdMethod::GridAutocorrelation;
            prov.resolution = cfg.resolution;
            return fit_piecewise_density(binned, body, prov);
        }
        case PdMethod::MonteCarlo: {
            const auto binned = mc_pair_measure(body, cfg.samples, cfg.seed, cfg.workers);
            Provenance prov;
            prov.method = PdMethod::MonteCarlo;
            prov.samples = cfg.samples;
            prov.seed = cfg.seed;
            return fit_piecewise_density(binned, body, prov);
        }
    }
    throw capability_error("pair_distance_density: unknown method");
}

/// Cutoff-regularized pairwise self-energy
///   E(s) = (1/2) N^2 int_s^D P(r) V(r; alpha) dr
/// (per unit axial length for the cylinder, where the axially pre-integrated
/// kernel carries the extra 16/15 and one lower power of r).
inline double self_energy_with_cutoff(const PairDistanceDensity& pdd, const Material& mat,
                                      double s) {
    const double diameter = pdd.support_max();
    if (!(s > 0.0 && s < 0.5 * diameter))
        throw domain_error("self_energy_with_cutoff: cutoff must lie in (0, diameter/2)");
    const double n2a2 = mat.number_density * mat.number_density * mat.alpha * mat.alpha;
    if (pdd.dim == 3)
        return -23.0 / (8.0 * constants::pi) * n2a2 * pdd.kernel_integral(s, 7);
    return -23.0 / (8.0 * constants::pi) * (16.0 / 15.0) * n2a2 * pdd.kernel_integral(s, 6);
}

/// Convenience overload: builds the pair measure first.
inline double self_energy_with_cutoff(const Body& body, const Material& mat, double s,
                                      const PdConfig& cfg) {
    return self_energy_with_cutoff(pair_distance_density(body, cfg), mat, s);
}

struct InteractionEnergy {
    double value = 0.0;
    bool per_area = false;  ///< true for half-space / slab pairs
};

namespace detail {

// z-interval occupied by a planar body, as (lo, hi) with +-inf for
// half-spaces.
inline std::pair<double, double> z_interval(const Body& body) {
    if (const auto* hs = std::get_if<HalfSpace>(&body)) {
        if (hs->side < 0)
            return {-std::numeric_limits<double>::infinity(), hs->offset};
        return {hs->offset, std::numeric_limits<double>::infinity()};
    }
    const auto& slab = std::get<Slab>(body);
    return {slab.offset, slab.offset + slab.thickness};
}

// Overlap length of [a0, a1] shifted by u against [b0, b1]:
// w(u) = |{z : z in A, z + u in B}| -- the interval cross-correlation.
inline double interval_cross_correlation(double a0, double a1, double b0, double b1,
                                         double u) {
    const double lo = std::max(a0, b0 - u);
    const double hi = std::min(a1, b1 - u);
    return std::max(0.0, hi - lo);
}

/// Energy per unit area between two parallel planar bodies (half-spaces or
/// slabs) along z: E/A = -(23/10) alpha^2 N^2 int w(u) u^-5 du with w the
/// interval cross-correlation in u = z2 - z1.
inline double planar_pair_energy_per_area(const Body& a, const Body& b, const Material& mat) {
    auto [a0, a1] = z_interval(a);
    auto [b0, b1] = z_interval(b);
    // Require separation: intervals disjoint with positive gap.
    const double gap = std::max(b0 - a1, a0 - b1);
    if (!(gap > 0.0))
        throw domain_error("interaction_energy_disjoint: bodies must be disjoint "
                           "with positive separation");
    const bool b_above = b0 - a1 > 0.0;
    const double lo = gap;
    // Largest |u| with nonzero overlap; infinite when either side unbounded.
    const double extent_a = a1 - a0;
    const double extent_b = b1 - b0;
    const double coeff = -23.0 / 10.0 * mat.alpha * mat.alpha * mat.number_density *
                         mat.number_density;
    auto w = [&](double u) {
        // Use the ordering with b above a; mirror otherwise.
        if (b_above)
            return interval_cross_correlation(a0, a1, b0, b1, u);
        return interval_cross_correlation(b0, b1, a0, a1, u);
    };
    auto integrand = [&](double u) { return w(u) * std::pow(u, -5.0); };
    if (std::isinf(extent_a) || std::isinf(extent_b)) {
        return coeff * integrate_to_infinity(integrand, lo, 1e-12).value;
    }
    const double hi = lo + extent_a + extent_b;
    return coeff * integrate(integrand, lo, hi, 1e-12).value;
}

/// Atom against a planar body: shell cross-measure Q(r) = 2 pi r L(r), with
/// L(r) the part of [-r, r] (in depth below/above the atom) inside the body.
inline double atom_planar_energy(const PointAtom& atom, const Body& planar,
                                 const Material& mat) {
    auto [b0, b1] = z_interval(planar);
    const double z = atom.position;
    const double gap = std::max(b0 - z, z - b1);
    if (!(gap > 0.0))
        throw domain_error("interaction_energy_disjoint: atom must sit outside the body "
                           "with positive separation");
    // Depth of the planar body measured away from the atom.
    const double near = gap;
    const double far = std::isinf(b1 - b0) ? std::numeric_limits<double>::infinity()
                                           : gap + (b1 - b0);
    const double coeff = -23.0 / (4.0 * constants::pi) * atom.alpha * mat.alpha *
                         mat.number_density;
    auto q = [&](double r) {
        const double depth_hi = std::min(r, far);
        return 2.0 * constants::pi * r * std::max(0.0, depth_hi - near);
    };
    auto integrand = [&](double r) { return q(r) * std::pow(r, -7.0); };
    return coeff * integrate_to_infinity(integrand, near, 1e-12).value;
}

/// Atom against a ball: spherical-cap cross-measure
/// Q(r) = (pi r / R)(a^2 - (R - r)^2) on [R - a, R + a].
inline double atom_ball_energy(const PointAtom& atom, const Ball& ball, const Material& mat) {
    const double center_distance = std::abs(atom.position);
    const double a = ball.radius;
    if (!(center_distance > a))
        throw domain_error("interaction_energy_disjoint: atom must lie outside the ball");
    const double coeff = -23.0 / (4.0 * constants::pi) * atom.alpha * mat.alpha *
                         mat.number_density;
    auto integrand = [&](double r) {
        const double q = constants::pi * r / center_distance *
                         (a * a - (center_distance - r) * (center_distance - r));
        return q * std::pow(r, -7.0);
    };
    return coeff *
           integrate(integrand, center_distance - a, center_distance + a, 1e-12).value;
}

inline bool is_planar(const Body& b) {
    return std::holds_alternative<HalfSpace>(b) || std::holds_alternative<Slab>(b);
}

} // namespace detail

/// Convergent interaction energy of two disjoint bodies,
/// E = integral integral N_A N_B V(|r1 - r2|); a point atom contributes its
/// own alpha as a delta factor. Half-space and slab pairs report energy per
/// unit area. Supported: atom-atom, atom-planar, atom-ball, planar-planar.
inline InteractionEnergy interaction_energy_disjoint(const Body& body_a, const Body& body_b,
                                                     const Material& mat) {
    validate(body_a);
    validate(body_b);

    const auto* atom_a = std::get_if<PointAtom>(&body_a);
    const auto* atom_b = std::get_if<PointAtom>(&body_b);

    if (atom_a && atom_b) {
        const double r = std::abs(atom_a->position - atom_b->position);
        if (!(r > 0.0))
            throw domain_error("interaction_energy_disjoint: zero separation");
        return {retarded_vdw_pair(r, atom_a->alpha, atom_b->alpha), false};
    }
    if (atom_a || atom_b) {
        const PointAtom& atom = atom_a ? *atom_a : *atom_b;
        const Body& other = atom_a ? body_b : body_a;
        if (detail::is_planar(other))
            return {detail::atom_planar_energy(atom, other, mat), false};
        if (const auto* ball = std::get_if<Ball>(&other))
            return {detail::atom_ball_energy(atom, *ball, mat), false};
        throw capability_error("interaction_energy_disjoint: atom vs " + body_name(other) +
                               " is not supported");
    }
    if (detail::is_planar(body_a) && detail::is_planar(body_b))
        return {detail::planar_pair_energy_per_area(body_a, body_b, mat), true};

    throw capability_error("interaction_energy_disjoint: " + body_name(body_a) + " vs " +
                           body_name(body_b) + " is not supported");
}

} // namespace casimir
