#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "casimir/bodies.hpp"
#include "casimir/constants.hpp"
#include "casimir/error.hpp"

namespace casimir {

enum class PdMethod { Analytic, GridAutocorrelation, MonteCarlo };

inline std::string to_string(PdMethod m) {
    switch (m) {
        case PdMethod::Analytic: return "analytic";
        case PdMethod::GridAutocorrelation: return "grid-autocorrelation";
        case PdMethod::MonteCarlo: return "monte-carlo";
    }
    return "?";
}

struct Provenance {
    PdMethod method = PdMethod::Analytic;
    int resolution = 0;        // grid cells across the bounding box (grid method)
    std::int64_t samples = 0;  // pair count (Monte Carlo)
    std::uint64_t seed = 0;    // Monte Carlo only
};

/// P(r) = sum_m coeffs[m] r^m on [lo, hi].
struct PolyPiece {
    double lo = 0.0;
    double hi = 0.0;
    std::array<double, 6> coeffs{};
};

/// Exact pair measure of a disk of radius `radius` (cylinder cross section):
/// P(r) = 2 pi r gamma2(r), gamma2 the disk set covariance.
struct DiskAnalyticPiece {
    double radius = 1.0;
};

using DensityPiece = std::variant<PolyPiece, DiskAnalyticPiece>;

/// Disk set covariance gamma2(r) = 2 a^2 acos(r/2a) - (r/2) sqrt(4a^2 - r^2).
inline double disk_covariance(double r, double a) {
    if (r <= 0.0)
        return constants::pi * a * a;
    if (r >= 2.0 * a)
        return 0.0;
    return 2.0 * a * a * std::acos(r / (2.0 * a)) -
           0.5 * r * std::sqrt(4.0 * a * a - r * r);
}

namespace detail {

/// Exact I(s) = int_s^{2a} gamma2(r; a) r^-5 dr for the unit disk scaled to
/// radius a. With theta = asin(s / 2a):
/// a^-2/16 * [ (pi - 2 theta - sin 2theta) / (4 sin^4 theta) - cot^3 theta / 3 ].
inline double disk_kernel_integral(double s, double a) {
    if (s >= 2.0 * a)
        return 0.0;
    const double theta = std::asin(s / (2.0 * a));
    const double sn = std::sin(theta);
    const double cs = std::cos(theta);
    const double cot = cs / sn;
    const double term1 = (constants::pi - 2.0 * theta - std::sin(2.0 * theta)) /
                         (4.0 * sn * sn * sn * sn);
    const double term2 = cot * cot * cot / 3.0;
    return (term1 - term2) / (16.0 * a * a);
}

/// int r^(m - q) dr evaluated from lo to hi (handles the log case).
inline double power_integral(int m, int q, double lo, double hi) {
    const int p = m - q;
    if (p == -1)
        return std::log(hi / lo);
    const double e = p + 1;
    return (std::pow(hi, e) - std::pow(lo, e)) / e;
}

} // namespace detail

/// Reduction of the 6-dimensional pairwise integral to one dimension: for a
/// body B, integrals of f(|r1 - r2|) over B x B become int P(r) f(r) dr.
/// The pieces are polynomials (closed-form kernel integrals) except for the
/// analytic disk, which has its own exact integral.
struct PairDistanceDensity {
    int dim = 3;  // 3, or 2 for the cylinder cross section
    std::vector<double> breakpoints;
    std::vector<DensityPiece> pieces;
    double total_measure = 0.0;  // V^2 (A^2 per unit length^2 for dim 2)
    Provenance provenance;

    // Raw binned data for numeric provenances (kept for serialization and
    // cross-method diagnostics).
    std::vector<double> bin_edges;
    std::vector<double> bin_masses;

    double fit_residual = 0.0;     // relative, from the piecewise fit
    double fit_condition = 0.0;

    double support_max() const { return breakpoints.empty() ? 0.0 : breakpoints.back(); }

    double operator()(double r) const {
        for (const auto& piece : pieces) {
            if (const auto* poly = std::get_if<PolyPiece>(&piece)) {
                if (r >= poly->lo && r <= poly->hi) {
                    double v = 0.0;
                    for (int m = 5; m >= 0; --m)
                        v = v * r + poly->coeffs[static_cast<std::size_t>(m)];
                    return v;
                }
            } else if (const auto* disk = std::get_if<DiskAnalyticPiece>(&piece)) {
                if (r >= 0.0 && r <= 2.0 * disk->radius)
                    return 2.0 * constants::pi * r * disk_covariance(r, disk->radius);
            }
        }
        return 0.0;
    }

    /// int_0^inf P(r) dr, closed form.
    double integral() const {
        double total = 0.0;
        for (const auto& piece : pieces) {
            if (const auto* poly = std::get_if<PolyPiece>(&piece)) {
                for (int m = 0; m <= 5; ++m)
                    total += poly->coeffs[static_cast<std::size_t>(m)] *
                             detail::power_integral(m, 0, poly->lo, poly->hi);
            } else if (const auto* disk = std::get_if<DiskAnalyticPiece>(&piece)) {
                const double a2 = disk->radius * disk->radius;
                total += constants::pi * constants::pi * a2 * a2;
            }
        }
        return total;
    }

    /// int_s^D P(r) r^-q dr, closed form per piece. q is 7 for dim 3 and 6
    /// for dim 2 (the polynomial degree-5 term then integrates to a log).
    double kernel_integral(double s, int q) const {
        double total = 0.0;
        for (const auto& piece : pieces) {
            if (const auto* poly = std::get_if<PolyPiece>(&piece)) {
                const double lo = std::max(s, poly->lo);
                if (lo >= poly->hi)
                    continue;
                for (int m = 0; m <= 5; ++m) {
                    const double c = poly->coeffs[static_cast<std::size_t>(m)];
                    if (c != 0.0)
                        total += c * detail::power_integral(m, q, lo, poly->hi);
                }
            } else if (const auto* disk = std::get_if<DiskAnalyticPiece>(&piece)) {
                if (q != 6)
                    throw domain_error("disk pair measure requires the dim-2 kernel");
                if (s < 2.0 * disk->radius)
                    total += 2.0 * constants::pi *
                             detail::disk_kernel_integral(std::max(s, 0.0), disk->radius);
            }
        }
        return total;
    }
};

/// Exact pair measure of a ball of radius a:
/// P(r) = (16 pi^2/3) a^3 r^2 - 4 pi^2 a^2 r^3 + (pi^2/3) r^5 on [0, 2a].
inline PairDistanceDensity analytic_ball_density(double a) {
    if (!(a > 0.0))
        throw domain_error("analytic_ball_density: radius must be positive");
    const double pi2 = constants::pi * constants::pi;
    PolyPiece piece;
    piece.lo = 0.0;
    piece.hi = 2.0 * a;
    piece.coeffs = {0.0, 0.0, 16.0 * pi2 / 3.0 * a * a * a, -4.0 * pi2 * a * a, 0.0,
                    pi2 / 3.0};
    PairDistanceDensity pdd;
    pdd.dim = 3;
    pdd.breakpoints = {0.0, 2.0 * a};
    pdd.pieces = {piece};
    const double volume = 4.0 / 3.0 * constants::pi * a * a * a;
    pdd.total_measure = volume * volume;
    pdd.provenance.method = PdMethod::Analytic;
    return pdd;
}

/// Exact pair measure of the cylinder cross-section disk of radius a.
inline PairDistanceDensity analytic_disk_density(double a) {
    if (!(a > 0.0))
        throw domain_error("analytic_disk_density: radius must be positive");
    PairDistanceDensity pdd;
    pdd.dim = 2;
    pdd.breakpoints = {0.0, 2.0 * a};
    pdd.pieces = {DiskAnalyticPiece{a}};
    const double area = constants::pi * a * a;
    pdd.total_measure = area * area;
    pdd.provenance.method = PdMethod::Analytic;
    return pdd;
}

} // namespace casimir
