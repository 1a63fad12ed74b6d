#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <vector>

#include "casimir/autocorr_grid.hpp"
#include "casimir/bodies.hpp"
#include "casimir/error.hpp"
#include "casimir/pair_density.hpp"

namespace casimir {

// Least-squares fit of piecewise polynomials (degree <= 5 per smooth
// interval) to binned pair-measure data, so that the stiff kernel integrals
// int P(r) r^-q dr downstream are evaluated in closed form and only the
// P-fit error remains.
//
// The first interval carries no constant or linear term (P ~ r^(dim-1) at
// the origin). For lattice data the design matrix uses lattice sums of the
// model over exactly the displacement set that produced the data, so the
// shell-count jitter of thin radial bins cancels instead of polluting the
// fit; for Monte Carlo data the continuum bin integrals are used.

namespace detail {

struct PieceBasis {
    double lo = 0.0, hi = 0.0;
    int first_power = 0;  // lowest active power of r
};

} // namespace detail

inline PairDistanceDensity fit_piecewise_density(const BinnedPairMeasure& data,
                                                 const Body& body,
                                                 const Provenance& provenance) {
    const auto breakpoints = pair_density_breakpoints(body);
    const int dim = data.dim;
    const double angular = dim == 3 ? 4.0 * constants::pi : 2.0 * constants::pi;

    std::vector<detail::PieceBasis> basis;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        basis.push_back({breakpoints[i], breakpoints[i + 1], i == 0 ? dim - 1 : 0});

    std::vector<std::size_t> col_offset;
    std::size_t n_cols = 0;
    for (const auto& b : basis) {
        col_offset.push_back(n_cols);
        n_cols += static_cast<std::size_t>(6 - b.first_power);
    }

    const std::size_t n_bins = data.masses.size();
    const std::size_t n_interior = basis.size() - 1;
    const std::size_t n_rows = n_bins + n_interior + 1;  // + endpoint row

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_rows),
                                              static_cast<Eigen::Index>(n_cols));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_rows));

    auto interval_of = [&](double r) -> std::size_t {
        for (std::size_t i = 0; i + 1 < basis.size(); ++i)
            if (r < basis[i].hi)
                return i;
        return basis.size() - 1;
    };

    // Data rows, weighted by 1/sqrt(count): both lattice-anisotropy noise
    // and Poisson noise scale with the per-bin sample count.
    for (std::size_t j = 0; j < n_bins; ++j) {
        const double lo = data.edges[j];
        const double hi = data.edges[j + 1];
        const double mid = 0.5 * (lo + hi);
        const std::size_t piece = interval_of(mid);
        const double w = 1.0 / std::sqrt(std::max(data.counts[j], 1.0));
        for (int m = basis[piece].first_power; m <= 5; ++m) {
            const std::size_t col = col_offset[piece] +
                                    static_cast<std::size_t>(m - basis[piece].first_power);
            double entry;
            if (data.lattice_consistent) {
                const int p = m - (dim - 1);
                entry = data.moments[j][static_cast<std::size_t>(p + 2)] / angular;
            } else {
                entry = (std::pow(hi, m + 1) - std::pow(lo, m + 1)) / (m + 1);
            }
            A(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(col)) = w * entry;
        }
        rhs(static_cast<Eigen::Index>(j)) = w * data.masses[j];
    }

    // Soft constraints: C0 continuity at interior breakpoints and P = 0 at
    // the outer support end. Each constraint row is homogeneous, so it can
    // be normalized freely; its strength is pinned above the data rows.
    double data_row_scale = 0.0;
    for (std::size_t j = 0; j < n_bins; ++j)
        for (Eigen::Index c = 0; c < A.cols(); ++c)
            data_row_scale = std::max(data_row_scale,
                                      std::abs(A(static_cast<Eigen::Index>(j), c)));
    if (data_row_scale == 0.0)
        data_row_scale = 1.0;
    const double constraint_weight = 1e3 * data_row_scale;

    auto fill_normalized = [&](Eigen::Index row) {
        double row_max = 0.0;
        for (Eigen::Index c = 0; c < A.cols(); ++c)
            row_max = std::max(row_max, std::abs(A(row, c)));
        if (row_max > 0.0)
            A.row(row) *= constraint_weight / row_max;
    };

    for (std::size_t i = 0; i < n_interior; ++i) {
        const Eigen::Index row = static_cast<Eigen::Index>(n_bins + i);
        const double bp = basis[i].hi;
        for (int m = basis[i].first_power; m <= 5; ++m)
            A(row, static_cast<Eigen::Index>(col_offset[i] +
                                             static_cast<std::size_t>(m - basis[i].first_power))) =
                std::pow(bp, m);
        for (int m = basis[i + 1].first_power; m <= 5; ++m)
            A(row, static_cast<Eigen::Index>(col_offset[i + 1] +
                                             static_cast<std::size_t>(m - basis[i + 1].first_power))) =
                -std::pow(bp, m);
        fill_normalized(row);
    }
    {
        const Eigen::Index row = static_cast<Eigen::Index>(n_bins + n_interior);
        const auto& last = basis.back();
        const double diam = breakpoints.back();
        for (int m = last.first_power; m <= 5; ++m)
            A(row, static_cast<Eigen::Index>(col_offset[basis.size() - 1] +
                                             static_cast<std::size_t>(m - last.first_power))) =
                std::pow(diam, m);
        fill_normalized(row);
    }

    // Column equilibration, QR solve, back-scaling.
    Eigen::VectorXd col_norm(static_cast<Eigen::Index>(n_cols));
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
        double norm = A.col(c).norm();
        col_norm(c) = norm > 0.0 ? norm : 1.0;
        A.col(c) /= col_norm(c);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < A.cols())
        throw fit_error("fit_piecewise_density: rank-deficient bin system");
    Eigen::VectorXd scaled = qr.solve(rhs);
    Eigen::VectorXd coeffs = scaled.array() / col_norm.array();

    const Eigen::VectorXd residual_vec = A * scaled - rhs;
    double res_num = 0.0, res_den = 0.0;
    for (std::size_t j = 0; j < n_bins; ++j) {
        res_num += residual_vec(static_cast<Eigen::Index>(j)) * residual_vec(static_cast<Eigen::Index>(j));
        res_den += rhs(static_cast<Eigen::Index>(j)) * rhs(static_cast<Eigen::Index>(j));
    }

    PairDistanceDensity pdd;
    pdd.dim = dim;
    pdd.breakpoints = breakpoints;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        PolyPiece piece;
        piece.lo = basis[i].lo;
        piece.hi = basis[i].hi;
        for (int m = basis[i].first_power; m <= 5; ++m)
            piece.coeffs[static_cast<std::size_t>(m)] =
                coeffs(static_cast<Eigen::Index>(col_offset[i] +
                                                 static_cast<std::size_t>(m - basis[i].first_power)));
        pdd.pieces.push_back(piece);
    }
    pdd.total_measure = data.total_measure;
    pdd.provenance = provenance;
    pdd.bin_edges = data.edges;
    pdd.bin_masses = data.masses;
    pdd.fit_residual = res_den > 0.0 ? std::sqrt(res_num / res_den) : 0.0;
    {
        const auto& R = qr.matrixR();
        double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < A.cols(); ++i) {
            const double d = std::abs(R(i, i));
            dmax = std::max(dmax, d);
            dmin = std::min(dmin, d);
        }
        pdd.fit_condition = dmin > 0.0 ? dmax / dmin : std::numeric_limits<double>::infinity();
    }
    return pdd;
}

} // namespace casimir
