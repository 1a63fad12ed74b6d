#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "casimir/error.hpp"
#include "casimir/geometry.hpp"
#include "casimir/pairwise.hpp"

namespace casimir {

/// Which divergent terms participate in the cutoff-series fit; the constant
/// (pure term) is always active.
struct BasisFlags {
    bool s4 = true;
    bool s3 = true;
    bool s2 = true;
    bool s1 = true;
    bool log_term = false;

    int active_terms() const {
        return 1 + (s4 ? 1 : 0) + (s3 ? 1 : 0) + (s2 ? 1 : 0) + (s1 ? 1 : 0) +
               (log_term ? 1 : 0);
    }
};

/// Fitted cutoff expansion
/// E(s) ~ b4 s^-4 + b3 s^-3 + b2 s^-2 + b1 s^-1 + b_log ln(1/s) + b0.
struct CutoffExpansion {
    double b4 = 0.0, b3 = 0.0, b2 = 0.0, b1 = 0.0, b_log = 0.0, b0 = 0.0;
    double b0_uncertainty = 0.0;  // jackknife over samples
    double fit_residual = 0.0;    // relative RMS on the preconditioned system
    double condition_number = 0.0;
    std::vector<double> s_grid;
    BasisFlags basis;
};

namespace detail {

// The fit is performed on E(s) * s^4 against {1, s, s^2, s^3, s^4 ln(1/s),
// s^4}: the raw E(s) spans many decades across the window, the
// preconditioned values do not.
inline void fill_design_row(double s, const BasisFlags& basis, double* row) {
    int c = 0;
    if (basis.s4) row[c++] = 1.0;
    if (basis.s3) row[c++] = s;
    if (basis.s2) row[c++] = s * s;
    if (basis.s1) row[c++] = s * s * s;
    if (basis.log_term) row[c++] = s * s * s * s * std::log(1.0 / s);
    row[c] = s * s * s * s;
}

struct FitCore {
    Eigen::VectorXd coeffs;
    double residual_rel = 0.0;
    double condition = 0.0;
};

inline FitCore solve_preconditioned(const std::vector<std::pair<double, double>>& samples,
                                    const BasisFlags& basis,
                                    const std::vector<int>& skip_index) {
    const int n_terms = basis.active_terms();
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        bool skipped = false;
        for (int k : skip_index)
            if (static_cast<std::size_t>(k) == i)
                skipped = true;
        if (!skipped)
            rows.push_back(i);
    }

    Eigen::MatrixXd A(static_cast<Eigen::Index>(rows.size()), n_terms);
    Eigen::VectorXd b(static_cast<Eigen::Index>(rows.size()));
    double row_buf[6];
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const double s = samples[rows[r]].first;
        const double e = samples[rows[r]].second;
        fill_design_row(s, basis, row_buf);
        for (int c = 0; c < n_terms; ++c)
            A(static_cast<Eigen::Index>(r), c) = row_buf[c];
        b(static_cast<Eigen::Index>(r)) = e * s * s * s * s;
    }

    Eigen::VectorXd col_norm(n_terms);
    for (int c = 0; c < n_terms; ++c) {
        const double norm = A.col(c).norm();
        col_norm(c) = norm > 0.0 ? norm : 1.0;
        A.col(c) /= col_norm(c);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < n_terms)
        throw fit_error("extract_pure_term: rank-deficient design matrix");
    Eigen::VectorXd x = qr.solve(b);

    // Iterative refinement with a long double residual: the pure term sits
    // many orders below the divergent terms, so the solve is pushed to the
    // limit of the data rather than of the factorization.
    for (int pass = 0; pass < 2; ++pass) {
        Eigen::VectorXd r(b.size());
        for (Eigen::Index i = 0; i < b.size(); ++i) {
            long double acc = static_cast<long double>(b(i));
            for (int c = 0; c < n_terms; ++c)
                acc -= static_cast<long double>(A(i, c)) * static_cast<long double>(x(c));
            r(i) = static_cast<double>(acc);
        }
        x += qr.solve(r);
    }

    FitCore out;
    out.coeffs = x.array() / col_norm.array();

    const Eigen::VectorXd resid = A * x - b;
    const double bn = b.norm();
    out.residual_rel = bn > 0.0 ? resid.norm() / bn : resid.norm();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& sv = svd.singularValues();
    out.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                            : std::numeric_limits<double>::infinity();
    return out;
}

inline void scatter_coeffs(const Eigen::VectorXd& x, const BasisFlags& basis,
                           CutoffExpansion& out) {
    int c = 0;
    if (basis.s4) out.b4 = x(c++);
    if (basis.s3) out.b3 = x(c++);
    if (basis.s2) out.b2 = x(c++);
    if (basis.s1) out.b1 = x(c++);
    if (basis.log_term) out.b_log = x(c++);
    out.b0 = x(c);
}

} // namespace detail

/// Least-squares extraction of the cutoff-independent constant from E(s)
/// samples. Requires at least twice as many samples as active basis terms,
/// spread over at least one decade of s.
inline CutoffExpansion extract_pure_term(const std::vector<std::pair<double, double>>& samples,
                                         const BasisFlags& basis = BasisFlags{},
                                         double condition_threshold = 1e12) {
    const int n_terms = basis.active_terms();
    if (samples.size() < 2 * static_cast<std::size_t>(n_terms))
        throw domain_error("extract_pure_term: need >= 2x as many samples as basis terms");
    double s_min = std::numeric_limits<double>::infinity(), s_max = 0.0;
    for (const auto& [s, e] : samples) {
        (void)e;
        if (!(s > 0.0))
            throw domain_error("extract_pure_term: cutoffs must be positive");
        s_min = std::min(s_min, s);
        s_max = std::max(s_max, s);
    }
    if (s_max / s_min < 10.0 * (1.0 - 1e-9))
        throw domain_error("extract_pure_term: cutoff grid must span at least one decade");

    const auto core = detail::solve_preconditioned(samples, basis, {});
    if (core.condition > condition_threshold)
        throw fit_error("extract_pure_term: condition number " +
                        std::to_string(core.condition) + " above threshold " +
                        std::to_string(condition_threshold));

    CutoffExpansion out;
    out.basis = basis;
    detail::scatter_coeffs(core.coeffs, basis, out);
    out.fit_residual = core.residual_rel;
    out.condition_number = core.condition;
    out.s_grid.reserve(samples.size());
    for (const auto& [s, e] : samples) {
        (void)e;
        out.s_grid.push_back(s);
    }

    // Jackknife: spread of leave-one-out pure terms.
    const int ci = n_terms - 1;
    std::vector<double> loo;
    loo.reserve(samples.size());
    double mean = 0.0;
    for (int i = 0; i < static_cast<int>(samples.size()); ++i) {
        const auto sub = detail::solve_preconditioned(samples, basis, {i});
        loo.push_back(sub.coeffs(ci));
        mean += sub.coeffs(ci);
    }
    mean /= static_cast<double>(loo.size());
    double var = 0.0;
    for (double v : loo)
        var += (v - mean) * (v - mean);
    const double n = static_cast<double>(loo.size());
    out.b0_uncertainty = std::sqrt((n - 1.0) / n * var);
    return out;
}

/// Log-spaced cutoff grid in [lo, hi].
inline std::vector<double> log_spaced(double lo, double hi, int n) {
    if (!(lo > 0.0 && hi > lo) || n < 2)
        throw domain_error("log_spaced: need 0 < lo < hi and n >= 2");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    const double ratio = std::log(hi / lo);
    for (int i = 0; i < n; ++i)
        out.push_back(lo * std::exp(ratio * static_cast<double>(i) / (n - 1)));
    return out;
}

struct PipelineConfig {
    PdMethod method = PdMethod::GridAutocorrelation;
    int resolution = 256;
    std::int64_t samples = 10'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    double s_window_lo = 0.02;  // in units of the body scale length
    double s_window_hi = 0.30;
    int s_points = 24;
    std::optional<bool> log_term_override;  // default: on for cube and cylinder
    double condition_threshold = 1e12;
};

/// Scale length the cutoff window refers to: ball/cylinder radius, cube side.
inline double body_scale_length(const Body& body) {
    if (const auto* ball = std::get_if<Ball>(&body))
        return ball->radius;
    if (const auto* cube = std::get_if<Cube>(&body))
        return cube->side;
    if (const auto* cyl = std::get_if<Cylinder>(&body))
        return cyl->radius;
    throw capability_error("body_scale_length: pure-term pipeline covers ball, cube, cylinder");
}

struct ExactReference {
    std::optional<double> value;  // in hbar c / scale (absent: sign only)
    int sign = 0;                 // +1 repulsive, -1 attractive
    std::string note;
};

/// Exact literature values quoted for comparison (not recomputed here).
inline ExactReference exact_reference(const Body& body) {
    if (std::holds_alternative<Ball>(body))
        return {sphere_shell_exact_energy, +1, "conducting spherical shell"};
    if (std::holds_alternative<Cube>(body))
        return {cube_exact_energy, +1, "conducting cube; units quoted without hbar c, assumed hbar c / a"};
    if (std::holds_alternative<Cylinder>(body))
        return {std::nullopt, -1, "conducting cylindrical shell: attractive, magnitude not quoted"};
    throw capability_error("exact_reference: no reference for " + body_name(body));
}

struct PureTermRow {
    std::string geometry;
    double scale_length = 0.0;
    CutoffExpansion expansion;
    ExactReference exact;
    bool sign_agreement = false;
    bool zero_consistent = false;  // cylinder: |b0| below the zero threshold
    PdMethod method = PdMethod::Analytic;
    int resolution = 0;
    std::int64_t mc_samples = 0;
    std::uint64_t seed = 0;
    double e_at_smin = 0.0;  // E at the smallest cutoff, for scale context
};

/// Threshold under which the cylinder pure term counts as zero, in units of
/// hbar c / a^2 with a the cylinder radius.
inline constexpr double cylinder_zero_threshold = 0.002;

inline BasisFlags default_basis(const Body& body, const PipelineConfig& cfg) {
    BasisFlags basis;
    // The ball expansion has no log term; cube edges plausibly generate one,
    // and the degree-5 disk fit feeds a weak log component through the dim-2
    // kernel, so both keep it on.
    basis.log_term = !std::holds_alternative<Ball>(body);
    if (cfg.log_term_override)
        basis.log_term = *cfg.log_term_override;
    return basis;
}

/// Full pipeline: P(r) -> E(s) on a log grid -> series extraction, plus the
/// exact reference row.
inline PureTermRow pure_term_report(const Body& body, const Material& mat,
                                    const PipelineConfig& cfg) {
    validate(body);
    const double scale = body_scale_length(body);

    PdConfig pd_cfg;
    pd_cfg.method = cfg.method;
    pd_cfg.resolution = cfg.resolution;
    pd_cfg.samples = cfg.samples;
    pd_cfg.seed = cfg.seed;
    pd_cfg.workers = cfg.workers;
    const auto pdd = pair_distance_density(body, pd_cfg);

    const auto s_grid = log_spaced(cfg.s_window_lo * scale, cfg.s_window_hi * scale,
                                   cfg.s_points);
    std::vector<std::pair<double, double>> samples;
    samples.reserve(s_grid.size());
    for (double s : s_grid)
        samples.emplace_back(s, self_energy_with_cutoff(pdd, mat, s));

    PureTermRow row;
    row.geometry = body_name(body);
    row.scale_length = scale;
    row.expansion = extract_pure_term(samples, default_basis(body, cfg),
                                      cfg.condition_threshold);
    row.exact = exact_reference(body);
    row.method = cfg.method;
    row.resolution = cfg.resolution;
    row.mc_samples = cfg.method == PdMethod::MonteCarlo ? cfg.samples : 0;
    row.seed = cfg.seed;
    row.e_at_smin = samples.front().second;

    const double b0 = row.expansion.b0;
    if (std::holds_alternative<Cylinder>(body)) {
        row.zero_consistent = std::abs(b0) * scale * scale < cylinder_zero_threshold;
        // Sign agreement is moot for a value consistent with zero; the
        // literature sign is attractive, so flag the disagreement.
        row.sign_agreement = !row.zero_consistent && b0 < 0.0;
    } else {
        row.sign_agreement = (b0 > 0.0 && row.exact.sign > 0) ||
                             (b0 < 0.0 && row.exact.sign < 0);
    }
    return row;
}

/// The cylinder zero test proper: b0 at the configured resolution and at
/// twice the resolution; consistent with zero when both are below threshold
/// and the magnitude decreases.
struct CylinderZeroCheck {
    double b0_base = 0.0;
    double b0_doubled = 0.0;
    bool consistent_with_zero = false;
};

inline CylinderZeroCheck cylinder_zero_check(const Cylinder& cyl, const Material& mat,
                                             PipelineConfig cfg) {
    CylinderZeroCheck out;
    const double a2 = cyl.radius * cyl.radius;
    const Body body = cyl;
    out.b0_base = pure_term_report(body, mat, cfg).expansion.b0 * a2;
    cfg.resolution *= 2;
    if (cfg.method == PdMethod::MonteCarlo)
        cfg.samples *= 4;
    out.b0_doubled = pure_term_report(body, mat, cfg).expansion.b0 * a2;
    out.consistent_with_zero = std::abs(out.b0_base) < cylinder_zero_threshold &&
                               std::abs(out.b0_doubled) < cylinder_zero_threshold &&
                               std::abs(out.b0_doubled) <= std::abs(out.b0_base);
    return out;
}

} // namespace casimir
