#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "casimir/autocorr_grid.hpp"
#include "casimir/bodies.hpp"
#include "casimir/error.hpp"
#include "casimir/parallel.hpp"
#include "casimir/rng.hpp"

namespace casimir {

namespace detail {

inline void sample_point_in_body(const Body& body, Rng& rng, double* out, int dim) {
    if (const auto* ball = std::get_if<Ball>(&body)) {
        const double a = ball->radius;
        for (;;) {
            const double x = rng.uniform(-a, a);
            const double y = rng.uniform(-a, a);
            const double z = rng.uniform(-a, a);
            if (x * x + y * y + z * z <= a * a) {
                out[0] = x; out[1] = y; out[2] = z;
                return;
            }
        }
    }
    if (const auto* cube = std::get_if<Cube>(&body)) {
        for (int i = 0; i < 3; ++i)
            out[i] = rng.uniform(0.0, cube->side);
        return;
    }
    if (const auto* cyl = std::get_if<Cylinder>(&body)) {
        const double a = cyl->radius;
        for (;;) {
            const double x = rng.uniform(-a, a);
            const double y = rng.uniform(-a, a);
            if (x * x + y * y <= a * a) {
                out[0] = x; out[1] = y;
                return;
            }
        }
    }
    (void)dim;
    throw capability_error("monte_carlo: unsupported body");
}

} // namespace detail

/// Pair measure by uniform point-pair sampling: bin masses are unbiased
/// estimates of the P(r) mass per bin. Chunked deterministically: chunk c
/// always draws from Rng::for_chunk(seed, c), so the histogram is identical
/// for any worker count.
inline BinnedPairMeasure mc_pair_measure(const Body& body, std::int64_t samples,
                                         std::uint64_t seed, unsigned workers,
                                         double bin_width_fraction = 1.0 / 512.0) {
    validate(body);
    if (samples < 100000)
        throw domain_error("mc_pair_measure: need at least 1e5 sample pairs");

    const int dim = pair_measure_dimension(body);
    const auto breakpoints = pair_density_breakpoints(body);
    const double diameter = breakpoints.back();
    auto edges = detail::make_bin_edges(breakpoints, bin_width_fraction * diameter);
    const std::size_t n_bins = edges.size() - 1;

    constexpr std::int64_t chunk_size = 1 << 20;
    const std::size_t n_chunks =
        static_cast<std::size_t>((samples + chunk_size - 1) / chunk_size);

    std::vector<std::vector<std::uint64_t>> partial(n_chunks);
    parallel_for_chunks(n_chunks, workers, [&](std::size_t c) {
        Rng rng = Rng::for_chunk(seed, c);
        std::vector<std::uint64_t> hist(n_bins, 0);
        const std::int64_t begin = static_cast<std::int64_t>(c) * chunk_size;
        const std::int64_t end = std::min(samples, begin + chunk_size);
        double p[3], q[3];
        for (std::int64_t i = begin; i < end; ++i) {
            detail::sample_point_in_body(body, rng, p, dim);
            detail::sample_point_in_body(body, rng, q, dim);
            double r2 = 0.0;
            for (int k = 0; k < dim; ++k)
                r2 += (p[k] - q[k]) * (p[k] - q[k]);
            const double r = std::sqrt(r2);
            hist[detail::find_bin(edges, r)]++;
        }
        partial[c] = std::move(hist);
    });

    // Integer counts: reduction order is immaterial, but keep chunk order.
    std::vector<std::uint64_t> hist(n_bins, 0);
    for (const auto& h : partial)
        for (std::size_t j = 0; j < n_bins; ++j)
            hist[j] += h[j];

    const double measure = body_measure(body);
    const double total = measure * measure;
    const double per_pair = total / static_cast<double>(samples);

    BinnedPairMeasure out;
    out.dim = dim;
    out.edges = std::move(edges);
    out.masses.resize(n_bins);
    out.counts.resize(n_bins);
    for (std::size_t j = 0; j < n_bins; ++j) {
        out.masses[j] = static_cast<double>(hist[j]) * per_pair;
        out.counts[j] = static_cast<double>(hist[j]);
    }
    out.total_measure = total;
    out.lattice_consistent = false;
    return out;
}

} // namespace casimir
