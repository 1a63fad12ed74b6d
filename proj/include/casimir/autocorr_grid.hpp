#pragma once

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "casimir/bodies.hpp"
#include "casimir/error.hpp"
#include "casimir/parallel.hpp"

namespace casimir {

/// Radially binned pair measure. masses[j] approximates the P(r) mass in
/// bin j. For grid provenance the lattice moment sums are kept so the
/// piecewise fit can compare lattice sums against lattice sums of the model
/// (same displacement set on both sides), which removes shell-count jitter.
struct BinnedPairMeasure {
    int dim = 3;
    std::vector<double> edges;   // ascending, starts at 0, breakpoints included
    std::vector<double> masses;  // ~ int_bin P dr
    std::vector<double> counts;  // lattice displacements / MC pairs per bin
    // moments[j][p + 2] = cell_volume * sum over lattice displacements in
    // bin j of rho^p, p in [-2, 4]; empty for Monte Carlo data.
    std::vector<std::array<double, 7>> moments;
    double total_measure = 0.0;
    double cell_volume = 0.0;  // grid only
    bool lattice_consistent = false;
};

namespace detail {

/// Bin edges: uniform subdivision of each smooth interval of the body's
/// pair density, targeting the given width, with the breakpoints exact.
inline std::vector<double> make_bin_edges(const std::vector<double>& breakpoints,
                                          double target_width) {
    std::vector<double> edges;
    edges.push_back(breakpoints.front());
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double lo = breakpoints[i];
        const double hi = breakpoints[i + 1];
        const int k = std::max(1, static_cast<int>(std::round((hi - lo) / target_width)));
        for (int j = 1; j <= k; ++j)
            edges.push_back(lo + (hi - lo) * static_cast<double>(j) / k);
    }
    return edges;
}

inline std::size_t find_bin(const std::vector<double>& edges, double r) {
    // edges ascending; returns j with edges[j] <= r < edges[j+1], clamped.
    std::size_t lo = 0, hi = edges.size() - 1;
    if (r <= edges.front())
        return 0;
    if (r >= edges.back())
        return edges.size() - 2;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (edges[mid] <= r ? lo : hi) = mid;
    }
    return lo;
}

struct FftwBuffer {
    double* data = nullptr;
    std::size_t size = 0;
    explicit FftwBuffer(std::size_t n) : size(n) {
        data = static_cast<double*>(fftw_malloc(sizeof(double) * n));
        if (!data)
            throw std::bad_alloc();
        std::fill(data, data + n, 0.0);
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

/// Fractional coverage of the cell [lo, lo+delta)^dim by the body, exact in
/// z (chord overlap) and midpoint-sampled across the remaining axes.
inline double ball_cell_coverage(double a, const std::array<double, 3>& lo, double delta) {
    constexpr int sub = 4;
    const double step = delta / sub;
    double covered = 0.0;
    for (int ix = 0; ix < sub; ++ix) {
        const double x = lo[0] + (ix + 0.5) * step;
        for (int iy = 0; iy < sub; ++iy) {
            const double y = lo[1] + (iy + 0.5) * step;
            const double rho2 = a * a - x * x - y * y;
            if (rho2 <= 0.0)
                continue;
            const double zc = std::sqrt(rho2);
            const double z0 = std::max(lo[2], -zc);
            const double z1 = std::min(lo[2] + delta, zc);
            if (z1 > z0)
                covered += (z1 - z0);
        }
    }
    return covered / (sub * sub * delta);
}

inline double disk_cell_coverage(double a, const std::array<double, 2>& lo, double delta) {
    constexpr int sub = 16;
    const double step = delta / sub;
    double covered = 0.0;
    for (int ix = 0; ix < sub; ++ix) {
        const double x = lo[0] + (ix + 0.5) * step;
        const double y2 = a * a - x * x;
        if (y2 <= 0.0)
            continue;
        const double yc = std::sqrt(y2);
        const double y0 = std::max(lo[1], -yc);
        const double y1 = std::min(lo[1] + delta, yc);
        if (y1 > y0)
            covered += (y1 - y0);
    }
    return covered / (sub * delta);
}

} // namespace detail

/// Indicator-autocorrelation pair measure on a regular grid. The body is
/// voxelized with fractional boundary coverage, the set covariance is
/// computed by FFT on a zero-padded grid, and displacements are binned by
/// radius. resolution = cells across the bounding box. Deterministic for
/// fixed (body, resolution) and any worker count: the FFT is single-threaded
/// and the binning reduces fixed slabs in slab order.
inline BinnedPairMeasure grid_pair_measure(const Body& body, int resolution,
                                           unsigned workers, double bin_width_cells = 1.0) {
    validate(body);
    if (resolution < 32)
        throw domain_error("grid_pair_measure: resolution must be >= 32");
    if (resolution > 512)
        throw domain_error("grid_pair_measure: resolution above 512 not supported");

    const int dim = pair_measure_dimension(body);
    const int n = resolution;
    const int N = 2 * n;

    // Bounding box edge length and voxel size.
    double box = 0.0;
    if (const auto* ball = std::get_if<Ball>(&body))
        box = 2.0 * ball->radius;
    else if (const auto* cube = std::get_if<Cube>(&body))
        box = cube->side;
    else if (const auto* cyl = std::get_if<Cylinder>(&body))
        box = 2.0 * cyl->radius;
    else
        throw capability_error("grid_pair_measure: unsupported body");
    const double delta = box / n;

    const auto breakpoints = pair_density_breakpoints(body);
    auto edges = detail::make_bin_edges(breakpoints, bin_width_cells * delta);
    const std::size_t n_bins = edges.size() - 1;

    BinnedPairMeasure out;
    out.dim = dim;
    out.edges = edges;
    out.lattice_consistent = true;
    out.cell_volume = std::pow(delta, dim);

    const int last = 2 * (N / 2 + 1);  // padded fastest dimension (in-place r2c)

    if (dim == 3) {
        detail::FftwBuffer buf(static_cast<std::size_t>(N) * N * last);
        auto at = [&](int ix, int iy, int iz) -> double& {
            return buf.data[(static_cast<std::size_t>(ix) * N + iy) * last + iz];
        };

        // Coverage field on [0, n)^3 cells; body centered in the box.
        const double half = 0.5 * box;
        if (std::holds_alternative<Cube>(body)) {
            parallel_for_chunks(n, workers, [&](std::size_t ix) {
                for (int iy = 0; iy < n; ++iy)
                    for (int iz = 0; iz < n; ++iz)
                        at(static_cast<int>(ix), iy, iz) = 1.0;
            });
        } else {
            const double a = std::get<Ball>(body).radius;
            parallel_for_chunks(n, workers, [&](std::size_t ix) {
                const double x0 = -half + static_cast<double>(ix) * delta;
                const double margin = 0.87 * delta * 3.0;  // > half cell diagonal
                for (int iy = 0; iy < n; ++iy) {
                    const double y0 = -half + iy * delta;
                    for (int iz = 0; iz < n; ++iz) {
                        const double z0 = -half + iz * delta;
                        const double cx = x0 + 0.5 * delta;
                        const double cy = y0 + 0.5 * delta;
                        const double cz = z0 + 0.5 * delta;
                        const double rc = std::sqrt(cx * cx + cy * cy + cz * cz);
                        double w;
                        if (rc <= a - margin)
                            w = 1.0;
                        else if (rc >= a + margin)
                            w = 0.0;
                        else
                            w = detail::ball_cell_coverage(a, {x0, y0, z0}, delta);
                        at(static_cast<int>(ix), iy, iz) = w;
                    }
                }
            });
        }

        double coverage_sum = 0.0;
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy)
                for (int iz = 0; iz < n; ++iz)
                    coverage_sum += at(ix, iy, iz);

        fftw_plan fwd = fftw_plan_dft_r2c_3d(N, N, N, buf.data,
                                             reinterpret_cast<fftw_complex*>(buf.data),
                                             FFTW_ESTIMATE);
        fftw_execute(fwd);
        fftw_destroy_plan(fwd);
        auto* spec = reinterpret_cast<fftw_complex*>(buf.data);
        const std::size_t n_spec = static_cast<std::size_t>(N) * N * (N / 2 + 1);
        for (std::size_t i = 0; i < n_spec; ++i) {
            const double re = spec[i][0], im = spec[i][1];
            spec[i][0] = re * re + im * im;
            spec[i][1] = 0.0;
        }
        fftw_plan bwd = fftw_plan_dft_c2r_3d(N, N, N,
                                             reinterpret_cast<fftw_complex*>(buf.data),
                                             buf.data, FFTW_ESTIMATE);
        fftw_execute(bwd);
        fftw_destroy_plan(bwd);
        const double fft_norm = 1.0 / (static_cast<double>(N) * N * N);

        // Bin displacements; fixed slab decomposition, reduce in slab order.
        struct Acc {
            std::vector<double> mass, count;
            std::vector<std::array<double, 7>> mom;
        };
        std::vector<Acc> partial(static_cast<std::size_t>(N));
        const double dvol = out.cell_volume;
        const double mass_scale = dvol * dvol * fft_norm;
        parallel_for_chunks(static_cast<std::size_t>(N), workers, [&](std::size_t sx) {
            Acc acc;
            acc.mass.assign(n_bins, 0.0);
            acc.count.assign(n_bins, 0.0);
            acc.mom.assign(n_bins, {});
            const int ix = static_cast<int>(sx);
            const int kx = ix <= N / 2 ? ix : ix - N;
            if (std::abs(kx) > n)
                return;
            for (int iy = 0; iy < N; ++iy) {
                const int ky = iy <= N / 2 ? iy : iy - N;
                if (std::abs(ky) > n)
                    continue;
                for (int iz = 0; iz < N; ++iz) {
                    const int kz = iz <= N / 2 ? iz : iz - N;
                    if (std::abs(kz) > n)
                        continue;
                    const double r2 = static_cast<double>(kx) * kx +
                                      static_cast<double>(ky) * ky +
                                      static_cast<double>(kz) * kz;
                    const double rho = delta * std::sqrt(r2);
                    if (rho >= edges.back() + 0.5 * delta)
                        continue;
                    const std::size_t j = detail::find_bin(edges, rho);
                    const double corr = at(ix, iy, iz);
                    acc.mass[j] += corr * mass_scale;
                    acc.count[j] += 1.0;
                    if (rho > 0.0) {
                        double p = dvol / (rho * rho);  // rho^-2
                        for (int q = 0; q < 7; ++q) {
                            acc.mom[j][static_cast<std::size_t>(q)] += p;
                            p *= rho;
                        }
                    } else {
                        acc.mom[j][2] += dvol;  // rho^0 only
                    }
                }
            }
            partial[sx] = std::move(acc);
        });

        out.masses.assign(n_bins, 0.0);
        out.counts.assign(n_bins, 0.0);
        out.moments.assign(n_bins, {});
        for (const auto& acc : partial) {
            if (acc.mass.empty())
                continue;
            for (std::size_t j = 0; j < n_bins; ++j) {
                out.masses[j] += acc.mass[j];
                out.counts[j] += acc.count[j];
                for (int q = 0; q < 7; ++q)
                    out.moments[j][static_cast<std::size_t>(q)] += acc.mom[j][static_cast<std::size_t>(q)];
            }
        }
        out.total_measure = coverage_sum * dvol * coverage_sum * dvol;
        return out;
    }

    // dim == 2: cylinder cross-section disk.
    const double a = std::get<Cylinder>(body).radius;
    detail::FftwBuffer buf(static_cast<std::size_t>(N) * last);
    auto at = [&](int ix, int iy) -> double& {
        return buf.data[static_cast<std::size_t>(ix) * last + iy];
    };
    const double half = 0.5 * box;
    const double margin = 0.71 * delta * 3.0;
    for (int ix = 0; ix < n; ++ix) {
        const double x0 = -half + ix * delta;
        for (int iy = 0; iy < n; ++iy) {
            const double y0 = -half + iy * delta;
            const double cx = x0 + 0.5 * delta, cy = y0 + 0.5 * delta;
            const double rc = std::sqrt(cx * cx + cy * cy);
            double w;
            if (rc <= a - margin)
                w = 1.0;
            else if (rc >= a + margin)
                w = 0.0;
            else
                w = detail::disk_cell_coverage(a, {x0, y0}, delta);
            at(ix, iy) = w;
        }
    }
    double coverage_sum = 0.0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            coverage_sum += at(ix, iy);

    fftw_plan fwd = fftw_plan_dft_r2c_2d(N, N, buf.data,
                                         reinterpret_cast<fftw_complex*>(buf.data),
                                         FFTW_ESTIMATE);
    fftw_execute(fwd);
    fftw_destroy_plan(fwd);
    auto* spec = reinterpret_cast<fftw_complex*>(buf.data);
    const std::size_t n_spec = static_cast<std::size_t>(N) * (N / 2 + 1);
    for (std::size_t i = 0; i < n_spec; ++i) {
        const double re = spec[i][0], im = spec[i][1];
        spec[i][0] = re * re + im * im;
        spec[i][1] = 0.0;
    }
    fftw_plan bwd = fftw_plan_dft_c2r_2d(N, N, reinterpret_cast<fftw_complex*>(buf.data),
                                         buf.data, FFTW_ESTIMATE);
    fftw_execute(bwd);
    fftw_destroy_plan(bwd);
    const double fft_norm = 1.0 / (static_cast<double>(N) * N);

    out.masses.assign(n_bins, 0.0);
    out.counts.assign(n_bins, 0.0);
    out.moments.assign(n_bins, {});
    const double dvol = out.cell_volume;
    const double mass_scale = dvol * dvol * fft_norm;
    for (int ix = 0; ix < N; ++ix) {
        const int kx = ix <= N / 2 ? ix : ix - N;
        if (std::abs(kx) > n)
            continue;
        for (int iy = 0; iy < N; ++iy) {
            const int ky = iy <= N / 2 ? iy : iy - N;
            if (std::abs(ky) > n)
                continue;
            const double rho = delta * std::hypot(static_cast<double>(kx),
                                                  static_cast<double>(ky));
            if (rho >= edges.back() + 0.5 * delta)
                continue;
            const std::size_t j = detail::find_bin(edges, rho);
            out.masses[j] += at(ix, iy) * mass_scale;
            out.counts[j] += 1.0;
            if (rho > 0.0) {
                double p = dvol / (rho * rho);
                for (int q = 0; q < 7; ++q) {
                    out.moments[j][static_cast<std::size_t>(q)] += p;
                    p *= rho;
                }
            } else {
                out.moments[j][2] += dvol;
            }
        }
    }
    out.total_measure = coverage_sum * dvol * coverage_sum * dvol;
    return out;
}

} // namespace casimir
