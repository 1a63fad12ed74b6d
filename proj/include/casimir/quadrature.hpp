#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

#include "casimir/error.hpp"

namespace casimir {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1].
inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr std::array<double, 8> gk_weights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class F>
std::pair<double, double> gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double kronrod = 0.0, gauss = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        const double x = gk_nodes[i] * h;
        double fv;
        if (i == 7) {
            fv = f(c);
            kronrod += gk_weights[i] * fv;
            gauss += gauss_weights[3] * fv;
        } else {
            const double f1 = f(c - x);
            const double f2 = f(c + x);
            kronrod += gk_weights[i] * (f1 + f2);
            if (i % 2 == 1)
                gauss += gauss_weights[i / 2] * (f1 + f2);
        }
    }
    kronrod *= h;
    gauss *= h;
    const double diff = std::abs(kronrod - gauss);
    const double err = diff > 0.0 ? std::pow(200.0 * diff, 1.5) : 0.0;
    return {kronrod, std::min(err, diff * 200.0)};
}

template <class F>
void adapt(F& f, double a, double b, double tol, int depth, QuadResult& out) {
    auto [value, err] = gk15(f, a, b);
    if (err <= tol || depth >= 48) {
        out.value += value;
        out.error += err;
        return;
    }
    const double m = 0.5 * (a + b);
    out.subdivisions++;
    adapt(f, a, m, 0.5 * tol, depth + 1, out);
    adapt(f, m, b, 0.5 * tol, depth + 1, out);
}

} // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b].
template <class F>
QuadResult integrate(F&& f, double a, double b, double rel_tol = 1e-12,
                     double abs_tol = 0.0) {
    if (!(b >= a))
        throw domain_error("integrate: reversed interval");
    auto [coarse, coarse_err] = detail::gk15(f, a, b);
    (void)coarse_err;
    double tol = std::max(abs_tol, rel_tol * std::abs(coarse));
    if (tol <= 0.0)
        tol = rel_tol;
    QuadResult out;
    detail::adapt(f, a, b, tol, 0, out);
    return out;
}

/// Integral of f over [a, inf) via the substitution r = a / t, t in (0, 1].
/// Requires a > 0 and integrand decay faster than 1/r^2.
template <class F>
QuadResult integrate_to_infinity(F&& f, double a, double rel_tol = 1e-12) {
    if (!(a > 0.0))
        throw domain_error("integrate_to_infinity: lower limit must be positive");
    auto g = [&](double t) {
        const double r = a / t;
        return f(r) * r / t;
    };
    return integrate(g, 1e-14, 1.0, rel_tol);
}

} // namespace casimir
