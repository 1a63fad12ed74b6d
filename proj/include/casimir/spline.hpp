#pragma once

#include <cstddef>
#include <vector>

#include "casimir/error.hpp"

namespace casimir {

/// Natural cubic spline with analytic first derivative.
class CubicSpline {
public:
    CubicSpline() = default;

    CubicSpline(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 3 || y_.size() != n)
            throw domain_error("CubicSpline: need at least 3 matching points");
        for (std::size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1]))
                throw domain_error("CubicSpline: grid must be strictly increasing");

        // Tridiagonal solve for interior second derivatives, natural boundary:
        // h[i-1] m[i-1] + 2(h[i-1]+h[i]) m[i] + h[i] m[i+1] = 6 * divided diffs
        std::vector<double> h(n - 1), rhs(n, 0.0), b(n, 0.0);
        for (std::size_t i = 0; i + 1 < n; ++i)
            h[i] = x_[i + 1] - x_[i];
        m_.assign(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
            b[i] = 2.0 * (h[i - 1] + h[i]);
        }
        for (std::size_t i = 2; i + 1 < n; ++i) {
            const double factor = h[i - 1] / b[i - 1];
            b[i] -= factor * h[i - 1];
            rhs[i] -= factor * rhs[i - 1];
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            m_[i] = (rhs[i] - h[i] * m_[i + 1]) / b[i];
            if (i == 1)
                break;
        }
    }

    double min_x() const { return x_.front(); }
    double max_x() const { return x_.back(); }

    double eval(double x) const {
        const std::size_t i = locate(x);
        const double h = x_[i + 1] - x_[i];
        const double A = (x_[i + 1] - x) / h;
        const double B = (x - x_[i]) / h;
        return A * y_[i] + B * y_[i + 1] +
               ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
    }

    double derivative(double x) const {
        const std::size_t i = locate(x);
        const double h = x_[i + 1] - x_[i];
        const double A = (x_[i + 1] - x) / h;
        const double B = (x - x_[i]) / h;
        return (y_[i + 1] - y_[i]) / h +
               ((3.0 * B * B - 1.0) * m_[i + 1] - (3.0 * A * A - 1.0) * m_[i]) * h / 6.0;
    }

private:
    std::size_t locate(double x) const {
        if (!(x >= x_.front() && x <= x_.back()))
            throw domain_error("CubicSpline: evaluation outside grid");
        std::size_t lo = 0, hi = x_.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (x_[mid] <= x ? lo : hi) = mid;
        }
        return lo;
    }

    std::vector<double> x_, y_, m_;
};

} // namespace casimir
