#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"

namespace casimir {

/// Exact coefficient of the form (num/den) * pi^pi_pow. The closed-form
/// results in this toolkit are all rational multiples of integer powers of
/// pi, so ratios between them can be formed without floating-point error.
struct RationalPi {
    std::int64_t num = 0;
    std::int64_t den = 1;
    int pi_pow = 0;

    constexpr RationalPi() = default;

    constexpr RationalPi(std::int64_t n, std::int64_t d, int p)
        : num(n), den(d), pi_pow(p) {
        normalize();
    }

    constexpr void normalize() {
        if (den == 0)
            throw domain_error("RationalPi: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0)
            pi_pow = 0;
    }

    double value() const {
        return static_cast<double>(num) / static_cast<double>(den) *
               std::pow(constants::pi, pi_pow);
    }

    friend constexpr RationalPi operator*(const RationalPi& a, const RationalPi& b) {
        return RationalPi(a.num * b.num, a.den * b.den, a.pi_pow + b.pi_pow);
    }

    friend constexpr RationalPi operator/(const RationalPi& a, const RationalPi& b) {
        if (b.num == 0)
            throw domain_error("RationalPi: division by zero");
        return RationalPi(a.num * b.den, a.den * b.num, a.pi_pow - b.pi_pow);
    }

    friend constexpr RationalPi operator-(const RationalPi& a) {
        return RationalPi(-a.num, a.den, a.pi_pow);
    }

    friend constexpr bool operator==(const RationalPi& a, const RationalPi& b) {
        return a.num == b.num && a.den == b.den &&
               (a.pi_pow == b.pi_pow || a.num == 0);
    }

    std::string str() const {
        std::string s = std::to_string(num);
        if (den != 1)
            s += "/" + std::to_string(den);
        if (pi_pow != 0 && num != 0)
            s += " pi^" + std::to_string(pi_pow);
        return s;
    }
};

} // namespace casimir
