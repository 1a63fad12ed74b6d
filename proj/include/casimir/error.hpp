#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Input outside the physical/mathematical domain of an operation
/// (non-positive separation, epsilon < 1, overlapping bodies, ...).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A (body, method) or (body pair) combination the toolkit does not support.
class capability_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Least-squares extraction failed (rank deficiency, condition number,
/// residual above tolerance). Carries a diagnostic message.
class fit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace casimir
