#pragma once

#include <stdexcept>

namespace pbg {

/// Invalid physical input: non-positive index, out-of-range cell, etc.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A transfer matrix cannot be formed (t == 0).
class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A Chebyshev evaluation left the representable range, or N exceeds the cap.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// The two basis functions are not independent on the requested cell.
class SingularBasisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical self-consistency check (convergence, step halving) failed.
class AccuracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pbg
