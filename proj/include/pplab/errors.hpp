#pragma once

#include <stdexcept>
#include <string>

namespace pplab {

/// Invalid argument to an evaluation (negative abscissa, bad parameter, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The threshold product has no positive root (system is not periodic-attractive).
class NoRoot : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative method exhausted its iteration cap.
class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A simulated value left the representable positive range.
class OverflowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Residue statistics requested with no samples past burn-in.
class EmptyTail : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Orbit-dependent operation requested for a system without a periodic attractor.
class NoOrbit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pplab
