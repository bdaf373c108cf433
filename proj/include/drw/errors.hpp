#pragma once

#include <stdexcept>
#include <string>

namespace drw {

/// A dense computation was requested for an object above the configured cap.
class SizeExceededError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The spectrum does not admit the requested quantity (e.g. spectral gap of a
/// disconnected graph, where the second eigenvalue is 1).
class DegenerateSpectrumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Too few data points fall inside the requested fit window.
class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A regression was requested on data it cannot represent (low r-squared).
class FitUnreliableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was invoked on a percolation family it does not apply to.
class FamilyMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace drw
