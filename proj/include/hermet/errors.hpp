#pragma once

#include <stdexcept>
#include <string>

namespace hermet {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an operation's input was violated.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Dimension or coefficient-backend mismatch between operands.
class BackendMismatch : public Error {
public:
    using Error::Error;
};

/// A product would exceed the configured Fourier bandwidth cap.
class BandwidthOverflow : public Error {
public:
    using Error::Error;
};

/// The coefficient backend does not support the requested operation.
class CapabilityError : public Error {
public:
    using Error::Error;
};

/// Mutually contradictory verdicts inside the condition harness.
/// This always indicates an engine bug, never a property of the metric.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

} // namespace hermet
