#pragma once

#include <stdexcept>
#include <string>

namespace wrho {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotHermitianError : Error {
    explicit NotHermitianError(const std::string& msg) : Error(msg) {}
};

struct NoConvergenceError : Error {
    explicit NoConvergenceError(const std::string& msg) : Error(msg) {}
};

struct SingularError : Error {
    explicit SingularError(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatchError : Error {
    explicit DimensionMismatchError(const std::string& msg) : Error(msg) {}
};

struct DimensionOverflowError : Error {
    explicit DimensionOverflowError(const std::string& msg) : Error(msg) {}
};

struct DegreeOverflowError : Error {
    explicit DegreeOverflowError(const std::string& msg) : Error(msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

struct SpectrumOnBoundaryError : Error {
    explicit SpectrumOnBoundaryError(const std::string& msg) : Error(msg) {}
};

} // namespace wrho
