#pragma once

#include <stdexcept>
#include <string>

namespace qdh {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad argument: invalid dimension, shape mismatch, violated precondition.
struct ArgumentError : Error {
    explicit ArgumentError(const std::string& what) : Error(what) {}
};

/// A request would exceed a configured size cutoff (memory budget,
/// dense cutoff, group enumeration cutoff, ...).
struct ResourceLimitError : Error {
    explicit ResourceLimitError(const std::string& what) : Error(what) {}
};

inline void require_dimension(int d) {
    if (d < 2) throw ArgumentError("local dimension must satisfy d >= 2, got " + std::to_string(d));
}

}  // namespace qdh
