#pragma once

#include <stdexcept>
#include <string>

namespace coprime {

// Error taxonomy mirrors the CLI exit codes: usage/argument problems exit 2,
// resource/budget problems exit 3, failed verification exits 1.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad configuration value (table limit out of range, invalid precision, ...).
struct ConfigError : Error {
    using Error::Error;
};

// Invalid argument to an operation (non-square-free d, inconsistent flags, ...).
struct ArgumentError : Error {
    using Error::Error;
};

// An enumeration or state budget would be exceeded. Never truncates silently.
struct BudgetError : Error {
    using Error::Error;
};

// A prerequisite result is missing (e.g. a constant enclosure).
struct DependencyError : Error {
    using Error::Error;
};

// A broken internal invariant, e.g. a non-divisible numerator in a closed
// form that must be an exact integer. Indicates a transcription bug.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace coprime
