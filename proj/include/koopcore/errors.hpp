#pragma once

#include <stdexcept>
#include <string>

namespace koop {

// Library-wide failure taxonomy. Every throwing path uses one of these so the
// C ABI and the CLI can map failures onto stable status/exit codes.
enum class ErrorCode {
    Dimension,              // shape mismatch between arguments
    Domain,                 // non-finite or out-of-domain input value
    EmptyData,              // operation needs data that was not supplied
    Numerical,              // solver/eigensolver breakdown, divergence
    Config,                 // invalid parameter value or configuration
    UnsupportedDictionary,  // operation requires a real-valued dictionary
    Io,                     // file read/write failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& w) : Error(ErrorCode::Dimension, w) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorCode::Domain, w) {}
};
struct EmptyDataError : Error {
    explicit EmptyDataError(const std::string& w) : Error(ErrorCode::EmptyData, w) {}
};
struct NumericalError : Error {
    explicit NumericalError(const std::string& w) : Error(ErrorCode::Numerical, w) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(ErrorCode::Config, w) {}
};
struct UnsupportedDictionaryError : Error {
    explicit UnsupportedDictionaryError(const std::string& w)
        : Error(ErrorCode::UnsupportedDictionary, w) {}
};
struct IoError : Error {
    explicit IoError(const std::string& w) : Error(ErrorCode::Io, w) {}
};

}  // namespace koop
