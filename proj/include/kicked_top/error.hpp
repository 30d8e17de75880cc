#pragma once

#include <stdexcept>
#include <string>

namespace kicked_top {

enum class ErrorKind {
    InvalidSpin,
    UnsupportedSpin,
    InvalidParameter,
    DomainError,
    DimensionMismatch,
    NumericError,
    NormalizationError,
    UndefinedEstimate,
    FitError,
    CapExceeded,
    InvalidAxis,
    IoError,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so the
// CLI can print a one-line diagnostic and tests can check the category.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidSpin: return "invalid spin";
    case ErrorKind::UnsupportedSpin: return "unsupported spin";
    case ErrorKind::InvalidParameter: return "invalid parameter";
    case ErrorKind::DomainError: return "domain error";
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::NumericError: return "numeric error";
    case ErrorKind::NormalizationError: return "normalization error";
    case ErrorKind::UndefinedEstimate: return "undefined estimate";
    case ErrorKind::FitError: return "fit error";
    case ErrorKind::CapExceeded: return "cap exceeded";
    case ErrorKind::InvalidAxis: return "invalid axis";
    case ErrorKind::IoError: return "i/o error";
    }
    return "error";
}

} // namespace kicked_top
