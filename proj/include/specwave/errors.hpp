#pragma once

#include <stdexcept>
#include <string>

namespace specwave {

enum class ErrorKind {
    InvalidInput,
    ShapeMismatch,
    FormatError,
    GridError,
    ScaleError,
    CalibrationError,
    AdmissibilityError,
    NumericalDivergence,
};

inline const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::GridError: return "GridError";
    case ErrorKind::ScaleError: return "ScaleError";
    case ErrorKind::CalibrationError: return "CalibrationError";
    case ErrorKind::AdmissibilityError: return "AdmissibilityError";
    case ErrorKind::NumericalDivergence: return "NumericalDivergence";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg)
{
    throw Error(kind, msg);
}

} // namespace specwave
