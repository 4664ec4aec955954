#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace perind {

enum class ErrorKind {
    InvalidArgument,
    HypothesisViolated,
    InfiniteExponent,
    DegreeOutOfRange,
    InvalidComplex,
    InvalidProfile,
    MalformedInput,
    InvariantViolation,
};

std::string_view error_name(ErrorKind kind);

/// Every domain failure in the library is reported through this type. The
/// kind's name is what the CLI prints on the diagnostic stream.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept { return error_name(kind_); }

private:
    ErrorKind kind_;
};

} // namespace perind
