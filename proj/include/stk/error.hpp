#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace stk {

enum class ErrorKind {
    LengthMismatch,
    TooShort,
    NonMonotonicIndex,
    NonFiniteValue,
    RankDeficient,
    DimensionMismatch,
    LagTooLarge,
    BadK,
    DegenerateSegment,
    ZeroVariance,
    BadPeriod,
    DegenerateVariance,
    AllTied,
    WrongResultSet,
    FileWriteError,
    BadSpec,
    ParseError,
    IoError,
    NumericalFailure,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure in the library is reported as an `Error` carrying a kind, so
/// callers (the battery, the CLI) can branch on the category of failure.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// A test that could not be evaluated on the given input. The battery turns
/// these into `skipped` rows instead of aborting.
struct Skipped {
    std::string test_id;
    std::string context;
    ErrorKind kind;
    std::string reason;
};

template <class T>
using Outcome = std::variant<T, Skipped>;

}  // namespace stk
