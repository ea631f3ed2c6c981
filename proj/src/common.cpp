#include "stk/error.hpp"
#include "stk/execution.hpp"

#ifdef STK_HAVE_OPENMP
#include <omp.h>
#endif

namespace stk {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::TooShort: return "TooShort";
        case ErrorKind::NonMonotonicIndex: return "NonMonotonicIndex";
        case ErrorKind::NonFiniteValue: return "NonFiniteValue";
        case ErrorKind::RankDeficient: return "RankDeficient";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::LagTooLarge: return "LagTooLarge";
        case ErrorKind::BadK: return "BadK";
        case ErrorKind::DegenerateSegment: return "DegenerateSegment";
        case ErrorKind::ZeroVariance: return "ZeroVariance";
        case ErrorKind::BadPeriod: return "BadPeriod";
        case ErrorKind::DegenerateVariance: return "DegenerateVariance";
        case ErrorKind::AllTied: return "AllTied";
        case ErrorKind::WrongResultSet: return "WrongResultSet";
        case ErrorKind::FileWriteError: return "FileWriteError";
        case ErrorKind::BadSpec: return "BadSpec";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::NumericalFailure: return "NumericalFailure";
    }
    return "Unknown";
}

int max_threads() noexcept {
#ifdef STK_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace stk
