#pragma once

namespace stk {

/// Execution policy for kernels that have both a serial reference path and an
/// OpenMP path. Both paths produce bit-identical results.
enum class Execution { Serial, Parallel };

/// Number of OpenMP threads available (1 when built without OpenMP).
int max_threads() noexcept;

}  // namespace stk
