#pragma once

namespace nuqsim {

/// kSerial is the reference path; kParallel distributes independent work
/// items (scan points, optimizer restarts) over OpenMP threads and must give
/// bit-identical results.
enum class Execution { kSerial, kParallel };

/// Number of OpenMP threads kParallel will use (1 without OpenMP).
int parallel_threads();

}  // namespace nuqsim
