#pragma once

#include "dagdiff/linalg.hpp"

namespace dagdiff {

/// Nonnegative least squares min_{x >= 0} ‖A x - b‖_2 by the Lawson-Hanson
/// active-set method. max_iterations <= 0 picks max(30, 10*cols). Throws
/// SolverFailure if the active-set loop fails to terminate.
Vec nnls(const Mat& a, const Vec& b, int max_iterations = 0);

}  // namespace dagdiff
