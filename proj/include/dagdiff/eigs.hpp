#pragma once

#include <cstdint>

#include "dagdiff/linalg.hpp"

namespace dagdiff {

struct EigsOptions {
    double tol = 1e-8;         // residual norm relative to max(‖A‖_inf, 1)
    int max_iterations = 2000;
    std::uint64_t seed = 0;    // initial block
    int dense_threshold = 64;  // below this, solve densely outright
};

struct EigsResult {
    Vec values;   // ascending
    Mat vectors;  // columns aligned with values, sign-canonicalized
    int iterations = 0;
    bool used_dense = false;
};

/// k smallest eigenpairs of a symmetric sparse matrix via LOBPCG (block size
/// k+2, Rayleigh-Ritz over [X W P], Jacobi preconditioner). Falls back to a
/// dense solve for small problems or when the working subspace would not fit
/// the dimension. Eigenvector signs are canonicalized: the entry of largest
/// magnitude is positive (ties resolved by lowest index).
EigsResult smallest_eigenpairs(const SpMat& a, int k, const EigsOptions& opts = {});

}  // namespace dagdiff
