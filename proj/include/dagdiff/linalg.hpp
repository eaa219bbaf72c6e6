#pragma once

#include <Eigen/Core>
#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace dagdiff {

using SpMat = Eigen::SparseMatrix<double>;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Triplet = Eigen::Triplet<double>;

/// Max absolute row sum of a sparse matrix.
inline double inf_norm(const SpMat& a) {
    Vec row_abs = Vec::Zero(a.rows());
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMat::InnerIterator it(a, k); it; ++it)
            row_abs[it.row()] += std::abs(it.value());
    return a.rows() ? row_abs.maxCoeff() : 0.0;
}

}  // namespace dagdiff
