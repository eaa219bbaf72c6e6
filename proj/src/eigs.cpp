#include "dagdiff/eigs.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "dagdiff/errors.hpp"
#include "dagdiff/rng.hpp"

namespace dagdiff {

namespace {

void canonicalize_signs(Mat& v) {
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        Eigen::Index arg = 0;
        double best = std::abs(v(0, c));
        for (Eigen::Index r = 1; r < v.rows(); ++r)
            if (std::abs(v(r, c)) > best) {
                best = std::abs(v(r, c));
                arg = r;
            }
        if (v(arg, c) < 0.0) v.col(c) = -v.col(c);
    }
}

Mat hcat(const Mat& a, const Mat& b) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    Mat out(a.rows(), a.cols() + b.cols());
    out << a, b;
    return out;
}

/// Projects `v` off `against` (two Gram-Schmidt passes) and returns an
/// orthonormal basis of what survives; rank-deficient directions are dropped.
Mat ortho_against(const Mat& against, Mat v) {
    for (int pass = 0; pass < 2; ++pass)
        if (against.cols() > 0) v.noalias() -= against * (against.transpose() * v);
    if (v.cols() == 0) return v;
    Eigen::JacobiSVD<Mat> svd(v, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 1e-300) return Mat(v.rows(), 0);
    Eigen::Index keep = 0;
    while (keep < sv.size() && sv(keep) > 1e-10 * sv(0)) ++keep;
    return svd.matrixU().leftCols(keep);
}

EigsResult dense_smallest(const SpMat& a, int k) {
    Eigen::SelfAdjointEigenSolver<Mat> es{Mat(a)};
    if (es.info() != Eigen::Success) throw SolverFailure("dense symmetric eigensolver failed");
    EigsResult out;
    out.values = es.eigenvalues().head(k);
    out.vectors = es.eigenvectors().leftCols(k);
    out.used_dense = true;
    canonicalize_signs(out.vectors);
    return out;
}

}  // namespace

EigsResult smallest_eigenpairs(const SpMat& a, int k, const EigsOptions& opts) {
    const int n = static_cast<int>(a.rows());
    if (a.rows() != a.cols()) throw BadDims("eigensolver needs a square matrix");
    if (k < 1 || k > n) throw BadDims("requested eigenpair count out of range");

    const int m = std::min(k + 2, n);
    if (n <= opts.dense_threshold || 3 * m + 2 >= n) return dense_smallest(a, k);

    const double scale = std::max(inf_norm(a), 1.0);
    Vec precond(n);
    for (int i = 0; i < n; ++i) {
        double d = a.coeff(i, i);
        precond[i] = d > 1e-12 * scale ? 1.0 / d : 1.0;
    }

    Rng rng(opts.seed);
    Mat x(n, m);
    for (int attempt = 0; attempt < 16; ++attempt) {
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < m; ++c) x(i, c) = 2.0 * rng.uniform01() - 1.0;
        x = ortho_against(Mat(n, 0), x);
        if (x.cols() == m) break;
    }
    if (x.cols() != m) throw SolverFailure("could not build a full-rank starting block");

    Mat ax = a * x;
    {
        Eigen::SelfAdjointEigenSolver<Mat> es(x.transpose() * ax);
        x = x * es.eigenvectors();
        ax = ax * es.eigenvectors();
    }
    Vec theta = (x.transpose() * ax).diagonal();
    Mat p(n, 0);

    EigsResult out;
    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        out.iterations = iter;
        Mat r = ax - x * theta.asDiagonal();
        bool converged = true;
        for (int c = 0; c < k; ++c)
            if (r.col(c).norm() > opts.tol * scale) {
                converged = false;
                break;
            }
        if (converged) break;
        if (iter == opts.max_iterations)
            throw SolverFailure("block eigensolver did not converge in " +
                                std::to_string(opts.max_iterations) + " iterations");

        Mat w = precond.asDiagonal() * r;
        w = ortho_against(x, w);
        if (w.cols() == 0)
            throw SolverFailure("block eigensolver stagnated: search directions collapsed");
        if (p.cols() > 0) p = ortho_against(hcat(x, w), p);

        Mat s = hcat(hcat(x, w), p);
        Mat as = a * s;
        Mat gram = s.transpose() * as;
        gram = 0.5 * (gram + gram.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Mat> es(gram);
        if (es.info() != Eigen::Success) throw SolverFailure("Rayleigh-Ritz eigensolver failed");
        Mat c = es.eigenvectors().leftCols(m);

        Mat x_new = s * c;
        Mat ax_new = as * c;
        p = s.rightCols(s.cols() - x.cols()) * c.bottomRows(s.cols() - x.cols());
        x = std::move(x_new);
        ax = std::move(ax_new);
        theta = es.eigenvalues().head(m);
    }

    out.values = theta.head(k);
    out.vectors = x.leftCols(k);
    canonicalize_signs(out.vectors);
    return out;
}

}  // namespace dagdiff
