#include "dagdiff/metrics.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>

namespace dagdiff {

namespace {

MseReport mse_from_matrices(const std::vector<double>& times, const Mat& pred, const Mat& truth) {
    if (pred.rows() != truth.rows() || pred.cols() != truth.cols())
        throw GridMismatch("prediction and truth shapes disagree");
    MseReport rep;
    rep.times = times;
    rep.per_time.resize(pred.rows());
    for (Eigen::Index m = 0; m < pred.rows(); ++m)
        rep.per_time[m] = (pred.row(m) - truth.row(m)).squaredNorm() / pred.cols();
    rep.average = 0.0;
    for (double v : rep.per_time) rep.average += v;
    rep.average /= static_cast<double>(rep.per_time.size());
    return rep;
}

/// DELTACON node-affinity matrix S = [I + eps^2 D - eps A]^{-1} with
/// eps = 1/(1 + max degree); a singular system is retried once at eps/2.
Mat affinity(const Mat& adj) {
    const Eigen::Index n = adj.rows();
    Vec deg = adj.rowwise().sum();
    double eps = 1.0 / (1.0 + (n > 0 ? deg.maxCoeff() : 0.0));
    for (int attempt = 0; attempt < 2; ++attempt) {
        Mat m = Mat::Identity(n, n);
        m += (eps * eps) * Mat(deg.asDiagonal());
        m -= eps * adj;
        Eigen::FullPivLU<Mat> lu(m);
        if (lu.isInvertible()) return lu.inverse();
        eps *= 0.5;
    }
    throw SolverFailure("DELTACON affinity system is singular");
}

double root_euclidean_dcs(const Mat& sa, const Mat& sb) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < sa.rows(); ++i)
        for (Eigen::Index j = 0; j < sa.cols(); ++j) {
            double a = std::sqrt(std::max(sa(i, j), 0.0));
            double b = std::sqrt(std::max(sb(i, j), 0.0));
            sum += (a - b) * (a - b);
        }
    return 1.0 / (1.0 + std::sqrt(sum));
}

}  // namespace

MseReport mse_over_time(const Trajectory& pred, const SimSignal& truth) {
    std::vector<double> truth_times = truth.times_as_double();
    if (pred.times != truth_times) throw GridMismatch("prediction and truth time grids disagree");
    return mse_from_matrices(pred.times, pred.x, truth.f);
}

MseReport mse_over_time(const Trajectory& pred, const Trajectory& truth) {
    if (pred.times != truth.times) throw GridMismatch("prediction and truth time grids disagree");
    return mse_from_matrices(pred.times, pred.x, truth.x);
}

double relative_error(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw BadDims("relative error needs matching shapes");
    double ref = b.norm();
    if (ref == 0.0) throw ZeroReference();
    return (a - b).norm() / ref;
}

double relative_error(const SpMat& a, const SpMat& b) {
    return relative_error(Mat(a), Mat(b));
}

double deltacon_similarity(const Mat& adj_a, const Mat& adj_b) {
    if (adj_a.rows() != adj_a.cols() || adj_b.rows() != adj_b.cols() ||
        adj_a.rows() != adj_b.rows())
        throw BadDims("DELTACON needs square matrices over the same node set");
    return root_euclidean_dcs(affinity(adj_a), affinity(adj_b));
}

double deltacon_similarity(const Dag& a, const Dag& b, bool symmetrize) {
    if (a.node_count() != b.node_count())
        throw BadDims("DELTACON needs DAGs over the same node set");
    Mat wa = Mat(a.adjacency());
    Mat wb = Mat(b.adjacency());
    if (symmetrize) {
        wa = 0.5 * (wa + wa.transpose()).eval();
        wb = 0.5 * (wb + wb.transpose()).eval();
    }
    return deltacon_similarity(wa, wb);
}

double tune_scalar(const std::vector<double>& grid,
                   const std::function<double(double)>& objective) {
    if (grid.empty()) throw EmptyGrid();
    double best_param = 0.0, best_value = 0.0;
    bool first = true;
    for (double p : grid) {
        double v = objective(p);
        if (first || v < best_value || (v == best_value && p < best_param)) {
            best_param = p;
            best_value = v;
            first = false;
        }
    }
    return best_param;
}

std::vector<double> default_tuning_grid() {
    std::vector<double> grid(200);
    for (int k = 1; k <= 200; ++k) grid[k - 1] = k / 100.0;
    return grid;
}

}  // namespace dagdiff
