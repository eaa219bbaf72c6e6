#include "dagdiff/nnls.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <vector>

#include "dagdiff/errors.hpp"

namespace dagdiff {

Vec nnls(const Mat& a, const Vec& b, int max_iterations) {
    const int n = static_cast<int>(a.cols());
    if (a.rows() != b.size()) throw BadDims("NNLS system shapes disagree");
    if (max_iterations <= 0) max_iterations = std::max(30, 10 * n);

    Vec x = Vec::Zero(n);
    std::vector<char> passive(n, 0);
    Vec grad = a.transpose() * b;
    const double tol = 1e-12 * std::max(1.0, grad.cwiseAbs().maxCoeff());

    auto solve_passive = [&](std::vector<int>& idx) -> Vec {
        idx.clear();
        for (int j = 0; j < n; ++j)
            if (passive[j]) idx.push_back(j);
        Mat ap(a.rows(), idx.size());
        for (std::size_t c = 0; c < idx.size(); ++c) ap.col(c) = a.col(idx[c]);
        return ap.colPivHouseholderQr().solve(b);
    };

    int iterations = 0;
    while (true) {
        if (++iterations > max_iterations)
            throw SolverFailure("NNLS active-set loop exceeded the iteration budget");
        Vec w = a.transpose() * (b - a * x);
        int best = -1;
        double best_w = tol;
        for (int j = 0; j < n; ++j)
            if (!passive[j] && w[j] > best_w) {
                best_w = w[j];
                best = j;
            }
        if (best < 0) return x;
        passive[best] = 1;

        std::vector<int> idx;
        while (true) {
            if (++iterations > max_iterations)
                throw SolverFailure("NNLS inner loop exceeded the iteration budget");
            Vec z = solve_passive(idx);
            bool feasible = true;
            for (std::size_t c = 0; c < idx.size(); ++c)
                if (z[c] <= 0.0) {
                    feasible = false;
                    break;
                }
            if (feasible) {
                x.setZero();
                for (std::size_t c = 0; c < idx.size(); ++c) x[idx[c]] = z[c];
                break;
            }
            double alpha = 1.0;
            for (std::size_t c = 0; c < idx.size(); ++c)
                if (z[c] <= 0.0) {
                    double denom = x[idx[c]] - z[c];
                    if (denom > 0.0) alpha = std::min(alpha, x[idx[c]] / denom);
                }
            for (std::size_t c = 0; c < idx.size(); ++c) {
                int j = idx[c];
                x[j] += alpha * (z[c] - x[j]);
                if (x[j] <= 1e-14 * std::max(1.0, std::abs(z[c]))) {
                    x[j] = 0.0;
                    passive[j] = 0;
                }
            }
        }
    }
}

}  // namespace dagdiff
