#pragma once

#include <functional>
#include <vector>

#include "dagdiff/diffusion.hpp"
#include "dagdiff/graph.hpp"
#include "dagdiff/linalg.hpp"
#include "dagdiff/montecarlo.hpp"

namespace dagdiff {

struct MseReport {
    std::vector<double> times;
    std::vector<double> per_time;  // (1/N)*sum_i (x_i - f_i)^2 at each grid time
    double average = 0.0;
};

MseReport mse_over_time(const Trajectory& pred, const SimSignal& truth);
MseReport mse_over_time(const Trajectory& pred, const Trajectory& truth);

/// ‖a - b‖_F / ‖b‖_F; the reference (data-derived) matrix sits in the
/// denominator. Throws ZeroReference when ‖b‖_F = 0.
double relative_error(const Mat& a, const Mat& b);
double relative_error(const SpMat& a, const SpMat& b);

struct SimilarityReport {
    double re = 0.0;
    double dcs = 0.0;
    bool symmetrized = true;  // adjacency treatment used for the DCS part
};

/// DELTACON similarity on node-affinity matrices S = [I + eps^2 D - eps A]^{-1}
/// with eps = 1/(1 + max degree); distance is root-Euclidean over entries and
/// DCS = 1/(1 + d). Directed inputs are symmetrized (A = (W̄ + W̄^T)/2) by
/// default; symmetrize = false keeps W̄ as-is for sensitivity runs. A singular
/// affinity system is retried once at eps/2.
double deltacon_similarity(const Mat& adj_a, const Mat& adj_b);
double deltacon_similarity(const Dag& a, const Dag& b, bool symmetrize = true);

/// Exhaustive scalar grid search; each candidate is evaluated exactly once
/// and ties resolve toward the smaller parameter. Throws EmptyGrid.
double tune_scalar(const std::vector<double>& grid,
                   const std::function<double(double)>& objective);

/// Default tuning grid {0.01*k : k = 1..200} shared by rate and decay
/// parameters so reported MSEs stay comparable.
std::vector<double> default_tuning_grid();

}  // namespace dagdiff
