#pragma once

#include <map>
#include <string>
#include <vector>

#include "dagdiff/graph.hpp"
#include "dagdiff/linalg.hpp"
#include "dagdiff/metrics.hpp"

namespace dagdiff {

/// Per-node daily series normalized so every column ends at 1. Raw inputs
/// are cumulative counts; isolated decreases (reporting corrections) are
/// clamped to the running maximum and counted as repairs.
struct TimeSeriesPanel {
    std::vector<std::string> labels;
    std::vector<std::string> dates;   // one per row, free-form strings
    Mat x;                            // days x nodes, in [0, 1]
    Vec final_values;                 // per-node normalizers (last raw value)
    int repairs = 0;
    std::string normalization = "final-value";

    int days() const { return static_cast<int>(x.rows()); }
    int nodes() const { return static_cast<int>(x.cols()); }
};

/// Parses `date,label_1,...,label_N`, repairs monotonicity, normalizes.
/// Throws ParseError on malformed input, ValidationError on a constant-zero
/// column, NonMonotoneBeyondTolerance when repairs exceed 5% of entries.
TimeSeriesPanel ingest_panel(const std::string& path);

/// Builds a panel from in-memory values (synthetic fixtures); applies the
/// same repair/normalization path as ingest_panel.
TimeSeriesPanel panel_from_values(const std::vector<std::string>& labels, const Mat& values);

/// Gaussian kernel graph W_ij = exp(-d_ij^2 / sigma^2) over all pairs.
/// Throws BadBandwidth for sigma <= 0, ValidationError if the distance
/// matrix is not symmetric with zero diagonal.
UndirectedGraph kernel_graph(const Mat& dist, double sigma);

/// Median off-diagonal pairwise distance (the default bandwidth).
double median_pairwise_distance(const Mat& dist);

struct FitOptions {
    double gamma = 1.0;          // folded into the fitted weights
    bool nonneg = true;          // NNLS by default, unconstrained for strict replication
    std::vector<Arc> candidates; // empty means all ordered pairs
};

struct FitResult {
    Mat w;           // fitted gamma*W̄ products, entry (j, i) is arc j -> i
    Mat w_normalized;  // same, scaled so the max entry is 1 (0 matrix stays 0)
    Mat laplacian;   // L̄ = D̄ - W̄^T built from w_normalized
    Vec residuals;   // per-target-node least-squares residual norm
};

/// Per target node i, fits w_{j,i} >= 0 minimizing
/// sum_t (x_i(t+1) - x_i(t) - gamma * sum_j w_{j,i} * max(x_j(t) - x_i(t), 0))^2.
/// Throws Underdetermined when a node's active regressor count reaches the
/// equation count.
FitResult fit_dag_weights(const TimeSeriesPanel& panel, const FitOptions& opts = {});

struct RealPipelineOptions {
    int k = 2;           // embedding dimension
    bool repair = true;  // latent DAG repair for secondary sources
    FitOptions fit;
};

struct RealPipelineReport {
    std::map<std::string, SimilarityReport> methods;  // proposed / hop_dag / lle_dag
    double sigma = 0.0;
    int source = 0;
    Mat fitted_laplacian;
};

/// End-to-end real-data experiment: kernel graph -> embeddings -> DAGs ->
/// data-fitted Laplacian -> RE/DCS per construction method. Laplacians are
/// compared after scaling each weight matrix to max entry 1 (the fit's scale
/// is not identifiable).
RealPipelineReport evaluate_real_pipeline(const TimeSeriesPanel& panel, const Mat& distances,
                                          double sigma, int source,
                                          const RealPipelineOptions& opts = {});

}  // namespace dagdiff
