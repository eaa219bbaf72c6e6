#pragma once

#include <cstdint>
#include <vector>

#include "dagdiff/graph.hpp"
#include "dagdiff/linalg.hpp"

namespace dagdiff {

struct SimConfig {
    int trials = 2000;
    std::vector<int> times;      // ascending designated steps
    std::uint64_t master_seed = 0;
    int source = 0;
};

/// Infection counts for a contiguous range of trial indices. Trial tau
/// always draws from seed split_seed(master_seed, tau), so any partition of
/// [0, trials) into batches aggregates to the same signal.
struct TrialBatch {
    int node_count = 0;
    int source = 0;
    std::vector<int> times;
    std::uint64_t master_seed = 0;
    int trials = 0;
    Mat counts;  // times.size() x node_count, infected-by-t counts
};

struct SimSignal {
    std::vector<int> times;
    Mat f;       // fractions, times.size() x node_count
    int trials = 0;
    int source = 0;

    std::vector<double> times_as_double() const {
        return std::vector<double>(times.begin(), times.end());
    }
};

/// Synchronous independent-cascade trials: a node infected at step t starts
/// attacking at step t+1; within a step every attacker draws once per
/// neighbor that was uninfected when the step began (draws happen even if an
/// earlier attacker already succeeded, keeping the draw count deterministic);
/// attackers and targets iterate in ascending index order.
TrialBatch simulate_batch(const UndirectedGraph& g, const SimConfig& cfg, int first_trial,
                          int batch_trials);

/// All trials in one batch, normalized to fractions.
SimSignal simulate(const UndirectedGraph& g, const SimConfig& cfg);

/// Associative, commutative merge; throws ConfigMismatch when shapes, source,
/// grid, or master seed differ.
SimSignal aggregate(const std::vector<TrialBatch>& batches);

}  // namespace dagdiff
