#include "dagdiff/montecarlo.hpp"

#include <algorithm>

#include "dagdiff/rng.hpp"

namespace dagdiff {

namespace {

void check_config(const UndirectedGraph& g, const SimConfig& cfg) {
    if (cfg.trials < 1) throw ValidationError("trial count must be >= 1");
    if (cfg.source < 0 || cfg.source >= g.node_count())
        throw ValidationError("source index out of range");
    if (cfg.times.empty()) throw ValidationError("time grid is empty");
    if (cfg.times.front() < 0) throw ValidationError("grid times must be non-negative");
    for (std::size_t m = 1; m < cfg.times.size(); ++m)
        if (cfg.times[m] <= cfg.times[m - 1])
            throw ValidationError("time grid must be strictly increasing");
    g.require_connected();
}

}  // namespace

TrialBatch simulate_batch(const UndirectedGraph& g, const SimConfig& cfg, int first_trial,
                          int batch_trials) {
    check_config(g, cfg);
    if (first_trial < 0 || batch_trials < 0) throw ValidationError("bad trial range");
    const int n = g.node_count();
    const int grid = static_cast<int>(cfg.times.size());
    const int t_max = cfg.times.back();

    TrialBatch batch;
    batch.node_count = n;
    batch.source = cfg.source;
    batch.times = cfg.times;
    batch.master_seed = cfg.master_seed;
    batch.trials = batch_trials;
    batch.counts = Mat::Zero(grid, n);

    std::vector<int> infected_at(n);
    for (int b = 0; b < batch_trials; ++b) {
        const std::uint64_t tau = static_cast<std::uint64_t>(first_trial) + b;
        Rng rng(split_seed(cfg.master_seed, tau));
        std::fill(infected_at.begin(), infected_at.end(), -1);
        infected_at[cfg.source] = 0;
        int n_infected = 1;

        for (int step = 1; step <= t_max && n_infected < n; ++step) {
            for (int i = 0; i < n; ++i) {
                if (infected_at[i] < 0 || infected_at[i] >= step) continue;
                for (const auto& nb : g.neighbors(i)) {
                    // Eligible targets are the nodes uninfected when the step
                    // began; a success earlier in the same step does not
                    // remove the target (nor skip the draw), so the draw
                    // sequence is a pure function of the previous step's state.
                    if (infected_at[nb.node] >= 0 && infected_at[nb.node] != step) continue;
                    double r = rng.uniform01();
                    if (r < nb.w && infected_at[nb.node] < 0) {
                        infected_at[nb.node] = step;
                        ++n_infected;
                    }
                }
            }
        }

        for (int m = 0; m < grid; ++m)
            for (int i = 0; i < n; ++i)
                if (infected_at[i] >= 0 && infected_at[i] <= cfg.times[m])
                    batch.counts(m, i) += 1.0;
    }
    return batch;
}

SimSignal simulate(const UndirectedGraph& g, const SimConfig& cfg) {
    return aggregate({simulate_batch(g, cfg, 0, cfg.trials)});
}

SimSignal aggregate(const std::vector<TrialBatch>& batches) {
    if (batches.empty()) throw ValidationError("no batches to aggregate");
    const TrialBatch& first = batches.front();
    Mat counts = Mat::Zero(first.counts.rows(), first.counts.cols());
    long long total = 0;
    for (const auto& b : batches) {
        if (b.node_count != first.node_count || b.source != first.source ||
            b.times != first.times || b.master_seed != first.master_seed)
            throw ConfigMismatch("trial batches come from different configurations");
        counts += b.counts;
        total += b.trials;
    }
    if (total < 1) throw ValidationError("aggregated batches contain no trials");
    SimSignal sig;
    sig.times = first.times;
    sig.trials = static_cast<int>(total);
    sig.source = first.source;
    sig.f = counts / static_cast<double>(total);
    return sig;
}

}  // namespace dagdiff
