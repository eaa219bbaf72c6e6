#include "dagdiff/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <optional>
#include <thread>

#include <json.hpp>

#include "dagdiff/dag_builder.hpp"
#include "dagdiff/diffusion.hpp"
#include "dagdiff/embedding.hpp"
#include "dagdiff/io.hpp"
#include "dagdiff/metrics.hpp"
#include "dagdiff/montecarlo.hpp"
#include "dagdiff/rng.hpp"

namespace dagdiff {

namespace {

const char* const kDagMethods[] = {"proposed", "hop_dag", "lle_dag"};

struct RepData {
    std::optional<UndirectedGraph> graph;
    int source = 0;
    std::optional<SimSignal> truth;
    std::map<std::string, std::optional<Dag>> dags;
    std::map<std::string, std::string> errors;
    std::map<std::string, bool> repaired;
};

RepData compute_replicate(const ExperimentConfig& cfg, int r) {
    RepData rep;
    const std::uint64_t seed_r = split_seed(cfg.master_seed, r);
    try {
        LatticeSpec spec{cfg.kind, cfg.dims, split_seed(seed_r, 0)};
        rep.graph.emplace(generate_lattice(spec));
        const int n = rep.graph->node_count();
        rep.source = cfg.fixed_source >= 0
                         ? cfg.fixed_source
                         : static_cast<int>(Rng(split_seed(seed_r, 1)).uniform_int(n));
        SimConfig sc;
        sc.trials = cfg.trials;
        sc.times = cfg.times;
        sc.master_seed = split_seed(seed_r, 2);
        sc.source = rep.source;
        rep.truth.emplace(simulate(*rep.graph, sc));
    } catch (const Error& e) {
        rep.errors["replicate"] = e.what();
        return rep;
    }

    auto latent_dag = [&](const char* name, const Embedding& emb) {
        try {
            rep.dags[name].emplace(build_dag(*rep.graph, emb, rep.source, false));
            rep.repaired[name] = false;
        } catch (const DagInvalid&) {
            rep.dags[name].emplace(build_dag(*rep.graph, emb, rep.source, true));
            rep.repaired[name] = true;
        }
    };
    try {
        EmbeddingParams ep;
        ep.k = cfg.k;
        ep.seed = split_seed(seed_r, 3);
        latent_dag("proposed", embed(*rep.graph, ep));
    } catch (const Error& e) {
        rep.errors["proposed"] = e.what();
    }
    try {
        rep.dags["hop_dag"].emplace(build_hop_dag(*rep.graph, rep.source));
    } catch (const Error& e) {
        rep.errors["hop_dag"] = e.what();
    }
    try {
        EmbeddingParams ep;
        ep.k = cfg.k;
        ep.seed = split_seed(seed_r, 4);
        latent_dag("lle_dag", embed_lle(*rep.graph, ep));
    } catch (const Error& e) {
        rep.errors["lle_dag"] = e.what();
    }
    return rep;
}

}  // namespace

ExperimentBundle run_experiment(const ExperimentConfig& cfg) {
    if (cfg.replicates < 1) throw ValidationError("replicate count must be >= 1");
    if (cfg.k < 1) throw ValidationError("embedding dimension must be >= 1");
    if (cfg.trials < 1) throw ValidationError("trial count must be >= 1");
    if (cfg.times.empty()) throw ValidationError("time grid is empty");

    const int R = cfg.replicates;
    std::vector<double> gamma_grid =
        cfg.gamma_grid.empty() ? default_tuning_grid() : cfg.gamma_grid;
    std::vector<double> alpha_grid =
        cfg.alpha_grid.empty() ? default_tuning_grid() : cfg.alpha_grid;
    std::vector<double> times_d(cfg.times.begin(), cfg.times.end());

    std::vector<RepData> data(R);
    {
        std::atomic<int> next{0};
        const int jobs = std::clamp(cfg.jobs, 1, R);
        auto worker = [&] {
            for (int r = next.fetch_add(1); r < R; r = next.fetch_add(1)) {
                try {
                    data[r] = compute_replicate(cfg, r);
                } catch (const std::exception& e) {
                    data[r].errors["replicate"] = e.what();
                }
            }
        };
        if (jobs == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
    }

    // Disjoint tuning/evaluation split; a single-replicate run degenerates to
    // tuning and evaluating on the same replicate.
    const int n_tune = (3 * R + 9) / 10;
    std::vector<int> tune_idx, eval_idx;
    for (int r = 0; r < n_tune; ++r) tune_idx.push_back(r);
    if (n_tune < R)
        for (int r = n_tune; r < R; ++r) eval_idx.push_back(r);
    else
        eval_idx = tune_idx;

    auto dag_mse = [&](const RepData& rep, const std::string& method, double gamma) {
        DiffusionParams dp;
        dp.gamma = gamma;
        dp.times = times_d;
        return mse_over_time(diffuse_linear(*rep.dags.at(method), dp), *rep.truth);
    };
    auto decay_mse = [&](const RepData& rep, double alpha) {
        return mse_over_time(hop_decay_predictor(*rep.graph, rep.source, alpha, times_d),
                             *rep.truth);
    };

    std::map<std::string, double> tuned;
    for (const char* method : kDagMethods) {
        std::vector<const RepData*> usable;
        for (int r : tune_idx) {
            auto it = data[r].dags.find(method);
            if (it != data[r].dags.end() && it->second && data[r].truth)
                usable.push_back(&data[r]);
        }
        if (usable.empty()) continue;
        tuned[method] = tune_scalar(gamma_grid, [&](double gamma) {
            double sum = 0.0;
            for (const RepData* rep : usable) sum += dag_mse(*rep, method, gamma).average;
            return sum / usable.size();
        });
    }
    {
        std::vector<const RepData*> usable;
        for (int r : tune_idx)
            if (data[r].truth) usable.push_back(&data[r]);
        if (!usable.empty())
            tuned["hop_decay"] = tune_scalar(alpha_grid, [&](double alpha) {
                double sum = 0.0;
                for (const RepData* rep : usable) sum += decay_mse(*rep, alpha).average;
                return sum / usable.size();
            });
    }

    ExperimentBundle bundle;
    bundle.config = cfg;
    bundle.replicates.resize(R);
    const std::vector<std::string> all_methods = {"hop_dag", "hop_decay", "lle_dag", "proposed"};

    std::map<std::string, std::map<int, MseReport>> eval_reports;
    for (int r = 0; r < R; ++r) {
        ReplicateRecord& rec = bundle.replicates[r];
        rec.index = r;
        rec.source = data[r].source;
        rec.tuning = r < n_tune;
        rec.errors = data[r].errors;
        rec.repaired = data[r].repaired;
        if (!data[r].truth) continue;
        for (const char* method : kDagMethods) {
            auto it = data[r].dags.find(method);
            if (it == data[r].dags.end() || !it->second || !tuned.count(method)) continue;
            MseReport m = dag_mse(data[r], method, tuned[method]);
            rec.mse[method] = m.average;
            eval_reports[method][r] = std::move(m);
        }
        if (tuned.count("hop_decay")) {
            MseReport m = decay_mse(data[r], tuned["hop_decay"]);
            rec.mse["hop_decay"] = m.average;
            eval_reports["hop_decay"][r] = std::move(m);
        }
    }

    for (const auto& name : all_methods) {
        MethodSummary ms;
        ms.name = name;
        ms.tuned_param = tuned.count(name) ? tuned[name] : 0.0;
        ms.mean_mse_per_time.assign(times_d.size(), 0.0);
        int used = 0;
        for (int r : eval_idx) {
            auto mit = eval_reports[name].find(r);
            if (mit == eval_reports[name].end()) continue;
            for (std::size_t m = 0; m < times_d.size(); ++m)
                ms.mean_mse_per_time[m] += mit->second.per_time[m];
            ms.mean_mse += mit->second.average;
            ++used;
        }
        if (used > 0) {
            for (double& v : ms.mean_mse_per_time) v /= used;
            ms.mean_mse /= used;
        }
        for (int r = 0; r < R; ++r)
            if (data[r].errors.count(name) || data[r].errors.count("replicate")) ++ms.failures;
        bundle.methods.push_back(std::move(ms));
    }

    {
        int wins = 0, comparable = 0;
        for (int r : eval_idx) {
            const auto& mse = bundle.replicates[r].mse;
            if (!mse.count("proposed") || !mse.count("hop_decay")) continue;
            ++comparable;
            if (mse.at("proposed") <= mse.at("hop_decay")) ++wins;
        }
        bundle.proposed_win_fraction =
            comparable > 0 ? static_cast<double>(wins) / comparable : 0.0;
    }

    if (!cfg.outdir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.outdir);
        using json = nlohmann::json;

        json j;
        j["config"] = {{"kind", lattice_kind_name(cfg.kind)},
                       {"dims", cfg.dims},
                       {"replicates", cfg.replicates},
                       {"master_seed", cfg.master_seed},
                       {"k", cfg.k},
                       {"trials", cfg.trials},
                       {"times", cfg.times},
                       {"fixed_source", cfg.fixed_source},
                       {"gamma_grid_size", gamma_grid.size()},
                       {"alpha_grid_size", alpha_grid.size()}};
        j["tuning_replicates"] = n_tune;
        j["proposed_win_fraction"] = bundle.proposed_win_fraction;
        for (const auto& ms : bundle.methods)
            j["methods"][ms.name] = {{"tuned_param", ms.tuned_param},
                                     {"mean_mse", ms.mean_mse},
                                     {"mean_mse_per_time", ms.mean_mse_per_time},
                                     {"failures", ms.failures}};
        for (const auto& rec : bundle.replicates) {
            json jr = {{"index", rec.index},
                       {"source", rec.source},
                       {"tuning", rec.tuning},
                       {"mse", rec.mse},
                       {"errors", rec.errors},
                       {"repaired", rec.repaired}};
            j["replicates"].push_back(std::move(jr));
        }

        const int snap_rep = eval_idx.front();
        const int last = static_cast<int>(times_d.size()) - 1;
        const int ia = last / 3, ib = 2 * last / 3;
        j["snapshot"] = {{"replicate", snap_rep},
                         {"times", {cfg.times[ia], cfg.times[ib]}},
                         {"method", "proposed"}};
        write_text_file(cfg.outdir + "/summary.json", j.dump(2) + "\n");

        std::string csv = "t";
        for (const auto& name : all_methods) csv += "," + name;
        csv += "\n";
        for (std::size_t m = 0; m < times_d.size(); ++m) {
            csv += format_double(times_d[m]);
            for (const auto& name : all_methods)
                for (const auto& ms : bundle.methods)
                    if (ms.name == name) csv += "," + format_double(ms.mean_mse_per_time[m]);
            csv += "\n";
        }
        write_text_file(cfg.outdir + "/mse_curves.csv", csv);

        std::string snap;
        const RepData& sd = data[snap_rep];
        bool have_pred = sd.dags.count("proposed") && sd.dags.at("proposed") &&
                         tuned.count("proposed") && sd.truth;
        snap = "node,truth_t" + std::to_string(cfg.times[ia]) + ",truth_t" +
               std::to_string(cfg.times[ib]);
        if (have_pred)
            snap += ",proposed_t" + std::to_string(cfg.times[ia]) + ",proposed_t" +
                    std::to_string(cfg.times[ib]);
        snap += "\n";
        if (sd.truth) {
            Mat pred;
            if (have_pred) {
                DiffusionParams dp;
                dp.gamma = tuned["proposed"];
                dp.times = times_d;
                pred = diffuse_linear(*sd.dags.at("proposed"), dp).x;
            }
            for (int i = 0; i < sd.truth->f.cols(); ++i) {
                snap += std::to_string(i) + "," + format_double(sd.truth->f(ia, i)) + "," +
                        format_double(sd.truth->f(ib, i));
                if (have_pred)
                    snap += "," + format_double(pred(ia, i)) + "," + format_double(pred(ib, i));
                snap += "\n";
            }
        }
        write_text_file(cfg.outdir + "/snapshots.csv", snap);
    }
    return bundle;
}

}  // namespace dagdiff
