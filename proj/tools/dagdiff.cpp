#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dagdiff/dag_builder.hpp"
#include "dagdiff/diffusion.hpp"
#include "dagdiff/embedding.hpp"
#include "dagdiff/errors.hpp"
#include "dagdiff/experiment.hpp"
#include "dagdiff/generators.hpp"
#include "dagdiff/inference.hpp"
#include "dagdiff/io.hpp"
#include "dagdiff/metrics.hpp"
#include "dagdiff/montecarlo.hpp"

namespace {

using namespace dagdiff;

std::uint64_t env_seed() {
    const char* v = std::getenv("DAGDIFF_SEED");
    if (!v || !*v) return 0;
    return std::strtoull(v, nullptr, 10);
}

std::vector<int> parse_dims(const std::string& s) {
    std::vector<int> dims;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t pos = s.find('x', start);
        std::string tok = pos == std::string::npos ? s.substr(start) : s.substr(start, pos - start);
        char* end = nullptr;
        long v = std::strtol(tok.c_str(), &end, 10);
        if (end == tok.c_str() || *end != '\0' || v <= 0)
            throw ValidationError("bad dims token '" + tok + "' (expected e.g. 10x10)");
        dims.push_back(static_cast<int>(v));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return dims;
}

/// Accepts "start:stop:step" (inclusive) or a comma list.
std::vector<double> parse_times(const std::string& s) {
    std::vector<double> out;
    auto num = [&](const std::string& tok) {
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
            throw ValidationError("bad time value '" + tok + "'");
        return v;
    };
    if (s.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            std::size_t pos = s.find(':', start);
            parts.push_back(pos == std::string::npos ? s.substr(start)
                                                     : s.substr(start, pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        if (parts.size() != 3) throw ValidationError("time range needs start:stop:step");
        double lo = num(parts[0]), hi = num(parts[1]), step = num(parts[2]);
        if (step <= 0 || hi < lo) throw ValidationError("bad time range");
        for (double t = lo; t <= hi + 1e-9 * step; t += step) out.push_back(t);
        return out;
    }
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t pos = s.find(',', start);
        out.push_back(num(pos == std::string::npos ? s.substr(start)
                                                   : s.substr(start, pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<int> parse_times_int(const std::string& s) {
    std::vector<int> out;
    for (double t : parse_times(s)) {
        int ti = static_cast<int>(std::lround(t));
        if (std::abs(t - ti) > 1e-9)
            throw ValidationError("simulation times must be integer steps");
        out.push_back(ti);
    }
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"dagdiff: latent-coordinate DAG construction and diffusion modeling of "
                 "unidirectional spreading on graphs"};
    app.require_subcommand(1);
    const std::uint64_t default_seed = env_seed();

    auto* gen = app.add_subcommand("generate", "Generate a seeded lattice graph");
    std::string g_kind = "lattice2d-4", g_dims = "10x10", g_out;
    std::uint64_t g_seed = default_seed;
    gen->add_option("--kind", g_kind, "lattice2d-4|lattice2d-8|lattice2d-12|lattice3d");
    gen->add_option("--dims", g_dims, "side lengths, e.g. 10x10 or 6x6x3");
    gen->add_option("--seed", g_seed, "edge-weight seed");
    gen->add_option("--out", g_out, "output graph TSV")->required();

    auto* emb = app.add_subcommand("embed", "Compute latent coordinates for a graph");
    std::string e_in, e_method = "ev", e_out;
    int e_dims = 2, e_knn = 0;
    std::uint64_t e_seed = default_seed;
    emb->add_option("--in", e_in, "input graph TSV")->required();
    emb->add_option("--dims", e_dims, "latent dimension K");
    emb->add_option("--method", e_method, "ev|le|lle");
    emb->add_option("--knn", e_knn, "LLE neighbor cap (0 keeps all 1-hop neighbors)");
    emb->add_option("--seed", e_seed, "eigensolver start seed");
    emb->add_option("--out", e_out, "output embedding TSV")->required();

    auto* bd = app.add_subcommand("build-dag", "Orient a graph into a source-rooted DAG");
    std::string b_graph, b_embed, b_method = "latent", b_out;
    int b_source = 0;
    bool b_repair = false;
    bd->add_option("--graph", b_graph, "input graph TSV")->required();
    bd->add_option("--embed", b_embed, "embedding TSV (latent method)");
    bd->add_option("--source", b_source, "source node")->required();
    bd->add_option("--method", b_method, "latent|hop");
    bd->add_flag("--repair", b_repair, "repair secondary sources (off-model)");
    bd->add_option("--out", b_out, "output DAG TSV")->required();

    auto* dif = app.add_subcommand("diffuse", "Predict infection trajectories on a DAG");
    std::string d_dag, d_times = "0:100:5", d_mode = "linear", d_out;
    double d_gamma = 0.8;
    dif->add_option("--dag", d_dag, "input DAG TSV")->required();
    dif->add_option("--gamma", d_gamma, "diffusion rate");
    dif->add_option("--times", d_times, "grid, start:stop:step or comma list");
    dif->add_option("--mode", d_mode, "linear|nonlinear");
    dif->add_option("--out", d_out, "output trajectory CSV")->required();

    auto* sim = app.add_subcommand("simulate", "Monte Carlo cascade ground truth");
    std::string s_graph, s_times = "0:100:5", s_out;
    int s_source = 0, s_trials = 2000;
    std::uint64_t s_seed = default_seed;
    sim->add_option("--graph", s_graph, "input graph TSV")->required();
    sim->add_option("--source", s_source, "source node");
    sim->add_option("--trials", s_trials, "trial count");
    sim->add_option("--times", s_times, "integer step grid");
    sim->add_option("--seed", s_seed, "master seed");
    sim->add_option("--out", s_out, "output fractions CSV")->required();

    auto* ev = app.add_subcommand("evaluate", "MSE of a prediction against a truth signal");
    std::string v_pred, v_truth, v_out;
    ev->add_option("--pred", v_pred, "prediction CSV")->required();
    ev->add_option("--truth", v_truth, "truth CSV")->required();
    ev->add_option("--out", v_out, "output report JSON")->required();

    auto* cmp = app.add_subcommand("compare-dags", "RE and DELTACON similarity of two DAGs");
    std::string c_a, c_b, c_out;
    bool c_raw = false;
    cmp->add_option("--a", c_a, "first DAG TSV")->required();
    cmp->add_option("--b", c_b, "second DAG TSV (RE reference)")->required();
    cmp->add_flag("--raw", c_raw, "skip adjacency symmetrization for DCS");
    cmp->add_option("--out", c_out, "output JSON")->required();

    auto* fit = app.add_subcommand("fit", "Fit DAG weights from a time-series panel");
    std::string f_panel, f_dist, f_source, f_out;
    double f_sigma = 0.0, f_gamma = 1.0;
    int f_k = 2;
    bool f_unconstrained = false;
    fit->add_option("--panel", f_panel, "panel CSV (date,label_1,...)")->required();
    fit->add_option("--distances", f_dist, "distances CSV (label_a,label_b,miles)")->required();
    fit->add_option("--sigma", f_sigma, "kernel bandwidth (0 = median pairwise distance)");
    fit->add_option("--source", f_source, "source node label (or index)")->required();
    fit->add_option("--k", f_k, "embedding dimension");
    fit->add_option("--gamma", f_gamma, "rate folded into the fitted weights");
    fit->add_flag("--unconstrained", f_unconstrained, "ordinary least squares instead of NNLS");
    fit->add_option("--out", f_out, "output fitted weights TSV")->required();

    auto* exp = app.add_subcommand("run-experiment", "Replicated lattice benchmark");
    std::string x_kind = "lattice2d-4", x_dims = "10x10", x_times = "0:100:5", x_outdir;
    int x_replicates = 20, x_k = 2, x_trials = 2000, x_source = -1, x_jobs = 1;
    std::uint64_t x_seed = default_seed;
    exp->add_option("--kind", x_kind, "lattice family");
    exp->add_option("--dims", x_dims, "lattice dims");
    exp->add_option("--replicates", x_replicates, "replicate count");
    exp->add_option("--seed", x_seed, "master seed");
    exp->add_option("--k", x_k, "embedding dimension");
    exp->add_option("--trials", x_trials, "Monte Carlo trials per replicate");
    exp->add_option("--times", x_times, "integer step grid");
    exp->add_option("--source", x_source, "fixed source (-1 draws per replicate)");
    exp->add_option("--jobs", x_jobs, "parallel replicate workers");
    exp->add_option("--outdir", x_outdir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 64;
    }

    if (*gen) {
        LatticeSpec spec{parse_lattice_kind(g_kind), parse_dims(g_dims), g_seed};
        write_graph(g_out, generate_lattice(spec));
        std::cout << "wrote " << g_out << "\n";
        return 0;
    }
    if (*emb) {
        UndirectedGraph g = read_graph(e_in);
        EmbeddingParams params;
        params.k = e_dims;
        params.seed = e_seed;
        Embedding out;
        if (e_method == "ev")
            out = embed(g, params);
        else if (e_method == "le")
            out = embed_le(g, params);
        else if (e_method == "lle")
            out = embed_lle(g, params, e_knn);
        else
            throw ValidationError("unknown embedding method '" + e_method + "'");
        write_embedding(e_out, out.p);
        std::cout << "wrote " << e_out << "\n";
        return 0;
    }
    if (*bd) {
        UndirectedGraph g = read_graph(b_graph);
        Dag d = [&] {
            if (b_method == "hop") return build_hop_dag(g, b_source);
            if (b_method != "latent")
                throw ValidationError("unknown DAG method '" + b_method + "'");
            if (b_embed.empty()) throw ValidationError("--embed is required for latent DAGs");
            Embedding e;
            e.p = read_embedding(b_embed);
            return build_dag(g, e, b_source, b_repair);
        }();
        write_dag(b_out, d);
        std::cout << "wrote " << b_out << "\n";
        return 0;
    }
    if (*dif) {
        Dag d = read_dag(d_dag);
        DiffusionParams params;
        params.gamma = d_gamma;
        params.times = parse_times(d_times);
        if (d_mode == "linear") {
            Trajectory t = diffuse_linear(d, params);
            write_series_csv(d_out, t.times, t.x);
        } else if (d_mode == "nonlinear") {
            params.mode = DiffusionMode::Nonlinear;
            NonlinearReport rep = diffuse_nonlinear(d, params);
            write_series_csv(d_out, rep.trajectory.times, rep.trajectory.x);
            std::cout << "max divergence from linear mode: "
                      << format_double(rep.max_divergence_from_linear) << "\n";
        } else {
            throw ValidationError("unknown diffusion mode '" + d_mode + "'");
        }
        std::cout << "wrote " << d_out << "\n";
        return 0;
    }
    if (*sim) {
        UndirectedGraph g = read_graph(s_graph);
        SimConfig cfg;
        cfg.trials = s_trials;
        cfg.times = parse_times_int(s_times);
        cfg.master_seed = s_seed;
        cfg.source = s_source;
        SimSignal sig = simulate(g, cfg);
        write_series_csv(s_out, sig.times_as_double(), sig.f);
        std::cout << "wrote " << s_out << "\n";
        return 0;
    }
    if (*ev) {
        Trajectory pred, truth;
        read_series_csv(v_pred, pred.times, pred.x);
        read_series_csv(v_truth, truth.times, truth.x);
        MseReport rep = mse_over_time(pred, truth);
        nlohmann::json j = {{"times", rep.times},
                            {"mse_per_time", rep.per_time},
                            {"average_mse", rep.average}};
        write_text_file(v_out, j.dump(2) + "\n");
        std::cout << "average MSE: " << format_double(rep.average) << "\n";
        return 0;
    }
    if (*cmp) {
        Dag a = read_dag(c_a), b = read_dag(c_b);
        double dcs = deltacon_similarity(a, b, !c_raw);
        double re = relative_error(build_directed_laplacian(a), build_directed_laplacian(b));
        nlohmann::json j = {{"dcs", dcs}, {"re", re}, {"symmetrized", !c_raw}};
        write_text_file(c_out, j.dump(2) + "\n");
        std::cout << "RE: " << format_double(re) << "  DCS: " << format_double(dcs) << "\n";
        return 0;
    }
    if (*fit) {
        TimeSeriesPanel panel = ingest_panel(f_panel);
        std::vector<std::string> dist_labels;
        Mat dist;
        read_distances_csv(f_dist, dist_labels, dist);
        Mat aligned = align_distance_matrix(panel.labels, dist_labels, dist);
        int source = -1;
        for (std::size_t i = 0; i < panel.labels.size(); ++i)
            if (panel.labels[i] == f_source) source = static_cast<int>(i);
        if (source < 0) {
            char* end = nullptr;
            long v = std::strtol(f_source.c_str(), &end, 10);
            if (end != f_source.c_str() && *end == '\0' && v >= 0 &&
                v < static_cast<long>(panel.labels.size()))
                source = static_cast<int>(v);
        }
        if (source < 0)
            throw ValidationError("source label '" + f_source + "' not found in the panel");
        RealPipelineOptions opts;
        opts.k = f_k;
        opts.fit.nonneg = !f_unconstrained;
        opts.fit.gamma = f_gamma;
        RealPipelineReport rep = evaluate_real_pipeline(panel, aligned, f_sigma, source, opts);

        std::string tsv = "dagweights v1\nsource=" + panel.labels[source] + "\n";
        const Mat& lap = rep.fitted_laplacian;
        for (Eigen::Index j = 0; j < lap.rows(); ++j)
            for (Eigen::Index i = 0; i < lap.cols(); ++i)
                if (i != j && lap(i, j) < 0.0)
                    tsv += std::to_string(j) + "\t" + std::to_string(i) + "\t" +
                           format_double(-lap(i, j)) + "\n";
        write_text_file(f_out, tsv);

        nlohmann::json j;
        j["sigma"] = rep.sigma;
        j["source"] = panel.labels[source];
        for (const auto& [name, s] : rep.methods)
            j["methods"][name] = {{"re", s.re}, {"dcs", s.dcs}, {"symmetrized", s.symmetrized}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (*exp) {
        ExperimentConfig cfg;
        cfg.kind = parse_lattice_kind(x_kind);
        cfg.dims = parse_dims(x_dims);
        cfg.replicates = x_replicates;
        cfg.master_seed = x_seed;
        cfg.k = x_k;
        cfg.trials = x_trials;
        cfg.times = parse_times_int(x_times);
        cfg.fixed_source = x_source;
        cfg.outdir = x_outdir;
        cfg.jobs = x_jobs;
        ExperimentBundle bundle = run_experiment(cfg);
        for (const auto& m : bundle.methods)
            std::cout << m.name << ": tuned=" << format_double(m.tuned_param)
                      << " mean_mse=" << format_double(m.mean_mse) << " failures=" << m.failures
                      << "\n";
        std::cout << "proposed_win_fraction=" << format_double(bundle.proposed_win_fraction)
                  << "\nwrote " << x_outdir << "/summary.json\n";
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
