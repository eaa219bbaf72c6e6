#include "dagdiff/inference.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>

#include "dagdiff/dag_builder.hpp"
#include "dagdiff/embedding.hpp"
#include "dagdiff/io.hpp"
#include "dagdiff/nnls.hpp"

namespace dagdiff {

namespace {

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

TimeSeriesPanel finish_panel(std::vector<std::string> labels, std::vector<std::string> dates,
                             Mat raw) {
    const int days = static_cast<int>(raw.rows());
    const int n = static_cast<int>(raw.cols());
    if (days < 2) throw ValidationError("panel needs at least two days");
    if (n < 1) throw ValidationError("panel has no node columns");

    TimeSeriesPanel panel;
    panel.labels = std::move(labels);
    panel.dates = std::move(dates);
    // Cumulative counts only move up; isolated decreases are reporting
    // corrections, clamped to the running maximum. Dips within float rounding
    // of the running maximum are solver noise, not corrections, and are
    // clamped without being counted.
    for (int c = 0; c < n; ++c) {
        double run = raw(0, c);
        for (int r = 1; r < days; ++r) {
            if (raw(r, c) < run) {
                if (run - raw(r, c) > 1e-9 * std::max(std::abs(run), 1.0)) ++panel.repairs;
                raw(r, c) = run;
            } else {
                run = raw(r, c);
            }
        }
    }
    if (panel.repairs > 0.05 * days * n)
        throw NonMonotoneBeyondTolerance(
            "monotonicity repairs touched " + std::to_string(panel.repairs) + " of " +
            std::to_string(days * n) + " entries");

    panel.final_values = raw.row(days - 1).transpose();
    for (int c = 0; c < n; ++c)
        if (!(panel.final_values[c] > 0.0))
            throw ValidationError("column '" + panel.labels[c] +
                                  "' never becomes positive; normalization is degenerate");
    panel.x = raw.array().rowwise() / panel.final_values.transpose().array();
    return panel;
}

}  // namespace

TimeSeriesPanel ingest_panel(const std::string& path) {
    std::string text = read_text_file(path);
    std::vector<std::string> lines;
    {
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t pos = text.find('\n', start);
            std::string line =
                pos == std::string::npos ? text.substr(start) : text.substr(start, pos - start);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(line);
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        while (!lines.empty() && lines.back().empty()) lines.pop_back();
    }
    if (lines.empty()) throw ParseError(path + ": empty panel file");
    auto header = csv_split(lines[0]);
    if (header.size() < 2 || header[0] != "date")
        throw ParseError(path + ": expected 'date,label_1,...' header");
    std::vector<std::string> labels(header.begin() + 1, header.end());
    const int n = static_cast<int>(labels.size());
    const int days = static_cast<int>(lines.size()) - 1;
    Mat raw(days, n);
    std::vector<std::string> dates(days);
    for (int r = 0; r < days; ++r) {
        auto f = csv_split(lines[r + 1]);
        if (static_cast<int>(f.size()) != n + 1)
            throw ParseError(path + ":" + std::to_string(r + 2) + ": expected " +
                             std::to_string(n + 1) + " fields");
        dates[r] = f[0];
        for (int c = 0; c < n; ++c) {
            errno = 0;
            char* end = nullptr;
            raw(r, c) = std::strtod(f[c + 1].c_str(), &end);
            if (end == f[c + 1].c_str() || *end != '\0')
                throw ParseError(path + ":" + std::to_string(r + 2) + ": bad number '" +
                                 f[c + 1] + "'");
        }
    }
    return finish_panel(std::move(labels), std::move(dates), std::move(raw));
}

TimeSeriesPanel panel_from_values(const std::vector<std::string>& labels, const Mat& values) {
    if (static_cast<Eigen::Index>(labels.size()) != values.cols())
        throw BadDims("label count does not match panel columns");
    std::vector<std::string> dates(values.rows());
    for (Eigen::Index r = 0; r < values.rows(); ++r) dates[r] = std::to_string(r);
    return finish_panel(labels, std::move(dates), values);
}

UndirectedGraph kernel_graph(const Mat& dist, double sigma) {
    if (!(sigma > 0.0)) throw BadBandwidth("kernel bandwidth must be positive");
    const int n = static_cast<int>(dist.rows());
    if (dist.cols() != n) throw BadDims("distance matrix must be square");
    const double scale = std::max(dist.cwiseAbs().maxCoeff(), 1.0);
    for (int i = 0; i < n; ++i) {
        if (std::abs(dist(i, i)) > 1e-9 * scale)
            throw ValidationError("distance matrix diagonal must be zero");
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(dist(i, j) - dist(j, i)) > 1e-9 * scale)
                throw ValidationError("distance matrix must be symmetric");
            if (dist(i, j) < 0.0) throw ValidationError("distances must be non-negative");
        }
    }
    std::vector<Edge> edges;
    edges.reserve(n * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double w = std::exp(-(dist(i, j) * dist(i, j)) / (sigma * sigma));
            // Guard against underflow to keep edge presence and positivity
            // aligned; distances this extreme carry no usable affinity anyway.
            edges.push_back({i, j, std::max(w, 1e-300)});
        }
    return UndirectedGraph(n, std::move(edges));
}

double median_pairwise_distance(const Mat& dist) {
    std::vector<double> vals;
    for (int i = 0; i < dist.rows(); ++i)
        for (int j = i + 1; j < dist.cols(); ++j) vals.push_back(dist(i, j));
    if (vals.empty()) throw ValidationError("distance matrix has no off-diagonal entries");
    std::sort(vals.begin(), vals.end());
    const std::size_t m = vals.size();
    return m % 2 ? vals[m / 2] : 0.5 * (vals[m / 2 - 1] + vals[m / 2]);
}

FitResult fit_dag_weights(const TimeSeriesPanel& panel, const FitOptions& opts) {
    const int n = panel.nodes();
    const int rows = panel.days() - 1;
    if (!(opts.gamma > 0.0)) throw ValidationError("gamma must be positive");

    std::vector<Arc> candidates = opts.candidates;
    if (candidates.empty()) {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                if (i != j) candidates.push_back({j, i, 1.0});
    }
    for (const auto& a : candidates)
        if (a.from < 0 || a.from >= n || a.to < 0 || a.to >= n || a.from == a.to)
            throw ValidationError("bad candidate arc");

    FitResult fit;
    fit.w = Mat::Zero(n, n);
    fit.residuals = Vec::Zero(n);
    for (int i = 0; i < n; ++i) {
        std::vector<int> sources;
        for (const auto& a : candidates)
            if (a.to == i) sources.push_back(a.from);
        if (sources.empty()) continue;
        if (static_cast<int>(sources.size()) >= rows)
            throw Underdetermined("node " + std::to_string(i) + " has " +
                                  std::to_string(sources.size()) + " candidate arcs but only " +
                                  std::to_string(rows) + " equations");
        Mat a(rows, sources.size());
        Vec b(rows);
        for (int t = 0; t < rows; ++t) {
            b[t] = panel.x(t + 1, i) - panel.x(t, i);
            for (std::size_t c = 0; c < sources.size(); ++c)
                a(t, c) = opts.gamma * std::max(panel.x(t, sources[c]) - panel.x(t, i), 0.0);
        }
        Vec z = opts.nonneg ? nnls(a, b) : Vec(a.colPivHouseholderQr().solve(b));
        for (std::size_t c = 0; c < sources.size(); ++c) fit.w(sources[c], i) = z[c];
        fit.residuals[i] = (a * z - b).norm();
    }

    double peak = fit.w.maxCoeff();
    fit.w_normalized = peak > 0.0 ? Mat(fit.w / peak) : fit.w;
    Vec indeg = fit.w_normalized.colwise().sum().transpose();
    fit.laplacian = Mat(indeg.asDiagonal()) - fit.w_normalized.transpose();
    return fit;
}

RealPipelineReport evaluate_real_pipeline(const TimeSeriesPanel& panel, const Mat& distances,
                                          double sigma, int source,
                                          const RealPipelineOptions& opts) {
    const int n = panel.nodes();
    if (distances.rows() != n || distances.cols() != n)
        throw BadDims("distance matrix does not match the panel");
    if (source < 0 || source >= n) throw ValidationError("source index out of range");

    RealPipelineReport rep;
    rep.sigma = sigma > 0.0 ? sigma : median_pairwise_distance(distances);
    rep.source = source;

    UndirectedGraph g = kernel_graph(distances, rep.sigma);
    EmbeddingParams ep;
    ep.k = opts.k;
    Dag proposed = build_dag(g, embed(g, ep), source, opts.repair);
    Dag hop = build_hop_dag(g, source);
    Dag lle = build_dag(g, embed_lle(g, ep), source, opts.repair);

    FitResult fit = fit_dag_weights(panel, opts.fit);
    rep.fitted_laplacian = fit.laplacian;

    auto score = [&](const Dag& d) {
        Mat w = Mat(d.adjacency());
        double peak = w.maxCoeff();
        if (peak > 0.0) w /= peak;
        Vec indeg = w.colwise().sum().transpose();
        Mat lap = Mat(indeg.asDiagonal()) - w.transpose();
        SimilarityReport s;
        s.re = relative_error(lap, fit.laplacian);
        Mat sym_a = 0.5 * (w + w.transpose());
        Mat sym_b = 0.5 * (fit.w_normalized + fit.w_normalized.transpose());
        s.dcs = deltacon_similarity(sym_a, sym_b);
        s.symmetrized = true;
        return s;
    };
    rep.methods["proposed"] = score(proposed);
    rep.methods["hop_dag"] = score(hop);
    rep.methods["lle_dag"] = score(lle);
    return rep;
}

}  // namespace dagdiff
