#include "dagdiff/io.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <climits>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "dagdiff/errors.hpp"

namespace dagdiff {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(const std::string& s, const std::string& path, int lineno) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE)
        throw ParseError(path + ":" + std::to_string(lineno) + ": bad number '" + s + "'");
    return v;
}

int parse_int(const std::string& s, const std::string& path, int lineno) {
    errno = 0;
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE || v < INT_MIN || v > INT_MAX)
        throw ParseError(path + ":" + std::to_string(lineno) + ": bad integer '" + s + "'");
    return static_cast<int>(v);
}

std::vector<std::string> read_lines(const std::string& path) {
    std::string text = read_text_file(path);
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

void expect_header(const std::vector<std::string>& lines, const std::string& want,
                   const std::string& path) {
    if (lines.empty() || lines[0] != want)
        throw ParseError(path + ": expected header '" + want + "'");
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failed on '" + path + "'");
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp + "' for writing");
        out << content;
        if (!out.flush()) throw IoError("write failed on '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move '" + tmp + "' to '" + path + "': " + ec.message());
}

void write_graph(const std::string& path, const UndirectedGraph& g) {
    std::string out = "ugraph v1\n";
    for (const auto& e : g.edges())
        out += std::to_string(e.i) + "\t" + std::to_string(e.j) + "\t" + format_double(e.w) + "\n";
    write_text_file(path, out);
}

UndirectedGraph read_graph(const std::string& path) {
    auto lines = read_lines(path);
    expect_header(lines, "ugraph v1", path);
    std::vector<Edge> edges;
    int n = 0;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        if (lines[k].empty()) continue;
        auto f = split(lines[k], '\t');
        if (f.size() != 3)
            throw ParseError(path + ":" + std::to_string(k + 1) + ": expected i<TAB>j<TAB>w");
        Edge e{parse_int(f[0], path, static_cast<int>(k + 1)),
               parse_int(f[1], path, static_cast<int>(k + 1)),
               parse_double(f[2], path, static_cast<int>(k + 1))};
        n = std::max({n, e.i + 1, e.j + 1});
        edges.push_back(e);
    }
    if (edges.empty()) throw ParseError(path + ": graph file has no edges");
    return UndirectedGraph(n, std::move(edges));
}

void write_dag(const std::string& path, const Dag& d) {
    std::string out = "dag v1\nsource=" + std::to_string(d.source()) + "\n";
    for (const auto& a : d.arcs())
        out += std::to_string(a.from) + "\t" + std::to_string(a.to) + "\t" + format_double(a.w) +
               "\n";
    write_text_file(path, out);
}

Dag read_dag(const std::string& path) {
    auto lines = read_lines(path);
    expect_header(lines, "dag v1", path);
    if (lines.size() < 2 || lines[1].rfind("source=", 0) != 0)
        throw ParseError(path + ": expected 'source=<s>' on line 2");
    int source = parse_int(lines[1].substr(7), path, 2);
    std::vector<Arc> arcs;
    int n = source + 1;
    for (std::size_t k = 2; k < lines.size(); ++k) {
        if (lines[k].empty()) continue;
        auto f = split(lines[k], '\t');
        if (f.size() != 3)
            throw ParseError(path + ":" + std::to_string(k + 1) + ": expected i<TAB>j<TAB>w");
        Arc a{parse_int(f[0], path, static_cast<int>(k + 1)),
              parse_int(f[1], path, static_cast<int>(k + 1)),
              parse_double(f[2], path, static_cast<int>(k + 1))};
        n = std::max({n, a.from + 1, a.to + 1});
        arcs.push_back(a);
    }
    return Dag::build(n, std::move(arcs), source);
}

void write_embedding(const std::string& path, const Mat& p) {
    std::string out = "embed v1\nK=" + std::to_string(p.cols()) + "\n";
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        out += std::to_string(i);
        for (Eigen::Index k = 0; k < p.cols(); ++k) out += "\t" + format_double(p(i, k));
        out += "\n";
    }
    write_text_file(path, out);
}

Mat read_embedding(const std::string& path) {
    auto lines = read_lines(path);
    expect_header(lines, "embed v1", path);
    if (lines.size() < 2 || lines[1].rfind("K=", 0) != 0)
        throw ParseError(path + ": expected 'K=<k>' on line 2");
    int k = parse_int(lines[1].substr(2), path, 2);
    if (k <= 0) throw ParseError(path + ": K must be positive");
    std::vector<std::pair<int, std::vector<double>>> rows;
    int n = 0;
    for (std::size_t m = 2; m < lines.size(); ++m) {
        if (lines[m].empty()) continue;
        auto f = split(lines[m], '\t');
        if (static_cast<int>(f.size()) != k + 1)
            throw ParseError(path + ":" + std::to_string(m + 1) + ": expected " +
                             std::to_string(k + 1) + " fields");
        int i = parse_int(f[0], path, static_cast<int>(m + 1));
        std::vector<double> coords(k);
        for (int c = 0; c < k; ++c)
            coords[c] = parse_double(f[c + 1], path, static_cast<int>(m + 1));
        n = std::max(n, i + 1);
        rows.emplace_back(i, std::move(coords));
    }
    Mat p = Mat::Zero(n, k);
    std::vector<char> seen(n, 0);
    for (const auto& [i, coords] : rows) {
        if (seen[i]) throw ParseError(path + ": duplicate row for node " + std::to_string(i));
        seen[i] = 1;
        for (int c = 0; c < k; ++c) p(i, c) = coords[c];
    }
    for (int i = 0; i < n; ++i)
        if (!seen[i]) throw ParseError(path + ": missing row for node " + std::to_string(i));
    return p;
}

void write_series_csv(const std::string& path, const std::vector<double>& times, const Mat& x) {
    if (static_cast<Eigen::Index>(times.size()) != x.rows())
        throw BadDims("series time count does not match row count");
    std::string out = "t";
    for (Eigen::Index i = 0; i < x.cols(); ++i) out += ",node_" + std::to_string(i);
    out += "\n";
    for (Eigen::Index m = 0; m < x.rows(); ++m) {
        out += format_double(times[m]);
        for (Eigen::Index i = 0; i < x.cols(); ++i) out += "," + format_double(x(m, i));
        out += "\n";
    }
    write_text_file(path, out);
}

void read_series_csv(const std::string& path, std::vector<double>& times, Mat& x) {
    auto lines = read_lines(path);
    if (lines.empty() || lines[0].rfind("t,node_0", 0) != 0)
        throw ParseError(path + ": expected 't,node_0,...' header");
    const int n = static_cast<int>(split(lines[0], ',').size()) - 1;
    const int m = static_cast<int>(lines.size()) - 1;
    times.assign(m, 0.0);
    x.resize(m, n);
    for (int r = 0; r < m; ++r) {
        auto f = split(lines[r + 1], ',');
        if (static_cast<int>(f.size()) != n + 1)
            throw ParseError(path + ":" + std::to_string(r + 2) + ": expected " +
                             std::to_string(n + 1) + " fields");
        times[r] = parse_double(f[0], path, r + 2);
        for (int i = 0; i < n; ++i) x(r, i) = parse_double(f[i + 1], path, r + 2);
    }
}

void write_panel_csv(const std::string& path, const std::vector<std::string>& dates,
                     const std::vector<std::string>& labels, const Mat& values) {
    if (static_cast<Eigen::Index>(dates.size()) != values.rows() ||
        static_cast<Eigen::Index>(labels.size()) != values.cols())
        throw BadDims("panel shape does not match dates/labels");
    std::string out = "date";
    for (const auto& l : labels) out += "," + l;
    out += "\n";
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        out += dates[r];
        for (Eigen::Index c = 0; c < values.cols(); ++c) out += "," + format_double(values(r, c));
        out += "\n";
    }
    write_text_file(path, out);
}

void write_distances_csv(const std::string& path, const std::vector<std::string>& labels,
                         const Mat& dist) {
    const int n = static_cast<int>(labels.size());
    if (dist.rows() != n || dist.cols() != n) throw BadDims("distance matrix shape mismatch");
    std::string out = "label_a,label_b,miles\n";
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            out += labels[i] + "," + labels[j] + "," + format_double(dist(i, j)) + "\n";
    write_text_file(path, out);
}

void read_distances_csv(const std::string& path, std::vector<std::string>& labels, Mat& dist) {
    auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "label_a,label_b,miles")
        throw ParseError(path + ": expected 'label_a,label_b,miles' header");
    std::vector<std::array<std::string, 2>> pairs;
    std::vector<double> miles;
    std::vector<std::string> seen;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        if (lines[k].empty()) continue;
        auto f = split(lines[k], ',');
        if (f.size() != 3)
            throw ParseError(path + ":" + std::to_string(k + 1) + ": expected 3 fields");
        pairs.push_back({f[0], f[1]});
        miles.push_back(parse_double(f[2], path, static_cast<int>(k + 1)));
        seen.push_back(f[0]);
        seen.push_back(f[1]);
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    labels = seen;
    const int n = static_cast<int>(labels.size());
    std::unordered_map<std::string, int> index;
    for (int i = 0; i < n; ++i) index[labels[i]] = i;
    dist = Mat::Zero(n, n);
    Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic> have =
        Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        int a = index[pairs[k][0]], b = index[pairs[k][1]];
        if (a == b) throw ParseError(path + ": self-distance for label '" + pairs[k][0] + "'");
        if (have(a, b))
            throw ParseError(path + ": duplicate pair " + pairs[k][0] + "," + pairs[k][1]);
        have(a, b) = have(b, a) = 1;
        dist(a, b) = dist(b, a) = miles[k];
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!have(i, j))
                throw ParseError(path + ": missing distance " + labels[i] + "," + labels[j]);
}

Mat align_distance_matrix(const std::vector<std::string>& want,
                          const std::vector<std::string>& have, const Mat& dist) {
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < have.size(); ++i) index[have[i]] = static_cast<int>(i);
    const int n = static_cast<int>(want.size());
    Mat out(n, n);
    std::vector<int> map(n);
    for (int i = 0; i < n; ++i) {
        auto it = index.find(want[i]);
        if (it == index.end())
            throw ValidationError("label '" + want[i] + "' missing from distance file");
        map[i] = it->second;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = dist(map[i], map[j]);
    return out;
}

}  // namespace dagdiff
