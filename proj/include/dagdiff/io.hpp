#pragma once

#include <string>
#include <vector>

#include "dagdiff/graph.hpp"
#include "dagdiff/linalg.hpp"

namespace dagdiff {

/// Shortest round-trippable decimal rendering of a double (printf %.17g with
/// a trailing-zero trim that preserves exact read-back).
std::string format_double(double v);

/// "ugraph v1" TSV: header line, then rows i<TAB>j<TAB>w with i < j.
void write_graph(const std::string& path, const UndirectedGraph& g);
UndirectedGraph read_graph(const std::string& path);

/// "dag v1" TSV: header line, then `source=<s>`, then rows i<TAB>j<TAB>w
/// meaning arc i -> j. Reading re-validates through Dag::build.
void write_dag(const std::string& path, const Dag& d);
Dag read_dag(const std::string& path);

/// "embed v1" TSV: header line, then `K=<k>`, then rows
/// i<TAB>p_1<TAB>...<TAB>p_K in full double precision.
void write_embedding(const std::string& path, const Mat& p);
Mat read_embedding(const std::string& path);

/// Trajectory/Sim-signal CSV: header `t,node_0,...,node_{N-1}`, one row per
/// grid time. Used by both predicted trajectories and simulated fractions.
void write_series_csv(const std::string& path, const std::vector<double>& times, const Mat& x);
void read_series_csv(const std::string& path, std::vector<double>& times, Mat& x);

/// Panel CSV: header `date,label_1,...,label_N`, one row per day.
void write_panel_csv(const std::string& path, const std::vector<std::string>& dates,
                     const std::vector<std::string>& labels, const Mat& values);

/// Distances CSV: header `label_a,label_b,miles`, one row per unordered pair.
/// Reading returns the sorted label list and the symmetric distance matrix.
void write_distances_csv(const std::string& path, const std::vector<std::string>& labels,
                         const Mat& dist);
void read_distances_csv(const std::string& path, std::vector<std::string>& labels, Mat& dist);

/// Permutes a square distance matrix from one label order to another.
/// Throws ValidationError when `want` contains a label absent from `have`.
Mat align_distance_matrix(const std::vector<std::string>& want,
                          const std::vector<std::string>& have, const Mat& dist);

/// Whole-file string helpers with IoError on failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace dagdiff
