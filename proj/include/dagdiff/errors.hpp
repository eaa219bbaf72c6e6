#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dagdiff {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Structural or semantic problem with an input (CLI exit code 1).
struct ValidationError : Error {
    using Error::Error;
};

/// Numerical routine failed to converge or broke down (CLI exit code 1).
struct SolverError : Error {
    using Error::Error;
};

/// Filesystem or parse problem (CLI exit code 2).
struct IoError : Error {
    using Error::Error;
};

struct CycleDetected : ValidationError {
    CycleDetected() : ValidationError("arc set contains a directed cycle") {}
};

struct Unreachable : ValidationError {
    int node;
    explicit Unreachable(int node_)
        : ValidationError("node " + std::to_string(node_) + " is unreachable from the start node"),
          node(node_) {}
};

struct DisconnectedGraph : ValidationError {
    std::vector<int> component;  // one offending connected component
    explicit DisconnectedGraph(std::vector<int> comp)
        : ValidationError(describe(comp)), component(std::move(comp)) {}

private:
    static std::string describe(const std::vector<int>& comp) {
        std::string s = "graph is disconnected; offending component: {";
        for (std::size_t i = 0; i < comp.size() && i < 16; ++i) {
            if (i) s += ", ";
            s += std::to_string(comp[i]);
        }
        if (comp.size() > 16) s += ", ...";
        s += "}";
        return s;
    }
};

struct BadDims : ValidationError {
    using ValidationError::ValidationError;
};

struct SolverFailure : SolverError {
    using SolverError::SolverError;
};

struct DimensionTooLarge : ValidationError {
    using ValidationError::ValidationError;
};

struct StepFailure : SolverError {
    using SolverError::SolverError;
};

struct GridMismatch : ValidationError {
    using ValidationError::ValidationError;
};

struct ZeroReference : ValidationError {
    ZeroReference() : ValidationError("reference Laplacian has zero Frobenius norm") {}
};

struct ConfigMismatch : ValidationError {
    using ValidationError::ValidationError;
};

struct EmptyGrid : ValidationError {
    EmptyGrid() : ValidationError("parameter grid is empty") {}
};

struct ParseError : IoError {
    using IoError::IoError;
};

struct NonMonotoneBeyondTolerance : ValidationError {
    using ValidationError::ValidationError;
};

struct BadBandwidth : ValidationError {
    using ValidationError::ValidationError;
};

struct Underdetermined : ValidationError {
    using ValidationError::ValidationError;
};

}  // namespace dagdiff
