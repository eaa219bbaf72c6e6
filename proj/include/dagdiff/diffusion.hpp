#pragma once

#include <vector>

#include "dagdiff/graph.hpp"
#include "dagdiff/linalg.hpp"

namespace dagdiff {

enum class DiffusionMode { Linear, Nonlinear };

struct DiffusionParams {
    double gamma = 1.0;
    std::vector<double> times;  // strictly increasing, first >= 0
    DiffusionMode mode = DiffusionMode::Linear;
    double atol = 1e-8;  // nonlinear integrator absolute tolerance
};

struct Trajectory {
    std::vector<double> times;
    Mat x;   // row m is x(t_m)
    Vec x0;

    /// Copy with entries clamped to [0, 1]; overshoot beyond 1e-9 is left to
    /// the caller's invariant checks, the clamp is only cosmetic.
    Mat clipped() const;
};

/// exp(-gamma*L̄*t) x0 evaluated by uniformization: -gamma*L̄ is a CTMC
/// generator, so the action is a Poisson-weighted sum of powers of the
/// substochastic-free transition matrix. Keeps iterates in [0, 1] for
/// probability-vector inputs and needs no eigendecomposition (L̄ may be
/// defective).
Vec expm_action(const SpMat& lbar, double gamma, double t, const Vec& x);

/// Closed-form linear model evaluated on the grid. x0 defaults to δ_source.
Trajectory diffuse_linear(const Dag& d, const DiffusionParams& params);
Trajectory diffuse_linear(const Dag& d, const DiffusionParams& params, const Vec& x0);

struct NonlinearReport {
    Trajectory trajectory;
    double max_divergence_from_linear = 0.0;  // max |x_nl - x_lin| over the grid
};

/// Rectified model dx_i/dt = gamma * sum over arcs j->i of W̄_ji*max(x_j - x_i, 0),
/// integrated with an adaptive embedded Runge-Kutta 4(5) pair.
NonlinearReport diffuse_nonlinear(const Dag& d, const DiffusionParams& params);
NonlinearReport diffuse_nonlinear(const Dag& d, const DiffusionParams& params, const Vec& x0);

/// Hop-decay predictor x_i(t) = 1 - exp(-alpha*t/h_i); the source reads 1 at
/// every grid time (its hop count is zero).
Trajectory hop_decay_predictor(const UndirectedGraph& g, int s, double alpha,
                               const std::vector<double>& times);

}  // namespace dagdiff
