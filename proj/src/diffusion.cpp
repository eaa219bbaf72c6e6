#include "dagdiff/diffusion.hpp"

#include <algorithm>
#include <cmath>

namespace dagdiff {

namespace {

void check_params(const DiffusionParams& params) {
    if (!(params.gamma > 0.0)) throw ValidationError("gamma must be positive");
    if (params.times.empty()) throw ValidationError("time grid is empty");
    if (params.times.front() < 0.0) throw ValidationError("grid times must be non-negative");
    for (std::size_t m = 1; m < params.times.size(); ++m)
        if (params.times[m] <= params.times[m - 1])
            throw ValidationError("time grid must be strictly increasing");
}

void check_x0(const Dag& d, const Vec& x0) {
    if (x0.size() != d.node_count())
        throw BadDims("initial condition length does not match the DAG");
}

/// Right side of the rectified model.
Vec nonlinear_rhs(const Dag& d, double gamma, const Vec& x) {
    Vec dx = Vec::Zero(x.size());
    for (const auto& a : d.arcs()) {
        double flow = x[a.from] - x[a.to];
        if (flow > 0.0) dx[a.to] += gamma * a.w * flow;
    }
    return dx;
}

}  // namespace

Mat Trajectory::clipped() const {
    return x.cwiseMax(0.0).cwiseMin(1.0);
}

Vec expm_action(const SpMat& lbar, double gamma, double t, const Vec& x) {
    if (lbar.rows() != lbar.cols() || lbar.rows() != x.size())
        throw BadDims("Laplacian/vector dimensions disagree");
    if (t < 0.0) throw ValidationError("time must be non-negative");
    if (t == 0.0 || gamma == 0.0) return x;

    double max_indeg = 0.0;
    for (int i = 0; i < lbar.rows(); ++i) max_indeg = std::max(max_indeg, lbar.coeff(i, i));
    if (max_indeg <= 0.0) return x;  // no arcs: L̄ = 0

    // Uniformization: -gamma*L̄ generates a CTMC, so the exponential action is
    // a Poisson mixture of powers of the stochastic matrix
    // P = I - (gamma/omega)*L̄ with omega = gamma*max_indeg. All iterates stay
    // inside [min(x), max(x)], and defective L̄ needs no special casing.
    const double omega = gamma * max_indeg;
    SpMat p(lbar.rows(), lbar.cols());
    p.setIdentity();
    p -= (gamma / omega) * lbar;
    p.makeCompressed();

    const int segments = std::max(1, static_cast<int>(std::ceil(omega * t / 200.0)));
    const double tau = t / segments;
    const double rate = omega * tau;

    Vec y = x;
    for (int seg = 0; seg < segments; ++seg) {
        double weight = std::exp(-rate);
        double cum = weight;
        Vec term = y;
        Vec acc = weight * term;
        const int hard_cap = static_cast<int>(4.0 * rate) + 400;
        int k = 1;
        for (; k <= hard_cap; ++k) {
            term = p * term;
            weight *= rate / k;
            acc += weight * term;
            cum += weight;
            if (1.0 - cum < 1e-15) break;
            if (weight < 1e-17 && k > rate + 10.0 * std::sqrt(rate) + 20.0) break;
        }
        if (k > hard_cap)
            throw SolverFailure("uniformization series failed to converge");
        y = acc;
    }
    return y;
}

Trajectory diffuse_linear(const Dag& d, const DiffusionParams& params) {
    return diffuse_linear(d, params, Vec(Vec::Unit(d.node_count(), d.source())));
}

Trajectory diffuse_linear(const Dag& d, const DiffusionParams& params, const Vec& x0) {
    check_params(params);
    check_x0(d, x0);
    SpMat lbar = build_directed_laplacian(d);
    Trajectory out;
    out.times = params.times;
    out.x0 = x0;
    out.x.resize(params.times.size(), d.node_count());
    Vec cur = x0;
    double t_prev = 0.0;
    for (std::size_t m = 0; m < params.times.size(); ++m) {
        cur = expm_action(lbar, params.gamma, params.times[m] - t_prev, cur);
        t_prev = params.times[m];
        out.x.row(m) = cur.transpose();
    }
    return out;
}

NonlinearReport diffuse_nonlinear(const Dag& d, const DiffusionParams& params) {
    return diffuse_nonlinear(d, params, Vec(Vec::Unit(d.node_count(), d.source())));
}

NonlinearReport diffuse_nonlinear(const Dag& d, const DiffusionParams& params, const Vec& x0) {
    check_params(params);
    check_x0(d, x0);

    // Dormand-Prince 5(4) embedded pair with absolute-error step control.
    // The stage abscissae are unused because the right-hand side is autonomous.
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    double max_indeg = 0.0;
    for (double v : d.in_degrees()) max_indeg = std::max(max_indeg, v);
    double h = 0.1 / std::max(params.gamma * max_indeg, 1e-3);

    Trajectory traj;
    traj.times = params.times;
    traj.x0 = x0;
    traj.x.resize(params.times.size(), d.node_count());

    Vec y = x0;
    double t = 0.0;
    Vec k1 = nonlinear_rhs(d, params.gamma, y);
    for (std::size_t m = 0; m < params.times.size(); ++m) {
        const double target = params.times[m];
        while (t < target) {
            double step = std::min(h, target - t);
            Vec k2 = nonlinear_rhs(d, params.gamma, y + step * (a21 * k1));
            Vec k3 = nonlinear_rhs(d, params.gamma, y + step * (a31 * k1 + a32 * k2));
            Vec k4 = nonlinear_rhs(d, params.gamma, y + step * (a41 * k1 + a42 * k2 + a43 * k3));
            Vec k5 = nonlinear_rhs(d, params.gamma,
                                   y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            Vec k6 = nonlinear_rhs(
                d, params.gamma,
                y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            Vec y5 = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            Vec k7 = nonlinear_rhs(d, params.gamma, y5);
            double err =
                (step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7))
                    .cwiseAbs()
                    .maxCoeff();
            if (err <= params.atol) {
                t += step;
                y = y5;
                k1 = k7;  // first-same-as-last
            }
            double factor = err > 0.0 ? 0.9 * std::pow(params.atol / err, 0.2) : 5.0;
            h = std::max(step * std::clamp(factor, 0.2, 5.0), 1e-300);
            if (h < 1e-14 * std::max(1.0, t))
                throw StepFailure("adaptive step size underflow at t = " + std::to_string(t));
        }
        traj.x.row(m) = y.transpose();
    }

    NonlinearReport rep;
    rep.trajectory = std::move(traj);
    Trajectory lin = diffuse_linear(d, params, x0);
    rep.max_divergence_from_linear = (rep.trajectory.x - lin.x).cwiseAbs().maxCoeff();
    return rep;
}

Trajectory hop_decay_predictor(const UndirectedGraph& g, int s, double alpha,
                               const std::vector<double>& times) {
    if (!(alpha > 0.0)) throw ValidationError("alpha must be positive");
    if (s < 0 || s >= g.node_count()) throw ValidationError("source index out of range");
    std::vector<int> hops = hop_distances(g, s);
    Trajectory out;
    out.times = times;
    out.x0 = Vec::Unit(g.node_count(), s);
    out.x.resize(times.size(), g.node_count());
    for (std::size_t m = 0; m < times.size(); ++m)
        for (int i = 0; i < g.node_count(); ++i)
            out.x(m, i) =
                i == s ? 1.0 : 1.0 - std::exp(-alpha * times[m] / static_cast<double>(hops[i]));
    return out;
}

}  // namespace dagdiff
