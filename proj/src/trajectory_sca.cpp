#include "uavopt/trajectory_sca.hpp"

#include <cmath>
#include <numbers>

#include "uavopt/errors.hpp"

namespace uavopt {

LinearizedModel linearize(const Trajectory& traj, const PowerAllocation& power, const Scenario& sc)
{
    const int N = sc.num_nodes();
    const int M = traj.size();
    if (M != sc.num_slots() || power.p.rows() != N || power.p.cols() != M) {
        throw SolverError("linearize: trajectory and power shapes do not match the scenario");
    }
    const double noise = node_noise_w(sc.radio, N);
    const double beta0 = sc.radio.beta0;
    const double h2 = sc.uav.altitude_m * sc.uav.altitude_m;

    LinearizedModel model;
    model.dist2.resize(N, M);
    model.gamma = power.p / noise;
    model.rate.resize(N, M);
    model.curvature.resize(N, M);
    model.grad_x.resize(N, M);
    model.grad_y.resize(N, M);
    for (int n = 0; n < N; ++n) {
        const Eigen::Vector2d node = sc.nodes[n].position;
        for (int m = 0; m < M; ++m) {
            const Eigen::Vector2d rel = traj.points.col(m) - node;
            const double d = rel.squaredNorm() + h2;
            const double a = model.gamma(n, m) * beta0;
            model.dist2(n, m) = d;
            model.rate(n, m) = log2_1p(a / d);
            model.curvature(n, m) = a / (std::numbers::ln2 * d * (a + d));
            model.grad_x(n, m) = 2.0 * rel.x();
            model.grad_y(n, m) = 2.0 * rel.y();
        }
    }
    return model;
}

Eigen::VectorXd eval_lower_bound(const LinearizedModel& model, const Eigen::VectorXd& delta, const Scenario& sc)
{
    const int N = model.num_nodes();
    const int M = model.num_slots();
    if (delta.size() != 2 * M) {
        throw SolverError("eval_lower_bound: increment vector must have length 2M");
    }
    const Eigen::ArrayXd dx = delta.head(M).array();
    const Eigen::ArrayXd dy = delta.tail(M).array();
    const double scale = sc.radio.bandwidth_hz / N / sc.grid.horizon_s;

    Eigen::VectorXd out(N);
    for (int n = 0; n < N; ++n) {
        const Eigen::ArrayXd f = dx.square() + dy.square() + model.grad_x.row(n).transpose().array() * dx
                                 + model.grad_y.row(n).transpose().array() * dy;
        const Eigen::ArrayXd lb = model.rate.row(n).transpose().array() - model.curvature.row(n).transpose().array() * f;
        out(n) = scale * lb.sum();
    }
    return out;
}

MaximinProblem build_step_problem(const LinearizedModel& model, const Trajectory& traj, const Scenario& sc)
{
    const int N = model.num_nodes();
    const int M = model.num_slots();
    const double scale = sc.radio.bandwidth_hz / N / sc.grid.horizon_s;

    MaximinProblem prob;
    prob.num_slots = M;
    prob.offset = scale * model.rate.rowwise().sum();
    prob.linear.resize(N, 2 * M);
    prob.linear.leftCols(M) = -scale * model.curvature.cwiseProduct(model.grad_x);
    prob.linear.rightCols(M) = -scale * model.curvature.cwiseProduct(model.grad_y);
    prob.curvature = scale * model.curvature;

    // Half the check slack keeps delta = 0 strictly inside for incumbents on
    // the boundary while every solution still passes check_trajectory.
    const double step = sc.max_step_m();
    const double radius = std::sqrt(step * step + 0.5 * kMotionSlackM2);
    prob.balls.reserve(M + 1);
    prob.balls.push_back({0, -1, traj.point(1) - sc.uav.start, radius});
    for (int m = 1; m < M; ++m) {
        prob.balls.push_back({m, m - 1, traj.points.col(m) - traj.points.col(m - 1), radius});
    }
    prob.balls.push_back({M - 1, -1, traj.point(M) - sc.uav.finish, radius});
    return prob;
}

TrajectoryStep trajectory_step(const LinearizedModel& model, const Trajectory& traj, const Scenario& sc,
                               const MaximinOptions& solver)
{
    const MaximinSolution sol = solve_maximin(build_step_problem(model, traj, sc), solver);
    return {sol.delta, sol.s_value, sol.iterations};
}

Trajectory apply_increments(const Trajectory& traj, const Eigen::VectorXd& delta)
{
    const int M = traj.size();
    if (delta.size() != 2 * M) {
        throw SolverError("apply_increments: increment vector must have length 2M");
    }
    Trajectory next = traj;
    next.points.row(0) += delta.head(M).transpose();
    next.points.row(1) += delta.tail(M).transpose();
    return next;
}

double min_rate(const Trajectory& traj, const PowerAllocation& power, const Scenario& sc)
{
    return throughput_report(power, gain_matrix(traj, sc), sc).min_value;
}

TrajectoryResult optimize_trajectory(const Trajectory& traj0, const PowerAllocation& power, const Scenario& sc,
                                     const SCAOptions& opts)
{
    if (!(opts.epsilon > 0.0)) {
        throw SolverError("SCA epsilon must be positive");
    }
    if (!is_feasible(traj0, sc)) {
        throw InfeasibleError("initial trajectory violates the motion constraints");
    }

    TrajectoryResult result{traj0, {}};
    double current = min_rate(traj0, power, sc);
    result.trace.min_rates.push_back(current);

    while (result.trace.iterations < opts.max_iterations) {
        const LinearizedModel model = linearize(result.trajectory, power, sc);
        const TrajectoryStep step = trajectory_step(model, result.trajectory, sc, opts.solver);
        ++result.trace.iterations;

        Trajectory candidate = apply_increments(result.trajectory, step.delta);
        const double value = min_rate(candidate, power, sc);
        // The solver stops within tol of the surrogate optimum, so near a fixed
        // point the candidate can fall a hair below the incumbent.
        if (value < current || !is_feasible(candidate, sc)) {
            break;
        }
        const double gain = value - current;
        result.trajectory = std::move(candidate);
        current = value;
        result.trace.min_rates.push_back(current);
        if (gain <= opts.epsilon) {
            break;
        }
    }
    return result;
}

} // namespace uavopt
