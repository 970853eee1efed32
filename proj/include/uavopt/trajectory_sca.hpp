#ifndef UAVOPT_TRAJECTORY_SCA_HPP
#define UAVOPT_TRAJECTORY_SCA_HPP

#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "uavopt/channel.hpp"
#include "uavopt/convex_core.hpp"
#include "uavopt/scenario.hpp"

namespace uavopt {

/// Concave lower bound of each slot rate around an incumbent trajectory.
///
/// For increments (dx, dy) of slot m, with
///   f(dx, dy) = dx^2 + dy^2 + grad_x * dx + grad_y * dy
/// the bound is  rate - curvature * f  (in log2 units per slot), which is
/// exact at zero increment and below the true slot rate everywhere.
/// All matrices are N x M.
struct LinearizedModel {
    Eigen::MatrixXd dist2;     // squared 3-D distance at the incumbent
    Eigen::MatrixXd gamma;     // N p / (B sigma^2), 1/W folded with p
    Eigen::MatrixXd rate;      // log2(1 + gamma beta0 / dist2)
    Eigen::MatrixXd curvature; // gamma beta0 / (ln2 dist2 (gamma beta0 + dist2))
    Eigen::MatrixXd grad_x;    // 2 (x - x_n)
    Eigen::MatrixXd grad_y;    // 2 (y - y_n)

    int num_nodes() const { return static_cast<int>(rate.rows()); }
    int num_slots() const { return static_cast<int>(rate.cols()); }
};

struct SCAOptions {
    double epsilon = 0.01; // bits/s
    int max_iterations = 100;
    MaximinOptions solver;
};

LinearizedModel linearize(const Trajectory& traj, const PowerAllocation& power, const Scenario& sc);

/// Per-node lower-bound average throughput for increments
/// delta = [dx_1..dx_M, dy_1..dy_M].
Eigen::VectorXd eval_lower_bound(const LinearizedModel& model, const Eigen::VectorXd& delta, const Scenario& sc);

/// The convex subproblem in increment space: lower-bound rates against the
/// motion balls, all centered at the incumbent.
MaximinProblem build_step_problem(const LinearizedModel& model, const Trajectory& traj, const Scenario& sc);

struct TrajectoryStep {
    Eigen::VectorXd delta;
    double s_lb = 0.0; // min_n of the lower bound at delta
    int solver_iterations = 0;
};

TrajectoryStep trajectory_step(const LinearizedModel& model, const Trajectory& traj, const Scenario& sc,
                               const MaximinOptions& solver = {});

Trajectory apply_increments(const Trajectory& traj, const Eigen::VectorXd& delta);

/// True min_n R_n for a fixed power allocation.
double min_rate(const Trajectory& traj, const PowerAllocation& power, const Scenario& sc);

struct InnerTrace {
    std::vector<double> min_rates; // true min rate of each accepted iterate, starting with traj0
    int iterations = 0;            // subproblems solved
};

struct TrajectoryResult {
    Trajectory trajectory;
    InnerTrace trace;
};

/// SCA loop for a fixed power allocation. Stops once the true min rate
/// improves by at most epsilon or after max_iterations subproblems.
TrajectoryResult optimize_trajectory(const Trajectory& traj0, const PowerAllocation& power, const Scenario& sc,
                                     const SCAOptions& opts = {});

} // namespace uavopt

#endif // UAVOPT_TRAJECTORY_SCA_HPP
