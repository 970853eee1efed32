#include "uavopt/alternating.hpp"

#include <chrono>

#include "uavopt/errors.hpp"
#include "uavopt/power_alloc.hpp"

namespace uavopt {

Solution solve_fixed_trajectory(const Scenario& sc, const Trajectory& traj)
{
    const GainMatrix gains = gain_matrix(traj, sc);
    PowerSolution power = optimize_power(gains, sc);
    ThroughputReport report = throughput_report(power.allocation, gains, sc);
    const double s = report.min_value;
    return {traj, std::move(power.allocation), std::move(report), s};
}

JointResult joint_optimize(const Scenario& sc, const Trajectory& traj_init, const JointOptions& opts)
{
    const auto t0 = std::chrono::steady_clock::now();
    if (!is_feasible(traj_init, sc)) {
        throw InfeasibleError("initial trajectory violates the motion constraints");
    }
    if (!(opts.outer_epsilon > 0.0) || opts.max_outer_iterations < 1) {
        throw SolverError("outer epsilon must be positive and the outer cap at least 1");
    }

    JointResult result;
    ConvergenceTrace& trace = result.trace;
    Solution current = solve_fixed_trajectory(sc, traj_init);
    trace.outer_s.push_back(current.s);

    for (int l = 0;; ++l) {
        if (l == opts.max_outer_iterations) {
            trace.hit_outer_cap = true;
            break;
        }
        TrajectoryResult inner = optimize_trajectory(current.trajectory, current.power, sc, opts.inner);
        trace.inner_iterations.push_back(inner.trace.iterations);

        // Re-optimizing power for the new trajectory is the next outer power step;
        // the SCA iterate keeps the old power feasible, so s cannot drop.
        Solution next = solve_fixed_trajectory(sc, inner.trajectory);
        const double gain = next.s - current.s;
        trace.outer_s.push_back(next.s);
        if (next.s >= current.s) {
            current = std::move(next);
        }
        if (gain <= opts.outer_epsilon) {
            break;
        }
    }

    result.solution = std::move(current);
    trace.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

} // namespace uavopt
