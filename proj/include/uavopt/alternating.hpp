#ifndef UAVOPT_ALTERNATING_HPP
#define UAVOPT_ALTERNATING_HPP

#include <vector>

#include "uavopt/channel.hpp"
#include "uavopt/scenario.hpp"
#include "uavopt/trajectory_sca.hpp"

namespace uavopt {

struct Solution {
    Trajectory trajectory;
    PowerAllocation power;
    ThroughputReport report;
    double s = 0.0; // report.min_value
};

struct ConvergenceTrace {
    std::vector<double> outer_s;         // min rate after each power step
    std::vector<int> inner_iterations;   // SCA subproblems per trajectory phase
    double wall_time_s = 0.0;
    bool hit_outer_cap = false;
};

struct JointOptions {
    SCAOptions inner;
    double outer_epsilon = 0.01;
    int max_outer_iterations = 50;
};

struct JointResult {
    Solution solution;
    ConvergenceTrace trace;
};

/// Power step and trajectory SCA, alternated until the min rate after a power
/// step improves by at most outer_epsilon. The returned power is optimal for
/// the returned trajectory.
JointResult joint_optimize(const Scenario& sc, const Trajectory& traj_init, const JointOptions& opts = {});

/// Solution for a fixed trajectory: one power step.
Solution solve_fixed_trajectory(const Scenario& sc, const Trajectory& traj);

} // namespace uavopt

#endif // UAVOPT_ALTERNATING_HPP
