#ifndef UAVOPT_POWER_ALLOC_HPP
#define UAVOPT_POWER_ALLOC_HPP

#include <vector>

#include <Eigen/Dense>

#include "uavopt/channel.hpp"
#include "uavopt/scenario.hpp"

namespace uavopt {

/// Minimum-power allocation for one node over its M slots.
/// powers(m) = max(0, water_level - w / gains(m)), w = B sigma^2 / N.
struct WaterfillResult {
    Eigen::VectorXd powers;
    double total_w = 0.0;
    double water_level = 0.0;
    std::vector<int> active_slots; // 0-based slot columns with positive power
};

/// Smallest total power that gives one node an average throughput of at least
/// `s_target` bits/s over the horizon. The achieved rate lies in
/// [s_target, s_target * (1 + 1e-8)].
WaterfillResult waterfill_min_power(const Eigen::Ref<const Eigen::VectorXd>& gains, double s_target,
                                    const RadioParams& radio, const TimeGrid& grid, int num_nodes);

/// Largest average throughput one node reaches with `budget_w` spread over its slots.
double waterfill_max_rate(const Eigen::Ref<const Eigen::VectorXd>& gains, double budget_w, const RadioParams& radio,
                          const TimeGrid& grid, int num_nodes);

struct PowerSolution {
    PowerAllocation allocation;
    double s = 0.0;                // min_n R_n achieved by `allocation`
    Eigen::VectorXd water_levels;  // one per node
};

/// Max-min power allocation for fixed gains: outer bisection on the common
/// rate, per-node water-filling inside.
PowerSolution optimize_power(const GainMatrix& gains, const Scenario& sc);
PowerSolution optimize_power(const Trajectory& traj, const Scenario& sc);

/// Upper bound on any achievable min rate: every node served from directly
/// overhead with the whole budget.
double overhead_rate_bound(const Scenario& sc);

} // namespace uavopt

#endif // UAVOPT_POWER_ALLOC_HPP
