#ifndef UAVOPT_SCENARIO_HPP
#define UAVOPT_SCENARIO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace uavopt {

struct GroundNode {
    int id = 0;               // 1-based
    Eigen::Vector2d position; // meters, altitude 0
};

struct UavParams {
    double altitude_m = 0.0;
    double v_max_mps = 0.0;
    Eigen::Vector2d start = Eigen::Vector2d::Zero();
    Eigen::Vector2d finish = Eigen::Vector2d::Zero();
};

struct RadioParams {
    double bandwidth_hz = 0.0;
    double noise_w_per_hz = 0.0;
    double beta0 = 0.0;
    // Kept for documentation; the gain model folds d0 = 1 m into beta0.
    double reference_distance_m = 1.0;
    double power_budget_w = 0.0;
};

struct TimeGrid {
    double horizon_s = 0.0;
    int num_slots = 0;
    double slot_s = 0.0;

    static TimeGrid from_slots(double horizon_s, int num_slots);
};

/// Immutable problem instance. Construct through `make_scenario` or
/// `load_scenario`, both of which validate.
struct Scenario {
    std::vector<GroundNode> nodes;
    UavParams uav;
    RadioParams radio;
    TimeGrid grid;

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int num_slots() const { return grid.num_slots; }
    /// Longest horizontal displacement allowed in one slot, V * delta.
    double max_step_m() const { return uav.v_max_mps * grid.slot_s; }
    /// 2 x N matrix of node coordinates.
    Eigen::Matrix2Xd node_positions() const;

    /// Copy with a different power budget.
    Scenario with_budget(double power_budget_w) const;
    /// Copy with every position (nodes, start, finish) shifted by `offset`.
    Scenario translated(const Eigen::Vector2d& offset) const;
};

/// Throws ConfigError on the first violated invariant.
void validate(const Scenario& sc);

Scenario make_scenario(std::vector<GroundNode> nodes, UavParams uav, RadioParams radio, TimeGrid grid);

/// Horizontal waypoints for slots 1..M. Column m-1 holds slot m; the start and
/// finish positions live in UavParams, not here.
struct Trajectory {
    Eigen::Matrix2Xd points;

    Trajectory() = default;
    explicit Trajectory(Eigen::Matrix2Xd pts) : points(std::move(pts)) {}

    int size() const { return static_cast<int>(points.cols()); }
    Eigen::Vector2d point(int slot) const { return points.col(slot - 1); }
};

double dbm_per_hz_to_w_per_hz(double dbm_per_hz);

enum class Leg { Start, Step, Finish };

struct Violation {
    Leg leg = Leg::Step;
    int slot = 0;         // slot whose incoming leg is too long; M + 1 for the finish leg
    double excess_m = 0.0;
};

/// Squared slack on the (V delta)^2 comparison.
inline constexpr double kMotionSlackM2 = 1e-6;

/// Returns every violated motion constraint: start -> 1, m-1 -> m, M -> finish.
/// Throws InfeasibleError if the trajectory does not have M points.
std::vector<Violation> check_trajectory(const Trajectory& traj, const Scenario& sc);

inline bool is_feasible(const Trajectory& traj, const Scenario& sc)
{
    return check_trajectory(traj, sc).empty();
}

Scenario load_scenario(std::string_view config_text);
Scenario load_scenario_file(const std::filesystem::path& path);
/// JSON text accepted by load_scenario; noise is written in W/Hz.
std::string serialize_scenario(const Scenario& sc);

} // namespace uavopt

#endif // UAVOPT_SCENARIO_HPP
