#ifndef UAVOPT_EXPERIMENTS_HPP
#define UAVOPT_EXPERIMENTS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "uavopt/alternating.hpp"
#include "uavopt/scenario.hpp"

namespace uavopt {

/// Uniform-speed straight flight: point m = start + (m / M) (finish - start).
/// Throws InfeasibleError if that needs more than V.
Trajectory straight_line_trajectory(const Scenario& sc);

/// Fixed access point at the mean node position for all slots, with optimized
/// power. Start/finish constraints are not applied.
Solution static_center_benchmark(const Scenario& sc);

/// Straight-line flight with optimized power.
Solution straight_line_benchmark(const Scenario& sc);

/// Per-slot speed |point m - point m-1| / delta with point 0 = start.
Eigen::VectorXd slot_speeds(const Trajectory& traj, const Scenario& sc);

struct SweepRow {
    double budget_w = 0.0;
    double s_proposed = 0.0;
    double s_benchmark = 0.0;
    double s_static = 0.0;
    int outer_iters = 0;
};

/// One row per budget (positive, ascending) with all three methods.
std::vector<SweepRow> sweep_budget(const Scenario& sc, const std::vector<double>& budgets,
                                   const JointOptions& opts = {});

struct SummaryRow {
    std::string method;
    double s_bps = 0.0;
    int outer_iters = 0;
    double wall_time_s = 0.0;
};

// CSV output, 9 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const Scenario& sc);
void write_power_csv(std::ostream& out, const Solution& sol, const Scenario& sc);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column `name` parsed as doubles.
    Eigen::VectorXd column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);

} // namespace uavopt

#endif // UAVOPT_EXPERIMENTS_HPP
