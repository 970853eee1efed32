#include "uavopt/experiments.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "uavopt/errors.hpp"
#include "uavopt/power_alloc.hpp"

namespace uavopt {

Trajectory straight_line_trajectory(const Scenario& sc)
{
    const int M = sc.num_slots();
    const Eigen::Vector2d span = sc.uav.finish - sc.uav.start;
    const double step = span.norm() / M;
    if (step * step > sc.max_step_m() * sc.max_step_m() + kMotionSlackM2) {
        throw InfeasibleError("straight flight from start to finish needs more than the maximum speed");
    }
    Eigen::Matrix2Xd pts(2, M);
    for (int m = 1; m <= M; ++m) {
        pts.col(m - 1) = sc.uav.start + (static_cast<double>(m) / M) * span;
    }
    pts.col(M - 1) = sc.uav.finish;
    return Trajectory(std::move(pts));
}

Solution static_center_benchmark(const Scenario& sc)
{
    const Eigen::Vector2d center = sc.node_positions().rowwise().mean();
    Trajectory hold(center.replicate(1, sc.num_slots()));
    return solve_fixed_trajectory(sc, hold);
}

Solution straight_line_benchmark(const Scenario& sc)
{
    return solve_fixed_trajectory(sc, straight_line_trajectory(sc));
}

Eigen::VectorXd slot_speeds(const Trajectory& traj, const Scenario& sc)
{
    const int M = traj.size();
    Eigen::VectorXd speed(M);
    Eigen::Vector2d prev = sc.uav.start;
    for (int m = 0; m < M; ++m) {
        speed(m) = (traj.points.col(m) - prev).norm() / sc.grid.slot_s;
        prev = traj.points.col(m);
    }
    return speed;
}

std::vector<SweepRow> sweep_budget(const Scenario& sc, const std::vector<double>& budgets, const JointOptions& opts)
{
    for (std::size_t i = 0; i < budgets.size(); ++i) {
        if (!(budgets[i] > 0.0) || (i > 0 && budgets[i] < budgets[i - 1])) {
            throw ConfigError("sweep budgets must be positive and ascending");
        }
    }
    std::vector<SweepRow> rows;
    const Trajectory straight = straight_line_trajectory(sc);
    Trajectory previous_best;
    double previous_s = 0.0;
    for (double budget : budgets) {
        const Scenario at = sc.with_budget(budget);
        SweepRow row;
        row.budget_w = budget;
        row.s_benchmark = solve_fixed_trajectory(at, straight).s;
        row.s_static = static_center_benchmark(at).s;

        JointResult run = joint_optimize(at, straight, opts);
        row.outer_iters = static_cast<int>(run.trace.inner_iterations.size());
        // The previous budget's trajectory stays feasible here and can only gain
        // from more power, so retry from it when the cold start lands lower.
        if (previous_best.size() > 0 && run.solution.s < previous_s) {
            JointResult warm = joint_optimize(at, previous_best, opts);
            row.outer_iters += static_cast<int>(warm.trace.inner_iterations.size());
            if (warm.solution.s > run.solution.s) {
                run = std::move(warm);
            }
        }
        row.s_proposed = run.solution.s;
        previous_best = run.solution.trajectory;
        previous_s = run.solution.s;
        rows.push_back(row);
    }
    return rows;
}

namespace {

class PrecisionGuard {
public:
    explicit PrecisionGuard(std::ostream& out) : out_(out), flags_(out.flags()), prec_(out.precision())
    {
        out_ << std::defaultfloat << std::setprecision(9);
    }
    ~PrecisionGuard()
    {
        out_.flags(flags_);
        out_.precision(prec_);
    }

private:
    std::ostream& out_;
    std::ios::fmtflags flags_;
    std::streamsize prec_;
};

} // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const Scenario& sc)
{
    PrecisionGuard guard(out);
    const Eigen::VectorXd speed = slot_speeds(traj, sc);
    out << "slot,t_s,x_m,y_m,speed_mps\n";
    for (int m = 1; m <= traj.size(); ++m) {
        out << m << ',' << m * sc.grid.slot_s << ',' << traj.point(m).x() << ',' << traj.point(m).y() << ','
            << speed(m - 1) << '\n';
    }
}

void write_power_csv(std::ostream& out, const Solution& sol, const Scenario& sc)
{
    PrecisionGuard guard(out);
    const GainMatrix gains = gain_matrix(sol.trajectory, sc);
    out << "slot,node,p_w,gain\n";
    for (int m = 0; m < gains.cols(); ++m) {
        for (int n = 0; n < gains.rows(); ++n) {
            out << m + 1 << ',' << sc.nodes[n].id << ',' << sol.power.p(n, m) << ',' << gains(n, m) << '\n';
        }
    }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows)
{
    PrecisionGuard guard(out);
    out << "method,s_bps,outer_iters,wall_time_s\n";
    for (const auto& row : rows) {
        out << row.method << ',' << row.s_bps << ',' << row.outer_iters << ',' << row.wall_time_s << '\n';
    }
}

void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace)
{
    PrecisionGuard guard(out);
    out << "outer_iter,s_bps,inner_iters\n";
    for (std::size_t l = 0; l < trace.outer_s.size(); ++l) {
        // Entry l follows trajectory phase l (entry 0 is the initial power step).
        const int inner = l == 0 ? 0 : trace.inner_iterations[l - 1];
        out << l << ',' << trace.outer_s[l] << ',' << inner << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows)
{
    PrecisionGuard guard(out);
    out << "budget_w,s_proposed,s_benchmark,s_static,outer_iters\n";
    for (const auto& row : rows) {
        out << row.budget_w << ',' << row.s_proposed << ',' << row.s_benchmark << ',' << row.s_static << ','
            << row.outer_iters << '\n';
    }
}

namespace {

std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

} // namespace

CsvTable read_csv(std::istream& in)
{
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError("empty CSV input");
    }
    table.header = split_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto cells = split_line(line);
        if (cells.size() != table.header.size()) {
            throw ConfigError("CSV row width does not match header");
        }
        table.rows.push_back(std::move(cells));
    }
    return table;
}

Eigen::VectorXd CsvTable::column(const std::string& name) const
{
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        throw ConfigError("CSV has no column '" + name + "'");
    }
    const auto idx = static_cast<std::size_t>(it - header.begin());
    Eigen::VectorXd out(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out(static_cast<Eigen::Index>(r)) = std::stod(rows[r][idx]);
    }
    return out;
}

} // namespace uavopt
