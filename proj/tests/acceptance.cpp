// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "uavopt/alternating.hpp"
#include "uavopt/experiments.hpp"
#include "uavopt/power_alloc.hpp"
#include "uavopt/trajectory_sca.hpp"

using namespace uavopt;
using uavopt::testing::case_scenario;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Recorder {
public:
    void fail(const std::string& why)
    {
        if (pass_) {
            first_ = why;
        }
        pass_ = false;
    }
    void expect(bool ok, const std::string& why)
    {
        if (!ok) {
            fail(why);
        }
    }
    Outcome done(const std::string& summary) const { return {pass_, pass_ ? summary : first_}; }

private:
    bool pass_ = true;
    std::string first_;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

// Shared by criteria 1-3.
struct PowerInstance {
    Scenario sc;
    GainMatrix gains;
    PowerSolution sol;
};

std::vector<PowerInstance> random_power_instances()
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> count(1, 3);
    std::uniform_int_distribution<int> slots(1, 4);
    std::uniform_real_distribution<double> log_gain(-10.0, -6.0);
    std::uniform_real_distribution<double> budget(0.1, 10.0);
    std::vector<PowerInstance> out;
    for (int i = 0; i < 50; ++i) {
        const int N = count(rng);
        const int M = slots(rng);
        std::vector<Eigen::Vector2d> pos(N, Eigen::Vector2d::Zero());
        for (int n = 0; n < N; ++n) {
            pos[n] = Eigen::Vector2d(n, 0);
        }
        Scenario sc = uavopt::testing::small_scenario(pos, M, M, {0, 0}, {0, 0}, budget(rng));
        GainMatrix g(N, M);
        for (Eigen::Index k = 0; k < g.size(); ++k) {
            g(k) = std::pow(10.0, log_gain(rng));
        }
        PowerSolution sol = optimize_power(g, sc);
        out.push_back({std::move(sc), std::move(g), std::move(sol)});
    }
    return out;
}

Outcome power_oracle(const std::vector<PowerInstance>& instances, double solve_seconds)
{
    const auto t0 = Clock::now();
    Recorder rec;
    double worst = 0.0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const auto& inst = instances[i];
        const double grid = uavopt::testing::brute_force_power_grid(inst.gains, inst.sc.radio, inst.sc.grid.horizon_s);
        const double rel = std::abs(grid - inst.sol.s) / inst.sol.s;
        worst = std::max(worst, rel);
        rec.expect(rel <= 1e-3, fmt("instance %g: grid %.9g vs solver %.9g", static_cast<double>(i), grid, inst.sol.s));
    }
    const double total = solve_seconds + seconds_since(t0);
    rec.expect(total < 60.0, fmt("runtime %.3g s exceeds 60 s", total));
    return rec.done(fmt("50 instances, worst relative gap %.3g, %.3g s", worst, total));
}

Outcome waterfill_kkt(const std::vector<PowerInstance>& instances)
{
    Recorder rec;
    double worst = 0.0;
    for (const auto& inst : instances) {
        const int N = inst.sc.num_nodes();
        const double w = inst.sc.radio.bandwidth_hz * inst.sc.radio.noise_w_per_hz / N;
        for (int n = 0; n < N; ++n) {
            const double level = inst.sol.water_levels(n);
            for (int m = 0; m < inst.sc.num_slots(); ++m) {
                const double floor = w / inst.gains(n, m);
                const double p = inst.sol.allocation.p(n, m);
                if (p > 0.0) {
                    const double rel = std::abs(p + floor - level) / level;
                    worst = std::max(worst, rel);
                    rec.expect(rel <= 1e-9, fmt("active slot off the water level by %.3g", rel));
                } else {
                    rec.expect(level <= floor, fmt("inactive slot below water: level %.9g floor %.9g", level, floor));
                }
            }
        }
    }
    return rec.done(fmt("worst active-slot deviation %.3g", worst));
}

Outcome equal_rate(const std::vector<PowerInstance>& instances)
{
    Recorder rec;
    double worst_spread = 0.0;
    double worst_budget = 0.0;
    for (const auto& inst : instances) {
        const ThroughputReport r = throughput_report(inst.sol.allocation, inst.gains, inst.sc);
        const double spread = (r.per_node.maxCoeff() - r.per_node.minCoeff()) / r.per_node.minCoeff();
        const double budget = inst.sc.radio.power_budget_w;
        const double slack = std::abs(inst.sol.allocation.total_w() - budget) / budget;
        worst_spread = std::max(worst_spread, spread);
        worst_budget = std::max(worst_budget, slack);
        rec.expect(spread <= 1e-6, fmt("rate spread %.3g", spread));
        rec.expect(slack <= 1e-9, fmt("budget residual %.3g", slack));
    }
    return rec.done(fmt("worst rate spread %.3g, worst budget residual %.3g", worst_spread, worst_budget));
}

Outcome bound_validity()
{
    const Scenario sc = case_scenario(1);
    const Trajectory line = straight_line_trajectory(sc);
    const PowerAllocation power = optimize_power(line, sc).allocation;
    const LinearizedModel model = linearize(line, power, sc);
    const int M = sc.num_slots();
    Recorder rec;

    const Eigen::VectorXd tangent = eval_lower_bound(model, Eigen::VectorXd::Zero(2 * M), sc);
    const Eigen::VectorXd truth = throughput_report(power, gain_matrix(line, sc), sc).per_node;
    const double tangent_err = ((tangent - truth).array().abs() / truth.array()).maxCoeff();
    rec.expect(tangent_err <= 1e-12, fmt("tangency error %.3g", tangent_err));

    std::mt19937_64 rng(99);
    double worst = -std::numeric_limits<double>::infinity();
    for (int draw = 0; draw < 1000; ++draw) {
        const Trajectory moved = uavopt::testing::jittered_trajectory(line, 29.0, rng);
        rec.expect(is_feasible(moved, sc), "random draw is not feasible");
        Eigen::VectorXd delta(2 * M);
        delta.head(M) = (moved.points.row(0) - line.points.row(0)).transpose();
        delta.tail(M) = (moved.points.row(1) - line.points.row(1)).transpose();
        const Eigen::VectorXd lb = eval_lower_bound(model, delta, sc);
        const Eigen::VectorXd actual = throughput_report(power, gain_matrix(moved, sc), sc).per_node;
        const double excess = (lb - actual).maxCoeff();
        worst = std::max(worst, excess);
        rec.expect(excess <= 1e-12, fmt("lower bound exceeds true rate by %.3g", excess));
    }
    return rec.done(fmt("tangency %.3g, worst (bound - true) %.3g over 1000 draws", tangent_err, worst));
}

Outcome maximin_oracle()
{
    std::mt19937_64 rng(123);
    Recorder rec;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const MaximinProblem prob = uavopt::testing::random_maximin_2d(rng, 2 + i % 3);
        const MaximinSolution sol = solve_maximin(prob);
        const auto grid = uavopt::testing::grid_maximin_2d(prob, 500);
        // Grid resolution in objective units: pitch times the largest gradient.
        const double resolution = prob.balls[0].radius / 500 * grid.lipschitz;
        const double gap = sol.s_value - grid.value;
        worst = std::max(worst, std::abs(gap) / resolution);
        rec.expect(gap >= -1e-6, fmt("grid beats solver by %.3g", -gap));
        rec.expect(gap <= 3.0 * resolution, fmt("solver %.3g cells above grid", gap / resolution));
        const double viol = prob.max_ball_violation(sol.delta);
        rec.expect(viol <= 1e-8, fmt("ball violated by %.3g", viol));
    }
    return rec.done(fmt("20 instances, worst |gap| = %.3g grid cells", worst));
}

struct CaseRun {
    Scenario sc;
    JointResult result;
    double seconds = 0.0;
};

Outcome monotone_convergence(const std::vector<CaseRun>& runs)
{
    Recorder rec;
    std::string summary;
    for (std::size_t c = 0; c < runs.size(); ++c) {
        const auto& trace = runs[c].result.trace;
        for (std::size_t l = 1; l < trace.outer_s.size(); ++l) {
            rec.expect(trace.outer_s[l] >= trace.outer_s[l - 1] - 1e-9, "outer trace decreased");
        }
        rec.expect(!trace.hit_outer_cap && trace.inner_iterations.size() <= 50, "outer loop hit 50 iterations");
        rec.expect(runs[c].seconds < 120.0, fmt("case run took %.3g s", runs[c].seconds));
        summary += fmt("case %g: %g outer iterations, %.3g s; ", c + 1.0, static_cast<double>(trace.inner_iterations.size()),
                       runs[c].seconds);
    }
    return rec.done(summary);
}

Outcome budget_sweep(std::vector<Solution>& produced)
{
    const Scenario sc = case_scenario(1);
    const std::vector<SweepRow> rows = sweep_budget(sc, {1, 2, 3, 4, 5});
    Recorder rec;
    rec.expect(rows.size() == 5, "expected 5 sweep rows");
    std::string detail;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        rec.expect(r.s_proposed >= r.s_benchmark, fmt("P=%g: proposed %.9g < benchmark %.9g", r.budget_w, r.s_proposed,
                                                      r.s_benchmark));
        rec.expect(r.s_proposed >= r.s_static, fmt("P=%g: proposed %.9g < static %.9g", r.budget_w, r.s_proposed,
                                                   r.s_static));
        if (i > 0) {
            rec.expect(r.s_proposed >= rows[i - 1].s_proposed, fmt("proposed drops at P=%g", r.budget_w));
        }
        detail += fmt("P=%g: %.6g/%.6g", r.budget_w, r.s_proposed, r.s_benchmark) + fmt("/%.6g; ", r.s_static);
    }
    if (!rows.empty()) {
        const double margin = rows.back().s_proposed - rows.back().s_benchmark;
        rec.expect(margin > 1e-6, fmt("margin at 5 W only %.3g", margin));
    }
    for (const auto& r : rows) {
        const Scenario at = sc.with_budget(r.budget_w);
        produced.push_back(joint_optimize(at, straight_line_trajectory(at)).solution);
    }
    return rec.done("proposed/benchmark/static " + detail);
}

Outcome trajectory_shape(const Solution& sol, const Scenario& sc)
{
    const Trajectory line = straight_line_trajectory(sc);
    Recorder rec;
    std::string detail;
    for (int n = 0; n < sc.num_nodes(); ++n) {
        const Eigen::Vector2d node = sc.nodes[n].position;
        const double opt = (sol.trajectory.points.colwise() - node).colwise().norm().minCoeff();
        const double base = (line.points.colwise() - node).colwise().norm().minCoeff();
        rec.expect(opt < base, fmt("node %g: optimized %.3g m vs straight %.3g m", n + 1.0, opt, base));
        detail += fmt("node %g closest %.3g m (straight %.3g m); ", n + 1.0, opt, base);
    }
    const double slowest = slot_speeds(sol.trajectory, sc).minCoeff();
    rec.expect(slowest <= 0.2 * sc.uav.v_max_mps, fmt("slowest slot %.3g m/s", slowest));
    return rec.done(detail + fmt("slowest slot %.3g m/s", slowest));
}

Outcome spatial_waterfilling(const Solution& sol, const Scenario& sc)
{
    const GainMatrix g = gain_matrix(sol.trajectory, sc);
    Recorder rec;
    int active = 0;
    for (int n = 0; n < sc.num_nodes(); ++n) {
        std::vector<int> slots;
        for (int m = 0; m < sc.num_slots(); ++m) {
            if (sol.power.p(n, m) > 0.0) {
                slots.push_back(m);
            }
        }
        active += static_cast<int>(slots.size());
        std::sort(slots.begin(), slots.end(), [&](int a, int b) { return g(n, a) < g(n, b); });
        for (std::size_t i = 1; i < slots.size(); ++i) {
            rec.expect(sol.power.p(n, slots[i]) >= sol.power.p(n, slots[i - 1]),
                       fmt("node %g: power decreases with gain", n + 1.0));
        }
    }
    return rec.done(fmt("%g active (node, slot) pairs ordered by gain", active));
}

Outcome compliance(const std::vector<std::pair<Solution, Scenario>>& solutions)
{
    Recorder rec;
    for (const auto& [sol, sc] : solutions) {
        rec.expect(check_trajectory(sol.trajectory, sc).empty(), "trajectory violates motion constraints");
        rec.expect((sol.power.p.array() >= 0.0).all(), "negative power");
        rec.expect(sol.power.total_w() <= sc.radio.power_budget_w + 1e-9, "budget exceeded");
    }
    return rec.done(fmt("%g solutions checked", static_cast<double>(solutions.size())));
}

} // namespace

int main()
{
    std::vector<std::pair<std::string, Outcome>> results;
    auto run = [&](const std::string& name, const std::function<Outcome()>& body) {
        Outcome out;
        try {
            out = body();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %s: %s\n", out.pass ? "PASS" : "FAIL", name.c_str(), out.detail.c_str());
        std::fflush(stdout);
        results.emplace_back(name, out);
    };

    const auto t0 = Clock::now();
    const auto instances = random_power_instances();
    const double solve_seconds = seconds_since(t0);
    run("1 power-oracle equivalence", [&] { return power_oracle(instances, solve_seconds); });
    run("2 water-filling KKT", [&] { return waterfill_kkt(instances); });
    run("3 equal-rate optimality and budget tightness", [&] { return equal_rate(instances); });
    run("4 lower-bound validity", [] { return bound_validity(); });
    run("5 maximin-solver oracle", [] { return maximin_oracle(); });

    std::vector<CaseRun> cases;
    for (int which : {1, 2}) {
        const Scenario sc = case_scenario(which);
        const auto start = Clock::now();
        JointResult r = joint_optimize(sc, straight_line_trajectory(sc));
        cases.push_back({sc, std::move(r), seconds_since(start)});
    }
    run("6 monotone convergence", [&] { return monotone_convergence(cases); });

    std::vector<Solution> sweep_solutions; // budgets 1..5 W, in order
    run("7 throughput vs budget ordering", [&] { return budget_sweep(sweep_solutions); });
    run("8 trajectory visits nodes and hovers", [&] { return trajectory_shape(cases[0].result.solution, cases[0].sc); });
    run("9 spatial water-filling", [&] { return spatial_waterfilling(cases[0].result.solution, cases[0].sc); });

    std::vector<std::pair<Solution, Scenario>> all;
    for (const auto& c : cases) {
        all.emplace_back(c.result.solution, c.sc);
    }
    for (std::size_t i = 0; i < sweep_solutions.size(); ++i) {
        all.emplace_back(sweep_solutions[i], case_scenario(1).with_budget(i + 1.0));
    }
    run("10 constraint compliance", [&] { return compliance(all); });

    const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.second.pass; });
    std::printf("%zu/%zu criteria passed\n", results.size() - static_cast<std::size_t>(failed), results.size());
    return failed == 0 ? 0 : 1;
}
