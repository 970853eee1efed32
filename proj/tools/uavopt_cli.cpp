// Command-line front end: run, sweep and bench.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavopt/alternating.hpp"
#include "uavopt/errors.hpp"
#include "uavopt/experiments.hpp"
#include "uavopt/scenario.hpp"

namespace fs = std::filesystem;
using namespace uavopt;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitSolver = 4;

std::ofstream open_output(const fs::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    return out;
}

JointOptions joint_options(double epsilon)
{
    JointOptions opts;
    opts.inner.epsilon = epsilon;
    opts.outer_epsilon = epsilon;
    return opts;
}

std::vector<double> parse_budgets(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw ConfigError("bad budget value '" + item + "'");
        }
    }
    return out;
}

void cmd_run(const std::string& config, double epsilon, const fs::path& out_dir)
{
    const Scenario sc = load_scenario_file(config);
    const Solution benchmark = straight_line_benchmark(sc);
    const Solution fixed = static_center_benchmark(sc);
    const JointResult result = joint_optimize(sc, straight_line_trajectory(sc), joint_options(epsilon));
    if (result.trace.hit_outer_cap) {
        std::cerr << "warning: outer iteration cap reached before convergence\n";
    }

    fs::create_directories(out_dir);
    {
        auto out = open_output(out_dir / "trajectory.csv");
        write_trajectory_csv(out, result.solution.trajectory, sc);
    }
    {
        auto out = open_output(out_dir / "power.csv");
        write_power_csv(out, result.solution, sc);
    }
    const std::vector<SummaryRow> summary = {
        {"proposed", result.solution.s, static_cast<int>(result.trace.inner_iterations.size()),
         result.trace.wall_time_s},
        {"benchmark", benchmark.s, 0, 0.0},
        {"static", fixed.s, 0, 0.0},
    };
    {
        auto out = open_output(out_dir / "summary.csv");
        write_summary_csv(out, summary);
    }
    {
        auto out = open_output(out_dir / "trace.csv");
        write_trace_csv(out, result.trace);
    }
    write_summary_csv(std::cout, summary);
}

void cmd_sweep(const std::string& config, const std::string& budgets, double epsilon, const std::string& out_path)
{
    const Scenario sc = load_scenario_file(config);
    const auto rows = sweep_budget(sc, parse_budgets(budgets), joint_options(epsilon));
    auto out = open_output(out_path);
    write_sweep_csv(out, rows);
    write_sweep_csv(std::cout, rows);
}

void cmd_bench(const std::string& config)
{
    const Scenario sc = load_scenario_file(config);
    const Solution benchmark = straight_line_benchmark(sc);
    const Solution fixed = static_center_benchmark(sc);
    write_summary_csv(std::cout, {{"benchmark", benchmark.s, 0, 0.0}, {"static", fixed.s, 0, 0.0}});
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Joint UAV transmit power and trajectory optimization"};
    app.require_subcommand(1);

    std::string config;
    double epsilon = 0.01;
    std::string out_dir = ".";
    auto* run = app.add_subcommand("run", "Optimize power and trajectory, write CSV results");
    run->add_option("--config", config, "Scenario config (JSON)")->required();
    run->add_option("--epsilon", epsilon, "Stopping threshold in bits/s");
    run->add_option("--out-dir", out_dir, "Output directory");

    std::string budgets;
    std::string sweep_out = "sweep.csv";
    auto* sweep = app.add_subcommand("sweep", "Min throughput of all methods across power budgets");
    sweep->add_option("--config", config, "Scenario config (JSON)")->required();
    sweep->add_option("--budgets", budgets, "Comma-separated budgets in W")->required();
    sweep->add_option("--epsilon", epsilon, "Stopping threshold in bits/s");
    sweep->add_option("--out", sweep_out, "Output CSV");

    auto* bench = app.add_subcommand("bench", "Straight-line and static benchmarks only");
    bench->add_option("--config", config, "Scenario config (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) {
            cmd_run(config, epsilon, out_dir);
        } else if (*sweep) {
            cmd_sweep(config, budgets, epsilon, sweep_out);
        } else if (*bench) {
            cmd_bench(config);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    }
    return 0;
}
