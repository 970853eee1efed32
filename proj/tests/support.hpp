// Shared fixtures and independent oracles for the test binaries.
#ifndef UAVOPT_TESTS_SUPPORT_HPP
#define UAVOPT_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "uavopt/convex_core.hpp"
#include "uavopt/scenario.hpp"

namespace uavopt::testing {

inline std::string config_path(const std::string& name)
{
    return std::string(UAVOPT_CONFIG_DIR) + "/" + name + ".json";
}

inline Scenario case_scenario(int which)
{
    return load_scenario_file(config_path(which == 1 ? "case1" : "case2"));
}

/// Radio and timing of the published cases around arbitrary nodes and endpoints.
inline Scenario small_scenario(std::vector<Eigen::Vector2d> positions, int slots, double horizon,
                               Eigen::Vector2d start, Eigen::Vector2d finish, double budget = 5.0,
                               double v_max = 100.0)
{
    std::vector<GroundNode> nodes;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        nodes.push_back({static_cast<int>(i) + 1, positions[i]});
    }
    UavParams uav{100.0, v_max, start, finish};
    RadioParams radio{1.0, 1.2589254117941713e-20, 1e-3, 1.0, budget};
    return make_scenario(std::move(nodes), uav, radio, TimeGrid::from_slots(horizon, slots));
}

/// Average throughput by direct summation of log2(1 + SNR), independent of the
/// library's rate helpers.
inline double direct_rate(const Eigen::VectorXd& powers, const Eigen::VectorXd& gains, const RadioParams& radio,
                          double horizon, int num_nodes)
{
    const double share = radio.bandwidth_hz / num_nodes;
    double sum = 0.0;
    for (Eigen::Index m = 0; m < powers.size(); ++m) {
        sum += share * std::log2(1.0 + powers(m) * gains(m) / (share * radio.noise_w_per_hz));
    }
    return sum / horizon;
}

/// Exact maximum of min_n R_n over every grid point of the power simplex
/// {p_n[m] = k * budget / steps, sum p <= budget}. Separable structure lets a
/// max-plus knapsack per node and a max-min knapsack across nodes enumerate the
/// whole grid without listing points.
inline double brute_force_power_grid(const Eigen::MatrixXd& gains, const RadioParams& radio, double horizon,
                                     int steps = 200)
{
    const int N = static_cast<int>(gains.rows());
    const int M = static_cast<int>(gains.cols());
    const double pitch = radio.power_budget_w / steps;
    const double share = radio.bandwidth_hz / N;
    constexpr double kNeg = -std::numeric_limits<double>::infinity();

    // best[n][j]: largest rate of node n using exactly j grid units.
    std::vector<std::vector<double>> best(N, std::vector<double>(steps + 1, kNeg));
    for (int n = 0; n < N; ++n) {
        std::vector<double> acc(steps + 1, kNeg);
        acc[0] = 0.0;
        for (int m = 0; m < M; ++m) {
            std::vector<double> next(steps + 1, kNeg);
            for (int used = 0; used <= steps; ++used) {
                if (acc[used] == kNeg) {
                    continue;
                }
                for (int k = 0; used + k <= steps; ++k) {
                    const double r = share * std::log2(1.0 + k * pitch * gains(n, m) / (share * radio.noise_w_per_hz));
                    next[used + k] = std::max(next[used + k], acc[used] + r);
                }
            }
            acc = std::move(next);
        }
        for (int j = 0; j <= steps; ++j) {
            best[n][j] = acc[j] / horizon;
        }
    }

    // joint[j]: best min over the nodes seen so far with j units in total.
    std::vector<double> joint = best[0];
    for (int n = 1; n < N; ++n) {
        std::vector<double> next(steps + 1, kNeg);
        for (int used = 0; used <= steps; ++used) {
            for (int k = 0; used + k <= steps; ++k) {
                next[used + k] = std::max(next[used + k], std::min(joint[used], best[n][k]));
            }
        }
        joint = std::move(next);
    }
    return *std::max_element(joint.begin(), joint.end());
}

struct GridOptimum {
    double value = -std::numeric_limits<double>::infinity();
    Eigen::Vector2d point = Eigen::Vector2d::Zero();
    double lipschitz = 0.0; // largest |grad phi_n| seen on the grid
};

/// Dense grid maximum of min_n phi_n over the first ball of a one-slot problem,
/// restricted to points satisfying every ball. Pitch = radius / per_radius.
inline GridOptimum grid_maximin_2d(const MaximinProblem& prob, int per_radius = 500)
{
    const BallConstraint& ball = prob.balls.front();
    const Eigen::Vector2d center = -ball.offset;
    const double h = ball.radius / per_radius;
    GridOptimum best;
    for (int i = -per_radius; i <= per_radius; ++i) {
        for (int j = -per_radius; j <= per_radius; ++j) {
            const Eigen::Vector2d d = center + h * Eigen::Vector2d(i, j);
            if (prob.max_ball_violation(d) > 0.0) {
                continue;
            }
            const double v = prob.rates(d).minCoeff();
            for (int n = 0; n < prob.num_rates(); ++n) {
                const Eigen::Vector2d g = prob.linear.row(n).transpose() - 2.0 * prob.curvature(n, 0) * d;
                best.lipschitz = std::max(best.lipschitz, g.norm());
            }
            if (v > best.value) {
                best.value = v;
                best.point = d;
            }
        }
    }
    return best;
}

/// Random one-slot maximin problem with `rates` concave quadratics and one ball
/// around the origin.
inline MaximinProblem random_maximin_2d(std::mt19937_64& rng, int rates)
{
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.05, 2.0);
    MaximinProblem prob;
    prob.num_slots = 1;
    prob.offset.resize(rates);
    prob.linear.resize(rates, 2);
    prob.curvature.resize(rates, 1);
    for (int n = 0; n < rates; ++n) {
        prob.offset(n) = unit(rng);
        prob.linear.row(n) << 3.0 * unit(rng), 3.0 * unit(rng);
        prob.curvature(n, 0) = pos(rng);
    }
    const double radius = 0.5 + pos(rng);
    const Eigen::Vector2d shift = 0.5 * radius * Eigen::Vector2d(unit(rng), unit(rng)) / std::sqrt(2.0);
    prob.balls.push_back({0, -1, shift, radius});
    return prob;
}

/// Straight line plus a random offset of up to `jitter` meters per slot.
/// Feasible when 2 * jitter + straight step <= V delta.
inline Trajectory jittered_trajectory(const Trajectory& base, double jitter, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> rad(0.0, 1.0);
    Trajectory out = base;
    for (int m = 0; m < out.size(); ++m) {
        const double a = ang(rng);
        const double r = jitter * std::sqrt(rad(rng));
        out.points.col(m) += r * Eigen::Vector2d(std::cos(a), std::sin(a));
    }
    return out;
}

} // namespace uavopt::testing

#endif // UAVOPT_TESTS_SUPPORT_HPP
