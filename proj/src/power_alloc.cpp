#include "uavopt/power_alloc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "uavopt/errors.hpp"

namespace uavopt {

namespace {

void check_gains(const Eigen::Ref<const Eigen::VectorXd>& gains)
{
    if (gains.size() == 0) {
        throw SolverError("water-filling needs at least one slot");
    }
    if (!gains.allFinite() || (gains.array() <= 0.0).any()) {
        throw SolverError("water-filling gains must be positive and finite");
    }
}

// Slot order by ascending noise floor w / g, i.e. descending gain.
std::vector<int> floor_order(const Eigen::VectorXd& floors)
{
    std::vector<int> order(floors.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return floors(a) < floors(b); });
    return order;
}

double node_rate(const Eigen::VectorXd& powers, const Eigen::VectorXd& floors, const RadioParams& radio,
                 const TimeGrid& grid, int num_nodes)
{
    double bits = 0.0;
    for (Eigen::Index m = 0; m < powers.size(); ++m) {
        bits += log2_1p(powers(m) / floors(m));
    }
    return radio.bandwidth_hz / num_nodes * bits / grid.horizon_s;
}

WaterfillResult fill_to_level(const Eigen::VectorXd& floors, double level)
{
    WaterfillResult out;
    out.water_level = level;
    out.powers = (level - floors.array()).max(0.0).matrix();
    for (Eigen::Index m = 0; m < floors.size(); ++m) {
        if (out.powers(m) > 0.0) {
            out.active_slots.push_back(static_cast<int>(m));
        }
    }
    out.total_w = out.powers.sum();
    return out;
}

} // namespace

WaterfillResult waterfill_min_power(const Eigen::Ref<const Eigen::VectorXd>& gains, double s_target,
                                    const RadioParams& radio, const TimeGrid& grid, int num_nodes)
{
    check_gains(gains);
    if (!(s_target >= 0.0) || !std::isfinite(s_target)) {
        throw SolverError("water-filling target rate must be finite and nonnegative");
    }
    const int M = static_cast<int>(gains.size());
    if (s_target == 0.0) {
        WaterfillResult out;
        out.powers = Eigen::VectorXd::Zero(M);
        return out;
    }

    const Eigen::VectorXd floors = node_noise_w(radio, num_nodes) / gains.array();
    const std::vector<int> order = floor_order(floors);

    // With k active slots the rate condition sum_k log2(level / floor) = bits
    // fixes the level in closed form; the first k whose level stays below the
    // next floor is the optimal active set.
    const double bits = s_target * grid.horizon_s * num_nodes / radio.bandwidth_hz;
    double log_floor_sum = 0.0;
    double log_level = 0.0;
    for (int k = 1; k <= M; ++k) {
        log_floor_sum += std::log2(floors(order[k - 1]));
        log_level = (bits + log_floor_sum) / k;
        if (k == M || log_level <= std::log2(floors(order[k]))) {
            break;
        }
    }

    double level = std::exp2(log_level);
    if (!std::isfinite(level)) {
        throw SolverError("water-filling target rate needs more power than a double can hold");
    }
    WaterfillResult out = fill_to_level(floors, level);
    // Rounding can leave the achieved rate an ulp short of the target.
    for (int bump = 0; bump < 64 && node_rate(out.powers, floors, radio, grid, num_nodes) < s_target; ++bump) {
        level *= 1.0 + 4.0 * std::numeric_limits<double>::epsilon() * (1 << std::min(bump, 20));
        out = fill_to_level(floors, level);
    }
    return out;
}

double waterfill_max_rate(const Eigen::Ref<const Eigen::VectorXd>& gains, double budget_w, const RadioParams& radio,
                          const TimeGrid& grid, int num_nodes)
{
    check_gains(gains);
    if (!(budget_w >= 0.0)) {
        throw SolverError("water-filling budget must be nonnegative");
    }
    const int M = static_cast<int>(gains.size());
    const Eigen::VectorXd floors = node_noise_w(radio, num_nodes) / gains.array();
    const std::vector<int> order = floor_order(floors);

    double floor_sum = 0.0;
    double level = 0.0;
    for (int k = 1; k <= M; ++k) {
        floor_sum += floors(order[k - 1]);
        level = (budget_w + floor_sum) / k;
        if (k == M || level <= floors(order[k])) {
            break;
        }
    }
    return node_rate(fill_to_level(floors, level).powers, floors, radio, grid, num_nodes);
}

PowerSolution optimize_power(const GainMatrix& gains, const Scenario& sc)
{
    const int N = sc.num_nodes();
    const int M = sc.num_slots();
    const double budget = sc.radio.power_budget_w;
    if (!(budget > 0.0)) {
        throw SolverError("power budget must be positive");
    }
    if (gains.rows() != N || gains.cols() != M) {
        throw SolverError("optimize_power: gain matrix must be N x M");
    }

    // Serving a single node with the whole budget bounds the common rate.
    double upper = std::numeric_limits<double>::infinity();
    for (int n = 0; n < N; ++n) {
        upper = std::min(upper, waterfill_max_rate(gains.row(n).transpose(), budget, sc.radio, sc.grid, N));
    }

    auto total_power = [&](double s) {
        double total = 0.0;
        for (int n = 0; n < N; ++n) {
            total += waterfill_min_power(gains.row(n).transpose(), s, sc.radio, sc.grid, N).total_w;
        }
        return total;
    };

    // Bisect down to adjacent doubles so the budget is spent to rounding.
    double lo = 0.0;
    double hi = upper;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (total_power(mid) <= budget) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    PowerSolution out;
    out.allocation.p.resize(N, M);
    out.water_levels.resize(N);
    for (int n = 0; n < N; ++n) {
        const WaterfillResult wf = waterfill_min_power(gains.row(n).transpose(), lo, sc.radio, sc.grid, N);
        out.allocation.p.row(n) = wf.powers.transpose();
        out.water_levels(n) = wf.water_level;
    }
    out.s = throughput_report(out.allocation, gains, sc).min_value;
    return out;
}

PowerSolution optimize_power(const Trajectory& traj, const Scenario& sc)
{
    return optimize_power(gain_matrix(traj, sc), sc);
}

double overhead_rate_bound(const Scenario& sc)
{
    const double overhead_gain = sc.radio.beta0 / (sc.uav.altitude_m * sc.uav.altitude_m);
    const Eigen::VectorXd gains = Eigen::VectorXd::Constant(sc.num_slots(), overhead_gain);
    return waterfill_max_rate(gains, sc.radio.power_budget_w, sc.radio, sc.grid, sc.num_nodes());
}

} // namespace uavopt
