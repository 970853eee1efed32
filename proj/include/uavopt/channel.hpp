#ifndef UAVOPT_CHANNEL_HPP
#define UAVOPT_CHANNEL_HPP

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "uavopt/errors.hpp"
#include "uavopt/scenario.hpp"

namespace uavopt {

/// N x M matrix of line-of-sight power gains, row n = node n+1, column m = slot m+1.
using GainMatrix = Eigen::MatrixXd;

/// N x M transmit powers in W.
struct PowerAllocation {
    Eigen::MatrixXd p;

    double total_w() const { return p.sum(); }
};

struct ThroughputReport {
    Eigen::VectorXd per_node; // bits/s
    double min_value = 0.0;
    int argmin_node = 1;      // 1-based node id, lowest index on ties
};

/// log2(1 + x) accurate for small x.
template <typename Scalar>
Scalar log2_1p(Scalar x)
{
    using std::log1p;
    return log1p(x) / std::numbers::ln2_v<Scalar>;
}

/// beta0 / (horizontal distance^2 + H^2).
template <typename Scalar>
Scalar channel_gain(const Eigen::Matrix<Scalar, 2, 1>& uav, const Eigen::Matrix<Scalar, 2, 1>& node,
                    Scalar altitude, Scalar beta0)
{
    return beta0 / ((uav - node).squaredNorm() + altitude * altitude);
}

/// Per-node noise power (B/N) sigma^2 in W.
inline double node_noise_w(const RadioParams& radio, int num_nodes)
{
    return radio.bandwidth_hz / num_nodes * radio.noise_w_per_hz;
}

/// (B/N) log2(1 + p g / ((B/N) sigma^2)) in bits/s.
template <typename Scalar>
Scalar slot_rate(Scalar power_w, Scalar gain, const RadioParams& radio, int num_nodes)
{
    if (power_w < Scalar(0)) {
        throw SolverError("slot_rate: negative power");
    }
    const Scalar share = Scalar(radio.bandwidth_hz) / Scalar(num_nodes);
    return share * log2_1p(power_w * gain / (share * Scalar(radio.noise_w_per_hz)));
}

GainMatrix gain_matrix(const Trajectory& traj, const Scenario& sc);

/// Average throughput per node over the horizon, with the minimum.
ThroughputReport throughput_report(const PowerAllocation& power, const GainMatrix& gains, const Scenario& sc);

} // namespace uavopt

#endif // UAVOPT_CHANNEL_HPP
