#include "uavopt/channel.hpp"

namespace uavopt {

GainMatrix gain_matrix(const Trajectory& traj, const Scenario& sc)
{
    const int N = sc.num_nodes();
    const int M = traj.size();
    GainMatrix g(N, M);
    for (int n = 0; n < N; ++n) {
        for (int m = 0; m < M; ++m) {
            g(n, m) = channel_gain<double>(traj.points.col(m), sc.nodes[n].position, sc.uav.altitude_m,
                                           sc.radio.beta0);
        }
    }
    return g;
}

ThroughputReport throughput_report(const PowerAllocation& power, const GainMatrix& gains, const Scenario& sc)
{
    const int N = sc.num_nodes();
    if (power.p.rows() != N || gains.rows() != N || power.p.cols() != gains.cols()
        || gains.cols() != sc.num_slots()) {
        throw SolverError("throughput_report: power and gain shapes must both be N x M");
    }
    ThroughputReport report;
    report.per_node.resize(N);
    for (int n = 0; n < N; ++n) {
        double sum = 0.0;
        for (int m = 0; m < gains.cols(); ++m) {
            sum += slot_rate(power.p(n, m), gains(n, m), sc.radio, N);
        }
        report.per_node(n) = sum / sc.grid.horizon_s;
    }
    Eigen::Index arg = 0;
    report.min_value = report.per_node.minCoeff(&arg);
    report.argmin_node = static_cast<int>(arg) + 1;
    return report;
}

} // namespace uavopt
