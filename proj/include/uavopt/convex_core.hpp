#ifndef UAVOPT_CONVEX_CORE_HPP
#define UAVOPT_CONVEX_CORE_HPP

#include <vector>

#include <Eigen/Dense>

namespace uavopt {

/// ||(delta_plus - delta_minus) + offset||^2 <= radius^2, where delta_k is the
/// (dx, dy) pair of slot column k and minus = -1 drops the second term.
struct BallConstraint {
    int plus = 0;
    int minus = -1;
    Eigen::Vector2d offset = Eigen::Vector2d::Zero();
    double radius = 0.0;
};

/// max s  s.t.  phi_n(delta) >= s,  every ball satisfied.
///
/// The variable is delta = [dx_1..dx_M, dy_1..dy_M] and each
///   phi_n(delta) = offset(n) + linear.row(n) * delta
///                  - sum_m curvature(n, m) * (dx_m^2 + dy_m^2)
/// is concave because curvature >= 0.
struct MaximinProblem {
    int num_slots = 0;
    Eigen::VectorXd offset;    // N
    Eigen::MatrixXd linear;    // N x 2M
    Eigen::MatrixXd curvature; // N x M
    std::vector<BallConstraint> balls;

    int dim() const { return 2 * num_slots; }
    int num_rates() const { return static_cast<int>(offset.size()); }

    /// phi_n(delta) for every n.
    Eigen::VectorXd rates(const Eigen::VectorXd& delta) const;
    /// Largest ||L delta + b||^2 - r^2 over the balls; <= 0 when feasible.
    double max_ball_violation(const Eigen::VectorXd& delta) const;
};

struct MaximinOptions {
    double tol = 1e-6;           // absolute, in phi units
    double armijo = 0.3;
    double backtrack = 0.8;
    double barrier_growth = 10.0;
    double initial_barrier = 1.0;
    int max_newton_per_stage = 200;
};

struct MaximinSolution {
    Eigen::VectorXd delta;
    double s_value = 0.0;       // min_n phi_n(delta)
    double kkt_residual = 0.0;  // duality-gap bound of the last centering stage
    int iterations = 0;         // Newton steps over all stages
    std::vector<double> stage_objectives; // central-path s after each stage
};

/// Log-barrier interior point with damped Newton steps, started from
/// delta = 0, which must strictly satisfy every ball.
/// Throws SolverError for negative curvature and InfeasibleError for an
/// infeasible start.
MaximinSolution solve_maximin(const MaximinProblem& prob, const MaximinOptions& opts = {});

} // namespace uavopt

#endif // UAVOPT_CONVEX_CORE_HPP
