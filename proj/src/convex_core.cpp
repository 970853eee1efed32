#include "uavopt/convex_core.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "uavopt/errors.hpp"

namespace uavopt {

Eigen::VectorXd MaximinProblem::rates(const Eigen::VectorXd& delta) const
{
    const int M = num_slots;
    const Eigen::VectorXd sq = delta.head(M).array().square() + delta.tail(M).array().square();
    return offset + linear * delta - curvature * sq;
}

double MaximinProblem::max_ball_violation(const Eigen::VectorXd& delta) const
{
    const int M = num_slots;
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& ball : balls) {
        Eigen::Vector2d w = ball.offset + Eigen::Vector2d(delta(ball.plus), delta(M + ball.plus));
        if (ball.minus >= 0) {
            w -= Eigen::Vector2d(delta(ball.minus), delta(M + ball.minus));
        }
        worst = std::max(worst, w.squaredNorm() - ball.radius * ball.radius);
    }
    return worst;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Epigraph variable z = [delta; s]. Slacks: u_n = phi_n - s, v_j = r_j^2 - |w_j|^2.
class Barrier {
public:
    explicit Barrier(const MaximinProblem& prob)
        : prob_(prob), M_(prob.num_slots), D_(2 * prob.num_slots + 1)
    {
    }

    int dim() const { return D_; }

    Eigen::Vector2d ball_vector(const BallConstraint& ball, const Eigen::VectorXd& z) const
    {
        Eigen::Vector2d w = ball.offset + Eigen::Vector2d(z(ball.plus), z(M_ + ball.plus));
        if (ball.minus >= 0) {
            w -= Eigen::Vector2d(z(ball.minus), z(M_ + ball.minus));
        }
        return w;
    }

    Eigen::VectorXd rate_slacks(const Eigen::VectorXd& z) const
    {
        return prob_.rates(z.head(2 * M_)).array() - z(D_ - 1);
    }

    // -t s - sum log u - sum log v, +inf outside the strict interior.
    double value(const Eigen::VectorXd& z, double t) const
    {
        const Eigen::VectorXd u = rate_slacks(z);
        if ((u.array() <= 0.0).any()) {
            return kInf;
        }
        double f = -t * z(D_ - 1) - u.array().log().sum();
        for (const auto& ball : prob_.balls) {
            const double v = ball.radius * ball.radius - ball_vector(ball, z).squaredNorm();
            if (v <= 0.0) {
                return kInf;
            }
            f -= std::log(v);
        }
        return f;
    }

    void derivatives(const Eigen::VectorXd& z, double t, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const
    {
        grad = Eigen::VectorXd::Zero(D_);
        hess = Eigen::MatrixXd::Zero(D_, D_);
        grad(D_ - 1) = -t;

        const Eigen::VectorXd u = rate_slacks(z);
        Eigen::VectorXd du(D_);
        for (int n = 0; n < prob_.num_rates(); ++n) {
            du.head(2 * M_) = prob_.linear.row(n).transpose();
            for (int m = 0; m < M_; ++m) {
                const double q = prob_.curvature(n, m);
                du(m) -= 2.0 * q * z(m);
                du(M_ + m) -= 2.0 * q * z(M_ + m);
            }
            du(D_ - 1) = -1.0;
            const double inv = 1.0 / u(n);
            grad -= inv * du;
            hess.noalias() += (inv * inv) * du * du.transpose();
            for (int m = 0; m < M_; ++m) {
                const double c = 2.0 * inv * prob_.curvature(n, m);
                hess(m, m) += c;
                hess(M_ + m, M_ + m) += c;
            }
        }

        for (const auto& ball : prob_.balls) {
            const Eigen::Vector2d w = ball_vector(ball, z);
            const double inv = 1.0 / (ball.radius * ball.radius - w.squaredNorm());
            // grad of v is -2w at slot `plus` and +2w at slot `minus`.
            const int idx[2] = {ball.plus, ball.minus};
            const double sign[2] = {1.0, -1.0};
            const int count = ball.minus >= 0 ? 2 : 1;
            for (int a = 0; a < count; ++a) {
                grad(idx[a]) += inv * 2.0 * sign[a] * w.x();
                grad(M_ + idx[a]) += inv * 2.0 * sign[a] * w.y();
                for (int b = 0; b < count; ++b) {
                    const double outer = 4.0 * inv * inv * sign[a] * sign[b];
                    const double lin = 2.0 * inv * sign[a] * sign[b];
                    hess(idx[a], idx[b]) += outer * w.x() * w.x() + lin;
                    hess(M_ + idx[a], M_ + idx[b]) += outer * w.y() * w.y() + lin;
                    hess(idx[a], M_ + idx[b]) += outer * w.x() * w.y();
                    hess(M_ + idx[a], idx[b]) += outer * w.y() * w.x();
                }
            }
        }
    }

private:
    const MaximinProblem& prob_;
    int M_;
    int D_;
};

Eigen::VectorXd newton_direction(const Eigen::MatrixXd& hess, const Eigen::VectorXd& grad)
{
    Eigen::LLT<Eigen::MatrixXd> llt(hess);
    if (llt.info() == Eigen::Success) {
        return llt.solve(-grad);
    }
    const double base = 1e-12 * std::max(hess.trace(), std::numeric_limits<double>::min());
    Eigen::MatrixXd reg = hess;
    for (double shift = base; shift < 1e6 * base; shift *= 100.0) {
        reg.diagonal() = hess.diagonal().array() + shift;
        llt.compute(reg);
        if (llt.info() == Eigen::Success) {
            return llt.solve(-grad);
        }
    }
    throw SolverError("barrier Hessian is not positive definite");
}

void check_problem(const MaximinProblem& prob, const MaximinOptions& opts)
{
    const int M = prob.num_slots;
    const int N = prob.num_rates();
    if (M < 1 || N < 1) {
        throw SolverError("maximin problem needs at least one slot and one rate constraint");
    }
    if (prob.linear.rows() != N || prob.linear.cols() != 2 * M || prob.curvature.rows() != N
        || prob.curvature.cols() != M) {
        throw SolverError("maximin problem coefficient shapes are inconsistent");
    }
    if (!prob.offset.allFinite() || !prob.linear.allFinite() || !prob.curvature.allFinite()) {
        throw SolverError("maximin problem coefficients must be finite");
    }
    if ((prob.curvature.array() < 0.0).any()) {
        throw SolverError("rate constraints must be concave (curvature >= 0)");
    }
    for (const auto& ball : prob.balls) {
        if (ball.plus < 0 || ball.plus >= M || ball.minus >= M || !(ball.radius > 0.0)) {
            throw SolverError("malformed ball constraint");
        }
    }
    if (!(opts.tol > 0.0)) {
        throw SolverError("solver tolerance must be positive");
    }
    if (prob.max_ball_violation(Eigen::VectorXd::Zero(2 * M)) >= 0.0) {
        throw InfeasibleError("delta = 0 is not strictly inside every motion ball");
    }
}

} // namespace

MaximinSolution solve_maximin(const MaximinProblem& prob, const MaximinOptions& opts)
{
    check_problem(prob, opts);
    const Barrier barrier(prob);
    const int D = barrier.dim();
    const double constraints = prob.num_rates() + static_cast<double>(prob.balls.size());

    Eigen::VectorXd z = Eigen::VectorXd::Zero(D);
    z(D - 1) = prob.rates(Eigen::VectorXd::Zero(D - 1)).minCoeff() - 1.0;

    MaximinSolution sol;
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    double t = opts.initial_barrier;
    while (true) {
        for (int it = 0; it < opts.max_newton_per_stage; ++it) {
            barrier.derivatives(z, t, grad, hess);
            const Eigen::VectorXd dz = newton_direction(hess, grad);
            const double slope = grad.dot(dz);
            if (-slope <= 1e-10) {
                break;
            }
            const double f0 = barrier.value(z, t);
            double step = 1.0;
            double f1 = barrier.value(z + step * dz, t);
            while (!(f1 <= f0 + opts.armijo * step * slope) && step > 1e-20) {
                step *= opts.backtrack;
                f1 = barrier.value(z + step * dz, t);
            }
            ++sol.iterations;
            if (!(f1 < f0)) {
                break; // no progress at machine precision
            }
            z += step * dz;
        }
        sol.stage_objectives.push_back(z(D - 1));
        if (constraints / t <= opts.tol) {
            break;
        }
        t *= opts.barrier_growth;
    }

    sol.delta = z.head(D - 1);
    sol.s_value = prob.rates(sol.delta).minCoeff();
    sol.kkt_residual = constraints / t;
    if (!sol.delta.allFinite()) {
        throw SolverError("barrier iterates diverged");
    }
    return sol;
}

} // namespace uavopt
