#pragma once

#include "auvpf/guidance.hpp"
#include "auvpf/qp.hpp"
#include "auvpf/types.hpp"
#include "auvpf/vehicle.hpp"

#include <utility>
#include <vector>

namespace auvpf {

/*
 * Minimax MPC on the pose-increment LPV model.
 *
 * The kinematics are discretised around the current pose and combined with
 * the velocity-increment input into
 *
 *     x(k+1) = A x(k) + B dnu(k) + d(k),   x = [eta; nu],
 *     A = [I  Jk; 0  I],  B = [Jk; I],  Jk = J(eta(k)) Ts,
 *
 * with A, B frozen over the horizon and d(k) an additive lumped disturbance
 * bounded componentwise by d_bar. The controller minimises the worst case of
 *
 *     sum_{j=1..N} ||y(k+j) - y_ref||^2_Q + sum_{j=0..Nu-1} ||dnu(k+j)||^2_R
 *
 * over the disturbance box. Because each d block enters its output block
 * additively and Q is diagonal, the inner maximum is exact per component:
 * max over |delta| <= db of Q (a + delta)^2 = Q (|a| + db)^2. Minimising
 * sum Q_i (|a_i| + db_i)^2 + ||U||^2_R is cast as a QP with epigraph
 * variables t >= +-a(U); (t + db)^2 is increasing for t >= 0, so t = |a| at
 * any optimum and the QP value equals the minimax value.
 *
 * Input forces are bounded by mapping increments through the inverse
 * dynamics with chi frozen at the previous measured velocity:
 * |Mbar dnu(k+j) + chi(nu(k-1))| <= tau_bar, Mbar = M / Ts.
 */

/// Pose-increment prediction model frozen at one pose.
struct LpvModel {
    Mat12 A = Mat12::Zero();
    Eigen::Matrix<double, 12, 6> B = Eigen::Matrix<double, 12, 6>::Zero();
    Pose frozen_pose;
    double Ts = 0.1;
};

LpvModel build_lpv(const Pose& pose, double Ts, double pitch_margin = 0.05);

struct McTuning {
    Vec6 Q = Vec6::Ones();       // diagonal pose-error weights
    Vec6 R = Vec6::Ones();       // diagonal increment weights
    int N = 10;                  // prediction horizon
    int Nu = 2;                  // control horizon
    Vec12 d_bar = Vec12::Zero(); // disturbance bounds; only the 6 pose slots
                                 // are output-visible, the velocity slots are
                                 // accepted but inert in the cost
    double tau_bar = 2000.0;     // per-axis input bound
    double Ts = 0.1;

    void validate() const;
};

/// Stacked N-step operators: X = A_tilde x + B_tilde U with increments zero
/// beyond Nu, and the block output selector G_tilde (Y = G_tilde X).
struct PredictionOperators {
    MatX A_tilde;  // 12N x 12
    MatX B_tilde;  // 12N x 6Nu
    MatX G_tilde;  // 6N x 12N
    int N = 0;
    int Nu = 0;
};

PredictionOperators build_prediction(const LpvModel& model, int N, int Nu);

/// Exact inner maximum of the tracking cost over the disturbance box:
/// sum_{j,i} Q_i (|a_{j,i}| + db_i)^2 + ||U||^2_R with a = G(Ax + BU) - refs.
double worst_case_cost(const VecX& U, const Vec12& x, const VecX& refs,
                       const PredictionOperators& ops, const McTuning& tuning);

/// Epigraph QP over z = [U (6Nu); t (6N)]. Epigraph rows come in +- pairs
/// (rows 2k / 2k+1 bound +-a_k), followed by Nu blocks of 12 input rows
/// (upper then lower bounds). constant_offset carries the N sum Q db^2 term
/// so that qp objective + offset equals the worst-case cost at the optimum.
struct QpProblem {
    MatX H;
    VecX f;
    MatX C_ineq;
    VecX b_ineq;
    double constant_offset = 0.0;
    int n_u = 0;  // 6 Nu
    int n_t = 0;  // 6 N
};

QpProblem build_qp(const Vec12& x, const VecX& refs, const LpvModel& model,
                   const McTuning& tuning, const Velocity& nu_prev, const Pose& pose,
                   const VehicleParams& params);

struct ControlSolution {
    VecX U_star;               // optimal increment sequence (6 Nu)
    Vec6 delta_nu_star = Vec6::Zero();
    double worst_case_cost = 0.0;
    int iterations = 0;
    QpStatus status = QpStatus::max_iter;
};

/// Carries the previous step's active set; seeding it only changes iteration
/// counts, never the optimum.
struct QpWarmStart {
    std::vector<int> active;
};

ControlSolution solve_qp(const QpProblem& problem, double tol = 1e-6, int max_iter = 4000,
                         QpWarmStart* warm = nullptr);

struct SolverOptions {
    double tol = 1e-6;
    int max_iter = 4000;
};

/// One controller step: freezes the LPV model at the current pose, stacks the
/// reference (held constant over the horizon, angles re-anchored to within pi
/// of the current attitude), solves the minimax QP and maps the first optimal
/// increment to a wrench. If the solver fails the step falls back to a zero
/// increment with the feedforward chi term saturated to +-tau_bar, and the
/// failure is flagged in the returned status.
std::pair<Wrench, ControlSolution> mpc_step(const VehicleState& state, const Velocity& nu_prev,
                                            const LosReference& ref, const McTuning& tuning,
                                            const VehicleParams& params,
                                            const SolverOptions& opts = {},
                                            QpWarmStart* warm = nullptr);

}  // namespace auvpf
