#include "auvpf/mpc.hpp"

#include <cmath>
#include <limits>

namespace auvpf {

void McTuning::validate() const {
    if ((Q.array() <= 0.0).any()) throw ConfigError("tuning.Q: weights must be > 0");
    if ((R.array() <= 0.0).any()) throw ConfigError("tuning.R: weights must be > 0");
    if (N < 1) throw ConfigError("tuning.N: must be >= 1");
    if (Nu < 1 || Nu > N) throw ConfigError("tuning.Nu: must satisfy 1 <= Nu <= N");
    if ((d_bar.array() < 0.0).any()) throw ConfigError("tuning.d_bar: bounds must be >= 0");
    if (!(tau_bar > 0.0)) throw ConfigError("tuning.tau_bar: must be > 0");
    if (!(Ts > 0.0)) throw ConfigError("tuning.Ts: must be > 0");
}

LpvModel build_lpv(const Pose& pose, double Ts, double pitch_margin) {
    const Mat6 Jk = rotation_matrix(pose, pitch_margin) * Ts;
    LpvModel model;
    model.A.setIdentity();
    model.A.topRightCorner<6, 6>() = Jk;
    model.B.topRows<6>() = Jk;
    model.B.bottomRows<6>().setIdentity();
    model.frozen_pose = pose;
    model.Ts = Ts;
    return model;
}

PredictionOperators build_prediction(const LpvModel& model, int N, int Nu) {
    if (N < 1 || Nu < 1 || Nu > N)
        throw std::invalid_argument("build_prediction: need 1 <= Nu <= N");

    PredictionOperators ops;
    ops.N = N;
    ops.Nu = Nu;
    ops.A_tilde.setZero(12 * N, 12);
    ops.B_tilde.setZero(12 * N, 6 * Nu);
    ops.G_tilde.setZero(6 * N, 12 * N);

    // Row block j holds A^(j+1); B block (j, i) holds A^(j-i) B for i <= j.
    std::vector<Mat12> powers(static_cast<size_t>(N) + 1);
    powers[0].setIdentity();
    for (int j = 1; j <= N; ++j) powers[j] = model.A * powers[j - 1];

    for (int j = 0; j < N; ++j) {
        ops.A_tilde.block<12, 12>(12 * j, 0) = powers[j + 1];
        for (int i = 0; i <= j && i < Nu; ++i)
            ops.B_tilde.block<12, 6>(12 * j, 6 * i) = powers[j - i] * model.B;
        ops.G_tilde.block<6, 6>(6 * j, 12 * j) = Mat6::Identity();
    }
    return ops;
}

namespace {

// Stacked output error a(U) = G(A x + B U) - refs.
VecX output_error(const VecX& U, const Vec12& x, const VecX& refs,
                  const PredictionOperators& ops) {
    return ops.G_tilde * (ops.A_tilde * x + ops.B_tilde * U) - refs;
}

}  // namespace

double worst_case_cost(const VecX& U, const Vec12& x, const VecX& refs,
                       const PredictionOperators& ops, const McTuning& tuning) {
    const VecX a = output_error(U, x, refs, ops);
    const Vec6 db = tuning.d_bar.head<6>();
    double cost = 0.0;
    for (int j = 0; j < ops.N; ++j)
        for (int i = 0; i < 6; ++i) {
            const double e = std::abs(a(6 * j + i)) + db(i);
            cost += tuning.Q(i) * e * e;
        }
    for (int j = 0; j < ops.Nu; ++j)
        for (int i = 0; i < 6; ++i)
            cost += tuning.R(i) * U(6 * j + i) * U(6 * j + i);
    return cost;
}

QpProblem build_qp(const Vec12& x, const VecX& refs, const LpvModel& model,
                   const McTuning& tuning, const Velocity& nu_prev, const Pose& pose,
                   const VehicleParams& params) {
    tuning.validate();
    const int N = tuning.N, Nu = tuning.Nu;
    if (refs.size() != 6 * N) throw std::invalid_argument("build_qp: refs must be 6N");

    const PredictionOperators ops = build_prediction(model, N, Nu);
    const MatX S = ops.G_tilde * ops.B_tilde;          // 6N x 6Nu
    const VecX w0 = ops.G_tilde * (ops.A_tilde * x) - refs;

    const int n_u = 6 * Nu, n_t = 6 * N;
    const Vec6 db = tuning.d_bar.head<6>();

    QpProblem qp;
    qp.n_u = n_u;
    qp.n_t = n_t;

    qp.H = MatX::Zero(n_u + n_t, n_u + n_t);
    qp.f = VecX::Zero(n_u + n_t);
    qp.constant_offset = 0.0;
    for (int j = 0; j < Nu; ++j)
        for (int i = 0; i < 6; ++i) qp.H(6 * j + i, 6 * j + i) = 2.0 * tuning.R(i);
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < 6; ++i) {
            const int k = n_u + 6 * j + i;
            qp.H(k, k) = 2.0 * tuning.Q(i);
            qp.f(k) = 2.0 * tuning.Q(i) * db(i);
            qp.constant_offset += tuning.Q(i) * db(i) * db(i);
        }

    const int m = 2 * n_t + 12 * Nu;
    qp.C_ineq = MatX::Zero(m, n_u + n_t);
    qp.b_ineq = VecX::Zero(m);

    // Epigraph pairs: rows 2k (a_k - t_k <= 0) and 2k+1 (-a_k - t_k <= 0).
    for (int k = 0; k < n_t; ++k) {
        qp.C_ineq.block(2 * k, 0, 1, n_u) = S.row(k);
        qp.C_ineq(2 * k, n_u + k) = -1.0;
        qp.b_ineq(2 * k) = -w0(k);
        qp.C_ineq.block(2 * k + 1, 0, 1, n_u) = -S.row(k);
        qp.C_ineq(2 * k + 1, n_u + k) = -1.0;
        qp.b_ineq(2 * k + 1) = w0(k);
    }

    // Input bounds per control-horizon block, chi frozen at nu(k-1).
    const Vec6 chi_prev = chi(nu_prev, pose, params);
    const Mat6 Mbar = params.M / tuning.Ts;
    const Vec6 tau_hi = Vec6::Constant(tuning.tau_bar) - chi_prev;
    const Vec6 tau_lo = Vec6::Constant(tuning.tau_bar) + chi_prev;
    for (int j = 0; j < Nu; ++j) {
        const int row = 2 * n_t + 12 * j;
        qp.C_ineq.block(row, 6 * j, 6, 6) = Mbar;
        qp.b_ineq.segment<6>(row) = tau_hi;
        qp.C_ineq.block(row + 6, 6 * j, 6, 6) = -Mbar;
        qp.b_ineq.segment<6>(row + 6) = tau_lo;
    }
    return qp;
}

ControlSolution solve_qp(const QpProblem& problem, double tol, int max_iter, QpWarmStart* warm) {
    QpOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    const std::vector<int>* seed = (warm != nullptr && !warm->active.empty()) ? &warm->active
                                                                              : nullptr;
    const QpSolution qs = solve_dense_qp(problem.H, problem.f, problem.C_ineq, problem.b_ineq,
                                         opts, seed);
    if (warm != nullptr) warm->active = qs.active;

    ControlSolution sol;
    sol.status = qs.status;
    sol.iterations = qs.iterations;
    sol.U_star = qs.z.head(problem.n_u);
    sol.delta_nu_star = problem.n_u >= 6 ? Vec6(qs.z.head<6>()) : Vec6::Zero();
    sol.worst_case_cost = qs.status == QpStatus::solved
                              ? qs.objective + problem.constant_offset
                              : std::numeric_limits<double>::quiet_NaN();
    return sol;
}

namespace {

// Re-anchor an angle reference to the representative nearest the current
// value, so the cost never pays for a full-turn offset.
double nearest_angle(double current, double ref) {
    return current + wrap_angle(ref - current);
}

}  // namespace

std::pair<Wrench, ControlSolution> mpc_step(const VehicleState& state, const Velocity& nu_prev,
                                            const LosReference& ref, const McTuning& tuning,
                                            const VehicleParams& params,
                                            const SolverOptions& opts, QpWarmStart* warm) {
    const LpvModel model = build_lpv(state.pose, tuning.Ts, params.pitch_margin);

    Vec6 y_ref = ref.vec();
    y_ref(3) = nearest_angle(state.pose.phi, ref.phi_ref);
    y_ref(4) = nearest_angle(state.pose.theta, ref.theta_ref);
    y_ref(5) = nearest_angle(state.pose.psi, ref.psi_ref);

    VecX refs(6 * tuning.N);
    for (int j = 0; j < tuning.N; ++j) refs.segment<6>(6 * j) = y_ref;

    const Vec12 x = state.vec();
    const QpProblem qp = build_qp(x, refs, model, tuning, nu_prev, state.pose, params);
    ControlSolution sol = solve_qp(qp, opts.tol, opts.max_iter, warm);

    Vec6 tau;
    if (sol.status == QpStatus::solved) {
        tau = inverse_dynamics(sol.delta_nu_star, nu_prev, state.pose, params, tuning.Ts).vec();
    } else {
        // Fail-safe: zero increment, feedforward saturated per axis.
        sol.U_star = VecX::Zero(6 * tuning.Nu);
        sol.delta_nu_star.setZero();
        const PredictionOperators ops = build_prediction(model, tuning.N, tuning.Nu);
        sol.worst_case_cost = worst_case_cost(sol.U_star, x, refs, ops, tuning);
        tau = chi(nu_prev, state.pose, params);
    }
    tau = tau.cwiseMax(-tuning.tau_bar).cwiseMin(tuning.tau_bar);
    return {Wrench::from_vec(tau), sol};
}

}  // namespace auvpf
