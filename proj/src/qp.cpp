#include "auvpf/qp.hpp"

#include <Eigen/Cholesky>

#include <limits>

namespace auvpf {

const char* to_string(QpStatus s) {
    switch (s) {
        case QpStatus::solved: return "solved";
        case QpStatus::infeasible: return "infeasible";
        case QpStatus::max_iter: return "max-iter";
    }
    return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Working-set bookkeeping. Chat columns hold L^-1 c_i for the active rows;
// W = Chat'Chat is the Gram matrix of the active normals in the H^-1 metric.
struct WorkingSet {
    std::vector<int> rows;
    MatX Chat;  // n x q
    MatX W;     // q x q

    int size() const { return static_cast<int>(rows.size()); }

    void add(int row, const VecX& chat) {
        const int q = size();
        Chat.conservativeResize(chat.size(), q + 1);
        Chat.col(q) = chat;
        W.conservativeResize(q + 1, q + 1);
        if (q > 0) {
            W.block(0, q, q, 1) = Chat.leftCols(q).transpose() * chat;
            W.block(q, 0, 1, q) = W.block(0, q, q, 1).transpose();
        }
        W(q, q) = chat.squaredNorm();
        rows.push_back(row);
    }

    void drop(int k) {
        const int q = size();
        for (int j = k; j + 1 < q; ++j) {
            Chat.col(j) = Chat.col(j + 1);
            rows[j] = rows[j + 1];
        }
        Chat.conservativeResize(Eigen::NoChange, q - 1);
        rows.pop_back();
        for (int r = k; r + 1 < q; ++r) W.row(r) = W.row(r + 1);
        for (int c = k; c + 1 < q; ++c) W.col(c) = W.col(c + 1);
        W.conservativeResize(q - 1, q - 1);
    }

    VecX solve_W(const VecX& rhs) const { return W.llt().solve(rhs); }
};

VecX erase_entry(const VecX& v, int k) {
    VecX out(v.size() - 1);
    for (int j = 0, i = 0; j < v.size(); ++j)
        if (j != k) out(i++) = v(j);
    return out;
}

}  // namespace

QpSolution solve_dense_qp(const MatX& H, const VecX& f, const MatX& C, const VecX& b,
                          const QpOptions& opts, const std::vector<int>* warm_active) {
    const int n = static_cast<int>(H.rows());
    const int m = static_cast<int>(C.rows());
    if (H.cols() != n || f.size() != n || (m > 0 && C.cols() != n) || b.size() != m)
        throw std::invalid_argument("solve_dense_qp: inconsistent dimensions");

    Eigen::LLT<MatX> llt(H);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("solve_dense_qp: H must be symmetric positive definite");

    QpSolution sol;
    sol.lambda = VecX::Zero(m);

    // Normalize rows to unit norm; zero rows are vacuous or plainly infeasible.
    MatX Cn(m, n);
    VecX bn(m);
    VecX scale(m);
    std::vector<char> vacuous(m, 0);
    for (int i = 0; i < m; ++i) {
        const double s = C.row(i).norm();
        scale(i) = s;
        if (s < 1e-14) {
            if (b(i) < -opts.tol) {
                sol.status = QpStatus::infeasible;
                sol.z = llt.solve(-f);
                sol.objective = 0.5 * sol.z.dot(H * sol.z) + f.dot(sol.z);
                return sol;
            }
            vacuous[i] = 1;
            Cn.row(i).setZero();
            bn(i) = b(i);
        } else {
            Cn.row(i) = C.row(i) / s;
            bn(i) = b(i) / s;
        }
    }

    VecX x = llt.solve(-f);  // unconstrained minimum
    WorkingSet ws;
    VecX lam(0);  // working-set multipliers (normalized rows)
    std::vector<char> in_ws(m, 0);

    auto chat_of = [&](int row) -> VecX {
        return llt.matrixL().solve(Cn.row(row).transpose());
    };
    auto drop_row = [&](int k) {
        in_ws[ws.rows[k]] = 0;
        ws.drop(k);
        lam = erase_entry(lam, k);
    };

    // Restores x / lam to the optimum of the equality subproblem on the
    // current working set.
    auto solve_subproblem = [&]() {
        const int q = ws.size();
        VecX g = llt.solve(-f);
        if (q == 0) {
            x = g;
            lam.resize(0);
            return;
        }
        VecX rhs(q);
        for (int j = 0; j < q; ++j) rhs(j) = Cn.row(ws.rows[j]).dot(g) - bn(ws.rows[j]);
        lam = ws.solve_W(rhs);
        x = g - llt.matrixU().solve(ws.Chat * lam);
    };

    if (warm_active != nullptr && !warm_active->empty()) {
        for (int row : *warm_active) {
            if (row < 0 || row >= m || vacuous[row] || in_ws[row] || ws.size() >= n) continue;
            VecX chat = chat_of(row);
            double resid = chat.squaredNorm();
            if (ws.size() > 0) {
                const VecX w = ws.Chat.transpose() * chat;
                resid -= w.dot(ws.solve_W(w));
            }
            if (resid <= 1e-10 * std::max(1.0, chat.squaredNorm())) continue;  // dependent
            ws.add(row, chat);
            in_ws[row] = 1;
        }
        solve_subproblem();
        while (ws.size() > 0) {
            int worst = 0;
            for (int j = 1; j < ws.size(); ++j)
                if (lam(j) < lam(worst)) worst = j;
            if (lam(worst) >= 0.0) break;
            in_ws[ws.rows[worst]] = 0;
            ws.drop(worst);
            solve_subproblem();
        }
    }

    for (;;) {
        // Most violated constraint outside the working set.
        int p = -1;
        double worst = opts.tol;
        for (int i = 0; i < m; ++i) {
            if (vacuous[i] || in_ws[i]) continue;
            const double v = Cn.row(i).dot(x) - bn(i);
            if (v > worst) {
                worst = v;
                p = i;
            }
        }
        if (p < 0) {
            sol.status = QpStatus::solved;
            break;
        }

        const VecX chat_p = chat_of(p);
        double viol = worst;
        double lam_p = 0.0;

        // Drive constraint p's violation to zero, dropping blocking rows.
        for (;;) {
            if (sol.iterations++ >= opts.max_iter) {
                sol.status = QpStatus::max_iter;
                goto done;
            }
            const int q = ws.size();
            VecX r(q);
            VecX dir_hat = chat_p;
            if (q > 0) {
                r = ws.solve_W(ws.Chat.transpose() * chat_p);
                dir_hat -= ws.Chat * r;
            }
            const double curv = dir_hat.squaredNorm();

            double t1 = kInf;
            int block = -1;
            for (int j = 0; j < q; ++j) {
                if (r(j) > 1e-12) {
                    const double t = lam(j) / r(j);
                    if (t < t1) {
                        t1 = t;
                        block = j;
                    }
                }
            }

            if (curv <= 1e-12 * std::max(1.0, chat_p.squaredNorm())) {
                // p's normal lies in the span of the working set.
                if (block < 0) {
                    sol.status = QpStatus::infeasible;
                    goto done;
                }
                lam -= t1 * r;
                lam_p += t1;
                drop_row(block);
                continue;
            }

            const double t2 = viol / curv;
            const double t = std::min(t1, t2);
            x -= t * llt.matrixU().solve(dir_hat);
            if (q > 0) lam -= t * r;
            lam_p += t;
            viol -= t * curv;

            if (t2 <= t1) {
                ws.add(p, chat_p);
                in_ws[p] = 1;
                lam.conservativeResize(ws.size());
                lam(ws.size() - 1) = lam_p;
                break;
            }
            drop_row(block);
        }
    }

done:
    sol.z = x;
    for (int j = 0; j < ws.size(); ++j)
        sol.lambda(ws.rows[j]) = lam(j) / scale(ws.rows[j]);
    sol.active = ws.rows;
    sol.objective = 0.5 * x.dot(H * x) + f.dot(x);
    return sol;
}

}  // namespace auvpf
