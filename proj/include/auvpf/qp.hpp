#pragma once

#include "auvpf/types.hpp"

#include <vector>

namespace auvpf {

enum class QpStatus { solved, infeasible, max_iter };

const char* to_string(QpStatus s);

struct QpOptions {
    double tol = 1e-6;    // feasibility tolerance on unit-norm constraint rows
    int max_iter = 4000;  // bound on active-set changes
};

struct QpSolution {
    VecX z;            // primal point (last iterate when not solved)
    VecX lambda;       // multipliers for the C z <= b rows, >= 0 at a solution
    QpStatus status = QpStatus::max_iter;
    int iterations = 0;
    double objective = 0.0;        // 0.5 z'Hz + f'z at z
    std::vector<int> active;       // final active set (row indices), for warm starts
};

/*
 * Dense strictly convex QP
 *
 *     min  0.5 z'H z + f'z      s.t.  C z <= b,
 *
 * solved with a dual active-set method in the style of Goldfarb-Idnani:
 * start at the unconstrained minimum, repeatedly pick the most violated
 * constraint and drive its violation to zero while keeping the iterate
 * optimal for the working set, dropping blocking constraints whose
 * multipliers would go negative. Finite, deterministic (ties broken by
 * lowest row index), and detects infeasibility when a violated constraint's
 * normal lies in the span of the working set with no droppable row.
 *
 * H must be symmetric positive definite (throws std::invalid_argument
 * otherwise). Constraint rows are normalized internally; reported
 * multipliers refer to the original rows.
 *
 * warm_active seeds the working set (row indices from a previous, equally
 * shaped problem). This only affects iteration count, never the optimum.
 */
QpSolution solve_dense_qp(const MatX& H, const VecX& f, const MatX& C, const VecX& b,
                          const QpOptions& opts = {},
                          const std::vector<int>* warm_active = nullptr);

}  // namespace auvpf
