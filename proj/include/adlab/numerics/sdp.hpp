#pragma once

#include <cstddef>
#include <vector>

#include "adlab/numerics/dense_matrix.hpp"

namespace adlab {

/// One entry of a symmetric constraint or objective matrix. `block` indexes the
/// PSD blocks; `block == psd_blocks.size()` addresses the nonnegative (LP)
/// block, where only i == j is meaningful. Off-diagonal entries (i != j) stand
/// for both (i, j) and (j, i), so <A, X> picks up 2 * value * X_ij.
struct SdpEntry {
    std::size_t block;
    std::size_t i;
    std::size_t j;
    double value;
};

struct SdpConstraint {
    std::vector<SdpEntry> entries;
    double rhs = 0.0;
};

/// Standard-form pair
///   (P) minimize <C, X>  s.t. <A_k, X> = b_k,  X = diag(X_1..X_r, x_lp) >= 0
///   (D) maximize b.y     s.t. sum_k y_k A_k + Z = C,  Z >= 0
struct SdpProblem {
    std::vector<std::size_t> psd_blocks;
    std::size_t lp_size = 0;
    std::vector<SdpEntry> objective;
    std::vector<SdpConstraint> constraints;

    std::size_t lp_block() const noexcept { return psd_blocks.size(); }
};

struct SdpOptions {
    double gap_tol = 1e-9;       // relative duality gap
    double feas_tol = 1e-9;      // relative primal/dual residual
    std::size_t max_iterations = 120;
    double step_fraction = 0.95;
};

struct SdpSolution {
    std::vector<DenseMatrix> x_blocks;
    std::vector<double> x_lp;
    std::vector<DenseMatrix> z_blocks;
    std::vector<double> z_lp;
    std::vector<double> y;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double primal_residual = 0.0;  // ||b - A(X)|| / (1 + ||b||)
    double dual_residual = 0.0;    // ||C - Z - A^T y|| / (1 + ||C||)
    double relative_gap = 0.0;
    std::size_t iterations = 0;
};

/// Primal-dual path following (HKM direction, Mehrotra predictor-corrector)
/// from an infeasible start. Throws SolverError with residuals when it fails
/// to meet the tolerances.
SdpSolution solve_sdp(const SdpProblem& problem, const SdpOptions& options = {});

}  // namespace adlab
