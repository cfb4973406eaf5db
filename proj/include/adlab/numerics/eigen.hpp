#pragma once

#include <vector>

#include "adlab/numerics/dense_matrix.hpp"

namespace adlab {

/// Eigenvalues of a symmetric matrix, sorted ascending.
struct Spectrum {
    std::vector<double> eigenvalues;
};

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    DenseMatrix eigenvectors;         // column k pairs with eigenvalues[k]
};

/// Default tolerance on |M_ij - M_ji| relative to max(1, max|M|).
inline constexpr double kSymmetryTolerance = 1e-9;

/// Cyclic Jacobi. Off-diagonal mass is driven below 1e-12 * ||M||_F, so every
/// eigenvalue is accurate to well within 1e-10 * ||M||_F.
Spectrum symmetric_spectrum(const DenseMatrix& m, double sym_tol = kSymmetryTolerance);
EigenDecomposition symmetric_eigen(const DenseMatrix& m, double sym_tol = kSymmetryTolerance);

double min_eigenvalue(const DenseMatrix& m, double sym_tol = kSymmetryTolerance);

}  // namespace adlab
