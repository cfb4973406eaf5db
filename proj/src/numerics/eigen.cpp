#include "adlab/numerics/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "adlab/errors.hpp"

namespace adlab {

namespace {

void check_symmetric(const DenseMatrix& m, double sym_tol) {
    if (!m.square()) throw InputError("symmetric eigen: matrix is not square");
    if (!m.all_finite()) throw InputError("symmetric eigen: non-finite entry");
    const double scale = std::max(1.0, m.max_abs());
    if (m.asymmetry() > sym_tol * scale) throw InputError("symmetric eigen: matrix is not symmetric");
}

// Cyclic Jacobi on a working copy `a`; accumulates rotations into `v` when given.
void jacobi(DenseMatrix& a, DenseMatrix* v) {
    const std::size_t n = a.rows();
    if (n < 2) return;
    const double target = 1e-12 * a.frobenius_norm();
    const double target_sq = target * target;
    constexpr int kMaxSweeps = 60;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (2.0 * off <= target_sq) return;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p), aqq = a(q, q);
                // skip rotations that cannot change the diagonal in floating point
                if (sweep > 3 && std::abs(apq) < 1e-18 * (std::abs(app) + std::abs(aqq))) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                if (v != nullptr) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const double vkp = (*v)(k, p), vkq = (*v)(k, q);
                        (*v)(k, p) = c * vkp - s * vkq;
                        (*v)(k, q) = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
}

DenseMatrix symmetrized(const DenseMatrix& m) {
    DenseMatrix a = m;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = a(j, i) = v;
        }
    return a;
}

}  // namespace

Spectrum symmetric_spectrum(const DenseMatrix& m, double sym_tol) {
    check_symmetric(m, sym_tol);
    DenseMatrix a = symmetrized(m);
    jacobi(a, nullptr);
    Spectrum s;
    s.eigenvalues.resize(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) s.eigenvalues[i] = a(i, i);
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
    return s;
}

EigenDecomposition symmetric_eigen(const DenseMatrix& m, double sym_tol) {
    check_symmetric(m, sym_tol);
    DenseMatrix a = symmetrized(m);
    DenseMatrix v = DenseMatrix::identity(a.rows());
    jacobi(a, &v);
    const std::size_t n = a.rows();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) < a(j, j); });
    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = DenseMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

double min_eigenvalue(const DenseMatrix& m, double sym_tol) {
    const auto s = symmetric_spectrum(m, sym_tol);
    return s.eigenvalues.empty() ? 0.0 : s.eigenvalues.front();
}

}  // namespace adlab
