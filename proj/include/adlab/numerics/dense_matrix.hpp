#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace adlab {

/// Row-major dense real matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix ones(std::size_t rows, std::size_t cols);
    static DenseMatrix diagonal(std::span<const double> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    const std::vector<double>& entries() const noexcept { return data_; }
    std::vector<double>& entries() noexcept { return data_; }

    DenseMatrix transpose() const;
    DenseMatrix submatrix(std::span<const std::size_t> row_idx,
                          std::span<const std::size_t> col_idx) const;

    double frobenius_norm() const;
    double max_abs() const;
    /// Largest deviation |M_ij - M_ji|.
    double asymmetry() const;
    bool all_finite() const;

    DenseMatrix& operator+=(const DenseMatrix& other);
    DenseMatrix& operator-=(const DenseMatrix& other);
    DenseMatrix& operator*=(double s);

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(double s, DenseMatrix a);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> matvec(const DenseMatrix& a, std::span<const double> x);

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
/// Returns false (leaving `out` unspecified) when a pivot is not positive.
bool cholesky(const DenseMatrix& a, DenseMatrix& out);

/// Solves L L^T x = b given the Cholesky factor L.
std::vector<double> cholesky_solve(const DenseMatrix& l, std::span<const double> b);

/// Inverse of an SPD matrix through its Cholesky factor.
DenseMatrix cholesky_inverse(const DenseMatrix& l);

/// L^{-1} M L^{-T} for lower-triangular L.
DenseMatrix congruence_by_inverse(const DenseMatrix& l, const DenseMatrix& m);

/// Numerical rank from singular values above `threshold` times the largest one.
std::size_t numerical_rank(const DenseMatrix& a, double threshold = 1e-8);

/// Sum of singular values.
double trace_norm(const DenseMatrix& a);

}  // namespace adlab
