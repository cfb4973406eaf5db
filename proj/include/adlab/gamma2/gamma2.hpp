#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adlab/boolfn/partial_fn.hpp"
#include "adlab/numerics/dense_matrix.hpp"
#include "adlab/numerics/sdp.hpp"
#include "adlab/poly/multipoly.hpp"

namespace adlab {

inline constexpr std::size_t kMaxGamma2Exact = 64;
inline constexpr std::size_t kMaxGamma2Approx = 32;
/// Largest side of a gadget composition built by build_comm.
inline constexpr std::size_t kMaxCommSide = 32;

/// Entries are +1, -1, or 0 for * (outside the promise). The entry for
/// (x, y) is (-1)^{1 - F(x, y)}: +1 where F = 1.
class SignMatrix {
public:
    SignMatrix(std::size_t rows, std::size_t cols, std::vector<std::int8_t> entries,
               std::vector<std::string> row_labels = {}, std::vector<std::string> col_labels = {});

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::int8_t operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    bool defined(std::size_t i, std::size_t j) const { return (*this)(i, j) != 0; }
    bool partial() const;
    const std::vector<std::int8_t>& entries() const noexcept { return e_; }
    const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
    const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }

    /// Real matrix with * mapped to 0.
    DenseMatrix dense() const;

    bool operator==(const SignMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }

private:
    std::size_t rows_, cols_;
    std::vector<std::int8_t> e_;
    std::vector<std::string> row_labels_, col_labels_;
};

enum class Gadget { And, Xor };

/// DISJ (OR of ANDs), IP (XOR of ANDs), NOTEQ, EQ on n-bit strings.
SignMatrix build_comm(std::string_view name, std::size_t n);
/// g applied to the bitwise gadget outputs; * wherever g is *.
SignMatrix build_comm(const PartialFn& g, Gadget gadget);
/// g(F(x_1, y_1), ..., F(x_n, y_n)) with n = arity of g; * wherever g or any
/// copy of F is *. Rows are X^n with copy 1 the most significant digit.
SignMatrix build_comm(const PartialFn& g, const SignMatrix& inner);
SignMatrix gadget_matrix(Gadget gadget);
/// NOTEQ on k elements: J - 2I.
SignMatrix noteq(std::size_t k);

/// Text format: "rows cols" header, then one row per line over + - *.
std::string to_text(const SignMatrix& m);
SignMatrix parse_sign_matrix(std::string_view text);
SignMatrix read_sign_matrix(const std::string& path);

struct Gamma2Options {
    SdpOptions sdp{};
};

struct Gamma2Result {
    double value = 0.0;          // SDP optimum t
    DenseMatrix b, c;            // b * c reproduces the matrix
    double factor_value = 0.0;   // ||b||_row * ||c||_col
    double residual = 0.0;       // max |b c - target|
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double relative_gap = 0.0;
    std::size_t iterations = 0;
};

Gamma2Result gamma2_exact(const DenseMatrix& a, const Gamma2Options& options = {});

struct ApproxMatrixResult {
    double value = 0.0;
    double epsilon = 0.0;
    DenseMatrix approximant;
    DenseMatrix b, c;
    double factor_value = 0.0;
    double residual = 0.0;       // max |b c - approximant|
    double max_violation = 0.0;  // how far the approximant leaves its boxes (0 when feasible)
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double relative_gap = 0.0;
    std::size_t iterations = 0;
};

/// min gamma2(A) over A within eps of the signs on defined entries and in
/// [-1, 1] everywhere.
ApproxMatrixResult approx_gamma2(const SignMatrix& f, double eps = 2.0 / 3.0, const Gamma2Options& options = {});

std::string to_json(const ApproxMatrixResult& r, bool include_factorization = false);
std::string to_json(const Gamma2Result& r, bool include_factorization = false);

/// Two-sided numerical bracket on gamma2 independent of the SDP. The lower
/// bound is ||D_u A D_v||_tr for unit u, v >= 0; the upper bound is the
/// factorization read off the singular vectors at the same u, v. A
/// multiplicative fixed-point iteration drives u, v from random starts.
struct Gamma2Bracket {
    double lower = 0.0;
    double upper = 0.0;
    std::size_t restarts = 0;
};

Gamma2Bracket gamma2_search(const DenseMatrix& a, std::size_t restarts = 50, std::uint64_t seed = 1,
                            std::size_t max_iterations = 5000);

/// Index layout of a matrix whose rows are X^copies and columns Y^copies,
/// copy 1 being the most significant digit.
struct ProductLayout {
    std::size_t copies = 0;
    std::size_t inner_rows = 0;
    std::size_t inner_cols = 0;
};

/// (A_S)_{x,y} = A_{x^S, y^S}: digits outside S replaced by column symbol b
/// and, when given, row symbol a. Bit i of `s` stands for copy i + 1.
DenseMatrix substitute_columns(const DenseMatrix& a, const ProductLayout& layout, std::uint64_t s, std::size_t b,
                               std::optional<std::size_t> row_symbol = std::nullopt);

/// Picks the substitution from the inner problem: an all-zero column b if
/// there is one, otherwise a zero pair (a, b). PreconditionError if F is never 0.
DenseMatrix substitute_columns(const DenseMatrix& a, const SignMatrix& inner, std::size_t copies, std::uint64_t s);

struct HadamardComposition {
    DenseMatrix b;
    std::vector<double> gamma2_inputs;
    double max_gamma2 = 0.0;
    double bound = 0.0;  // sum_m |alpha_m| M^{deg m}
    std::optional<double> sdp_value;
};

/// B_xy = p(mats_1[x,y], ..., mats_N[x,y]). `input_gamma2`, when non-empty,
/// supplies gamma2 of each matrix instead of solving for it.
HadamardComposition hadamard_poly_compose(const MultiPoly& p, const std::vector<DenseMatrix>& mats,
                                          bool solve_b = true, std::vector<double> input_gamma2 = {});

struct AmplifiedMatrix {
    DenseMatrix a;
    std::size_t order = 1;  // odd majority order k; 1 means unchanged
    MultiPoly poly;         // pm-convention amplifier in one variable
    std::optional<HadamardComposition> certificate;
};

/// Applies q(z) = 2 A_k((z+1)/2) - 1 entrywise with the least odd k taking
/// [1 - eps, 1] into [1 - eps_target, 1]. eps_target >= eps leaves A as is.
AmplifiedMatrix amplify_matrix(const DenseMatrix& a, double eps, double eps_target, bool certify = false);

/// Largest row l2 norm / largest column l2 norm.
double max_row_norm(const DenseMatrix& m);
double max_col_norm(const DenseMatrix& m);

}  // namespace adlab
