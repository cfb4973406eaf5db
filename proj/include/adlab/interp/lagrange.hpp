#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adlab/poly/multipoly.hpp"

namespace adlab {

/// Largest grid accepted by grid() and build_basis().
inline constexpr std::size_t kMaxGridSize = 5000;

/// alpha = k / d with k a nonnegative integer vector, sum k <= d.
struct GridPoint {
    std::vector<std::uint32_t> k;
    std::uint32_t d = 1;

    std::size_t size() const noexcept { return k.size(); }
    std::uint32_t level() const;  // sum of k
    double operator[](std::size_t i) const { return double(k[i]) / double(d); }
    std::vector<double> values() const;
    std::string to_string() const;

    bool operator==(const GridPoint&) const = default;
};

/// C(n+d, d), saturating at SIZE_MAX.
std::size_t grid_size(std::size_t n, std::size_t d);

/// All grid points, ordered by level and, within a level, by k in decreasing
/// lexicographic order (so (1,0) precedes (0,1)).
std::vector<GridPoint> grid(std::size_t n, std::size_t d);

/// One factor of d^d q_alpha: (d * x_var - j), or (d * sum_i x_i - j) when var < 0.
struct LinearFactor {
    int var;
    std::int64_t j;
};

std::vector<LinearFactor> q_factors(const GridPoint& alpha);

/// d^d q_alpha evaluated at a grid point, as an exact integer product
/// (returned in long double; zero exactly when some factor vanishes).
long double scaled_q_at(const std::vector<LinearFactor>& factors, const GridPoint& beta);

/// q_alpha expanded in the monomial basis.
MultiPoly build_q(const GridPoint& alpha, std::size_t n, std::size_t d);

/// p_alpha(x) = q_alpha(x) / q_alpha(alpha) evaluated from the factored form.
double evaluate_basis_factored(const GridPoint& alpha, std::span<const double> x);

struct InterpBasis {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<GridPoint> points;
    std::vector<MultiPoly> basis;  // p_alpha expanded, same order as points
    /// max |p_alpha(beta) - [alpha = beta]| of the expanded polynomials in double.
    std::optional<double> kronecker_error;
    /// max coefficient error of 50 random interpolations.
    std::optional<double> interpolation_error;
};

struct BasisOptions {
    bool verify = true;
    std::size_t trials = 50;
    std::uint64_t seed = 1;
};

/// Throws AccuracyError when an expanded coefficient is not finite.
InterpBasis build_basis(std::size_t n, std::size_t d, const BasisOptions& options = {});

/// sum_alpha values[alpha] p_alpha.
MultiPoly interpolate(const InterpBasis& basis, std::span<const double> values);
/// Interpolates r at the grid points.
MultiPoly interpolate(const InterpBasis& basis, const MultiPoly& r);

struct KroneckerReport {
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t points = 0;
    std::size_t pairs = 0;
    double max_deviation = 0.0;  // exact factored evaluation
};

/// Exhaustive check of p_alpha(beta) = [alpha = beta] via the factored form.
KroneckerReport kronecker_check(std::size_t n, std::size_t d);

/// Random polynomial of degree <= d in n variables with coefficients uniform in [-1, 1].
MultiPoly random_poly(std::size_t n, std::size_t d, std::uint64_t seed);

/// Largest |p| on [0,1]^n. Exact (vertex enumeration) for multilinear p;
/// otherwise the maximum over a uniform grid and the interpolation grid.
struct SupNorm {
    double value = 0.0;
    std::vector<double> argmax;
    bool exact = false;
};
SupNorm cube_sup_norm(const MultiPoly& p, std::size_t resolution = 0);

struct CoeffBoundReport {
    std::size_t n = 0;
    std::size_t d = 0;
    double sup_norm = 0.0;
    bool sup_exact = false;
    double coeff_max = 0.0;
    double bound_thm = 0.0;       // (2d)^{3d}
    double coeff_l1 = 0.0;
    double bound_l1 = 0.0;        // (2(n+d))^{3d}
    double bound_grid = 0.0;     // (2nd(n+d))^d
    double per_basis_max = 0.0;   // max over alpha of coeff_max(p_alpha)
    double bound_prop = 0.0;      // d^d (2n)^d
    double expansion_max = 0.0;   // max |p(alpha)|, the coefficients in the p_alpha basis
    double reconstruction_error = 0.0;
    std::vector<std::string> violations;
};

/// Throws PreconditionError (naming the point) when |p| > 1 on the cube.
/// Reuses `basis` when it matches (n, d).
CoeffBoundReport check_coeff_bounds(const MultiPoly& p, std::size_t n, std::size_t d,
                                    const InterpBasis* basis = nullptr);

std::string to_json(const CoeffBoundReport& r);

/// Shifted Chebyshev polynomial T_k(2t - 1) in variable i of n.
MultiPoly shifted_chebyshev(std::size_t n, std::size_t i, std::size_t k);

/// Polynomials bounded by 1 on [0,1]^n by construction: convex combinations of
/// products of shifted Chebyshev polynomials, and multilinear polynomials on at
/// most d of the variables with vertex values in [-1, 1].
std::vector<MultiPoly> bounded_corpus(std::size_t n, std::size_t d, std::size_t count, std::uint64_t seed);

}  // namespace adlab
