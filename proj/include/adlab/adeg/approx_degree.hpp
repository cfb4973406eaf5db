#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adlab/boolfn/partial_fn.hpp"
#include "adlab/poly/multipoly.hpp"

namespace adlab {

/// Largest arity accepted without a symmetry reduction to Hamming levels.
inline constexpr std::size_t kMaxAdegArity = 14;

struct AdegOptions {
    /// Require 0 <= p <= 1 on the whole cube (bounded approximate degree).
    bool bounded = true;
    /// Solve the LP over orbits of the coordinate permutations that fix f.
    bool use_symmetry = true;
    /// Slack allowed when comparing the LP optimum against the target error.
    double tie_tolerance = 1e-9;
};

/// Orbits of {0,1}^m (equivalently of monomials, read as subsets) under the
/// group generated by the coordinate permutations that leave f invariant.
struct SymmetryReduction {
    std::size_t m = 0;
    std::vector<std::uint32_t> orbit_of;   // per point / subset mask
    std::vector<std::uint64_t> rep;        // smallest mask of each orbit
    std::vector<std::size_t> orbit_size;
    std::size_t generators = 0;            // invariant permutations found
};

SymmetryReduction symmetry_reduction(const PartialFn& f, bool use_symmetry = true);

struct BestErrorResult {
    double epsilon = 0.0;          // LP optimum
    MultiPoly witness;             // multilinear, degree <= d
    std::vector<double> phi;       // dual weights on {0,1}^m (sum of row shadow prices)
    std::size_t lp_variables = 0;
    std::size_t lp_rows = 0;
    std::size_t orbits = 0;
};

/// Smallest max-error over Dom(f) of a multilinear polynomial of degree <= d
/// (bounded on the cube unless options.bounded is false).
BestErrorResult best_error(const PartialFn& f, std::size_t d, const AdegOptions& options = {});

struct DualWitness {
    std::size_t degree = 0;
    std::vector<double> phi;       // normalized to sum |phi| = 1
    /// sum_{x in Dom} phi(x) (-1)^{1-f(x)}
    double correlation = 0.0;
    /// max over monomials T with |T| <= degree of |sum_x phi(x) prod_{i in T} x_i|
    double high_degree_residual = 0.0;
    /// Lower bound on the error of every admissible degree-<=d polynomial, derived from phi alone.
    double certified_error = 0.0;
};

/// Certified error of a dual vector: with A = sum_{f=1} phi + sum_{x not in Dom, phi<0} phi and
/// B = sum_{f=1, phi>0} phi + sum_{f=0, phi<0} |phi|, every bounded degree-<=d p has error >= A/B
/// (the unbounded variant needs phi = 0 off Dom and uses B = sum_Dom |phi|).
double certified_error(const PartialFn& f, const std::vector<double>& phi, bool bounded);

/// max_{|T| <= d} |sum_x phi(x) x^T| via a superset-sum transform.
double high_degree_residual(const std::vector<double>& phi, std::size_t m, std::size_t d);

/// Dual certificate that degree d cannot reach error `epsilon`.
/// Throws LogicError when best_error(f, d) <= epsilon.
DualWitness dual_witness(const PartialFn& f, std::size_t d, double epsilon = 1.0 / 3.0,
                         const AdegOptions& options = {});

struct ApproxDegreeResult {
    std::string label;
    double epsilon = 1.0 / 3.0;
    bool bounded = true;
    std::size_t degree = 0;
    MultiPoly witness;
    double achieved_error = 0.0;      // max over Dom |witness - f|
    double bound_violation = 0.0;     // max over the cube of distance of witness from [0,1]
    std::vector<double> errors_by_degree;  // LP optimum for d = 0..degree
    std::optional<DualWitness> certificate;  // at degree - 1
};

ApproxDegreeResult approx_degree(const PartialFn& f, double epsilon = 1.0 / 3.0,
                                 const AdegOptions& options = {});

/// Values of a multilinear polynomial at every cube point (zeta transform).
std::vector<double> cube_values(const MultiPoly& p);

}  // namespace adlab
