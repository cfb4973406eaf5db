#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace adlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Primal feasibility tolerance of the simplex solver.
inline constexpr double kLpFeasTol = 1e-9;
/// Objective optimality tolerance of the simplex solver.
inline constexpr double kLpOptTol = 1e-8;

enum class Relation { LessEq, GreaterEq, Equal };

struct LpConstraint {
    std::vector<double> coeffs;  // dense, one per variable
    Relation relation = Relation::LessEq;
    double rhs = 0.0;
};

/// minimize objective . x  subject to constraints and lower <= x <= upper.
/// Bounds may be infinite; `lower`/`upper` default to [0, +inf) when left empty.
struct LpProblem {
    std::size_t num_vars = 0;
    std::vector<double> objective;
    std::vector<LpConstraint> constraints;
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t add_constraint(std::vector<double> coeffs, Relation rel, double rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus s);

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> point;
    double objective = 0.0;
    /// Shadow prices, one per constraint: d(objective)/d(rhs). Nonnegative on >=
    /// rows, nonpositive on <= rows. Filled when optimal.
    std::vector<double> duals;
    /// When infeasible: multipliers y (same sign convention as `duals`) with
    /// y.b > sup over the bound box of (y^T A) x. See `verify_farkas`.
    std::vector<double> farkas;
    std::size_t iterations = 0;
};

struct LpOptions {
    std::size_t max_iterations = 200000;
    /// Consecutive non-improving pivots before switching to Bland's rule.
    std::size_t degenerate_switch = 5000;
    /// Refuse problems whose tableau would exceed this many entries.
    std::size_t max_tableau_entries = 400'000'000;
};

/// Dense two-phase simplex with Bland's rule as an anti-cycling fallback.
/// Throws InputError on malformed problems and SolverError (carrying the
/// current iterate) on iteration limit.
LpSolution solve_lp(const LpProblem& problem, const LpOptions& options = {});

/// Largest violation of any constraint or bound at `x`.
double max_violation(const LpProblem& problem, const std::vector<double>& x);

/// Checks a Farkas certificate: returns the gap y.b - sup_x (y^T A) x over the
/// bound box. Positive gap proves infeasibility. Returns -inf if the
/// multipliers have the wrong signs or leave an unbounded direction.
double farkas_gap(const LpProblem& problem, const std::vector<double>& y, double tol = 1e-9);

}  // namespace adlab
