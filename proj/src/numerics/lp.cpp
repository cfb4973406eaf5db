#include "adlab/numerics/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adlab/errors.hpp"

namespace adlab {

std::size_t LpProblem::add_constraint(std::vector<double> coeffs, Relation rel, double rhs) {
    constraints.push_back({std::move(coeffs), rel, rhs});
    return constraints.size() - 1;
}

std::string to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-10;
constexpr double kRayTol = 1e-7;

enum class VarKind { Shifted, Mirrored, Split };

struct VarMap {
    VarKind kind;
    std::size_t col;        // first standard-form column
    double offset;          // l_j (Shifted) or u_j (Mirrored)
};

void validate(const LpProblem& p) {
    const std::size_t n = p.num_vars;
    if (p.objective.size() != n) throw InputError("solve_lp: objective length differs from num_vars");
    if (!p.lower.empty() && p.lower.size() != n) throw InputError("solve_lp: lower bound length mismatch");
    if (!p.upper.empty() && p.upper.size() != n) throw InputError("solve_lp: upper bound length mismatch");
    for (double c : p.objective)
        if (!std::isfinite(c)) throw InputError("solve_lp: non-finite objective coefficient");
    for (const auto& row : p.constraints) {
        if (row.coeffs.size() != n) throw InputError("solve_lp: constraint length differs from num_vars");
        if (!std::isfinite(row.rhs)) throw InputError("solve_lp: non-finite right-hand side");
        for (double a : row.coeffs)
            if (!std::isfinite(a)) throw InputError("solve_lp: non-finite constraint coefficient");
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double lo = p.lower.empty() ? 0.0 : p.lower[j];
        const double hi = p.upper.empty() ? kInf : p.upper[j];
        if (std::isnan(lo) || std::isnan(hi) || lo == kInf || hi == -kInf) {
            throw InputError("solve_lp: invalid variable bound");
        }
    }
}

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), w_(cols + 1), t_(rows * w_, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return t_[i * w_ + j]; }
    double at(std::size_t i, std::size_t j) const { return t_[i * w_ + j]; }
    double& rhs(std::size_t i) { return t_[i * w_ + n_]; }
    double rhs(std::size_t i) const { return t_[i * w_ + n_]; }
    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }

    // Pivot on (r, q); `cost` is the reduced-cost row (length n_ + 1, last entry = -objective).
    void pivot(std::size_t r, std::size_t q, std::vector<double>& cost) {
        double* pr = &t_[r * w_];
        const double inv = 1.0 / pr[q];
        for (std::size_t j = 0; j < w_; ++j) pr[j] *= inv;
        pr[q] = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            double* pi = &t_[i * w_];
            const double f = pi[q];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < w_; ++j) pi[j] -= f * pr[j];
            pi[q] = 0.0;
        }
        const double f = cost[q];
        if (f != 0.0) {
            for (std::size_t j = 0; j < w_; ++j) cost[j] -= f * pr[j];
            cost[q] = 0.0;
        }
    }

private:
    std::size_t m_, n_, w_;
    std::vector<double> t_;
};

struct Standardized {
    Tableau tab;
    std::vector<VarMap> vars;
    std::vector<double> sigma;        // sign flips per row
    std::vector<std::size_t> ident;   // identity column per row
    std::vector<bool> artificial;     // per column
    std::vector<std::size_t> basis;   // per row
    std::vector<double> cost;         // phase-2 cost per standard column
    std::size_t structural = 0;
    std::size_t original_rows = 0;
};

Standardized standardize(const LpProblem& p, const LpOptions& opt) {
    const std::size_t n = p.num_vars;
    std::vector<VarMap> vars(n);
    std::size_t ncol = 0;
    std::vector<std::pair<std::size_t, double>> bound_rows;  // (column, u - l)
    for (std::size_t j = 0; j < n; ++j) {
        const double lo = p.lower.empty() ? 0.0 : p.lower[j];
        const double hi = p.upper.empty() ? kInf : p.upper[j];
        if (std::isfinite(lo)) {
            vars[j] = {VarKind::Shifted, ncol, lo};
            if (std::isfinite(hi)) bound_rows.emplace_back(ncol, hi - lo);
            ncol += 1;
        } else if (std::isfinite(hi)) {
            vars[j] = {VarKind::Mirrored, ncol, hi};
            ncol += 1;
        } else {
            vars[j] = {VarKind::Split, ncol, 0.0};
            ncol += 2;
        }
    }
    const std::size_t structural = ncol;
    const std::size_t m0 = p.constraints.size();
    const std::size_t m = m0 + bound_rows.size();

    // row data in standard-form columns
    std::vector<std::vector<double>> rows(m, std::vector<double>(structural, 0.0));
    std::vector<double> b(m, 0.0);
    std::vector<Relation> rel(m, Relation::LessEq);
    for (std::size_t i = 0; i < m0; ++i) {
        const auto& c = p.constraints[i];
        double rhs = c.rhs;
        for (std::size_t j = 0; j < n; ++j) {
            const double a = c.coeffs[j];
            if (a == 0.0) continue;
            const auto& v = vars[j];
            switch (v.kind) {
                case VarKind::Shifted: rows[i][v.col] += a; rhs -= a * v.offset; break;
                case VarKind::Mirrored: rows[i][v.col] -= a; rhs -= a * v.offset; break;
                case VarKind::Split: rows[i][v.col] += a; rows[i][v.col + 1] -= a; break;
            }
        }
        b[i] = rhs;
        rel[i] = c.relation;
    }
    for (std::size_t k = 0; k < bound_rows.size(); ++k) {
        rows[m0 + k][bound_rows[k].first] = 1.0;
        b[m0 + k] = bound_rows[k].second;
        rel[m0 + k] = Relation::LessEq;
    }

    std::vector<double> sigma(m, 1.0);
    std::size_t extra = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < 0.0) {
            sigma[i] = -1.0;
            b[i] = -b[i];
            for (double& a : rows[i]) a = -a;
            if (rel[i] == Relation::LessEq) rel[i] = Relation::GreaterEq;
            else if (rel[i] == Relation::GreaterEq) rel[i] = Relation::LessEq;
        }
        extra += rel[i] == Relation::GreaterEq ? 2 : 1;
    }
    const std::size_t total_cols = structural + extra;
    if ((m + 1) * (total_cols + 1) > opt.max_tableau_entries) {
        throw ResourceError("solve_lp: problem too large for the dense tableau (" + std::to_string(m) +
                            " rows x " + std::to_string(total_cols) + " columns)");
    }

    Standardized s{Tableau(m, total_cols), std::move(vars), sigma, std::vector<std::size_t>(m),
                   std::vector<bool>(total_cols, false), std::vector<std::size_t>(m),
                   std::vector<double>(total_cols, 0.0), structural, m0};
    std::size_t col = structural;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < structural; ++j) s.tab.at(i, j) = rows[i][j];
        s.tab.rhs(i) = b[i];
        if (rel[i] == Relation::LessEq) {
            s.tab.at(i, col) = 1.0;
            s.ident[i] = col++;
        } else if (rel[i] == Relation::GreaterEq) {
            s.tab.at(i, col++) = -1.0;
            s.tab.at(i, col) = 1.0;
            s.artificial[col] = true;
            s.ident[i] = col++;
        } else {
            s.tab.at(i, col) = 1.0;
            s.artificial[col] = true;
            s.ident[i] = col++;
        }
        s.basis[i] = s.ident[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double c = p.objective[j];
        const auto& v = s.vars[j];
        switch (v.kind) {
            case VarKind::Shifted: s.cost[v.col] += c; break;
            case VarKind::Mirrored: s.cost[v.col] -= c; break;
            case VarKind::Split: s.cost[v.col] += c; s.cost[v.col + 1] -= c; break;
        }
    }
    return s;
}

// reduced-cost row for costs c given the current basis; last slot holds -z
std::vector<double> reduced_costs(const Standardized& s, const std::vector<double>& c) {
    const std::size_t n = s.tab.cols();
    std::vector<double> d(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) d[j] = c[j];
    for (std::size_t i = 0; i < s.tab.rows(); ++i) {
        const double cb = c[s.basis[i]];
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j <= n; ++j) d[j] -= cb * (j == n ? s.tab.rhs(i) : s.tab.at(i, j));
    }
    return d;
}

std::vector<double> current_point(const Standardized& s, std::size_t num_vars) {
    std::vector<double> xs(s.tab.cols(), 0.0);
    for (std::size_t i = 0; i < s.tab.rows(); ++i) xs[s.basis[i]] = s.tab.rhs(i);
    std::vector<double> x(num_vars, 0.0);
    for (std::size_t j = 0; j < num_vars; ++j) {
        const auto& v = s.vars[j];
        switch (v.kind) {
            case VarKind::Shifted: x[j] = v.offset + xs[v.col]; break;
            case VarKind::Mirrored: x[j] = v.offset - xs[v.col]; break;
            case VarKind::Split: x[j] = xs[v.col] - xs[v.col + 1]; break;
        }
    }
    return x;
}

enum class PhaseResult { Optimal, Unbounded };

PhaseResult run_phase(Standardized& s, std::vector<double>& d, bool allow_artificial,
                      const LpOptions& opt, std::size_t& iterations, std::size_t num_vars) {
    const std::size_t n = s.tab.cols();
    const std::size_t m = s.tab.rows();
    bool bland = false;
    std::size_t stalled = 0;
    // Columns whose reduced cost is only marginally negative and that admit no
    // pivot: drift, not a ray. Skipped until the next pivot.
    std::vector<char> skip(n, 0);
    for (;;) {
        if (iterations >= opt.max_iterations) {
            throw SolverError("solve_lp: iteration limit reached", current_point(s, num_vars));
        }
        std::size_t q = n;
        if (bland) {
            for (std::size_t j = 0; j < n; ++j) {
                if ((!allow_artificial && s.artificial[j]) || skip[j]) continue;
                if (d[j] < -kCostTol) { q = j; break; }
            }
        } else {
            double best = -kCostTol;
            for (std::size_t j = 0; j < n; ++j) {
                if ((!allow_artificial && s.artificial[j]) || skip[j]) continue;
                if (d[j] < best) { best = d[j]; q = j; }
            }
        }
        if (q == n) return PhaseResult::Optimal;

        std::size_t r = m;
        double best_ratio = kInf, best_piv = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double a = s.tab.at(i, q);
            if (a <= kPivotTol) continue;
            const double ratio = std::max(0.0, s.tab.rhs(i)) / a;
            if (r == m || ratio < best_ratio - 1e-12) {
                r = i; best_ratio = ratio; best_piv = a;
            } else if (ratio <= best_ratio + 1e-12) {
                const bool better = bland ? s.basis[i] < s.basis[r] : a > best_piv;
                if (better) { r = i; best_ratio = std::min(best_ratio, ratio); best_piv = a; }
            }
        }
        if (r == m) {
            if (d[q] < -kRayTol) return PhaseResult::Unbounded;
            skip[q] = 1;
            continue;
        }

        if (best_ratio * std::abs(d[q]) <= 1e-13) {
            if (++stalled >= opt.degenerate_switch) bland = true;
        } else {
            stalled = 0;
            bland = false;
        }
        s.tab.pivot(r, q, d);
        s.basis[r] = q;
        std::fill(skip.begin(), skip.end(), 0);
        ++iterations;
    }
}

}  // namespace

LpSolution solve_lp(const LpProblem& problem, const LpOptions& options) {
    validate(problem);
    Standardized s = standardize(problem, options);
    const std::size_t m = s.tab.rows();
    const std::size_t n = s.tab.cols();
    LpSolution sol;

    // phase 1: minimize the sum of artificials
    std::vector<double> c1(n, 0.0);
    bool any_art = false;
    for (std::size_t j = 0; j < n; ++j)
        if (s.artificial[j]) { c1[j] = 1.0; any_art = true; }
    double bscale = 1.0;
    for (std::size_t i = 0; i < m; ++i) bscale = std::max(bscale, std::abs(s.tab.rhs(i)));
    if (any_art) {
        auto d1 = reduced_costs(s, c1);
        run_phase(s, d1, true, options, sol.iterations, problem.num_vars);
        const double w = -d1[n];
        if (w > kLpFeasTol * bscale) {
            sol.status = LpStatus::Infeasible;
            sol.farkas.resize(s.original_rows);
            for (std::size_t i = 0; i < s.original_rows; ++i) {
                const std::size_t e = s.ident[i];
                sol.farkas[i] = s.sigma[i] * (c1[e] - d1[e]);
            }
            sol.point = current_point(s, problem.num_vars);
            return sol;
        }
        // drive zero-level artificials out of the basis where possible
        for (std::size_t i = 0; i < m; ++i) {
            if (!s.artificial[s.basis[i]]) continue;
            std::size_t q = n;
            double best = kPivotTol;
            for (std::size_t j = 0; j < n; ++j) {
                if (s.artificial[j]) continue;
                if (std::abs(s.tab.at(i, j)) > best) { best = std::abs(s.tab.at(i, j)); q = j; }
            }
            if (q == n) continue;  // redundant row
            s.tab.pivot(i, q, d1);
            s.basis[i] = q;
        }
    }

    auto d2 = reduced_costs(s, s.cost);
    const auto res = run_phase(s, d2, false, options, sol.iterations, problem.num_vars);
    sol.point = current_point(s, problem.num_vars);
    if (res == PhaseResult::Unbounded) {
        sol.status = LpStatus::Unbounded;
        sol.objective = -kInf;
        return sol;
    }
    sol.status = LpStatus::Optimal;
    double obj = 0.0;
    for (std::size_t j = 0; j < problem.num_vars; ++j) obj += problem.objective[j] * sol.point[j];
    sol.objective = obj;
    sol.duals.resize(s.original_rows);
    for (std::size_t i = 0; i < s.original_rows; ++i) {
        const std::size_t e = s.ident[i];
        sol.duals[i] = s.sigma[i] * (s.cost[e] - d2[e]);
    }
    return sol;
}

double max_violation(const LpProblem& problem, const std::vector<double>& x) {
    double worst = 0.0;
    for (const auto& c : problem.constraints) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < problem.num_vars; ++j) lhs += c.coeffs[j] * x[j];
        const double diff = lhs - c.rhs;
        switch (c.relation) {
            case Relation::LessEq: worst = std::max(worst, diff); break;
            case Relation::GreaterEq: worst = std::max(worst, -diff); break;
            case Relation::Equal: worst = std::max(worst, std::abs(diff)); break;
        }
    }
    for (std::size_t j = 0; j < problem.num_vars; ++j) {
        const double lo = problem.lower.empty() ? 0.0 : problem.lower[j];
        const double hi = problem.upper.empty() ? kInf : problem.upper[j];
        worst = std::max(worst, lo - x[j]);
        worst = std::max(worst, x[j] - hi);
    }
    return worst;
}

double farkas_gap(const LpProblem& problem, const std::vector<double>& y, double tol) {
    if (y.size() != problem.constraints.size()) throw InputError("farkas_gap: multiplier count mismatch");
    std::vector<double> g(problem.num_vars, 0.0);
    double yb = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const auto& c = problem.constraints[i];
        if (c.relation == Relation::GreaterEq && y[i] < -tol) return -kInf;
        if (c.relation == Relation::LessEq && y[i] > tol) return -kInf;
        yb += y[i] * c.rhs;
        for (std::size_t j = 0; j < problem.num_vars; ++j) g[j] += y[i] * c.coeffs[j];
    }
    double sup = 0.0;
    for (std::size_t j = 0; j < problem.num_vars; ++j) {
        const double lo = problem.lower.empty() ? 0.0 : problem.lower[j];
        const double hi = problem.upper.empty() ? kInf : problem.upper[j];
        if (g[j] > tol) {
            if (!std::isfinite(hi)) return -kInf;
            sup += g[j] * hi;
        } else if (g[j] < -tol) {
            if (!std::isfinite(lo)) return -kInf;
            sup += g[j] * lo;
        }
    }
    return yb - sup;
}

}  // namespace adlab
