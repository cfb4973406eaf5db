#include "adlab/adeg/approx_degree.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "adlab/errors.hpp"
#include "adlab/numerics/lp.hpp"

namespace adlab {

namespace {

using Perm = std::vector<std::size_t>;

std::uint64_t act(const Perm& p, std::uint64_t x, std::size_t m) {
    std::uint64_t y = 0;
    for (std::size_t i = 0; i < m; ++i)
        if ((x >> (m - 1 - i)) & 1) y |= std::uint64_t{1} << (m - 1 - p[i]);
    return y;
}

bool invariant(const PartialFn& f, const Perm& p) {
    const std::size_t m = f.arity();
    for (std::uint64_t x = 0; x < f.size(); ++x)
        if (f(act(p, x, m)) != f(x)) return false;
    return true;
}

std::size_t find_root(std::vector<std::uint32_t>& parent, std::size_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

std::size_t bits(std::uint64_t x) { return static_cast<std::size_t>(std::popcount(x)); }

DualWitness make_dual(const PartialFn& f, std::size_t d, std::vector<double> phi, bool bounded) {
    DualWitness w;
    w.degree = d;
    double l1 = 0.0;
    for (double v : phi) l1 += std::abs(v);
    if (l1 > 0.0)
        for (auto& v : phi) v /= l1;
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        if (!f.defined(x)) continue;
        w.correlation += f(x) == kOne ? phi[x] : -phi[x];
    }
    w.high_degree_residual = high_degree_residual(phi, f.arity(), d);
    w.certified_error = certified_error(f, phi, bounded);
    w.phi = std::move(phi);
    return w;
}

}  // namespace

SymmetryReduction symmetry_reduction(const PartialFn& f, bool use_symmetry) {
    const std::size_t m = f.arity();
    SymmetryReduction r;
    r.m = m;
    const std::size_t n = f.size();
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    auto merge_under = [&](const Perm& p) {
        for (std::uint64_t x = 0; x < n; ++x) {
            const auto a = find_root(parent, x), b = find_root(parent, act(p, x, m));
            if (a != b) parent[std::max(a, b)] = std::uint32_t(std::min(a, b));
        }
    };
    if (use_symmetry && m >= 2) {
        Perm id(m);
        std::iota(id.begin(), id.end(), 0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                Perm p = id;
                std::swap(p[i], p[j]);
                if (invariant(f, p)) {
                    merge_under(p);
                    ++r.generators;
                }
            }
        const auto& blocks = f.blocks();
        std::vector<std::size_t> start(blocks.size(), 0);
        for (std::size_t k = 1; k < blocks.size(); ++k) start[k] = start[k - 1] + blocks[k - 1];
        for (std::size_t a = 0; a < blocks.size(); ++a)
            for (std::size_t b = a + 1; b < blocks.size(); ++b) {
                if (blocks[a] != blocks[b] || blocks[a] < 2) continue;
                Perm p = id;
                for (std::size_t t = 0; t < blocks[a]; ++t) std::swap(p[start[a] + t], p[start[b] + t]);
                if (invariant(f, p)) {
                    merge_under(p);
                    ++r.generators;
                }
            }
    }
    r.orbit_of.assign(n, 0);
    std::vector<std::uint32_t> index(n, UINT32_MAX);
    for (std::uint64_t x = 0; x < n; ++x) {
        const auto root = find_root(parent, x);  // roots are the smallest member
        if (index[root] == UINT32_MAX) {
            index[root] = std::uint32_t(r.rep.size());
            r.rep.push_back(root);
            r.orbit_size.push_back(0);
        }
        r.orbit_of[x] = index[root];
        ++r.orbit_size[index[root]];
    }
    return r;
}

std::vector<double> cube_values(const MultiPoly& p) {
    auto v = dense_multilinear(p);
    const std::size_t m = p.num_vars();
    for (std::size_t b = 0; b < m; ++b) {
        const std::uint64_t bit = std::uint64_t{1} << b;
        for (std::uint64_t x = 0; x < v.size(); ++x)
            if (x & bit) v[x] += v[x ^ bit];
    }
    return v;
}

double high_degree_residual(const std::vector<double>& phi, std::size_t m, std::size_t d) {
    if (phi.size() != (std::size_t{1} << m)) throw InputError("high_degree_residual: length must be 2^m");
    std::vector<double> s = phi;
    for (std::size_t b = 0; b < m; ++b) {
        const std::uint64_t bit = std::uint64_t{1} << b;
        for (std::uint64_t x = 0; x < s.size(); ++x)
            if (!(x & bit)) s[x] += s[x | bit];
    }
    double worst = 0.0;
    for (std::uint64_t t = 0; t < s.size(); ++t)
        if (bits(t) <= d) worst = std::max(worst, std::abs(s[t]));
    return worst;
}

double certified_error(const PartialFn& f, const std::vector<double>& phi, bool bounded) {
    if (phi.size() != f.size()) throw InputError("certified_error: length must be 2^m");
    double a = 0.0, b = 0.0, off = 0.0, l1 = 0.0;
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        const double v = phi[x];
        l1 += std::abs(v);
        if (!f.defined(x)) {
            off += std::abs(v);
            if (v < 0.0) a += v;
            continue;
        }
        if (f(x) == kOne) {
            a += v;
            if (bounded ? v > 0.0 : true) b += std::abs(v);
        } else if (bounded ? v < 0.0 : true) {
            b += std::abs(v);
        }
    }
    if (!bounded) {
        if (off > 1e-12 * l1) return 0.0;
        a = 0.0;
        for (std::uint64_t x = 0; x < f.size(); ++x)
            if (f.defined(x) && f(x) == kOne) a += phi[x];
    }
    if (b <= 0.0) return 0.0;
    return std::max(0.0, a / b);
}

BestErrorResult best_error(const PartialFn& f, std::size_t d, const AdegOptions& options) {
    const std::size_t m = f.arity();
    if (d > m) throw InputError("best_error: degree exceeds the arity");
    const SymmetryReduction red = symmetry_reduction(f, options.use_symmetry);
    if (m > kMaxAdegArity && red.rep.size() > m + 1)
        throw ResourceError("best_error: arity " + std::to_string(m) + " needs a symmetric function (cap 14 otherwise)");

    // one LP column per monomial orbit of degree <= d, plus the error variable
    std::vector<std::int64_t> column(red.rep.size(), -1);
    std::size_t nv = 0;
    for (std::size_t o = 0; o < red.rep.size(); ++o)
        if (bits(red.rep[o]) <= d) column[o] = std::int64_t(nv++);
    const std::size_t eps_col = nv;

    LpProblem lp;
    lp.num_vars = nv + 1;
    lp.objective.assign(nv + 1, 0.0);
    lp.objective[eps_col] = 1.0;
    lp.lower.assign(nv + 1, -kInf);
    lp.upper.assign(nv + 1, kInf);
    lp.lower[eps_col] = 0.0;

    std::vector<std::size_t> row_orbit;
    for (std::size_t o = 0; o < red.rep.size(); ++o) {
        const std::uint64_t r = red.rep[o];
        const auto value = f(r);
        if (value == kStar && !options.bounded) continue;
        std::vector<double> row(nv + 1, 0.0);
        for (std::uint64_t t = r;; t = (t - 1) & r) {
            if (bits(t) <= d) row[std::size_t(column[red.orbit_of[t]])] += 1.0;
            if (t == 0) break;
        }
        auto add = [&](double eps_coeff, Relation rel, double rhs) {
            auto c = row;
            c[eps_col] = eps_coeff;
            lp.add_constraint(std::move(c), rel, rhs);
            row_orbit.push_back(o);
        };
        if (value == kOne) {
            add(1.0, Relation::GreaterEq, 1.0);
            if (options.bounded) add(0.0, Relation::LessEq, 1.0);
            else add(-1.0, Relation::LessEq, 1.0);
        } else if (value == kZero) {
            add(-1.0, Relation::LessEq, 0.0);
            if (options.bounded) add(0.0, Relation::GreaterEq, 0.0);
            else add(1.0, Relation::GreaterEq, 0.0);
        } else {
            add(0.0, Relation::GreaterEq, 0.0);
            add(0.0, Relation::LessEq, 1.0);
        }
    }

    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw SolverError("best_error: LP ended " + to_string(sol.status) + " for " + f.name() +
                          " at degree " + std::to_string(d));

    BestErrorResult out;
    out.epsilon = std::max(0.0, sol.point[eps_col]);
    out.lp_variables = lp.num_vars;
    out.lp_rows = lp.constraints.size();
    out.orbits = red.rep.size();

    std::vector<double> coeffs(f.size(), 0.0);
    for (std::uint64_t t = 0; t < f.size(); ++t) {
        const auto c = column[red.orbit_of[t]];
        if (c >= 0 && bits(t) <= d) coeffs[t] = sol.point[std::size_t(c)];
    }
    out.witness = from_dense_multilinear(m, coeffs, 1e-13);

    std::vector<double> psi(red.rep.size(), 0.0);
    for (std::size_t i = 0; i < sol.duals.size(); ++i) psi[row_orbit[i]] += sol.duals[i];
    out.phi.assign(f.size(), 0.0);
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        const auto o = red.orbit_of[x];
        out.phi[x] = psi[o] / double(red.orbit_size[o]);
    }
    return out;
}

DualWitness dual_witness(const PartialFn& f, std::size_t d, double epsilon, const AdegOptions& options) {
    auto be = best_error(f, d, options);
    if (be.epsilon <= epsilon + options.tie_tolerance)
        throw LogicError("dual_witness: degree " + std::to_string(d) + " already reaches error " +
                         std::to_string(epsilon) + " for " + f.name());
    return make_dual(f, d, std::move(be.phi), options.bounded);
}

ApproxDegreeResult approx_degree(const PartialFn& f, double epsilon, const AdegOptions& options) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw InputError("approx_degree: need 0 < epsilon < 1/2");
    ApproxDegreeResult out;
    out.label = f.name();
    out.epsilon = epsilon;
    out.bounded = options.bounded;
    std::optional<BestErrorResult> previous;
    for (std::size_t d = 0; d <= f.arity(); ++d) {
        auto be = best_error(f, d, options);
        out.errors_by_degree.push_back(be.epsilon);
        if (be.epsilon <= epsilon + options.tie_tolerance) {
            out.degree = d;
            out.witness = std::move(be.witness);
            if (previous) out.certificate = make_dual(f, d - 1, std::move(previous->phi), options.bounded);
            break;
        }
        previous = std::move(be);
        if (d == f.arity()) throw SolverError("approx_degree: no degree reached the target for " + f.name());
    }
    const auto values = cube_values(out.witness);
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        if (f.defined(x)) out.achieved_error = std::max(out.achieved_error, std::abs(values[x] - double(f(x))));
        if (options.bounded)
            out.bound_violation = std::max({out.bound_violation, -values[x], values[x] - 1.0});
    }
    return out;
}

}  // namespace adlab
