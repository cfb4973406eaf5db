#include "adlab/interp/lagrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "adlab/errors.hpp"
#include "adlab/util/format.hpp"
#include "json.hpp"

namespace adlab {

namespace {

void check_nd(std::size_t n, std::size_t d, const char* who) {
    if (n == 0 || d == 0) throw InputError(std::string(who) + ": n and d must be at least 1");
    if (grid_size(n, d) > kMaxGridSize) {
        throw ResourceError(std::string(who) + ": grid has C(n+d,d) = " +
                            (grid_size(n, d) == std::numeric_limits<std::size_t>::max()
                                 ? std::string("overflow")
                                 : std::to_string(grid_size(n, d))) +
                            " points, above " + std::to_string(kMaxGridSize));
    }
}

void check_point(const GridPoint& a, std::size_t n, std::size_t d) {
    if (a.k.size() != n || a.d != d || a.level() > d) {
        throw InputError("grid point " + a.to_string() + " is not on the grid for n=" + std::to_string(n) +
                         ", d=" + std::to_string(d));
    }
}

// All k with sum == level, in decreasing lexicographic order.
void compositions(std::size_t n, std::uint32_t level, std::vector<std::uint32_t>& cur, std::size_t i,
                  std::vector<GridPoint>& out, std::uint32_t d) {
    if (i + 1 == n) {
        cur[i] = level;
        out.push_back({cur, d});
        return;
    }
    for (std::uint32_t v = level + 1; v-- > 0;) {
        cur[i] = v;
        compositions(n, level - v, cur, i + 1, out, d);
    }
}

// Power tables x_i^e for e <= deg, then sum over terms.
class FastEval {
public:
    FastEval(std::size_t n, std::size_t deg) : n_(n), deg_(deg), pw_(n * (deg + 1)) {}

    void set_point(std::span<const double> x) {
        for (std::size_t i = 0; i < n_; ++i) {
            double v = 1.0;
            for (std::size_t e = 0; e <= deg_; ++e) {
                pw_[i * (deg_ + 1) + e] = v;
                v *= x[i];
            }
        }
    }

    double operator()(const MultiPoly& p) const {
        double s = 0.0;
        for (const auto& [e, c] : p.terms()) {
            double t = c;
            for (std::size_t i = 0; i < n_; ++i)
                if (e[i]) t *= pw_[i * (deg_ + 1) + e[i]];
            s += t;
        }
        return s;
    }

private:
    std::size_t n_, deg_;
    std::vector<double> pw_;
};

MultiPoly linear_factor_poly(std::size_t n, const LinearFactor& f, std::size_t d, double scale) {
    MultiPoly p = MultiPoly::constant(n, -double(f.j) * scale);
    if (f.var < 0) {
        for (std::size_t i = 0; i < n; ++i) p += (double(d) * scale) * MultiPoly::variable(n, i);
    } else {
        p += (double(d) * scale) * MultiPoly::variable(n, std::size_t(f.var));
    }
    return p;
}

std::int64_t factor_value(const LinearFactor& f, const GridPoint& b) {
    if (f.var < 0) return std::int64_t(b.level()) - f.j;
    return std::int64_t(b.k[std::size_t(f.var)]) - f.j;
}

}  // namespace

std::uint32_t GridPoint::level() const {
    std::uint32_t s = 0;
    for (auto v : k) s += v;
    return s;
}

std::vector<double> GridPoint::values() const {
    std::vector<double> x(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) x[i] = (*this)[i];
    return x;
}

std::string GridPoint::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i] << '/' << d;
    os << ')';
    return os.str();
}

std::size_t grid_size(std::size_t n, std::size_t d) {
    // C(n+d, d) built incrementally: C(n+i, i) = C(n+i-1, i-1) (n+i) / i.
    const std::size_t cap = std::numeric_limits<std::size_t>::max();
    unsigned __int128 c = 1;
    for (std::size_t i = 1; i <= d; ++i) {
        c = c * (n + i) / i;
        if (c > cap) return cap;
    }
    return std::size_t(c);
}

std::vector<GridPoint> grid(std::size_t n, std::size_t d) {
    check_nd(n, d, "grid");
    std::vector<GridPoint> out;
    out.reserve(grid_size(n, d));
    std::vector<std::uint32_t> cur(n, 0);
    for (std::uint32_t level = 0; level <= d; ++level) compositions(n, level, cur, 0, out, std::uint32_t(d));
    return out;
}

std::vector<LinearFactor> q_factors(const GridPoint& alpha) {
    std::vector<LinearFactor> f;
    const std::int64_t d = alpha.d;
    for (std::int64_t j = alpha.level() + 1; j <= d; ++j) f.push_back({-1, j});
    for (std::size_t i = 0; i < alpha.k.size(); ++i)
        for (std::int64_t j = 0; j < std::int64_t(alpha.k[i]); ++j) f.push_back({int(i), j});
    return f;
}

long double scaled_q_at(const std::vector<LinearFactor>& factors, const GridPoint& beta) {
    long double v = 1.0L;
    for (const auto& f : factors) {
        const std::int64_t t = factor_value(f, beta);
        if (t == 0) return 0.0L;
        v *= static_cast<long double>(t);
    }
    return v;
}

MultiPoly build_q(const GridPoint& alpha, std::size_t n, std::size_t d) {
    check_point(alpha, n, d);
    // q_alpha = prod (x - j/d), i.e. each scaled factor (d x - j) times 1/d.
    MultiPoly q = MultiPoly::constant(n, 1.0);
    for (const auto& f : q_factors(alpha)) q = q * linear_factor_poly(n, f, d, 1.0 / double(d));
    return q;
}

double evaluate_basis_factored(const GridPoint& alpha, std::span<const double> x) {
    if (x.size() != alpha.k.size()) throw InputError("evaluate_basis_factored: point has the wrong dimension");
    double sum = 0.0;
    for (double v : x) sum += v;
    const double d = alpha.d;
    double v = 1.0;
    for (const auto& f : q_factors(alpha)) {
        const double num = f.var < 0 ? d * sum - double(f.j) : d * x[std::size_t(f.var)] - double(f.j);
        v *= num / double(factor_value(f, alpha));
    }
    return v;
}

InterpBasis build_basis(std::size_t n, std::size_t d, const BasisOptions& options) {
    InterpBasis b;
    b.n = n;
    b.d = d;
    b.points = grid(n, d);
    b.basis.reserve(b.points.size());
    for (const auto& a : b.points) {
        // Normalize factor by factor: (d x - j) / (d a - j) keeps magnitudes moderate.
        MultiPoly p = MultiPoly::constant(n, 1.0);
        for (const auto& f : q_factors(a)) p = p * linear_factor_poly(n, f, d, 1.0 / double(factor_value(f, a)));
        for (const auto& [e, c] : p.terms()) {
            if (!std::isfinite(c)) {
                throw AccuracyError("build_basis: coefficient of p_" + a.to_string() + " is not finite", c,
                                    std::numeric_limits<double>::infinity());
            }
        }
        b.basis.push_back(std::move(p));
    }
    if (!options.verify) return b;

    FastEval ev(n, d);
    double kerr = 0.0;
    for (std::size_t j = 0; j < b.points.size(); ++j) {
        ev.set_point(b.points[j].values());
        for (std::size_t i = 0; i < b.points.size(); ++i)
            kerr = std::max(kerr, std::abs(ev(b.basis[i]) - (i == j ? 1.0 : 0.0)));
    }
    b.kronecker_error = kerr;

    double ierr = 0.0;
    for (std::size_t t = 0; t < options.trials; ++t) {
        const auto r = random_poly(n, d, options.seed + t);
        ierr = std::max(ierr, coeff_distance(interpolate(b, r), r));
    }
    b.interpolation_error = ierr;
    return b;
}

MultiPoly interpolate(const InterpBasis& basis, std::span<const double> values) {
    if (values.size() != basis.points.size()) throw InputError("interpolate: one value per grid point expected");
    MultiPoly out(basis.n);
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] != 0.0) out += values[i] * basis.basis[i];
    return out;
}

MultiPoly interpolate(const InterpBasis& basis, const MultiPoly& r) {
    if (r.num_vars() != basis.n) throw InputError("interpolate: polynomial has the wrong number of variables");
    FastEval ev(basis.n, std::max(basis.d, r.degree()));
    std::vector<double> vals(basis.points.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        ev.set_point(basis.points[i].values());
        vals[i] = ev(r);
    }
    return interpolate(basis, vals);
}

KroneckerReport kronecker_check(std::size_t n, std::size_t d) {
    KroneckerReport rep;
    rep.n = n;
    rep.d = d;
    const auto pts = grid(n, d);
    rep.points = pts.size();
    std::vector<std::int64_t> levels;
    for (const auto& b : pts) levels.push_back(b.level());
    for (const auto& a : pts) {
        const auto fs = q_factors(a);
        const long double self = scaled_q_at(fs, a);
        if (self == 0.0L) throw LogicError("kronecker_check: q vanishes at its own node " + a.to_string());
        std::vector<std::int64_t> self_vals;
        for (const auto& f : fs) self_vals.push_back(factor_value(f, a));
        for (std::size_t bi = 0; bi < pts.size(); ++bi) {
            const auto& b = pts[bi];
            // Integer pass first: a single vanishing factor makes the value exactly zero.
            bool zero = false;
            for (const auto& f : fs) {
                const std::int64_t t = (f.var < 0 ? levels[bi] : std::int64_t(b.k[std::size_t(f.var)])) - f.j;
                if (t == 0) {
                    zero = true;
                    break;
                }
            }
            long double v = 0.0L;
            if (!zero) {
                v = 1.0L;
                for (std::size_t t = 0; t < fs.size(); ++t)
                    v *= static_cast<long double>(factor_value(fs[t], b)) / static_cast<long double>(self_vals[t]);
            }
            const long double target = (a == b) ? 1.0L : 0.0L;
            rep.max_deviation = std::max(rep.max_deviation, double(std::fabs(v - target)));
            ++rep.pairs;
        }
    }
    return rep;
}

MultiPoly random_poly(std::size_t n, std::size_t d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    MultiPoly p(n);
    // The grid points k/d enumerate the exponent vectors of degree <= d.
    for (const auto& g : grid(n, d)) p.add_term(Exponents(g.k.begin(), g.k.end()), u(rng));
    return p;
}

SupNorm cube_sup_norm(const MultiPoly& p, std::size_t resolution) {
    const std::size_t n = p.num_vars();
    SupNorm s;
    std::vector<double> x(n, 0.0);
    auto consider = [&](double v) {
        if (std::abs(v) > s.value || s.argmax.empty()) {
            s.value = std::max(s.value, std::abs(v));
            s.argmax = x;
        }
    };
    if (p.is_multilinear()) {
        if (n > 24) throw ResourceError("cube_sup_norm: too many variables for vertex enumeration");
        const auto vals = dense_multilinear(p);
        // zeta transform gives values at vertices
        std::vector<double> v = vals;
        for (std::size_t i = 0; i < n; ++i)
            for (std::uint64_t mask = 0; mask < v.size(); ++mask)
                if (mask & (std::uint64_t{1} << i)) v[mask] += v[mask ^ (std::uint64_t{1} << i)];
        for (std::uint64_t mask = 0; mask < v.size(); ++mask) {
            for (std::size_t i = 0; i < n; ++i) x[i] = double((mask >> (n - 1 - i)) & 1);
            consider(v[mask]);
        }
        s.exact = true;
        return s;
    }
    const std::size_t deg = p.degree();
    std::size_t r = resolution;
    if (r == 0) {
        r = std::max<std::size_t>(4 * deg, 8);
        while (r > 1 && std::pow(double(r + 1), double(n)) > double(1 << 21)) --r;
    }
    FastEval ev(n, deg);
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
        for (std::size_t i = 0; i < n; ++i) x[i] = double(idx[i]) / double(r);
        ev.set_point(x);
        consider(ev(p));
        std::size_t i = 0;
        while (i < n && ++idx[i] > r) idx[i++] = 0;
        if (i == n) break;
    }
    if (deg >= 1 && grid_size(n, deg) <= kMaxGridSize) {
        for (const auto& g : grid(n, deg)) {
            x = g.values();
            ev.set_point(x);
            consider(ev(p));
        }
    }
    return s;
}

CoeffBoundReport check_coeff_bounds(const MultiPoly& p, std::size_t n, std::size_t d, const InterpBasis* basis) {
    if (p.num_vars() != n) throw InputError("check_coeff_bounds: polynomial has the wrong number of variables");
    if (p.degree() > d) throw InputError("check_coeff_bounds: polynomial degree exceeds d");
    check_nd(n, d, "check_coeff_bounds");

    CoeffBoundReport r;
    r.n = n;
    r.d = d;
    const auto sup = cube_sup_norm(p);
    r.sup_norm = sup.value;
    r.sup_exact = sup.exact;
    if (sup.value > 1.0 + 1e-9) {
        std::ostringstream os;
        os << "check_coeff_bounds: |p| = " << fmt_num(sup.value) << " > 1 at x = (";
        for (std::size_t i = 0; i < sup.argmax.size(); ++i) os << (i ? "," : "") << fmt_num(sup.argmax[i]);
        os << ")";
        throw PreconditionError(os.str());
    }

    const double dd = double(d), nn = double(n);
    r.coeff_max = coeff_max(p);
    r.coeff_l1 = coeff_l1(p);
    r.bound_thm = std::pow(2.0 * dd, 3.0 * dd);
    r.bound_l1 = std::pow(2.0 * (nn + dd), 3.0 * dd);
    r.bound_grid = std::pow(2.0 * nn * dd * (nn + dd), dd);
    r.bound_prop = std::pow(dd, dd) * std::pow(2.0 * nn, dd);

    InterpBasis local;
    if (basis == nullptr || basis->n != n || basis->d != d) {
        local = build_basis(n, d, {.verify = false});
        basis = &local;
    }
    for (const auto& q : basis->basis) r.per_basis_max = std::max(r.per_basis_max, coeff_max(q));

    FastEval ev(n, d);
    std::vector<double> c(basis->points.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        ev.set_point(basis->points[i].values());
        c[i] = ev(p);
        r.expansion_max = std::max(r.expansion_max, std::abs(c[i]));
    }
    r.reconstruction_error = coeff_distance(interpolate(*basis, c), p);

    auto flag = [&](bool bad, const std::string& what) {
        if (bad) r.violations.push_back(what);
    };
    flag(r.coeff_max > r.bound_thm, "coeff_max " + fmt_num(r.coeff_max) + " > (2d)^(3d) = " + fmt_num(r.bound_thm));
    flag(r.coeff_l1 > r.bound_l1, "coeff_l1 " + fmt_num(r.coeff_l1) + " > (2(n+d))^(3d) = " + fmt_num(r.bound_l1));
    flag(r.coeff_max > r.bound_grid,
         "coeff_max " + fmt_num(r.coeff_max) + " > (2nd(n+d))^d = " + fmt_num(r.bound_grid));
    flag(r.per_basis_max > r.bound_prop * (1.0 + 1e-12),
         "basis coefficient " + fmt_num(r.per_basis_max) + " > d^d (2n)^d = " + fmt_num(r.bound_prop));
    flag(r.expansion_max > 1.0 + 1e-7, "expansion coefficient " + fmt_num(r.expansion_max) + " > 1");
    return r;
}

std::string to_json(const CoeffBoundReport& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["d"] = r.d;
    j["coeff_max"] = round12(r.coeff_max);
    j["bound_thm"] = round12(r.bound_thm);
    j["coeff_l1"] = round12(r.coeff_l1);
    j["bound_l1"] = round12(r.bound_l1);
    j["per_basis_max"] = round12(r.per_basis_max);
    j["bound_prop"] = round12(r.bound_prop);
    j["bound_grid"] = round12(r.bound_grid);
    j["sup_norm"] = round12(r.sup_norm);
    j["sup_exact"] = r.sup_exact;
    j["expansion_max"] = round12(r.expansion_max);
    j["reconstruction_error"] = round12(r.reconstruction_error);
    j["violations"] = r.violations;
    return j.dump(2);
}

MultiPoly shifted_chebyshev(std::size_t n, std::size_t i, std::size_t k) {
    if (i >= n) throw InputError("shifted_chebyshev: variable index out of range");
    const MultiPoly u = 2.0 * MultiPoly::variable(n, i) - MultiPoly::constant(n, 1.0);
    MultiPoly prev = MultiPoly::constant(n, 1.0);
    if (k == 0) return prev;
    MultiPoly cur = u;
    for (std::size_t j = 1; j < k; ++j) {
        MultiPoly next = 2.0 * (u * cur) - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::vector<MultiPoly> bounded_corpus(std::size_t n, std::size_t d, std::size_t count, std::uint64_t seed) {
    check_nd(n, d, "bounded_corpus");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> w01(0.0, 1.0);

    auto random_exponents = [&]() {
        std::uniform_int_distribution<std::size_t> level(0, d);
        std::uniform_int_distribution<std::size_t> var(0, n - 1);
        std::vector<std::size_t> k(n, 0);
        const std::size_t s = level(rng);
        for (std::size_t t = 0; t < s; ++t) ++k[var(rng)];
        return k;
    };
    auto chebyshev_product = [&]() {
        const auto k = random_exponents();
        MultiPoly p = MultiPoly::constant(n, 1.0);
        for (std::size_t i = 0; i < n; ++i)
            if (k[i]) p = p * shifted_chebyshev(n, i, k[i]);
        return p;
    };

    std::vector<MultiPoly> out;
    out.reserve(count);
    for (std::size_t c = 0; c < count; ++c) {
        switch (c % 3) {
            case 0: {
                MultiPoly p = chebyshev_product();
                out.push_back(u(rng) < 0 ? -1.0 * p : p);
                break;
            }
            case 1: {
                const std::size_t parts = 2 + c % 3;
                std::vector<double> w(parts);
                double tot = 0.0;
                for (auto& v : w) tot += (v = w01(rng) + 1e-3);
                MultiPoly p(n);
                for (std::size_t t = 0; t < parts; ++t) p += (u(rng) < 0 ? -w[t] / tot : w[t] / tot) * chebyshev_product();
                out.push_back(std::move(p));
                break;
            }
            default: {
                // Multilinear on the first min(n, d) variables, given by vertex values.
                const std::size_t m = std::min(n, d);
                std::vector<std::size_t> vars(n);
                for (std::size_t i = 0; i < n; ++i) vars[i] = i;
                std::shuffle(vars.begin(), vars.end(), rng);
                vars.resize(m);
                MultiPoly p(n);
                for (std::uint64_t v = 0; v < (std::uint64_t{1} << m); ++v) {
                    MultiPoly term = MultiPoly::constant(n, u(rng));
                    for (std::size_t i = 0; i < m; ++i) {
                        const auto xi = MultiPoly::variable(n, vars[i]);
                        term = term * (((v >> i) & 1) ? xi : MultiPoly::constant(n, 1.0) - xi);
                    }
                    p += term;
                }
                out.push_back(std::move(p));
            }
        }
    }
    return out;
}

}  // namespace adlab
