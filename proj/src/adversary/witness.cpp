#include "adlab/adversary/witness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>

#include "adlab/errors.hpp"
#include "adlab/numerics/eigen.hpp"
#include "adlab/numerics/special.hpp"
#include "adlab/util/format.hpp"
#include "adlab/util/parallel.hpp"
#include "json.hpp"

namespace adlab {

namespace {

int weight(std::uint64_t v) { return std::popcount(v); }

void check_n(std::size_t n) {
    if (n == 0) throw InputError("witness: n must be at least 1");
    if (n > kMaxWitnessN) {
        throw ResourceError("witness: n = " + std::to_string(n) + " exceeds the limit " + std::to_string(kMaxWitnessN));
    }
}

// Beta values keyed by (4a, 4b); the exponents take few distinct values.
class BetaCache {
public:
    double operator()(const EntryExponents& e) {
        const auto key = std::make_pair(e.a4, e.b4);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, std::exp(log_beta(e.a() + 1.0, e.b() + 1.0))).first;
        return e.scalar * it->second;
    }

private:
    std::map<std::pair<int, int>, double> cache_;
};

}  // namespace

std::optional<EntryExponents> entry_exponents(std::size_t n, Subset s, std::uint64_t x, std::uint64_t xp) {
    const int hx = weight(x & s), hxp = weight(xp & s);
    if (hx > 1 || hxp > 1) return std::nullopt;
    // psi reads (np/(1-p))^{1/4} on a miss and ((1-p)/(np))^{1/4} on a single hit.
    const int e = hx == 0 ? 1 : -1;
    const int ep = hxp == 0 ? 1 : -1;
    const int sz = weight(s);
    EntryExponents out;
    // p^{|S|-1} (1-p)^{n-|S|} / 2 from the weight, (1-p)^{-(|x|+|x'|)/2} from psi's prefactor.
    out.a4 = 4 * (sz - 1) + (e + ep);
    out.b4 = 4 * (int(n) - sz) - 2 * (weight(x) + weight(xp)) - (e + ep);
    out.scalar = 0.5 * std::pow(double(n), (e + ep) / 4.0);
    return out;
}

double integrate_entry(const EntryExponents& e) {
    return e.scalar * std::exp(log_beta(e.a() + 1.0, e.b() + 1.0));
}

WitnessFamily::WitnessFamily(std::size_t n, std::vector<WitnessBlock> blocks) : n_(n), blocks_(std::move(blocks)) {
    if (blocks_.size() != (std::size_t{1} << n_)) throw InputError("WitnessFamily: one block per subset expected");
    pos_.assign(blocks_.size(), std::vector<std::int32_t>(dimension(), -1));
    for (std::size_t s = 0; s < blocks_.size(); ++s) {
        if (blocks_[s].s != s) throw InputError("WitnessFamily: blocks must be indexed by their subset");
        const auto& sup = blocks_[s].support;
        if (blocks_[s].values.rows() != sup.size() || blocks_[s].values.cols() != sup.size()) {
            throw InputError("WitnessFamily: block size does not match its support");
        }
        for (std::size_t i = 0; i < sup.size(); ++i) pos_[s][sup[i]] = std::int32_t(i);
    }
}

double WitnessFamily::entry(Subset s, std::uint64_t x, std::uint64_t xp) const {
    const auto i = pos_.at(s).at(x), j = pos_[s].at(xp);
    if (i < 0 || j < 0) return 0.0;
    return blocks_[s].values(std::size_t(i), std::size_t(j));
}

DenseMatrix WitnessFamily::full(Subset s) const {
    const auto& b = blocks_.at(s);
    DenseMatrix m(dimension(), dimension());
    for (std::size_t i = 0; i < b.support.size(); ++i)
        for (std::size_t j = 0; j < b.support.size(); ++j) m(b.support[i], b.support[j]) = b.values(i, j);
    return m;
}

WitnessFamily build_witness(std::size_t n, std::size_t jobs) {
    check_n(n);
    const std::size_t count = std::size_t{1} << n;
    std::vector<WitnessBlock> blocks(count);
    parallel_for(count, jobs, [&](std::size_t si) {
        const Subset s = si;
        BetaCache beta;
        WitnessBlock b;
        b.s = s;
        for (std::uint64_t x = 0; x < count; ++x)
            if (weight(x & s) <= 1) b.support.push_back(x);
        const std::size_t k = b.support.size();
        b.values = DenseMatrix(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i; j < k; ++j) {
                const auto e = entry_exponents(n, s, b.support[i], b.support[j]);
                const double v = beta(*e);
                b.values(i, j) = v;
                b.values(j, i) = v;
            }
        blocks[si] = std::move(b);
    });
    return WitnessFamily(n, std::move(blocks));
}

WitnessReport verify(const WitnessFamily& w, double tol_psd, double tol_constraint, std::size_t jobs) {
    const std::size_t n = w.n();
    const std::size_t dim = w.dimension();
    WitnessReport r;
    r.n = n;
    r.tol_psd = tol_psd;
    r.tol_constraint = tol_constraint;

    // (a) PSD. Outside the support X_S is zero, so lambda_min(X_S) = min(lambda_min(block), 0)
    // whenever the support is a proper subset.
    std::vector<double> rel(dim), abs_min(dim);
    parallel_for(dim, jobs, [&](std::size_t s) {
        const auto& b = w.blocks()[s];
        double lam = min_eigenvalue(b.values);
        if (b.support.size() < dim) lam = std::min(lam, 0.0);
        const double fro = b.values.frobenius_norm();
        abs_min[s] = lam;
        rel[s] = fro > 0 ? lam / fro : lam;
    });
    r.min_eig = *std::min_element(rel.begin(), rel.end());
    r.min_eig_abs = *std::min_element(abs_min.begin(), abs_min.end());

    // (b) pairwise constraint: S with |x & S| + |x' & S| = 1, i.e. S avoids x | x'
    // except for exactly one element of x ^ x'.
    std::vector<double> dev(dim, 0.0);
    parallel_for(dim, jobs, [&](std::size_t x) {
        for (std::uint64_t xp = 0; xp < dim; ++xp) {
            if (xp == x) continue;
            const std::uint64_t uni = x | xp, sym = x ^ xp;
            const std::uint64_t free = (dim - 1) & ~uni;
            double sum = 0.0;
            for (std::uint64_t t = free;; t = (t - 1) & free) {
                for (std::uint64_t rest = sym; rest; rest &= rest - 1) {
                    const std::uint64_t bit = rest & (~rest + 1);
                    sum += w.entry(t | bit, x, xp);
                }
                if (t == 0) break;
            }
            dev[x] = std::max(dev[x], std::abs(sum - 1.0));
        }
    });
    r.max_constraint_dev = *std::max_element(dev.begin(), dev.end());

    // (c) objective and the diagonal closed form.
    const double rn = std::sqrt(double(n));
    r.pi_sqrt_n = std::numbers::pi * rn;
    for (std::uint64_t x = 0; x < dim; ++x) {
        double sum = 0.0;
        for (std::size_t s = 0; s < dim; ++s) sum += w.entry(s, x, x);
        r.objective = std::max(r.objective, sum);
        const double closed = std::numbers::pi / 2.0 * (rn + weight(x) / rn);
        r.diagonal_dev = std::max(r.diagonal_dev, std::abs(sum - closed));
    }
    r.objective_gap = r.pi_sqrt_n - r.objective;

    r.psd_ok = r.min_eig >= -tol_psd;
    r.constraint_ok = r.max_constraint_dev <= tol_constraint;
    r.objective_ok = r.objective <= r.pi_sqrt_n + 1e-8;
    return r;
}

double quadrature_crosscheck(const WitnessFamily& w, std::size_t samples, std::uint64_t seed) {
    const std::size_t n = w.n();
    if (n > 6) throw InputError("quadrature_crosscheck: n must be at most 6");
    const std::uint64_t dim = w.dimension();
    const std::uint64_t total = dim * dim * dim;

    auto check = [&](Subset s, std::uint64_t x, std::uint64_t xp) {
        const double stored = w.entry(s, x, xp);
        const auto e = entry_exponents(n, s, x, xp);
        if (!e) return std::abs(stored);
        const double a = e->a(), b = e->b(), c = e->scalar;
        const auto q = integrate_unit([&](double p) { return c * std::pow(p, a) * std::pow(1.0 - p, b); }, 1e-11);
        return std::abs(stored - q.value);
    };

    double worst = 0.0;
    if (samples >= total) {
        for (std::uint64_t s = 0; s < dim; ++s)
            for (std::uint64_t x = 0; x < dim; ++x)
                for (std::uint64_t xp = 0; xp < dim; ++xp) worst = std::max(worst, check(s, x, xp));
        return worst;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, dim - 1);
    for (std::size_t t = 0; t < samples; ++t) {
        const auto s = pick(rng), x = pick(rng), xp = pick(rng);
        worst = std::max(worst, check(s, x, xp));
    }
    return worst;
}

FullDomainReport verify_full_domain(const WitnessFamily& w) {
    const std::size_t n = w.n();
    if (n > 3) throw ResourceError("verify_full_domain: n must be at most 3");
    const std::uint64_t dim = w.dimension();
    const std::size_t nsets = dim;

    // Enumerate D: z has one bit per subset; bits of subsets meeting x at most once are forced.
    struct Point {
        std::uint64_t x;
        std::uint64_t z;  // bit S holds z_S
    };
    std::vector<Point> dom;
    for (std::uint64_t x = 0; x < dim; ++x) {
        std::uint64_t forced = 0;
        std::vector<std::size_t> free;
        for (std::size_t s = 0; s < nsets; ++s) {
            const int h = weight(x & s);
            if (h == 1) forced |= std::uint64_t{1} << s;
            if (h >= 2) free.push_back(s);
        }
        for (std::uint64_t c = 0; c < (std::uint64_t{1} << free.size()); ++c) {
            std::uint64_t z = forced;
            for (std::size_t k = 0; k < free.size(); ++k)
                if ((c >> k) & 1) z |= std::uint64_t{1} << free[k];
            dom.push_back({x, z});
        }
    }

    FullDomainReport r;
    r.n = n;
    r.domain_size = dom.size();
    const std::size_t m = dom.size();

    // Lift each X_S to D by re-deriving entries from x(z) and compare with the stored matrices.
    std::vector<DenseMatrix> lifted;
    for (std::size_t s = 0; s < nsets; ++s) {
        DenseMatrix xs(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const auto e = entry_exponents(n, s, dom[i].x, dom[j].x);
                xs(i, j) = e ? integrate_entry(*e) : 0.0;
                r.max_lift_dev = std::max(r.max_lift_dev, std::abs(xs(i, j) - w.entry(s, dom[i].x, dom[j].x)));
            }
        const double fro = xs.frobenius_norm();
        const double lam = min_eigenvalue(xs);
        r.min_eig = std::min(r.min_eig, fro > 0 ? lam / fro : lam);
        lifted.push_back(std::move(xs));
    }
    for (std::size_t i = 0; i < m; ++i) {
        double diag = 0.0;
        for (std::size_t s = 0; s < nsets; ++s) diag += lifted[s](i, i);
        r.objective = std::max(r.objective, diag);
        for (std::size_t j = 0; j < m; ++j) {
            if (dom[i].x == dom[j].x) continue;
            const std::uint64_t differ = dom[i].z ^ dom[j].z;
            double sum = 0.0;
            for (std::size_t s = 0; s < nsets; ++s)
                if ((differ >> s) & 1) sum += lifted[s](i, j);
            r.max_constraint_dev = std::max(r.max_constraint_dev, std::abs(sum - 1.0));
        }
    }
    return r;
}

std::string to_json(const WitnessReport& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["min_eig"] = round12(r.min_eig);
    j["max_constraint_dev"] = round12(r.max_constraint_dev);
    j["objective"] = round12(r.objective);
    j["pi_sqrt_n"] = round12(r.pi_sqrt_n);
    j["objective_gap"] = round12(r.objective_gap);
    j["diagonal_dev"] = round12(r.diagonal_dev);
    j["quadrature_dev"] = r.quadrature_dev ? nlohmann::ordered_json(round12(*r.quadrature_dev)) : nullptr;
    j["psd_ok"] = r.psd_ok;
    j["constraint_ok"] = r.constraint_ok;
    j["objective_ok"] = r.objective_ok;
    return j.dump(2);
}

void write_binary(const WitnessFamily& w, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("write_binary: cannot open " + path);
    static_assert(std::endian::native == std::endian::little, "binary dump assumes a little-endian host");
    auto put_u64 = [&](std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); };
    out.write("ADLABXS1", 8);
    put_u64(w.n());
    for (const auto& b : w.blocks()) {
        put_u64(b.support.size());
        for (auto x : b.support) put_u64(x);
        const auto& e = b.values.entries();
        out.write(reinterpret_cast<const char*>(e.data()), std::streamsize(e.size() * sizeof(double)));
    }
    if (!out) throw Error("write_binary: write failed for " + path);
}

}  // namespace adlab
