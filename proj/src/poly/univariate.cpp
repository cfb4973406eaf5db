#include "adlab/poly/univariate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "adlab/errors.hpp"

namespace adlab {

namespace {

long double binom(std::size_t n, std::size_t k) {
    if (k > n) return 0.0L;
    k = std::min(k, n - k);
    long double r = 1.0L;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Monomial coefficients of sum_j c_j C(k,j) t^j (1-t)^{k-j}.
std::vector<long double> bernstein_to_monomial(const std::vector<double>& c) {
    const std::size_t k = c.size() - 1;
    std::vector<long double> out(k + 1, 0.0L);
    for (std::size_t j = 0; j <= k; ++j) {
        if (c[j] == 0.0) continue;
        const long double base = c[j] * binom(k, j);
        for (std::size_t r = j; r <= k; ++r) {
            const long double sign = ((r - j) % 2) ? -1.0L : 1.0L;
            out[r] += sign * base * binom(k - j, r - j);
        }
    }
    return out;
}

}  // namespace

UniPoly::UniPoly(std::vector<double> coeffs, Basis basis) : c_(std::move(coeffs)), basis_(basis) {
    if (c_.empty()) c_ = {0.0};
    for (double v : c_)
        if (!std::isfinite(v)) throw InputError("UniPoly: non-finite coefficient");
    if (basis_ == Basis::Monomial)
        while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
}

std::size_t UniPoly::degree() const {
    if (basis_ == Basis::Monomial) return c_.size() - 1;
    const std::size_t k = c_.size() - 1;
    std::vector<long double> mag(k + 1, 0.0L);
    for (std::size_t j = 0; j <= k; ++j)
        for (std::size_t r = j; r <= k; ++r) mag[r] += std::abs(c_[j]) * binom(k, j) * binom(k - j, r - j);
    const auto mono = bernstein_to_monomial(c_);
    for (std::size_t r = k + 1; r-- > 0;)
        if (std::abs(mono[r]) > 1e-12L * std::max(1.0L, mag[r])) return r;
    return 0;
}

double UniPoly::operator()(double t) const {
    if (basis_ == Basis::Monomial) {
        double s = 0.0;
        for (std::size_t j = c_.size(); j-- > 0;) s = s * t + c_[j];
        return s;
    }
    // de Casteljau
    std::vector<double> b = c_;
    for (std::size_t r = 1; r < b.size(); ++r)
        for (std::size_t j = 0; j + r < b.size(); ++j) b[j] = (1.0 - t) * b[j] + t * b[j + 1];
    return b[0];
}

UniPoly UniPoly::to_monomial() const {
    if (basis_ == Basis::Monomial) return *this;
    const auto mono = bernstein_to_monomial(c_);
    std::vector<double> out(mono.begin(), mono.end());
    out.resize(degree() + 1);
    return UniPoly(std::move(out));
}

MultiPoly UniPoly::to_multipoly() const {
    const UniPoly m = to_monomial();
    MultiPoly p(1);
    for (std::size_t j = 0; j < m.coeffs().size(); ++j) p.add_term({std::uint32_t(j)}, m.coeffs()[j]);
    return p;
}

UniPoly majority_poly(std::size_t k) {
    if (k % 2 == 0) throw InputError("majority_poly: k must be odd");
    std::vector<double> c(k + 1, 0.0);
    for (std::size_t j = k / 2 + 1; j <= k; ++j) c[j] = 1.0;
    return UniPoly(std::move(c), UniPoly::Basis::Bernstein);
}

std::size_t majority_order(double x0, double target) {
    constexpr std::size_t kMaxOrder = 20001;
    for (std::size_t k = 1; k <= kMaxOrder; k += 2)
        if (majority_poly(k)(x0) <= target) return k;
    throw ResourceError("majority_order: target error needs an amplifier of order above 20001");
}

UniPoly amplification_poly(double eps) {
    if (!(eps > 0.0 && eps < 1.0 / 3.0)) throw InputError("amplification_poly: need 0 < eps < 1/3");
    return majority_poly(majority_order(1.0 / 3.0, eps));
}

MultiPoly pm_amplifier(std::size_t k) { return to_pm_basis(majority_poly(k).to_multipoly()); }

MultiPoly apply(const UniPoly& u, const MultiPoly& p) {
    const UniPoly m = u.to_monomial();
    const auto& c = m.coeffs();
    MultiPoly acc = MultiPoly::constant(p.num_vars(), c.back());
    for (std::size_t j = c.size() - 1; j-- > 0;) acc = acc * p + MultiPoly::constant(p.num_vars(), c[j]);
    return acc;
}

UniPoly chebyshev_t(std::size_t d) {
    std::vector<double> prev{1.0}, cur{0.0, 1.0};
    if (d == 0) return UniPoly(prev);
    for (std::size_t k = 1; k < d; ++k) {
        std::vector<double> next(cur.size() + 1, 0.0);
        for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += 2.0 * cur[j];
        for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return UniPoly(cur);
}

SymmetricApprox::SymmetricApprox(std::size_t n, std::size_t cheb_degree, std::vector<double> profile,
                                 std::vector<double> elementary_coeffs)
    : n_(n), d_(cheb_degree), profile_(std::move(profile)), elem_(std::move(elementary_coeffs)) {
    if (profile_.size() != n_ + 1 || elem_.empty() || elem_.size() > n_ + 1)
        throw InputError("SymmetricApprox: inconsistent sizes");
}

double SymmetricApprox::cube_error() const {
    double e = 0.0;
    for (std::size_t w = 0; w <= n_; ++w) e = std::max(e, std::abs(profile_[w] - (w > 0 ? 1.0 : 0.0)));
    return e;
}

double SymmetricApprox::operator()(std::span<const double> x) const {
    if (x.size() != n_) throw InputError("SymmetricApprox: point has the wrong dimension");
    const std::size_t deg = degree();
    std::vector<double> e(deg + 1, 0.0);
    e[0] = 1.0;
    for (double xi : x)
        for (std::size_t j = deg; j >= 1; --j) e[j] += xi * e[j - 1];
    double s = 0.0;
    for (std::size_t j = 0; j <= deg; ++j) s += elem_[j] * e[j];
    return s;
}

MultiPoly SymmetricApprox::to_multilinear(std::size_t max_terms) const {
    const std::size_t deg = degree();
    long double count = 0.0L;
    for (std::size_t j = 0; j <= deg; ++j) count += binom(n_, j);
    if (count > max_terms || n_ > 30) throw ResourceError("SymmetricApprox: multilinear expansion too large");
    MultiPoly p(n_);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n_); ++mask) {
        const auto w = static_cast<std::size_t>(std::popcount(mask));
        if (w <= deg && elem_[w] != 0.0) p += MultiPoly::monomial_from_mask(n_, mask, elem_[w]);
    }
    return p;
}

SymmetricApprox chebyshev_or(std::size_t n, double eps) {
    if (n < 1) throw InputError("chebyshev_or: n must be at least 1");
    if (!(eps > 0.0 && eps < 0.5)) throw InputError("chebyshev_or: need 0 < eps < 1/2");
    if (n == 1) return SymmetricApprox(1, 1, {0.0, 1.0}, {0.0, 1.0});
    const double t0 = 1.0 + 2.0 / double(n - 1);
    const double a = std::acosh(t0);
    std::size_t d = 1;
    while (true) {
        const double lead = std::cosh(double(d) * a);
        if (1.0 / (lead * lead) <= eps) break;
        ++d;
    }
    const double lead = std::cosh(double(d) * a);
    std::vector<double> profile(n + 1);
    profile[0] = 0.0;
    for (std::size_t w = 1; w <= n; ++w) {
        const double u = (double(n + 1) - 2.0 * double(w)) / double(n - 1);
        const double t = std::cos(double(d) * std::acos(std::clamp(u, -1.0, 1.0)));
        profile[w] = 1.0 - t * t / (lead * lead);
    }
    const std::size_t deg = std::min(2 * d, n);
    std::vector<double> diff = profile, elem(deg + 1);
    for (std::size_t j = 0; j <= deg; ++j) {
        elem[j] = diff[0];
        for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
        diff.pop_back();
    }
    return SymmetricApprox(n, d, std::move(profile), std::move(elem));
}

}  // namespace adlab
