#include "adlab/poly/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "adlab/errors.hpp"

namespace adlab {

RobustnessResult robustness_margin(const MultiPoly& p, const PartialFn& h, double delta,
                                   std::size_t samples, std::uint64_t seed, PerturbationBox box) {
    const std::size_t m = h.arity();
    if (p.num_vars() != m) throw InputError("robustness_margin: polynomial and function arities differ");
    if (!p.is_multilinear()) throw InputError("robustness_margin: polynomial must be multilinear");
    if (!(delta >= 0.0 && delta < 0.5)) throw InputError("robustness_margin: need 0 <= delta < 1/2");

    RobustnessResult out;
    if (m <= kExactRobustnessArity) {
        const auto coeffs = dense_multilinear(p);
        std::vector<double> vals(coeffs.size());
        bool first = true;
        for (std::uint64_t x = 0; x < h.size(); ++x) {
            if (!h.defined(x)) continue;
            vals = coeffs;
            // per coordinate, replace (a_T, a_{T+i}) by the values at x_i - delta and x_i + delta
            for (std::size_t b = 0; b < m; ++b) {
                const std::uint64_t bit = std::uint64_t{1} << b;
                const double xi = double((x >> b) & 1);
                const double lo = box == PerturbationBox::Unit ? std::max(0.0, xi - delta) : xi - delta;
                const double hi = box == PerturbationBox::Unit ? std::min(1.0, xi + delta) : xi + delta;
                for (std::uint64_t t = 0; t < vals.size(); ++t) {
                    if (t & bit) continue;
                    const double a = vals[t], c = vals[t | bit];
                    vals[t] = a + lo * c;
                    vals[t | bit] = a + hi * c;
                }
            }
            const double target = double(h(x));
            for (std::uint64_t s = 0; s < vals.size(); ++s) {
                const double dev = std::abs(target - vals[s]);
                if (first || dev > out.margin) {
                    out.margin = dev;
                    out.worst_x = x;
                    out.worst_signs = s;
                    first = false;
                }
            }
        }
        return out;
    }

    std::vector<std::uint64_t> dom;
    for (std::uint64_t x = 0; x < h.size(); ++x)
        if (h.defined(x)) dom.push_back(x);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, dom.size() - 1);
    std::vector<double> point(m);
    out.exact = false;
    out.samples = samples;
    for (std::size_t k = 0; k < samples; ++k) {
        const std::uint64_t x = dom[pick(rng)];
        const std::uint64_t s = rng() & ((std::uint64_t{1} << m) - 1);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t b = m - 1 - i;
            const double xi = double((x >> b) & 1);
            point[i] = xi + (((s >> b) & 1) ? delta : -delta);
            if (box == PerturbationBox::Unit) point[i] = std::clamp(point[i], 0.0, 1.0);
        }
        const double dev = std::abs(double(h(x)) - evaluate(p, point));
        if (k == 0 || dev > out.margin) {
            out.margin = dev;
            out.worst_x = x;
            out.worst_signs = s;
        }
    }
    return out;
}

double bernoulli_expectation(const MultiPoly& p, std::span<const double> y) {
    const std::size_t m = p.num_vars();
    if (y.size() != m) throw InputError("bernoulli_expectation: point has the wrong dimension");
    if (m > 20) throw ResourceError("bernoulli_expectation: too many variables to enumerate");
    std::vector<double> z(m);
    double total = 0.0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) {
        double w = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            const bool bit = (x >> (m - 1 - i)) & 1;
            z[i] = bit ? 1.0 : 0.0;
            w *= bit ? y[i] : 1.0 - y[i];
        }
        if (w != 0.0) total += w * evaluate(p, z);
    }
    return total;
}

MultiPoly multilinear_extension(const PartialFn& f) {
    if (!f.total()) throw InputError("multilinear_extension: function has inputs outside the promise");
    const std::size_t m = f.arity();
    std::vector<double> c(f.size());
    for (std::uint64_t x = 0; x < c.size(); ++x) c[x] = f(x) == kOne ? 1.0 : 0.0;
    // Moebius inversion over subsets; bit layout matches dense_multilinear.
    for (std::size_t i = 0; i < m; ++i)
        for (std::uint64_t mask = 0; mask < c.size(); ++mask)
            if (mask & (std::uint64_t{1} << i)) c[mask] -= c[mask ^ (std::uint64_t{1} << i)];
    return from_dense_multilinear(m, c);
}

}  // namespace adlab
