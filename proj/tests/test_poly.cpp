#include <cmath>
#include <random>

#include "adlab/boolfn/partial_fn.hpp"
#include "adlab/errors.hpp"
#include "adlab/poly/multipoly.hpp"
#include "adlab/poly/robustness.hpp"
#include "adlab/poly/univariate.hpp"
#include "doctest.h"

using namespace adlab;

namespace {

MultiPoly x(std::size_t m, std::size_t i) { return MultiPoly::variable(m, i); }
MultiPoly c(std::size_t m, double v) { return MultiPoly::constant(m, v); }

MultiPoly random_poly(std::mt19937_64& rng, std::size_t m, std::size_t terms, std::uint32_t max_exp) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<std::uint32_t> e(0, max_exp);
    MultiPoly p(m);
    for (std::size_t t = 0; t < terms; ++t) {
        Exponents ex(m);
        for (auto& v : ex) v = e(rng);
        p.add_term(ex, u(rng));
    }
    return p;
}

std::vector<double> cube_point(std::size_t m, std::uint64_t idx) {
    std::vector<double> z(m);
    for (std::size_t i = 0; i < m; ++i) z[i] = double((idx >> (m - 1 - i)) & 1);
    return z;
}

double binom_tail(std::size_t k, double p) {
    // P[Bin(k, p) > k/2], summed term by term
    double s = 0.0;
    for (std::size_t j = k / 2 + 1; j <= k; ++j) {
        double b = 1.0;
        for (std::size_t i = 1; i <= j; ++i) b = b * double(k - j + i) / double(i);
        s += b * std::pow(p, double(j)) * std::pow(1.0 - p, double(k - j));
    }
    return s;
}

}  // namespace

TEST_CASE("evaluate examples") {
    const double one[] = {1.0, 1.0};
    CHECK(evaluate(x(2, 0) * x(2, 1), one) == 1.0);
    auto p = c(2, -0.25) + 0.5 * (x(2, 0) + x(2, 1));
    CHECK(evaluate(p, one) == doctest::Approx(0.75));
    const double half[] = {0.5};
    CHECK(evaluate(x(1, 0) * x(1, 0), half) == doctest::Approx(0.25));
    CHECK_THROWS_AS(evaluate(p, half), InputError);
}

TEST_CASE("multilinearize examples and cube agreement") {
    CHECK(multilinearize(x(1, 0) * x(1, 0)) == x(1, 0));
    auto p = pow(x(2, 0), 2) * pow(x(2, 1), 3) + x(2, 1);
    CHECK(multilinearize(p) == x(2, 0) * x(2, 1) + x(2, 1));
    auto q = x(3, 0) * x(3, 2) - 2.0 * x(3, 1);
    CHECK(multilinearize(q) == q);
    std::mt19937_64 rng(2);
    for (std::size_t m = 1; m <= 12; ++m) {
        auto r = random_poly(rng, m, 12, 3);
        auto ml = multilinearize(r);
        CHECK(ml.is_multilinear());
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << m); ++i) {
            auto z = cube_point(m, i);
            CHECK(evaluate(ml, z) == doctest::Approx(evaluate(r, z)).epsilon(1e-12));
        }
    }
}

TEST_CASE("to_pm_basis examples and inverse") {
    CHECK(coeff_distance(to_pm_basis(x(1, 0)), x(1, 0)) < 1e-15);
    auto q = to_pm_basis(x(2, 0) * x(2, 1));
    auto expect = 0.5 * (x(2, 0) * x(2, 1) + x(2, 0) + x(2, 1) - c(2, 1.0));
    CHECK(coeff_distance(q, expect) < 1e-15);
    CHECK(coeff_distance(to_pm_basis(c(3, 1.0)), c(3, 1.0)) < 1e-15);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        const std::size_t m = 1 + t % 5;
        auto p = random_poly(rng, m, 8, 2);
        auto pm = to_pm_basis(p);
        CHECK(pm.degree() == p.degree());
        CHECK(coeff_distance(from_pm_basis(pm), p) <= 1e-12);
        std::vector<double> z(m), xh(m);
        for (std::size_t i = 0; i < m; ++i) {
            z[i] = u(rng);
            xh[i] = (z[i] + 1.0) / 2.0;
        }
        CHECK(evaluate(pm, z) == doctest::Approx(2.0 * evaluate(p, xh) - 1.0).epsilon(1e-12));
    }
}

TEST_CASE("substitute examples and degree bound") {
    auto p = x(2, 0) + x(2, 1);
    CHECK(substitute(p, {x(2, 0), x(2, 1)}) == p);
    CHECK(substitute(x(2, 0) * x(2, 1), {x(1, 0), x(1, 0)}) == pow(x(1, 0), 2));
    auto a3 = majority_poly(3).to_multipoly();
    auto expect = 3.0 * pow(x(1, 0), 2) - 2.0 * pow(x(1, 0), 3);
    CHECK(coeff_distance(substitute(a3, {x(1, 0)}), expect) < 1e-14);
    CHECK_THROWS_AS(substitute(p, {x(2, 0)}), InputError);
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        auto outer = random_poly(rng, 3, 5, 2);
        std::vector<MultiPoly> subs;
        std::size_t maxdeg = 0;
        for (int i = 0; i < 3; ++i) {
            subs.push_back(random_poly(rng, 2, 4, 2));
            maxdeg = std::max(maxdeg, subs.back().degree());
        }
        auto r = substitute(outer, subs);
        CHECK(r.degree() <= outer.degree() * maxdeg);
        const double pt[] = {0.3, -0.7};
        std::vector<double> inner;
        for (auto& s : subs) inner.push_back(evaluate(s, pt));
        CHECK(evaluate(r, pt) == doctest::Approx(evaluate(outer, inner)).epsilon(1e-11));
    }
}

TEST_CASE("majority amplifiers") {
    auto a1 = majority_poly(1);
    CHECK(coeff_distance(a1.to_multipoly(), x(1, 0)) < 1e-15);
    auto a3 = majority_poly(3);
    CHECK(a3(1.0 / 3.0) == doctest::Approx(7.0 / 27.0).epsilon(1e-14));
    CHECK(a3.degree() == 3);
    for (std::size_t k = 1; k <= 41; k += 2) {
        CHECK(majority_poly(k)(0.5) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(majority_poly(k)(1.0 / 3.0) == doctest::Approx(binom_tail(k, 1.0 / 3.0)).epsilon(1e-10));
    }
    for (double eps : {0.3, 0.2, 0.1, 1e-2, 1e-3, 1e-6}) {
        auto a = amplification_poly(eps);
        const std::size_t k = a.coeffs().size() - 1;
        CHECK(k % 2 == 1);
        CHECK(binom_tail(k, 1.0 / 3.0) <= eps * (1 + 1e-12));
        if (k >= 3) CHECK(binom_tail(k - 2, 1.0 / 3.0) > eps);
        double prev = -1.0;
        for (int i = 0; i <= 10000; ++i) {
            const double v = a(i / 10000.0);
            CHECK(v >= -1e-15);
            CHECK(v <= 1.0 + 1e-15);
            CHECK(v >= prev - 1e-15);
            prev = v;
        }
        CHECK(a(2.0 / 3.0) >= 1.0 - eps - 1e-12);
    }
    CHECK_THROWS_AS(amplification_poly(0.0), InputError);
    CHECK_THROWS_AS(amplification_poly(0.34), InputError);
}

TEST_CASE("pm amplifier and apply") {
    auto q = pm_amplifier(3);
    for (double z : {-1.0, -0.4, 0.0, 0.7, 1.0}) {
        const double zv[] = {z};
        CHECK(evaluate(q, zv) == doctest::Approx(2.0 * majority_poly(3)((z + 1) / 2) - 1.0).epsilon(1e-13));
    }
    auto sq = apply(UniPoly({0.0, 0.0, 1.0}), x(2, 0) + x(2, 1));
    CHECK(sq == pow(x(2, 0) + x(2, 1), 2));
}

TEST_CASE("chebyshev_t recurrence") {
    auto t2 = chebyshev_t(2);
    CHECK(t2.coeffs() == std::vector<double>{-1.0, 0.0, 2.0});
    for (std::size_t d = 0; d <= 12; ++d)
        for (double t : {-0.9, -0.2, 0.4, 1.0}) CHECK(chebyshev_t(d)(t) == doctest::Approx(std::cos(d * std::acos(t))).epsilon(1e-10));
}

TEST_CASE("chebyshev_or examples") {
    auto p1 = chebyshev_or(1, 1.0 / 3.0);
    CHECK(p1.degree() == 1);
    CHECK(coeff_distance(p1.to_multilinear(), x(1, 0)) < 1e-15);

    auto p4 = chebyshev_or(4, 1.0 / 3.0);
    CHECK(p4.degree() <= 4);
    auto ml = p4.to_multilinear();
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 16; ++i) {
        const double v = evaluate(ml, cube_point(4, i));
        worst = std::max(worst, std::abs(v - (i ? 1.0 : 0.0)));
        CHECK(v >= -1e-12);
        CHECK(v <= 1.0 + 1e-12);
    }
    CHECK(worst <= 1.0 / 3.0);

    for (std::size_t n = 1; n <= 64; ++n) {
        auto p = chebyshev_or(n, 1.0 / 3.0);
        CHECK(p.cube_error() <= 1.0 / 3.0 + 1e-12);
        CHECK(double(p.degree()) / std::sqrt(double(n)) <= 2.5);
        for (double v : p.profile()) {
            CHECK(v >= -1e-12);
            CHECK(v <= 1.0 + 1e-12);
        }
    }
    // the elementary-symmetric form reproduces the profile on the cube
    for (std::size_t n : {5, 9, 12}) {
        auto p = chebyshev_or(n, 0.05);
        CHECK(p.cube_error() <= 0.05 + 1e-12);
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); i += 7) {
            auto z = cube_point(n, i);
            CHECK(p(z) == doctest::Approx(p.profile()[popcount(i)]).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(chebyshev_or(0, 0.3), InputError);
    CHECK_THROWS_AS(chebyshev_or(3, 0.5), InputError);
}

TEST_CASE("coefficient norms") {
    auto p = x(2, 0) + x(2, 1) - x(2, 0) * x(2, 1);
    CHECK(coeff_l1(p) == 3.0);
    CHECK(coeff_max(p) == 1.0);
    CHECK(coeff_l1(MultiPoly(3)) == 0.0);
    CHECK(coeff_max(MultiPoly(3)) == 0.0);
    auto t2 = 8.0 * pow(x(1, 0), 2) - 8.0 * x(1, 0) + c(1, 1.0);
    CHECK(coeff_l1(t2) == 17.0);
    CHECK(coeff_max(t2) == 8.0);
}

TEST_CASE("robustness_margin examples") {
    auto id = build_named("ID", 1);
    CHECK(robustness_margin(x(1, 0), id, 0.1).margin == doctest::Approx(0.1).epsilon(1e-14));
    auto or2 = build_named("OR", 2);
    auto p = x(2, 0) + x(2, 1) - x(2, 0) * x(2, 1);
    // Delta = (-0.1, -0.1) at x = 00 gives p = -0.21
    auto r = robustness_margin(p, or2, 0.1);
    CHECK(std::abs(r.margin - 0.21) <= 1e-12);
    CHECK(r.exact);
    CHECK(r.worst_x == 0);
    CHECK(r.worst_signs == 0b00);
    // inside [0,1]^2 the worst corner is Delta = (+0.1, +0.1) at x = 00
    auto u = robustness_margin(p, or2, 0.1, 0, 1, PerturbationBox::Unit);
    CHECK(std::abs(u.margin - 0.19) <= 1e-12);
    CHECK(u.worst_x == 0);
    CHECK(u.worst_signs == 0b11);

    auto approx = c(2, -0.25) + 0.5 * (x(2, 0) + x(2, 1));
    auto and2 = build_named("AND", 2);
    CHECK(robustness_margin(approx, and2, 0.0).margin == doctest::Approx(0.25));
    CHECK_THROWS_AS(robustness_margin(pow(x(1, 0), 2), id, 0.1), InputError);
    CHECK_THROWS_AS(robustness_margin(x(1, 0), id, 0.5), InputError);
}

TEST_CASE("robustness_margin agrees with brute-force corners") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 15; ++t) {
        const std::size_t m = 1 + t % 6;
        auto p = multilinearize(random_poly(rng, m, 10, 1));
        std::vector<std::uint8_t> tab(std::size_t{1} << m);
        for (auto& v : tab) v = std::uint8_t(rng() % 3);
        tab[0] = 1;
        PartialFn h(m, tab);
        const double delta = 0.05 * (t % 7);
        double brute = 0.0;
        for (std::uint64_t xi = 0; xi < h.size(); ++xi) {
            if (!h.defined(xi)) continue;
            for (std::uint64_t s = 0; s < h.size(); ++s) {
                auto z = cube_point(m, xi);
                for (std::size_t i = 0; i < m; ++i) z[i] += ((s >> (m - 1 - i)) & 1) ? delta : -delta;
                brute = std::max(brute, std::abs(double(h(xi)) - evaluate(p, z)));
            }
        }
        CHECK(robustness_margin(p, h, delta).margin == doctest::Approx(brute).epsilon(1e-12));
    }
}

TEST_CASE("robustness_margin falls back to sampling above 16 variables") {
    auto h = build_named("OR", 17);
    auto r = robustness_margin(MultiPoly(17), h, 0.1, 2000, 5);
    CHECK_FALSE(r.exact);
    CHECK(r.samples == 2000);
    CHECK(r.margin == 1.0);
}

TEST_CASE("Bernoulli expectation identity") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 40; ++t) {
        const std::size_t m = 1 + t % 12;
        auto p = multilinearize(random_poly(rng, m, 15, 1));
        std::vector<double> y(m);
        for (auto& v : y) v = u(rng);
        CHECK(std::abs(bernoulli_expectation(p, y) - evaluate(p, y)) <= 1e-10);
    }
}

TEST_CASE("polynomial JSON round trip") {
    std::mt19937_64 rng(30);
    auto p = random_poly(rng, 4, 9, 3);
    auto q = poly_from_json(to_json(p));
    CHECK(q == p);
    CHECK(to_json(q) == to_json(p));
    CHECK_THROWS_AS(poly_from_json("{\"m\":2,\"terms\":[{\"exps\":[1],\"coeff\":1}]}"), InputError);
    CHECK_THROWS_AS(poly_from_json("not json"), InputError);
}

TEST_CASE("multilinear extension") {
    const auto or2 = multilinear_extension(build_named("OR", 2));
    CHECK(coeff_distance(or2, x(2, 0) + x(2, 1) - x(2, 0) * x(2, 1)) == 0.0);
    std::mt19937_64 rng(8);
    for (std::size_t m = 1; m <= 6; ++m) {
        std::vector<std::uint8_t> t(std::size_t{1} << m);
        for (auto& v : t) v = std::uint8_t(rng() & 1);
        const PartialFn f(m, t);
        const auto p = multilinear_extension(f);
        CHECK(p.is_multilinear());
        for (std::uint64_t z = 0; z < t.size(); ++z) {
            std::vector<double> pt(m);
            for (std::size_t i = 0; i < m; ++i) pt[i] = double((z >> (m - 1 - i)) & 1);
            CHECK(evaluate(p, pt) == doctest::Approx(double(t[z])));
        }
    }
    CHECK_THROWS_AS(multilinear_extension(build_named("PrOR", 3)), InputError);
}
