#include <cmath>
#include <numbers>
#include <random>

#include "adlab/errors.hpp"
#include "adlab/numerics/dense_matrix.hpp"
#include "adlab/numerics/eigen.hpp"
#include "adlab/numerics/lp.hpp"
#include "adlab/numerics/sdp.hpp"
#include "adlab/numerics/special.hpp"
#include "doctest.h"

using namespace adlab;

namespace {

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

DenseMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseMatrix m(r, c);
    for (auto& v : m.entries()) v = u(rng);
    return m;
}

}  // namespace

TEST_CASE("min_eigenvalue on small matrices") {
    CHECK(min_eigenvalue(DenseMatrix::identity(3)) == doctest::Approx(1.0).epsilon(1e-14));
    std::vector<double> d{1.0, 2.0};
    CHECK(min_eigenvalue(DenseMatrix::diagonal(d)) == doctest::Approx(1.0));
    CHECK(min_eigenvalue(DenseMatrix{{0, 1}, {1, 0}}) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK_THROWS_AS(min_eigenvalue(DenseMatrix{{0, 1}, {0, 0}}), InputError);
}

TEST_CASE("eigen decomposition reconstructs the matrix") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + trial;
        auto g = random_matrix(rng, n, n);
        auto s = g + g.transpose();
        auto ed = symmetric_eigen(s);
        for (std::size_t k = 1; k < n; ++k) CHECK(ed.eigenvalues[k - 1] <= ed.eigenvalues[k]);
        DenseMatrix rec(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    rec(i, j) += ed.eigenvectors(i, k) * ed.eigenvalues[k] * ed.eigenvectors(j, k);
        CHECK((rec - s).max_abs() < 1e-10);
    }
}

TEST_CASE("Gram matrices are PSD to eigTol") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_matrix(rng, 3 + trial % 5, 6);
        auto gram = matmul(g.transpose(), g);
        CHECK(min_eigenvalue(gram) >= -1e-10 * gram.frobenius_norm());
    }
}

TEST_CASE("trace norm and numerical rank") {
    CHECK(trace_norm(DenseMatrix{{3, 0}, {0, -4}}) == doctest::Approx(7.0));
    CHECK(numerical_rank(DenseMatrix::ones(4, 4)) == 1);
    CHECK(numerical_rank(DenseMatrix::identity(5)) == 5);
    // closed form for 2x2: sqrt(||M||_F^2 + 2|det M|)
    DenseMatrix m{{1, 2}, {3, 4}};
    CHECK(trace_norm(m) == doctest::Approx(std::sqrt(30.0 + 4.0)).epsilon(1e-12));
}

TEST_CASE("log_beta values") {
    CHECK(log_beta(1.0, 1.0) == doctest::Approx(0.0));
    for (double t : {0.25, 0.5, 2.0, 7.5}) CHECK(log_beta(1.0, t) == doctest::Approx(std::log(1.0 / t)).epsilon(1e-13));
    const double q = integrate([](double p) { return 1.0 / std::sqrt(p * (1.0 - p)); }, 1e-11);
    CHECK(std::exp(log_beta(0.5, 0.5)) == doctest::Approx(q).epsilon(1e-10));
    CHECK(log_beta(0.5, 0.5) == doctest::Approx(std::log(std::numbers::pi)).epsilon(1e-13));
    CHECK_THROWS_AS(log_beta(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(log_beta(1.0, -2.0), DomainError);
}

TEST_CASE("log_beta symmetry and integer factorial identity") {
    for (double a = 0.5; a < 6; a += 0.75)
        for (double b = 0.25; b < 6; b += 1.1) CHECK(log_beta(a, b) == log_beta(b, a));
    for (int a = 1; a <= 10; ++a)
        for (int b = 1; b <= 10; ++b) {
            const double expect = factorial(a - 1) * factorial(b - 1) / factorial(a + b - 1);
            CHECK(std::abs(std::exp(log_beta(a, b)) - expect) <= 1e-10 * std::max(1.0, expect));
        }
}

TEST_CASE("integrate on the unit interval") {
    CHECK(integrate([](double) { return 1.0; }, 1e-12) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(integrate([](double p) { return 2.0 * (1.0 - p); }, 1e-12) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(integrate([](double p) { return std::pow(p, -0.5) * std::pow(1.0 - p, -0.5); }, 1e-10) ==
          doctest::Approx(std::numbers::pi).epsilon(1e-10));
    // t (1-p)^{t-1} integrates to one for any t > 0
    for (double t : {0.5, 1.5, 3.0}) {
        CHECK(integrate([t](double p) { return t * std::pow(1.0 - p, t - 1.0); }, 1e-11) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK_THROWS_AS(integrate_unit([](double p) { return 1.0 / p; }, 1e-10, 50), AccuracyError);
}

TEST_CASE("solve_lp small examples") {
    LpProblem p;
    p.num_vars = 1;
    p.objective = {1.0};
    p.lower = {0.0};
    p.upper = {1.0};
    auto s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.point[0] == doctest::Approx(0.0));
    CHECK(s.objective == doctest::Approx(0.0));

    LpProblem q;
    q.num_vars = 2;
    q.objective = {1.0, 1.0};
    q.add_constraint({1.0, 1.0}, Relation::GreaterEq, 1.0);
    auto t = solve_lp(q);
    REQUIRE(t.status == LpStatus::Optimal);
    CHECK(t.objective == doctest::Approx(1.0));
    CHECK(max_violation(q, t.point) <= kLpFeasTol);
    REQUIRE(t.duals.size() == 1);
    CHECK(t.duals[0] == doctest::Approx(1.0));

    LpProblem r;
    r.num_vars = 1;
    r.objective = {0.0};
    r.lower = {-kInf};
    r.upper = {kInf};
    r.add_constraint({1.0}, Relation::GreaterEq, 1.0);
    r.add_constraint({1.0}, Relation::LessEq, 0.0);
    auto u = solve_lp(r);
    CHECK(u.status == LpStatus::Infeasible);
    CHECK(farkas_gap(r, u.farkas) > 0.0);

    LpProblem unb;
    unb.num_vars = 1;
    unb.objective = {-1.0};
    CHECK(solve_lp(unb).status == LpStatus::Unbounded);

    LpProblem bad;
    bad.num_vars = 2;
    bad.objective = {1.0};
    CHECK_THROWS_AS(solve_lp(bad), InputError);
}

TEST_CASE("LP weak duality on random feasible problems") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + trial % 4, m = 2 + trial % 5;
        LpProblem p;
        p.num_vars = n;
        for (std::size_t j = 0; j < n; ++j) p.objective.push_back(u(rng) + 1.2);  // positive costs => bounded
        std::vector<double> x0(n);
        for (auto& v : x0) v = 0.5 + 0.5 * u(rng);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<double> row(n);
            double lhs = 0.0;
            for (std::size_t j = 0; j < n; ++j) lhs += (row[j] = u(rng)) * x0[j];
            p.add_constraint(row, i % 2 ? Relation::GreaterEq : Relation::LessEq, lhs + (i % 2 ? -0.1 : 0.1));
        }
        auto s = solve_lp(p);
        REQUIRE(s.status == LpStatus::Optimal);
        CHECK(max_violation(p, s.point) <= 1e-9);
        double dual_obj = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            dual_obj += s.duals[i] * p.constraints[i].rhs;
            if (p.constraints[i].relation == Relation::GreaterEq) CHECK(s.duals[i] >= -1e-9);
            if (p.constraints[i].relation == Relation::LessEq) CHECK(s.duals[i] <= 1e-9);
        }
        // reduced costs c - A^T y must be >= 0 for x >= 0
        for (std::size_t j = 0; j < n; ++j) {
            double rc = p.objective[j];
            for (std::size_t i = 0; i < m; ++i) rc -= s.duals[i] * p.constraints[i].coeffs[j];
            CHECK(rc >= -1e-8);
        }
        CHECK(s.objective >= dual_obj - kLpOptTol);
        CHECK(s.objective == doctest::Approx(dual_obj).epsilon(1e-8));
    }
}

TEST_CASE("solve_sdp on small problems") {
    // min <diag(1,2), X> s.t. tr X = 1, X PSD -> 1
    SdpProblem p;
    p.psd_blocks = {2};
    p.objective = {{0, 0, 0, 1.0}, {0, 1, 1, 2.0}};
    p.constraints.push_back({{{0, 0, 0, 1.0}, {0, 1, 1, 1.0}}, 1.0});
    auto s = solve_sdp(p);
    CHECK(s.primal_objective == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(s.dual_objective == doctest::Approx(1.0).epsilon(1e-7));

    // min -<[[0,1],[1,0]], X> s.t. tr X = 1 -> -1 (largest eigenvalue)
    SdpProblem q;
    q.psd_blocks = {2};
    q.objective = {{0, 0, 1, -1.0}};
    q.constraints.push_back({{{0, 0, 0, 1.0}, {0, 1, 1, 1.0}}, 1.0});
    auto t = solve_sdp(q);
    CHECK(t.primal_objective == doctest::Approx(-1.0).epsilon(1e-7));
    CHECK(t.x_blocks[0](0, 1) == doctest::Approx(0.5).epsilon(1e-6));

    // pure LP block: min x1 + 2 x2 s.t. x1 + x2 = 1
    SdpProblem r;
    r.lp_size = 2;
    r.objective = {{0, 0, 0, 1.0}, {0, 1, 1, 2.0}};
    r.constraints.push_back({{{0, 0, 0, 1.0}, {0, 1, 1, 1.0}}, 1.0});
    auto v = solve_sdp(r);
    CHECK(v.primal_objective == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(v.x_lp[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("solve_sdp random trace-constrained eigenvalue problems") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + trial % 5;
        auto g = random_matrix(rng, n, n);
        auto c = g + g.transpose();
        SdpProblem p;
        p.psd_blocks = {n};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) p.objective.push_back({0, i, j, c(i, j)});
        SdpConstraint tr;
        for (std::size_t i = 0; i < n; ++i) tr.entries.push_back({0, i, i, 1.0});
        tr.rhs = 1.0;
        p.constraints.push_back(tr);
        auto s = solve_sdp(p);
        CHECK(s.primal_objective == doctest::Approx(min_eigenvalue(c)).epsilon(1e-6));
    }
}
