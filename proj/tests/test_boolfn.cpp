#include <random>

#include "adlab/boolfn/partial_fn.hpp"
#include "adlab/errors.hpp"
#include "doctest.h"

using namespace adlab;

namespace {

std::string table_string(const PartialFn& f) {
    auto s = to_text(f);
    return s.substr(s.find('\n') + 1, f.size());
}

// Independent evaluator working on explicit bit vectors.
std::uint8_t eval_bits(const PartialFn& f, const std::vector<int>& bits) {
    std::uint64_t idx = 0;
    for (int b : bits) idx = idx * 2 + std::uint64_t(b);
    return f(idx);
}

PartialFn random_fn(std::mt19937_64& rng, std::size_t m, bool partial) {
    std::vector<std::uint8_t> t(std::size_t{1} << m);
    std::uniform_int_distribution<int> d(0, partial ? 2 : 1);
    for (auto& v : t) v = std::uint8_t(d(rng));
    t[0] = kZero;
    return PartialFn(m, t, "rand");
}

}  // namespace

TEST_CASE("build_named tables") {
    CHECK(table_string(build_named("OR", 2)) == "0111");
    CHECK(table_string(build_named("PrOR", 2)) == "011*");
    CHECK(table_string(build_named("AND", 2)) == "0001");
    CHECK(table_string(build_named("NAND", 2)) == "1110");
    CHECK(table_string(build_named("XOR", 3)) == "01101001");
    CHECK(table_string(build_named("MAJ", 3)) == "00010111");
    auto th = build_named("PrTH(1)", 3);
    for (std::uint64_t x = 0; x < 8; ++x) {
        const auto w = popcount(x);
        CHECK(th(x) == (w == 1 ? kZero : w == 2 ? kOne : kStar));
    }
    CHECK_THROWS_AS(build_named("PrTH(3)", 3), InputError);
    CHECK_THROWS_AS(build_named("FOO", 3), InputError);
    CHECK_THROWS_AS(build_named("OR", 0), InputError);
    for (const char* n : {"OR", "AND", "XOR", "NAND", "MAJ", "PrOR", "PrTH(0)"}) {
        for (std::size_t m = 1; m <= 6; ++m) {
            auto f = build_named(n, m);
            CHECK(f.size() == (std::size_t{1} << m));
            CHECK(f.domain_size() > 0);
        }
    }
}

TEST_CASE("everywhere-undefined tables are rejected") {
    CHECK_THROWS_AS(PartialFn(1, {kStar, kStar}), InputError);
    CHECK_THROWS_AS(PartialFn(2, {0, 1}), InputError);
}

TEST_CASE("compose examples") {
    auto id = build_named("ID", 1);
    CHECK(compose(build_named("OR", 2), {id, id}) == build_named("OR", 2));
    auto x2 = build_named("XOR", 2);
    CHECK(compose(x2, {x2, x2}) == build_named("XOR", 4));
    auto pr = compose(build_named("PrOR", 2), {build_named("AND", 2), build_named("AND", 2)});
    CHECK(pr(0b0000) == kZero);
    CHECK(pr(0b1111) == kStar);
    CHECK(pr(0b1100) == kOne);
    CHECK(pr.blocks() == std::vector<std::size_t>{2, 2});
    CHECK_THROWS_AS(compose(build_named("OR", 2), {build_named("OR", 11), build_named("OR", 10)}), ResourceError);
    CHECK_THROWS_AS(compose(build_named("OR", 2), {id}), InputError);
}

TEST_CASE("compose is associative on ORs") {
    for (std::size_t a = 1; a <= 3; ++a)
        for (std::size_t b = 1; b <= 3; ++b) {
            std::vector<PartialFn> inner(b, build_named("AND", 2));
            auto nested = compose(build_named("OR", a), std::vector<PartialFn>(a, compose(build_named("OR", b), inner)));
            auto flat = compose(build_named("OR", a * b), std::vector<PartialFn>(a * b, build_named("AND", 2)));
            CHECK(nested == flat);
        }
}

TEST_CASE("compose agrees pointwise with the outer function of inner values") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 1 + trial % 3;
        auto g = random_fn(rng, n, trial % 2 == 1);
        std::vector<PartialFn> fs;
        std::size_t total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t m = 1 + (trial + i) % 4;
            if (total + m > 12) break;
            fs.push_back(random_fn(rng, m, trial % 3 == 0));
            total += m;
        }
        if (fs.size() != n) continue;
        auto h = compose(g, fs);
        for (std::uint64_t x = 0; x < h.size(); ++x) {
            std::vector<int> bits(total);
            for (std::size_t k = 0; k < total; ++k) bits[k] = int((x >> (total - 1 - k)) & 1);
            std::vector<int> outs;
            bool star = false;
            std::size_t pos = 0;
            for (const auto& f : fs) {
                std::vector<int> part(bits.begin() + long(pos), bits.begin() + long(pos + f.arity()));
                pos += f.arity();
                auto v = eval_bits(f, part);
                if (v == kStar) star = true;
                outs.push_back(v);
            }
            if (star) {
                CHECK(h(x) == kStar);
            } else {
                CHECK(h(x) == eval_bits(g, outs));
            }
        }
    }
}

TEST_CASE("restrict_block examples") {
    auto and2 = build_named("AND", 2);
    auto f = compose(build_named("OR", 2), {and2, and2});
    CHECK(restrict_block(f, 1, 0b00) == and2);

    auto g = build_named("MAJ", 3);
    auto x = compose(build_named("XOR", 2), {g, g});
    CHECK(restrict_block(x, 1, 0b111) == g.negate_output());
    CHECK(restrict_block(x, 0, 0b000) == g);

    auto p = compose(build_named("PrOR", 2), {and2, and2});
    auto r = restrict_block(p, 1, 0b00);
    CHECK(r == compose(build_named("PrOR", 1), {and2}));
    CHECK(r == and2);
    CHECK_THROWS_AS(restrict_block(p, 2, 0), InputError);
    CHECK_THROWS_AS(restrict_block(p, 0, 4), InputError);
}

TEST_CASE("paturi_break examples") {
    CHECK(paturi_break(*symmetric_profile(build_named("MAJ", 5))) == 2);
    CHECK(paturi_break(*symmetric_profile(build_named("OR", 6))) == 1);
    CHECK(paturi_break(*symmetric_profile(build_named("XOR", 4))) == 2);
    CHECK(paturi_break(*symmetric_profile(build_named("AND", 6))) == 1);
    CHECK_THROWS_AS(paturi_break(*symmetric_profile(build_named("ZERO", 4))), DomainError);
    CHECK_THROWS_AS(paturi_break(*symmetric_profile(build_named("PrOR", 4))), InputError);
}

TEST_CASE("symmetric_profile detects weight dependence") {
    CHECK(symmetric_profile(build_named("MAJ", 4)).has_value());
    auto f = compose(build_named("OR", 2), {build_named("AND", 2), build_named("AND", 2)});
    CHECK_FALSE(symmetric_profile(f).has_value());
}

TEST_CASE("negation helpers") {
    auto and2 = build_named("AND", 2);
    CHECK(and2.negate_output() == build_named("NAND", 2));
    CHECK(and2.negate_input(0).negate_input(0) == and2);
    CHECK(table_string(and2.negate_input(0)) == "0100");  // true at x1=0, x2=1
}

TEST_CASE("truth table text round trip") {
    std::mt19937_64 rng(1);
    for (std::size_t m = 0; m <= 8; ++m) {
        auto f = random_fn(rng, m, true);
        CHECK(parse_truth_table(to_text(f)) == f);
        CHECK(to_text(parse_truth_table(to_text(f))) == to_text(f));
    }
    CHECK_THROWS_AS(parse_truth_table("arity=2\n01\n"), InputError);
    CHECK_THROWS_AS(parse_truth_table("arity=1\n0x\n"), InputError);
    CHECK_THROWS_AS(parse_truth_table("m=1\n01\n"), InputError);
}
