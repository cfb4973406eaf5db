#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adlab {

/// Table symbols. `kStar` marks inputs outside the promise.
inline constexpr std::uint8_t kZero = 0;
inline constexpr std::uint8_t kOne = 1;
inline constexpr std::uint8_t kStar = 2;

/// Largest arity a truth table may have.
inline constexpr std::size_t kMaxArity = 20;

/// A function {0,1}^m -> {0,1,*} stored as a truth table. Inputs are indexed
/// lexicographically with x_1 as the most significant bit.
class PartialFn {
public:
    PartialFn(std::size_t arity, std::vector<std::uint8_t> table, std::string name = {},
              std::vector<std::size_t> blocks = {});

    std::size_t arity() const noexcept { return arity_; }
    std::size_t size() const noexcept { return table_.size(); }
    const std::vector<std::uint8_t>& table() const noexcept { return table_; }
    std::uint8_t operator()(std::uint64_t x) const { return table_[x]; }
    bool defined(std::uint64_t x) const { return table_[x] != kStar; }

    const std::string& name() const noexcept { return name_; }
    /// Inner arities when produced by compose; a single block otherwise.
    const std::vector<std::size_t>& blocks() const noexcept { return blocks_; }

    std::size_t domain_size() const;
    bool total() const;
    bool constant_on_domain() const;

    PartialFn negate_output() const;
    PartialFn negate_input(std::size_t i) const;
    PartialFn renamed(std::string name) const;

    bool operator==(const PartialFn& o) const { return arity_ == o.arity_ && table_ == o.table_; }

private:
    std::size_t arity_;
    std::vector<std::uint8_t> table_;
    std::string name_;
    std::vector<std::size_t> blocks_;
};

/// Value per Hamming weight 0..n.
struct SymmetricSpec {
    std::size_t n = 0;
    std::vector<std::uint8_t> predicate;

    PartialFn to_fn(std::string name = {}) const;
};

/// The weight profile when f depends only on the Hamming weight of its input.
std::optional<SymmetricSpec> symmetric_profile(const PartialFn& f);

/// OR, AND, XOR, NAND, MAJ, PrOR, PrTH(k), ID (n = 1), ZERO, ONE.
PartialFn build_named(std::string_view name, std::size_t n);

/// g(f_1(x_1), ..., f_n(x_n)) with blocks concatenated left to right.
PartialFn compose(const PartialFn& g, const std::vector<PartialFn>& fs);

/// Fixes block `block` (0-based) of a composed function to the input `w`
/// (an index into that block's inputs) and returns a function of the rest.
PartialFn restrict_block(const PartialFn& f, std::size_t block, std::uint64_t w);

/// Hamming weight k' = max(k, 1) of the value flip nearest n/2, folded so that k <= n/2.
std::size_t paturi_break(const SymmetricSpec& g);

/// Text format: "arity=m" line, then a 2^m-character line over 0, 1, *.
std::string to_text(const PartialFn& f);
PartialFn parse_truth_table(std::string_view text, std::string name = {});
PartialFn read_truth_table(const std::string& path);
void write_truth_table(const PartialFn& f, const std::string& path);

std::size_t popcount(std::uint64_t x);

}  // namespace adlab
