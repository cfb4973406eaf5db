#include "adlab/boolfn/partial_fn.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "adlab/errors.hpp"

namespace adlab {

std::size_t popcount(std::uint64_t x) { return static_cast<std::size_t>(std::popcount(x)); }

PartialFn::PartialFn(std::size_t arity, std::vector<std::uint8_t> table, std::string name,
                     std::vector<std::size_t> blocks)
    : arity_(arity), table_(std::move(table)), name_(std::move(name)), blocks_(std::move(blocks)) {
    if (arity_ > kMaxArity) throw ResourceError("PartialFn: arity " + std::to_string(arity_) + " exceeds " + std::to_string(kMaxArity));
    if (table_.size() != (std::size_t{1} << arity_)) throw InputError("PartialFn: table length must be 2^arity");
    for (auto v : table_)
        if (v > kStar) throw InputError("PartialFn: table symbols must be 0, 1 or *");
    if (domain_size() == 0) throw InputError("PartialFn: everywhere-undefined function");
    if (blocks_.empty()) blocks_ = {arity_};
    std::size_t sum = 0;
    for (auto b : blocks_) sum += b;
    if (sum != arity_) throw InputError("PartialFn: block arities must sum to the arity");
}

std::size_t PartialFn::domain_size() const {
    return static_cast<std::size_t>(std::count_if(table_.begin(), table_.end(), [](auto v) { return v != kStar; }));
}

bool PartialFn::total() const { return domain_size() == table_.size(); }

bool PartialFn::constant_on_domain() const {
    int seen = -1;
    for (auto v : table_) {
        if (v == kStar) continue;
        if (seen >= 0 && seen != v) return false;
        seen = v;
    }
    return true;
}

PartialFn PartialFn::negate_output() const {
    auto t = table_;
    for (auto& v : t)
        if (v != kStar) v ^= 1;
    return PartialFn(arity_, std::move(t), "NOT(" + name_ + ")", blocks_);
}

PartialFn PartialFn::negate_input(std::size_t i) const {
    if (i >= arity_) throw InputError("negate_input: index out of range");
    const std::uint64_t mask = std::uint64_t{1} << (arity_ - 1 - i);
    std::vector<std::uint8_t> t(table_.size());
    for (std::uint64_t x = 0; x < table_.size(); ++x) t[x] = table_[x ^ mask];
    return PartialFn(arity_, std::move(t), name_ + "[~x" + std::to_string(i + 1) + "]", blocks_);
}

PartialFn PartialFn::renamed(std::string name) const {
    PartialFn out = *this;
    out.name_ = std::move(name);
    return out;
}

PartialFn SymmetricSpec::to_fn(std::string name) const {
    if (predicate.size() != n + 1) throw InputError("SymmetricSpec: predicate needs n+1 entries");
    std::vector<std::uint8_t> t(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < t.size(); ++x) t[x] = predicate[popcount(x)];
    return PartialFn(n, std::move(t), std::move(name));
}

std::optional<SymmetricSpec> symmetric_profile(const PartialFn& f) {
    SymmetricSpec s;
    s.n = f.arity();
    s.predicate.assign(s.n + 1, 255);
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        auto& slot = s.predicate[popcount(x)];
        if (slot == 255) slot = f(x);
        else if (slot != f(x)) return std::nullopt;
    }
    return s;
}

namespace {

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

SymmetricSpec weight_rule(std::size_t n, auto rule) {
    SymmetricSpec s{n, std::vector<std::uint8_t>(n + 1)};
    for (std::size_t w = 0; w <= n; ++w) s.predicate[w] = rule(w);
    return s;
}

}  // namespace

PartialFn build_named(std::string_view raw, std::size_t n) {
    if (n < 1) throw InputError("build_named: n must be at least 1");
    if (n > kMaxArity) throw ResourceError("build_named: n exceeds the arity cap");
    const std::string name = upper(raw);
    const std::string label = std::string(raw) + "_" + std::to_string(n);
    if (name == "OR") return weight_rule(n, [](std::size_t w) { return w > 0 ? kOne : kZero; }).to_fn(label);
    if (name == "AND") return weight_rule(n, [n](std::size_t w) { return w == n ? kOne : kZero; }).to_fn(label);
    if (name == "NAND") return weight_rule(n, [n](std::size_t w) { return w == n ? kZero : kOne; }).to_fn(label);
    if (name == "XOR") return weight_rule(n, [](std::size_t w) { return std::uint8_t(w & 1); }).to_fn(label);
    if (name == "MAJ") return weight_rule(n, [n](std::size_t w) { return 2 * w > n ? kOne : kZero; }).to_fn(label);
    if (name == "PROR")
        return weight_rule(n, [](std::size_t w) { return w == 0 ? kZero : (w == 1 ? kOne : kStar); }).to_fn(label);
    if (name == "ZERO") return weight_rule(n, [](std::size_t) { return kZero; }).to_fn(label);
    if (name == "ONE") return weight_rule(n, [](std::size_t) { return kOne; }).to_fn(label);
    if (name == "ID") {
        if (n != 1) throw InputError("build_named: ID has arity 1");
        return PartialFn(1, {kZero, kOne}, "ID");
    }
    if (name.rfind("PRTH", 0) == 0) {
        std::string_view rest = std::string_view(name).substr(4);
        if (rest.size() >= 2 && rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
        std::size_t k = 0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
        if (rest.empty() || ec != std::errc{} || ptr != rest.data() + rest.size())
            throw InputError("build_named: malformed threshold name '" + std::string(raw) + "'");
        if (k >= n) throw InputError("build_named: PrTH(k) needs 0 <= k < n");
        return weight_rule(n, [k](std::size_t w) { return w == k ? kZero : (w == k + 1 ? kOne : kStar); })
            .to_fn("PrTH(" + std::to_string(k) + ")_" + std::to_string(n));
    }
    throw InputError("build_named: unknown function '" + std::string(raw) + "'");
}

PartialFn compose(const PartialFn& g, const std::vector<PartialFn>& fs) {
    if (fs.size() != g.arity()) throw InputError("compose: need one inner function per outer input");
    std::size_t total = 0;
    for (const auto& f : fs) total += f.arity();
    if (total > kMaxArity) throw ResourceError("compose: composed arity " + std::to_string(total) + " exceeds " + std::to_string(kMaxArity));

    std::vector<std::size_t> blocks;
    std::string name = g.name() + "(";
    for (std::size_t i = 0; i < fs.size(); ++i) {
        blocks.push_back(fs[i].arity());
        name += (i ? "," : "") + fs[i].name();
    }
    name += ")";

    std::vector<std::uint8_t> table(std::size_t{1} << total);
    for (std::uint64_t x = 0; x < table.size(); ++x) {
        std::size_t shift = total;
        std::uint64_t outer = 0;
        bool undefined = false;
        for (const auto& f : fs) {
            shift -= f.arity();
            const std::uint64_t part = (x >> shift) & ((std::uint64_t{1} << f.arity()) - 1);
            const auto v = f(part);
            if (v == kStar) {
                undefined = true;
                break;
            }
            outer = (outer << 1) | v;
        }
        table[x] = undefined ? kStar : g(outer);
    }
    bool any = std::any_of(table.begin(), table.end(), [](auto v) { return v != kStar; });
    if (!any) throw InputError("compose: composition is everywhere undefined");
    return PartialFn(total, std::move(table), std::move(name), std::move(blocks));
}

PartialFn restrict_block(const PartialFn& f, std::size_t block, std::uint64_t w) {
    const auto& blocks = f.blocks();
    if (block >= blocks.size()) throw InputError("restrict_block: block index out of range");
    const std::size_t width = blocks[block];
    if (w >= (std::uint64_t{1} << width)) throw InputError("restrict_block: fixed input outside the block");
    std::size_t after = 0;
    for (std::size_t i = block + 1; i < blocks.size(); ++i) after += blocks[i];
    const std::size_t rest = f.arity() - width;
    std::vector<std::uint8_t> table(std::size_t{1} << rest);
    const std::uint64_t low_mask = (std::uint64_t{1} << after) - 1;
    for (std::uint64_t y = 0; y < table.size(); ++y) {
        const std::uint64_t x = ((y >> after) << (after + width)) | (w << after) | (y & low_mask);
        table[y] = f(x);
    }
    std::vector<std::size_t> nb = blocks;
    nb.erase(nb.begin() + static_cast<std::ptrdiff_t>(block));
    if (nb.empty()) nb = {0};
    return PartialFn(rest, std::move(table), f.name() + "|block" + std::to_string(block + 1), std::move(nb));
}

std::size_t paturi_break(const SymmetricSpec& g) {
    if (g.predicate.size() != g.n + 1) throw InputError("paturi_break: predicate needs n+1 entries");
    for (auto v : g.predicate)
        if (v == kStar) throw InputError("paturi_break: function must be total");
    const double half = 0.5 * double(g.n);
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < g.n; ++k) {
        if (g.predicate[k] == g.predicate[k + 1]) continue;
        if (!best || std::abs(double(k) - half) < std::abs(double(*best) - half)) best = k;
    }
    if (!best) throw DomainError("paturi_break: constant function has no flip");
    std::size_t k = *best;
    if (2 * k > g.n) k = g.n - k;
    return std::max<std::size_t>(k, 1);
}

std::string to_text(const PartialFn& f) {
    std::string s = "arity=" + std::to_string(f.arity()) + "\n";
    s.reserve(s.size() + f.size() + 1);
    for (auto v : f.table()) s.push_back(v == kStar ? '*' : char('0' + v));
    s.push_back('\n');
    return s;
}

PartialFn parse_truth_table(std::string_view text, std::string name) {
    std::istringstream in{std::string(text)};
    std::string header, body;
    if (!std::getline(in, header)) throw InputError("truth table: missing header");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header.rfind("arity=", 0) != 0) throw InputError("truth table: header must read arity=m");
    std::size_t m = 0;
    const char* first = header.data() + 6;
    auto [ptr, ec] = std::from_chars(first, header.data() + header.size(), m);
    if (ec != std::errc{} || ptr != header.data() + header.size() || ptr == first)
        throw InputError("truth table: malformed arity");
    if (m > kMaxArity) throw ResourceError("truth table: arity exceeds the cap");
    std::getline(in, body);
    if (!body.empty() && body.back() == '\r') body.pop_back();
    if (body.size() != (std::size_t{1} << m)) throw InputError("truth table: expected 2^m symbols");
    std::vector<std::uint8_t> t(body.size());
    for (std::size_t i = 0; i < body.size(); ++i) {
        switch (body[i]) {
            case '0': t[i] = kZero; break;
            case '1': t[i] = kOne; break;
            case '*': t[i] = kStar; break;
            default: throw InputError("truth table: invalid symbol '" + std::string(1, body[i]) + "'");
        }
    }
    return PartialFn(m, std::move(t), name.empty() ? "table" : std::move(name));
}

PartialFn read_truth_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open truth table '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_truth_table(ss.str(), path);
}

void write_truth_table(const PartialFn& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write truth table '" + path + "'");
    out << to_text(f);
}

}  // namespace adlab
