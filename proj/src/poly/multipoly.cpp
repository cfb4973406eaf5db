#include "adlab/poly/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "adlab/errors.hpp"
#include "json.hpp"

namespace adlab {

MultiPoly MultiPoly::constant(std::size_t num_vars, double c) {
    MultiPoly p(num_vars);
    p.add_term(Exponents(num_vars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t num_vars, std::size_t i) {
    if (i >= num_vars) throw InputError("MultiPoly::variable: index out of range");
    MultiPoly p(num_vars);
    Exponents e(num_vars, 0);
    e[i] = 1;
    p.add_term(e, 1.0);
    return p;
}

MultiPoly MultiPoly::monomial_from_mask(std::size_t num_vars, std::uint64_t mask, double c) {
    MultiPoly p(num_vars);
    Exponents e(num_vars, 0);
    for (std::size_t i = 0; i < num_vars; ++i) e[i] = (mask >> (num_vars - 1 - i)) & 1;
    p.add_term(e, c);
    return p;
}

std::size_t MultiPoly::degree() const {
    std::size_t d = 0;
    for (const auto& [e, c] : terms_) {
        std::size_t s = 0;
        for (auto v : e) s += v;
        d = std::max(d, s);
    }
    return d;
}

bool MultiPoly::is_multilinear() const {
    for (const auto& [e, c] : terms_)
        for (auto v : e)
            if (v > 1) return false;
    return true;
}

double MultiPoly::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0.0 : it->second;
}

void MultiPoly::add_term(const Exponents& e, double c) {
    if (e.size() != m_) throw InputError("MultiPoly: exponent vector has the wrong length");
    if (!std::isfinite(c)) throw InputError("MultiPoly: non-finite coefficient");
    if (c == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (o.m_ != m_) throw InputError("MultiPoly: variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (o.m_ != m_) throw InputError("MultiPoly: variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(double s) {
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
MultiPoly operator*(double s, MultiPoly a) { return a *= s; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.num_vars() != b.num_vars()) throw InputError("MultiPoly: variable count mismatch");
    MultiPoly out(a.num_vars());
    Exponents e(a.num_vars());
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

MultiPoly pow(const MultiPoly& p, std::size_t k) {
    MultiPoly result = MultiPoly::constant(p.num_vars(), 1.0);
    MultiPoly base = p;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

double evaluate(const MultiPoly& p, std::span<const double> x) {
    if (x.size() != p.num_vars()) throw InputError("evaluate: point has the wrong dimension");
    double s = 0.0;
    for (const auto& [e, c] : p.terms()) {
        double t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::uint32_t k = 0; k < e[i]; ++k) t *= x[i];
        s += t;
    }
    return s;
}

MultiPoly multilinearize(const MultiPoly& p) {
    MultiPoly out(p.num_vars());
    for (const auto& [e, c] : p.terms()) {
        Exponents f = e;
        for (auto& v : f) v = std::min<std::uint32_t>(v, 1);
        out.add_term(f, c);
    }
    return out;
}

MultiPoly to_pm_basis(const MultiPoly& p) {
    const std::size_t m = p.num_vars();
    std::vector<MultiPoly> subs;
    for (std::size_t i = 0; i < m; ++i)
        subs.push_back(0.5 * (MultiPoly::variable(m, i) + MultiPoly::constant(m, 1.0)));
    MultiPoly q = m == 0 ? p : substitute(p, subs);
    q *= 2.0;
    q -= MultiPoly::constant(m, 1.0);
    return q;
}

MultiPoly from_pm_basis(const MultiPoly& q) {
    const std::size_t m = q.num_vars();
    std::vector<MultiPoly> subs;
    for (std::size_t i = 0; i < m; ++i)
        subs.push_back(2.0 * MultiPoly::variable(m, i) - MultiPoly::constant(m, 1.0));
    MultiPoly p = m == 0 ? q : substitute(q, subs);
    p += MultiPoly::constant(m, 1.0);
    p *= 0.5;
    return p;
}

MultiPoly substitute(const MultiPoly& p, const std::vector<MultiPoly>& subs) {
    if (subs.size() != p.num_vars()) throw InputError("substitute: need one polynomial per variable");
    if (subs.empty()) return p;
    const std::size_t k = subs.front().num_vars();
    for (const auto& s : subs)
        if (s.num_vars() != k) throw InputError("substitute: substitutions must share a variable space");
    std::vector<std::vector<MultiPoly>> powers(subs.size());
    auto power = [&](std::size_t i, std::uint32_t e) -> const MultiPoly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(MultiPoly::constant(k, 1.0));
        while (cache.size() <= e) cache.push_back(cache.back() * subs[i]);
        return cache[e];
    };
    MultiPoly out(k);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly t = MultiPoly::constant(k, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) t = t * power(i, e[i]);
        out += t;
    }
    return out;
}

double coeff_l1(const MultiPoly& p) {
    double s = 0.0;
    for (const auto& [e, c] : p.terms()) s += std::abs(c);
    return s;
}

double coeff_max(const MultiPoly& p) {
    double s = 0.0;
    for (const auto& [e, c] : p.terms()) s = std::max(s, std::abs(c));
    return s;
}

double coeff_distance(const MultiPoly& a, const MultiPoly& b) { return coeff_max(a - b); }

std::vector<double> dense_multilinear(const MultiPoly& p) {
    if (!p.is_multilinear()) throw InputError("dense_multilinear: polynomial is not multilinear");
    const std::size_t m = p.num_vars();
    if (m > 26) throw ResourceError("dense_multilinear: too many variables");
    std::vector<double> out(std::size_t{1} << m, 0.0);
    for (const auto& [e, c] : p.terms()) {
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < m; ++i) mask = (mask << 1) | e[i];
        out[mask] += c;
    }
    return out;
}

MultiPoly from_dense_multilinear(std::size_t m, std::span<const double> coeffs, double drop_below) {
    if (coeffs.size() != (std::size_t{1} << m)) throw InputError("from_dense_multilinear: size mismatch");
    MultiPoly out(m);
    for (std::uint64_t mask = 0; mask < coeffs.size(); ++mask)
        if (std::abs(coeffs[mask]) > drop_below) out += MultiPoly::monomial_from_mask(m, mask, coeffs[mask]);
    return out;
}

std::string to_json(const MultiPoly& p) {
    nlohmann::ordered_json j;
    j["m"] = p.num_vars();
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& [e, c] : p.terms()) j["terms"].push_back({{"exps", e}, {"coeff", c}});
    return j.dump();
}

MultiPoly poly_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("polynomial JSON: ") + e.what());
    }
    if (!j.contains("m") || !j.contains("terms") || !j["terms"].is_array())
        throw InputError("polynomial JSON: expected fields m and terms");
    const auto m = j["m"].get<std::size_t>();
    MultiPoly p(m);
    for (const auto& t : j["terms"]) {
        auto e = t.at("exps").get<Exponents>();
        if (e.size() != m) throw InputError("polynomial JSON: exponent vector length differs from m");
        p.add_term(e, t.at("coeff").get<double>());
    }
    return p;
}

MultiPoly read_poly(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open polynomial file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return poly_from_json(ss.str());
}

}  // namespace adlab
