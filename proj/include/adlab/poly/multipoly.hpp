#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace adlab {

using Exponents = std::vector<std::uint32_t>;

/// Sparse real polynomial in m variables. Terms are kept in lexicographic
/// exponent order and exact zeros are never stored.
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(std::size_t num_vars) : m_(num_vars) {}

    static MultiPoly constant(std::size_t num_vars, double c);
    static MultiPoly variable(std::size_t num_vars, std::size_t i);
    /// The monomial prod_{i in T} x_i for a bitmask T (bit m-1-i is x_{i+1}).
    static MultiPoly monomial_from_mask(std::size_t num_vars, std::uint64_t mask, double c = 1.0);

    std::size_t num_vars() const noexcept { return m_; }
    const std::map<Exponents, double>& terms() const noexcept { return terms_; }
    std::size_t num_terms() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t degree() const;
    bool is_multilinear() const;
    double coeff(const Exponents& e) const;

    /// Adds c to the coefficient of x^e.
    void add_term(const Exponents& e, double c);

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(double s);

    bool operator==(const MultiPoly&) const = default;

private:
    std::size_t m_ = 0;
    std::map<Exponents, double> terms_;
};

MultiPoly operator+(MultiPoly a, const MultiPoly& b);
MultiPoly operator-(MultiPoly a, const MultiPoly& b);
MultiPoly operator*(double s, MultiPoly a);
MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
MultiPoly pow(const MultiPoly& p, std::size_t k);

double evaluate(const MultiPoly& p, std::span<const double> x);

/// Clamps every exponent to at most one; preserves values on {0,1}^m.
MultiPoly multilinearize(const MultiPoly& p);

/// q(z) = 2 p((z+1)/2) - 1, the same function read in the {-1,1} convention.
MultiPoly to_pm_basis(const MultiPoly& p);
/// Inverse of to_pm_basis: p(x) = (q(2x-1) + 1) / 2.
MultiPoly from_pm_basis(const MultiPoly& q);

/// p(subs_1(x), ..., subs_N(x)).
MultiPoly substitute(const MultiPoly& p, const std::vector<MultiPoly>& subs);

double coeff_l1(const MultiPoly& p);
double coeff_max(const MultiPoly& p);

/// Max coefficient difference between two polynomials on the same variables.
double coeff_distance(const MultiPoly& a, const MultiPoly& b);

/// Dense multilinear coefficient array indexed by monomial bitmask.
std::vector<double> dense_multilinear(const MultiPoly& p);
MultiPoly from_dense_multilinear(std::size_t m, std::span<const double> coeffs, double drop_below = 0.0);

/// Polynomial JSON: {"m": m, "terms": [{"exps": [...], "coeff": c}, ...]}.
std::string to_json(const MultiPoly& p);
MultiPoly poly_from_json(const std::string& text);
MultiPoly read_poly(const std::string& path);

}  // namespace adlab
