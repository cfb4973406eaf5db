#pragma once

#include <cstddef>
#include <vector>

#include "adlab/poly/multipoly.hpp"

namespace adlab {

/// Univariate polynomial. Coefficients are either monomial (c_j t^j) or
/// Bernstein of degree k (c_j C(k,j) t^j (1-t)^{k-j}); the latter keeps
/// high-degree amplifiers evaluable without cancellation.
class UniPoly {
public:
    enum class Basis { Monomial, Bernstein };

    UniPoly() = default;
    explicit UniPoly(std::vector<double> coeffs, Basis basis = Basis::Monomial);

    Basis basis() const noexcept { return basis_; }
    const std::vector<double>& coeffs() const noexcept { return c_; }
    /// Degree of the monomial expansion (exact leading-term bookkeeping).
    std::size_t degree() const;

    double operator()(double t) const;
    UniPoly to_monomial() const;
    /// The same polynomial as a one-variable MultiPoly.
    MultiPoly to_multipoly() const;

private:
    std::vector<double> c_;
    Basis basis_ = Basis::Monomial;
};

/// Majority-of-k vote A_k(x) = sum_{j > k/2} C(k,j) x^j (1-x)^{k-j}, k odd.
UniPoly majority_poly(std::size_t k);

/// A_k with the minimal odd k such that A_k(1/3) <= eps. Requires 0 < eps < 1/3.
UniPoly amplification_poly(double eps);

/// Minimal odd k with A_k(x0) <= target.
std::size_t majority_order(double x0, double target);

/// pm-convention amplifier q(z) = 2 A_k((z+1)/2) - 1 as a one-variable MultiPoly.
MultiPoly pm_amplifier(std::size_t k);

/// u(p(x)) for univariate u.
MultiPoly apply(const UniPoly& u, const MultiPoly& p);

/// Chebyshev polynomial T_d(t) in the monomial basis.
UniPoly chebyshev_t(std::size_t d);

/// Symmetric approximant of OR_n built from the Hamming-weight profile
///   p(w) = 1 - T_d(u(w))^2 / T_d(1 + 2/(n-1))^2,  u(w) = (n+1-2w)/(n-1),
/// with the smallest d meeting the error target. On the cube it equals the
/// multilinear symmetric polynomial sum_j Delta^j p(0) e_j(x).
class SymmetricApprox {
public:
    SymmetricApprox(std::size_t n, std::size_t cheb_degree, std::vector<double> profile,
                    std::vector<double> elementary_coeffs);

    std::size_t n() const noexcept { return n_; }
    std::size_t chebyshev_degree() const noexcept { return d_; }
    std::size_t degree() const noexcept { return elem_.size() - 1; }
    /// p at Hamming weight w.
    const std::vector<double>& profile() const noexcept { return profile_; }
    /// Coefficients c_j of e_j(x), j = 0..degree.
    const std::vector<double>& elementary_coeffs() const noexcept { return elem_; }
    /// max_w |p(w) - OR(w)|, i.e. the exhaustive cube error.
    double cube_error() const;

    /// Multilinear evaluation at any real point.
    double operator()(std::span<const double> x) const;
    /// Expands into a MultiPoly; ResourceError beyond `max_terms` monomials.
    MultiPoly to_multilinear(std::size_t max_terms = 200000) const;

private:
    std::size_t n_, d_;
    std::vector<double> profile_, elem_;
};

SymmetricApprox chebyshev_or(std::size_t n, double eps);

}  // namespace adlab
