#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adlab/numerics/dense_matrix.hpp"

namespace adlab {

/// Largest n accepted by build_witness.
inline constexpr std::size_t kMaxWitnessN = 10;

/// Subsets of [n] and hidden strings are bitmasks: bit i stands for element i+1.
using Subset = std::uint64_t;

/// Y_S(p)[x, x'] = scalar * p^a (1-p)^b with a, b multiples of 1/4.
struct EntryExponents {
    int a4 = 0;  // 4a
    int b4 = 0;  // 4b
    double scalar = 0.0;

    double a() const noexcept { return a4 / 4.0; }
    double b() const noexcept { return b4 / 4.0; }
    bool operator==(const EntryExponents&) const = default;
};

/// std::nullopt when |x & S| or |x' & S| is at least 2 (the entry vanishes).
std::optional<EntryExponents> entry_exponents(std::size_t n, Subset s, std::uint64_t x, std::uint64_t xp);

/// X_S = integral of Y_S(p) over [0, 1] = scalar * B(a + 1, b + 1).
double integrate_entry(const EntryExponents& e);

/// One X_S, stored on its support {x : |x & S| <= 1}; zero elsewhere.
struct WitnessBlock {
    Subset s = 0;
    std::vector<std::uint64_t> support;  // ascending
    DenseMatrix values;                  // support.size() square
};

class WitnessFamily {
public:
    WitnessFamily() = default;
    WitnessFamily(std::size_t n, std::vector<WitnessBlock> blocks);

    std::size_t n() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return std::size_t{1} << n_; }
    const std::vector<WitnessBlock>& blocks() const noexcept { return blocks_; }
    const WitnessBlock& block(Subset s) const { return blocks_.at(s); }

    /// X_S[x, x'].
    double entry(Subset s, std::uint64_t x, std::uint64_t xp) const;
    /// X_S expanded to 2^n x 2^n.
    DenseMatrix full(Subset s) const;

private:
    std::size_t n_ = 0;
    std::vector<WitnessBlock> blocks_;              // indexed by S
    std::vector<std::vector<std::int32_t>> pos_;    // per S: x -> row in block or -1
};

WitnessFamily build_witness(std::size_t n, std::size_t jobs = 1);

struct WitnessReport {
    std::size_t n = 0;
    double min_eig = 0.0;            // min over S of lambda_min(X_S) / ||X_S||_F
    double min_eig_abs = 0.0;        // min over S of lambda_min(X_S)
    double max_constraint_dev = 0.0;
    double objective = 0.0;          // max_x sum_S X_S[x, x]
    double pi_sqrt_n = 0.0;
    double objective_gap = 0.0;      // pi sqrt(n) - objective
    double diagonal_dev = 0.0;       // max_x |sum_S X_S[x,x] - (pi/2)(sqrt n + |x|/sqrt n)|
    std::optional<double> quadrature_dev;
    double tol_psd = 1e-8;
    double tol_constraint = 1e-6;
    bool psd_ok = false;
    bool constraint_ok = false;
    bool objective_ok = false;
};

WitnessReport verify(const WitnessFamily& w, double tol_psd = 1e-8, double tol_constraint = 1e-6,
                     std::size_t jobs = 1);

/// Recomputes `samples` random entries (every entry when there are fewer) by
/// adaptive quadrature of scalar * p^a (1-p)^b; returns the largest deviation.
double quadrature_crosscheck(const WitnessFamily& w, std::size_t samples, std::uint64_t seed = 1);

/// The SDP over the unreduced domain D, for n <= 3: every z in {0,1}^{2^n}
/// with z_S = [x & S != 0] whenever |x & S| <= 1.
struct FullDomainReport {
    std::size_t n = 0;
    std::size_t domain_size = 0;
    double min_eig = 0.0;             // relative, as in WitnessReport
    double max_constraint_dev = 0.0;  // sum over all S with z_S != z'_S
    double objective = 0.0;
    double max_lift_dev = 0.0;        // entries of lifts vs the reduced matrices
};

FullDomainReport verify_full_domain(const WitnessFamily& w);

std::string to_json(const WitnessReport& r);

/// Raw dump: magic "ADLABXS1", n, then per S its support size, support and
/// row-major block, all little-endian u64 / f64.
void write_binary(const WitnessFamily& w, const std::string& path);

}  // namespace adlab
