#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "adlab/boolfn/partial_fn.hpp"
#include "adlab/poly/multipoly.hpp"

namespace adlab {

struct RobustnessResult {
    double margin = 0.0;
    bool exact = true;
    std::size_t samples = 0;   // corner samples drawn when not exact
    std::uint64_t worst_x = 0;
    std::uint64_t worst_signs = 0;  // bit set => +delta on that coordinate (x_1 most significant)
};

/// Largest arity handled by exhaustive corner enumeration.
inline constexpr std::size_t kExactRobustnessArity = 16;

/// Which perturbations are allowed around a Boolean point x.
enum class PerturbationBox {
    Full,  // x + [-delta, delta]^m, the definition as stated
    Unit,  // the same box intersected with [0,1]^m
};

/// max over x in Dom(h), Delta in the box of |h(x) - p(x + Delta)|.
/// Exact by corner enumeration for m <= 16, sampled corners beyond.
RobustnessResult robustness_margin(const MultiPoly& p, const PartialFn& h, double delta,
                                   std::size_t samples = 100000, std::uint64_t seed = 1,
                                   PerturbationBox box = PerturbationBox::Full);

/// The unique multilinear polynomial agreeing with a total function on the cube.
MultiPoly multilinear_extension(const PartialFn& f);

/// E[p(z)] over independent z_i ~ Bernoulli(y_i), by exact enumeration.
double bernoulli_expectation(const MultiPoly& p, std::span<const double> y);

}  // namespace adlab
