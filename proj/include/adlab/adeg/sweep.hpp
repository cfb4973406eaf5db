#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "adlab/boolfn/partial_fn.hpp"

namespace adlab {

/// A function reference in a sweep: a named builder ("OR_3", "PrTH(1)_4", "ID")
/// or an explicit truth table.
PartialFn resolve_function(const std::string& ref);

struct SweepInstance {
    std::string outer;                 // function reference
    std::vector<std::string> inner;    // one per outer input
    double epsilon = 1.0 / 3.0;
    std::string tag;                   // empty => inferred from the outer function
    bool bounded = true;               // bounded approximate degree (false: plain LP)
};

struct SweepRow {
    std::string instance;
    std::size_t arity = 0;
    std::optional<std::size_t> adeg_outer;
    std::vector<std::size_t> adeg_inner;
    std::optional<std::size_t> adeg_composed;
    double ratio = 0.0;
    std::string tag;
    bool skipped = false;
    std::string note;
};

/// or_composition, or_heterogeneous, xor_composition, sym_composition, bounded_composition.
std::string infer_tag(const SweepInstance& inst);

/// Ratio of the composed degree to the quantity named by the tag.
double sweep_ratio(const std::string& tag, std::size_t outer_arity, std::size_t adeg_outer,
                   const std::vector<std::size_t>& adeg_inner, std::size_t adeg_composed);

/// Parses [{"outer": ..., "inner": [...], "epsilon": ..., "tag": ...}, ...].
std::vector<SweepInstance> parse_sweep_spec(const std::string& json_text);

/// Runs every instance (fan-out over `jobs` workers, rows ordered by index).
std::vector<SweepRow> composition_sweep(const std::vector<SweepInstance>& spec, std::size_t jobs = 1);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace adlab
