#ifndef WMMS_REDUCTIONS_HPP
#define WMMS_REDUCTIONS_HPP

#include <set>

#include "wmms/canonical.hpp"
#include "wmms/instance.hpp"

namespace wmms {

/// Identical-ordering reduction. The reduced instance keeps the agents and
/// weights; item position h carries, for each agent, her h-th largest
/// original cost, so each agent's cost multiset (and hence her WMMS) is
/// preserved exactly.
struct IdoTrace {
    Instance original;
    Instance ido;  // items renamed to positions p1..pm
};

IdoTrace to_ido(const Instance& inst);

/// Maps a complete allocation of the IDO instance back to the original via
/// the picking procedure: positions are processed from the cheapest to the
/// most expensive, and the agent holding a position takes her minimum-cost
/// remaining original item (ties to the smallest item index). Guarantees
/// every agent a bundle costing at most her IDO bundle.
Allocation lift_ido_allocation(const IdoTrace& trace, const Allocation& ido_alloc);

/// Step 1: weights rounded up to the nearest power-of-half fraction of the
/// largest weight; w_i <= w'_i < 2 w_i. Values untouched.
struct WeightRounding {
    std::vector<Rational> original;
    std::vector<Rational> rounded;
};

struct RoundWeightsResult {
    Instance inst;
    WeightRounding trace;
};

RoundWeightsResult round_weights(const Instance& inst);

/// Step 2: per agent, n auxiliary items (zero-valued for everyone else) pad
/// her defining partition bundles up to exact weight proportions, making
/// WMMS_i = w_i * v_i(M') / sum(w) for every agent while each WMMS value is
/// unchanged. Needs exact_wmms per agent, so it inherits the search budget.
struct PadTrace {
    std::vector<AgentWmms> profiles;                 // on the input instance
    std::vector<std::vector<std::string>> aux_ids;   // [agent][slot]
};

struct PadResult {
    Instance inst;
    PadTrace trace;
};

PadResult pad_to_proportional(const Instance& inst);

/// Step 3: weights divided by their sum, each agent's values by her total;
/// afterwards sum(w) = 1 and v_i(M) = 1. Approximation ratios are invariant
/// under both scalings. Throws std::invalid_argument for an agent whose
/// total cost is zero (her WMMS is degenerate and cannot be normalized).
struct ScaleTrace {
    Rational weight_divisor;
    std::vector<Rational> value_divisors;
};

struct NormalizeResult {
    Instance inst;
    ScaleTrace trace;
};

NormalizeResult normalize_instance(const Instance& inst);

/// Step 4: every positive value rounded down to the nearest power-of-half
/// fraction of the largest weight (v/2 < v' <= v); per defining-partition
/// bundle, auxiliary items with the dyadic expansion of the rounding loss
/// restore the bundle to exact weight. Totals and WMMS values are preserved.
struct DyadicTrace {
    std::vector<std::vector<std::vector<std::string>>> aux_ids;  // [agent][slot][term]
    /// Weight-exact defining partitions on the output instance.
    std::vector<std::vector<std::vector<int>>> partitions;  // [agent][slot] -> item idx
};

struct DyadicizeResult {
    Instance inst;
    DyadicTrace trace;
};

/// `partitions`, when given, supplies per-agent weight-exact defining
/// partitions on the input (bundle j must cost exactly w_j); otherwise they
/// are recomputed with exact_wmms, which requires the input to be
/// proportional and normalized.
DyadicizeResult dyadicize_values(
    const Instance& inst,
    const std::vector<std::vector<std::vector<int>>>* partitions = nullptr);

/// Bookkeeping for the full reduction; enough to map any allocation of the
/// canonical instance back to the original.
struct CanonicalTrace {
    Instance original;
    WeightRounding weights;
    PadTrace pad;
    ScaleTrace scale;
    DyadicTrace dyadic;
    IdoTrace ido;
    std::set<std::string> aux_ids;  // all auxiliary items (steps 2 and 4)
};

struct CanonicalResult {
    CanonicalInstance canon;
    CanonicalTrace trace;
};

/// Full pipeline: round weights, pad to proportional, normalize, dyadicize,
/// reduce to IDO; the output passes every canonical-instance check. An
/// allocation of the output that is alpha-WMMS lifts back to a 4*alpha-WMMS
/// allocation of the input.
CanonicalResult to_canonical(const Instance& inst);

/// Lifts a complete allocation of the canonical instance: undoes the IDO
/// renaming via the picking procedure, then drops all auxiliary items.
Allocation lift_canonical_allocation(const CanonicalTrace& trace, const Allocation& alloc5);

}  // namespace wmms

#endif
