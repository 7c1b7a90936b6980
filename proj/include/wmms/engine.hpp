#ifndef WMMS_ENGINE_HPP
#define WMMS_ENGINE_HPP

#include <optional>

#include "wmms/instance.hpp"

namespace wmms {

/// Exact WMMS of one agent together with a defining partition: a depth-first
/// search over items in decreasing cost order with load-vector memoization
/// and best-so-far pruning. Zero-cost items never affect the optimum and are
/// appended to the first bundle. Ties between optimal partitions are broken
/// deterministically (greedy seed, then first strict improvement in DFS
/// order).
/// Throws BudgetExceeded when n^(positive items) exceeds the budget.
AgentWmms exact_wmms(const Instance& inst, int agent);

WmmsProfile exact_wmms_profile(const Instance& inst);

/// True iff v_i(B_j)/w_j <= claimed/w_i for every bundle j. The partition
/// must consist of exactly n bundles covering all items exactly once;
/// anything else throws std::invalid_argument.
bool verify_partition(const Instance& inst, int agent,
                      const std::vector<std::vector<int>>& partition, const Rational& claimed);

/// Scheduling view of one agent's WMMS: jobs are item costs under her
/// valuation, machine speeds are the agent weights, and WMMS_i equals w_i
/// times the minimal makespan (max over machines of load/speed).
struct MakespanProblem {
    std::vector<Rational> loads;
    std::vector<Rational> speeds;
};

struct FeasibilityResult {
    /// job index -> machine index when an assignment with makespan <= T was
    /// found.
    std::optional<std::vector<int>> assignment;
    /// True when the decision came from the exhaustive backend; a negative
    /// answer from the first-fit-decreasing fallback is not a proof.
    bool exact = false;
};

FeasibilityResult feasible_makespan(const MakespanProblem& p, const Rational& T);

struct WmmsEstimate {
    Rational value;
    /// True when the feasibility backend was exhaustive, in which case
    /// value lies in [WMMS_i, (1+eps) * WMMS_i]. Otherwise value is only an
    /// upper bound on WMMS_i (first-fit-decreasing fallback).
    bool exact_backend = false;
};

/// Binary search for the smallest feasible makespan on a geometric grid of
/// resolution (1+eps), anchored at the proportional lower bound.
WmmsEstimate estimate_wmms(const Instance& inst, int agent, const Rational& eps);

/// First-fit-decreasing exact-fill packer: assigns values to bins so that
/// bin b receives total at most capacities[b]. When every value and capacity
/// is a power-of-half multiple of one common base and the totals are equal,
/// first-fit-decreasing is a complete decision procedure: it finds a packing
/// iff one exists. Returns value index -> bin, or nullopt.
std::optional<std::vector<int>> dyadic_first_fit(const std::vector<Rational>& values,
                                                 const std::vector<Rational>& capacities);

}  // namespace wmms

#endif
