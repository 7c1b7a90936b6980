#ifndef WMMS_INSTANCE_HPP
#define WMMS_INSTANCE_HPP

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wmms/rational.hpp"

namespace wmms {

/// Chore allocation instance: agents with positive weights, items, and an
/// additive cost matrix. Plain value type; structural checks live in
/// validate_instance.
struct Instance {
    std::vector<std::string> agents;
    std::vector<Rational> weights;            // parallel to agents
    std::vector<std::string> items;
    std::vector<std::vector<Rational>> costs;  // costs[agent][item]

    int n() const { return static_cast<int>(agents.size()); }
    int m() const { return static_cast<int>(items.size()); }
    const Rational& cost(int agent, int item) const { return costs[agent][item]; }

    /// v_i(M): the agent's cost for the full item set.
    Rational total_cost(int agent) const;

    /// Sum of all weights.
    Rational weight_sum() const;

    int agent_index(std::string_view id) const;  // -1 if absent
    int item_index(std::string_view id) const;   // -1 if absent
};

/// Partial or complete assignment of items to agents, keyed by id so it can
/// survive reductions that rename or drop items.
struct Allocation {
    std::map<std::string, std::string> assignment;  // item id -> agent id

    bool complete(const Instance& inst) const;

    /// Per-agent bundles as item indices; unassigned items are skipped.
    /// Throws std::invalid_argument on ids unknown to the instance.
    std::vector<std::vector<int>> bundles(const Instance& inst) const;

    /// item index -> agent index, -1 when unassigned.
    std::vector<int> to_indices(const Instance& inst) const;

    static Allocation from_indices(const Instance& inst, std::span<const int> item_to_agent);
};

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const { return errors.empty(); }
};

/// Accepts iff all weights are positive, all costs non-negative, and ids are
/// unique; the report lists every violation. Weights outside (0,1) are legal
/// (weights need not be normalized) and only draw a warning.
ValidationReport validate_instance(const Instance& inst);

/// Sum of the agent's costs over the bundle. Id-based overload throws on
/// unknown item ids.
Rational bundle_cost(const Instance& inst, int agent, std::span<const int> bundle);
Rational bundle_cost(const Instance& inst, std::string_view agent_id,
                     const std::vector<std::string>& bundle);

/// True iff every agent's costs are non-increasing in the instance's item
/// order (identical ordering).
bool is_ido(const Instance& inst);

/// w_i * v_i(M) / sum_j w_j. Always a lower bound on the agent's WMMS.
Rational proportional_share(const Instance& inst, int agent);

/// One agent's WMMS value together with a witnessing partition; bundle j of
/// the partition corresponds to the agent slot with weight w_j.
struct AgentWmms {
    Rational value;
    std::vector<std::vector<int>> partition;  // partition[j] = item indices
};

struct WmmsProfile {
    std::vector<AgentWmms> per_agent;
};

/// Thrown when an exhaustive computation would exceed the enumeration budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Global enumeration budget: default 10^7 states, overridable via the
/// WMMS_ENUM_BUDGET environment variable.
unsigned long long enumeration_budget();

/// n^m when it fits below 2^63 and the budget, else nullopt.
bool within_enumeration_budget(int n, int m, unsigned long long* count = nullptr);

}  // namespace wmms

#endif
