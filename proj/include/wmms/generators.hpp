#ifndef WMMS_GENERATORS_HPP
#define WMMS_GENERATORS_HPP

#include <cstdint>
#include <optional>

#include "wmms/canonical.hpp"
#include "wmms/instance.hpp"
#include "wmms/reductions.hpp"

namespace wmms {

/// Two agents with weights (1-eps, eps) and two items costing 1/2 to both.
/// Requires 0 < eps < 1/3. WMMS values are 1 and eps/(1-eps); the only
/// optimal allocation hands both items to the heavy agent.
Instance example_table1(const Rational& eps);

struct RandomSpec {
    int weight_den = 8;    // weights drawn from {1/d, ..., (2d-1)/d}
    int cost_den = 8;      // cost denominators
    int cost_num_max = 8;  // costs drawn from {0, 1/d, ..., num_max}
    /// Re-point the last cost of an all-zero row at 1/d so every agent has
    /// positive total cost (the reduction pipeline needs it).
    bool ensure_positive_rows = true;
};

/// Deterministic given the seed; weights are used as drawn (no
/// normalization). Output always passes validate_instance.
Instance gen_random(std::uint64_t seed, int n, int m, const RandomSpec& spec = {});

enum class CanonicalMode {
    /// Random dyadic weight composition with identical valuations whose
    /// items exactly tile the weights; WMMS_i = w_i holds by construction.
    /// Works at any size (requires m >= n).
    DirectTiling,
    /// gen_random followed by the full reduction; heterogeneous valuations,
    /// certified by construction. Inherits the reduction's search budget.
    Pipeline,
};

struct GenCanonicalResult {
    CanonicalInstance canon;
    /// DirectTiling: slot -> item indices, tiling each weight exactly.
    std::optional<std::vector<std::vector<int>>> tiling_partition;
    /// Pipeline: the reduction trace and its source instance.
    std::optional<CanonicalTrace> trace;
};

GenCanonicalResult gen_canonical(std::uint64_t seed, int n, int m,
                                 CanonicalMode mode = CanonicalMode::DirectTiling);

/// One group of identically-valued agents in the compressed encoding.
struct AgentGroupSpec {
    std::string prefix;  // expanded agent ids are "<prefix>:<t>"
    long long count;
    Rational weight;
    std::vector<Rational> values;  // one row, shared by the whole group
};

struct GroupedInstance {
    std::vector<std::string> items;
    std::vector<AgentGroupSpec> groups;

    long long agent_count() const;
    Rational weight_sum() const;                 // over all agents
    Rational group_value(int group) const;       // v_g(M)
    /// Materializes the full instance; refuses above max_agents.
    Instance expand(long long max_agents = 200000) const;
};

/// A defining partition for one group's valuation, in grouped form:
/// bundles[g][t] holds the items of the t-th agent of group g.
struct LowerBoundCertificate {
    int group;
    std::vector<std::vector<std::vector<int>>> bundles;
};

/// The hardness family: k groups with n_i = Delta^(i-1) agents
/// (Delta = 2^k), m_i = (3/2) n_i items, weights w_1 = 1 and
/// w_i = 2^(i-2)/n_i, and the two-case cross-group valuations. Every
/// group's WMMS equals its weight, witnessed by the certificates.
struct LowerBoundFamily {
    int k = 0;
    long long delta = 0;
    GroupedInstance inst;
    std::vector<long long> group_sizes;   // n_i
    std::vector<long long> item_counts;   // m_i
    std::vector<Rational> weights;        // w_i
    std::vector<Rational> group_totals;   // W_i = n_i * w_i
    std::vector<LowerBoundCertificate> certificates;
    /// True from k >= 4 on, where earlier item counts are dominated
    /// (sum m_j < m_i / 9); below that the family is well formed but the
    /// asymptotic slack is absent.
    bool deep_regime = false;
};

/// Requires k >= 2 and a non-negative item surplus in every group
/// (checked). Throws BudgetExceeded when the item count is unreasonable to
/// materialize.
LowerBoundFamily gen_lower_bound(int k);

struct LowerBoundReport {
    struct Group {
        bool upper_ok = false;  // certificate bundles hit their weights exactly
        bool lower_ok = false;  // v_i(M) equals the total weight
        std::vector<std::string> violations;
    };
    std::vector<Group> groups;
    bool ok() const;
};

/// Confirms WMMS_i = w_i for every group without brute force: each
/// certificate bundle must cost exactly its agent's weight (upper bound),
/// and each group's total value must equal the weight sum, making the
/// proportional share w_i (lower bound). The sandwich closes exactly.
LowerBoundReport verify_lower_bound(const GroupedInstance& gi,
                                    const std::vector<LowerBoundCertificate>& certs);

}  // namespace wmms

#endif
