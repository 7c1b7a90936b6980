#ifndef WMMS_CANONICAL_HPP
#define WMMS_CANONICAL_HPP

#include "wmms/instance.hpp"

namespace wmms {

/// Agents sharing one weight, in instance order.
struct CanonicalGroup {
    Rational weight;
    std::vector<int> agents;

    Rational total() const { return weight * Rational(static_cast<long>(agents.size())); }
};

/// An instance with verified canonical structure: weights summing to one and
/// each equal to w1/2^p, every value zero or w1/2^p, total value one per
/// agent, identical item ordering, and WMMS_i = w_i for every agent.
struct CanonicalInstance {
    Instance inst;
    std::vector<CanonicalGroup> groups;  // weights strictly decreasing
    std::vector<Rational> thresholds;    // L_r = sum_{j<r} W_j / w_r, L_1 = 0
    std::vector<int> group_of;           // agent index -> group index
};

struct CanonicalCheck {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Groups agents by weight, descending. Requires positive weights.
std::vector<CanonicalGroup> weight_groups(const Instance& inst);

std::vector<Rational> group_thresholds(const std::vector<CanonicalGroup>& groups);

/// Checks every canonical property. Proportionality (WMMS_i = w_i) is
/// decided exactly: the proportional share already forces WMMS_i >= w_i, and
/// for dyadic values first-fit-decreasing packing into the weight capacities
/// is a complete feasibility test for WMMS_i <= w_i.
CanonicalCheck check_canonical(const Instance& inst);

/// check_canonical + group decomposition; throws std::invalid_argument with
/// the violation list if the instance is not canonical.
CanonicalInstance analyze_canonical(const Instance& inst);

/// Threshold property: for every group r, items with index beyond L_r have
/// value at most w_r for every agent. Holds on genuinely canonical inputs;
/// the report lists each violating (group, item, agent) triple.
struct ThresholdReport {
    struct Violation {
        int group;
        int item;
        int agent;
    };
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

ThresholdReport check_threshold_claim(const Instance& inst);
ThresholdReport check_threshold_claim(const CanonicalInstance& canon);

}  // namespace wmms

#endif
