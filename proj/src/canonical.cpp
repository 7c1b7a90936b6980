#include "wmms/canonical.hpp"

#include <algorithm>
#include <map>

#include "wmms/engine.hpp"

namespace wmms {

std::vector<CanonicalGroup> weight_groups(const Instance& inst) {
    for (int i = 0; i < inst.n(); ++i)
        if (inst.weights[i].sign() <= 0)
            throw std::invalid_argument("weight_groups: nonpositive weight");
    std::map<Rational, std::vector<int>, std::greater<Rational>> by_weight;
    for (int i = 0; i < inst.n(); ++i) by_weight[inst.weights[i]].push_back(i);
    std::vector<CanonicalGroup> groups;
    groups.reserve(by_weight.size());
    for (auto& [w, members] : by_weight) groups.push_back({w, members});
    return groups;
}

std::vector<Rational> group_thresholds(const std::vector<CanonicalGroup>& groups) {
    std::vector<Rational> thresholds;
    thresholds.reserve(groups.size());
    Rational before;  // sum of W_j over earlier groups
    for (const auto& g : groups) {
        thresholds.push_back(before / g.weight);
        before += g.total();
    }
    return thresholds;
}

CanonicalCheck check_canonical(const Instance& inst) {
    CanonicalCheck out;
    ValidationReport base = validate_instance(inst);
    if (!base.ok()) {
        out.violations = base.errors;
        return out;
    }
    if (inst.n() == 0) {
        out.violations.push_back("no agents");
        return out;
    }

    if (inst.weight_sum() != Rational(1))
        out.violations.push_back("weights do not sum to 1");
    Rational w1 = *std::max_element(inst.weights.begin(), inst.weights.end());
    for (int i = 0; i < inst.n(); ++i)
        if (!is_dyadic_of(inst.weights[i], w1))
            out.violations.push_back("weight of agent '" + inst.agents[i] +
                                     "' is not a power-of-half multiple of the largest weight");

    for (int i = 0; i < inst.n(); ++i) {
        if (inst.total_cost(i) != Rational(1))
            out.violations.push_back("total value of agent '" + inst.agents[i] + "' is not 1");
        for (int j = 0; j < inst.m(); ++j) {
            const Rational& v = inst.cost(i, j);
            if (!v.is_zero() && !is_dyadic_of(v, w1))
                out.violations.push_back("value of agent '" + inst.agents[i] + "' for item '" +
                                         inst.items[j] +
                                         "' is not a power-of-half multiple of the largest weight");
        }
    }

    if (!is_ido(inst)) out.violations.push_back("items are not identically ordered");

    if (!out.violations.empty()) return out;  // packing needs the dyadic structure

    for (int i = 0; i < inst.n(); ++i) {
        if (!dyadic_first_fit(inst.costs[i], inst.weights))
            out.violations.push_back("agent '" + inst.agents[i] +
                                     "' has no weight-exact defining partition (WMMS != weight)");
    }
    return out;
}

CanonicalInstance analyze_canonical(const Instance& inst) {
    CanonicalCheck check = check_canonical(inst);
    if (!check.ok()) {
        std::string msg = "instance is not canonical:";
        for (const auto& v : check.violations) msg += "\n  - " + v;
        throw std::invalid_argument(msg);
    }
    CanonicalInstance canon;
    canon.inst = inst;
    canon.groups = weight_groups(inst);
    canon.thresholds = group_thresholds(canon.groups);
    canon.group_of.assign(inst.n(), -1);
    for (size_t r = 0; r < canon.groups.size(); ++r)
        for (int agent : canon.groups[r].agents) canon.group_of[agent] = static_cast<int>(r);
    return canon;
}

namespace {

ThresholdReport threshold_violations(const Instance& inst,
                                     const std::vector<CanonicalGroup>& groups,
                                     const std::vector<Rational>& thresholds) {
    ThresholdReport rep;
    for (size_t r = 0; r < groups.size(); ++r) {
        for (int j = 0; j < inst.m(); ++j) {
            if (Rational(j + 1) <= thresholds[r]) continue;  // 1-based item index
            for (int i = 0; i < inst.n(); ++i)
                if (inst.cost(i, j) > groups[r].weight)
                    rep.violations.push_back({static_cast<int>(r), j, i});
        }
    }
    return rep;
}

}  // namespace

ThresholdReport check_threshold_claim(const Instance& inst) {
    auto groups = weight_groups(inst);
    return threshold_violations(inst, groups, group_thresholds(groups));
}

ThresholdReport check_threshold_claim(const CanonicalInstance& canon) {
    return threshold_violations(canon.inst, canon.groups, canon.thresholds);
}

}  // namespace wmms
