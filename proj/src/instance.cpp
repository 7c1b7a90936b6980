#include "wmms/instance.hpp"

#include <cstdlib>
#include <set>

namespace wmms {

Rational Instance::total_cost(int agent) const {
    Rational sum;
    for (const Rational& c : costs[agent]) sum += c;
    return sum;
}

Rational Instance::weight_sum() const {
    Rational sum;
    for (const Rational& w : weights) sum += w;
    return sum;
}

int Instance::agent_index(std::string_view id) const {
    for (int i = 0; i < n(); ++i)
        if (agents[i] == id) return i;
    return -1;
}

int Instance::item_index(std::string_view id) const {
    for (int j = 0; j < m(); ++j)
        if (items[j] == id) return j;
    return -1;
}

bool Allocation::complete(const Instance& inst) const {
    for (const auto& item : inst.items)
        if (!assignment.count(item)) return false;
    return true;
}

std::vector<int> Allocation::to_indices(const Instance& inst) const {
    std::vector<int> out(inst.m(), -1);
    for (const auto& [item, agent] : assignment) {
        int j = inst.item_index(item);
        if (j < 0) throw std::invalid_argument("Allocation: unknown item id '" + item + "'");
        int i = inst.agent_index(agent);
        if (i < 0) throw std::invalid_argument("Allocation: unknown agent id '" + agent + "'");
        out[j] = i;
    }
    return out;
}

std::vector<std::vector<int>> Allocation::bundles(const Instance& inst) const {
    std::vector<std::vector<int>> out(inst.n());
    std::vector<int> idx = to_indices(inst);
    for (int j = 0; j < inst.m(); ++j)
        if (idx[j] >= 0) out[idx[j]].push_back(j);
    return out;
}

Allocation Allocation::from_indices(const Instance& inst, std::span<const int> item_to_agent) {
    Allocation a;
    for (int j = 0; j < inst.m(); ++j) {
        int i = item_to_agent[j];
        if (i < 0) continue;
        a.assignment[inst.items[j]] = inst.agents[i];
    }
    return a;
}

ValidationReport validate_instance(const Instance& inst) {
    ValidationReport rep;
    if (inst.weights.size() != inst.agents.size())
        rep.errors.push_back("weight list does not match agent list");
    if (inst.costs.size() != inst.agents.size())
        rep.errors.push_back("cost matrix row count does not match agent count");

    std::set<std::string> seen;
    for (const auto& a : inst.agents)
        if (!seen.insert(a).second) rep.errors.push_back("duplicate agent id '" + a + "'");
    seen.clear();
    for (const auto& e : inst.items)
        if (!seen.insert(e).second) rep.errors.push_back("duplicate item id '" + e + "'");

    for (size_t i = 0; i < inst.weights.size() && i < inst.agents.size(); ++i) {
        if (inst.weights[i].sign() <= 0)
            rep.errors.push_back("nonpositive weight for agent '" + inst.agents[i] + "'");
        else if (inst.weights[i] >= Rational(1))
            rep.warnings.push_back("weight of agent '" + inst.agents[i] + "' is outside (0,1)");
    }
    for (size_t i = 0; i < inst.costs.size(); ++i) {
        if (inst.costs[i].size() != inst.items.size()) {
            rep.errors.push_back("cost row of agent '" + inst.agents[i] + "' does not match item count");
            continue;
        }
        for (size_t j = 0; j < inst.costs[i].size(); ++j)
            if (inst.costs[i][j].sign() < 0)
                rep.errors.push_back("negative cost for agent '" + inst.agents[i] + "', item '" +
                                     inst.items[j] + "'");
    }
    return rep;
}

Rational bundle_cost(const Instance& inst, int agent, std::span<const int> bundle) {
    Rational sum;
    for (int j : bundle) {
        if (j < 0 || j >= inst.m()) throw std::invalid_argument("bundle_cost: item index out of range");
        sum += inst.cost(agent, j);
    }
    return sum;
}

Rational bundle_cost(const Instance& inst, std::string_view agent_id,
                     const std::vector<std::string>& bundle) {
    int i = inst.agent_index(agent_id);
    if (i < 0) throw std::invalid_argument("bundle_cost: unknown agent id");
    std::vector<int> idx;
    idx.reserve(bundle.size());
    for (const auto& id : bundle) {
        int j = inst.item_index(id);
        if (j < 0) throw std::invalid_argument("bundle_cost: unknown item id '" + id + "'");
        idx.push_back(j);
    }
    return bundle_cost(inst, i, idx);
}

bool is_ido(const Instance& inst) {
    for (int i = 0; i < inst.n(); ++i)
        for (int j = 0; j + 1 < inst.m(); ++j)
            if (inst.cost(i, j) < inst.cost(i, j + 1)) return false;
    return true;
}

Rational proportional_share(const Instance& inst, int agent) {
    return inst.weights[agent] * inst.total_cost(agent) / inst.weight_sum();
}

unsigned long long enumeration_budget() {
    static const unsigned long long budget = [] {
        if (const char* env = std::getenv("WMMS_ENUM_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return v;
        }
        return 10'000'000ULL;
    }();
    return budget;
}

bool within_enumeration_budget(int n, int m, unsigned long long* count) {
    const unsigned long long budget = enumeration_budget();
    unsigned long long total = 1;
    for (int j = 0; j < m; ++j) {
        if (n > 0 && total > budget / static_cast<unsigned long long>(n)) return false;
        total *= static_cast<unsigned long long>(n);
    }
    if (total > budget) return false;
    if (count) *count = total;
    return true;
}

}  // namespace wmms
