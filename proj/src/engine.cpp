#include "wmms/engine.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace wmms {

namespace {

// Indices of positive-cost entries, sorted by cost descending (stable).
std::vector<int> descending_positive(const std::vector<Rational>& row) {
    std::vector<int> idx;
    for (size_t j = 0; j < row.size(); ++j)
        if (row[j].sign() > 0) idx.push_back(static_cast<int>(j));
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return row[a] > row[b]; });
    return idx;
}

struct ExactSearch {
    const Instance& inst;
    int agent;
    std::vector<int> order;        // positions -> item index, costs descending
    std::vector<int> weight_group;  // slot -> group id among equal weights
    std::vector<Rational> loads;
    std::vector<int> cur, best_assign;
    Rational best;  // best max load/weight ratio so far
    bool found = false;
    std::unordered_set<std::string> memo;
    static constexpr size_t kMemoCap = 1u << 21;

    explicit ExactSearch(const Instance& in, int ag) : inst(in), agent(ag) {
        order = descending_positive(inst.costs[agent]);
        loads.assign(inst.n(), Rational(0));
        cur.assign(order.size(), -1);
        weight_group.assign(inst.n(), 0);
        for (int j = 1; j < inst.n(); ++j)
            weight_group[j] =
                inst.weights[j] == inst.weights[j - 1] ? weight_group[j - 1] : weight_group[j - 1] + 1;
    }

    Rational ratio(int slot) const { return loads[slot] / inst.weights[slot]; }

    Rational max_ratio() const {
        Rational r = ratio(0);
        for (int j = 1; j < inst.n(); ++j) {
            Rational s = ratio(j);
            if (s > r) r = s;
        }
        return r;
    }

    // Greedy seed: each item to the slot minimizing the resulting max ratio.
    void seed() {
        for (size_t pos = 0; pos < order.size(); ++pos) {
            int pick = 0;
            Rational pick_ratio;
            for (int j = 0; j < inst.n(); ++j) {
                Rational r = (loads[j] + inst.cost(agent, order[pos])) / inst.weights[j];
                if (j == 0 || r < pick_ratio) {
                    pick = j;
                    pick_ratio = r;
                }
            }
            loads[pick] += inst.cost(agent, order[pos]);
            cur[pos] = pick;
        }
        best = max_ratio();
        best_assign = cur;
        found = true;
        loads.assign(inst.n(), Rational(0));
    }

    std::string state_key(size_t pos) const {
        // Loads of equal-weight slots are interchangeable; canonicalize by
        // sorting within each weight group.
        std::vector<std::string> parts(inst.n());
        for (int j = 0; j < inst.n(); ++j) parts[j] = loads[j].str();
        int j = 0;
        while (j < inst.n()) {
            int k = j;
            while (k < inst.n() && weight_group[k] == weight_group[j]) ++k;
            std::sort(parts.begin() + j, parts.begin() + k);
            j = k;
        }
        std::string key = std::to_string(pos);
        for (const auto& p : parts) {
            key += '|';
            key += p;
        }
        return key;
    }

    void dfs(size_t pos) {
        if (pos == order.size()) {
            Rational score = max_ratio();
            if (score < best) {
                best = score;
                best_assign = cur;
            }
            return;
        }
        if (memo.size() < kMemoCap && !memo.insert(state_key(pos)).second) return;
        const Rational& c = inst.cost(agent, order[pos]);
        for (int j = 0; j < inst.n(); ++j) {
            // Symmetry: among equal-weight slots with equal loads, use the first.
            bool duplicate = false;
            for (int k = 0; k < j; ++k)
                if (weight_group[k] == weight_group[j] && loads[k] == loads[j]) {
                    duplicate = true;
                    break;
                }
            if (duplicate) continue;
            loads[j] += c;
            if (ratio(j) < best) {
                cur[pos] = j;
                dfs(pos + 1);
            }
            loads[j] -= c;
        }
    }
};

}  // namespace

AgentWmms exact_wmms(const Instance& inst, int agent) {
    ExactSearch search(inst, agent);
    if (!within_enumeration_budget(inst.n(), static_cast<int>(search.order.size())))
        throw BudgetExceeded("exact_wmms: search budget exceeded for agent '" +
                             inst.agents[agent] + "'");
    AgentWmms out;
    out.partition.assign(inst.n(), {});
    if (!search.order.empty()) {
        search.seed();
        search.dfs(0);
        for (size_t pos = 0; pos < search.order.size(); ++pos)
            out.partition[search.best_assign[pos]].push_back(search.order[pos]);
        for (auto& bundle : out.partition) std::sort(bundle.begin(), bundle.end());
        out.value = inst.weights[agent] * search.best;
    } else {
        out.value = Rational(0);
    }
    // Zero-cost items never affect the optimum; append them to bundle 1.
    for (int j = 0; j < inst.m(); ++j)
        if (inst.cost(agent, j).is_zero()) out.partition[0].push_back(j);
    std::sort(out.partition[0].begin(), out.partition[0].end());
    return out;
}

WmmsProfile exact_wmms_profile(const Instance& inst) {
    WmmsProfile p;
    p.per_agent.reserve(inst.n());
    for (int i = 0; i < inst.n(); ++i) p.per_agent.push_back(exact_wmms(inst, i));
    return p;
}

bool verify_partition(const Instance& inst, int agent,
                      const std::vector<std::vector<int>>& partition, const Rational& claimed) {
    if (static_cast<int>(partition.size()) != inst.n())
        throw std::invalid_argument("verify_partition: expected one bundle per agent slot");
    std::vector<int> seen(inst.m(), 0);
    for (const auto& bundle : partition)
        for (int j : bundle) {
            if (j < 0 || j >= inst.m())
                throw std::invalid_argument("verify_partition: item index out of range");
            ++seen[j];
        }
    for (int j = 0; j < inst.m(); ++j)
        if (seen[j] != 1)
            throw std::invalid_argument("verify_partition: partition does not cover item '" +
                                        inst.items[j] + "' exactly once");
    for (int j = 0; j < inst.n(); ++j) {
        Rational v = bundle_cost(inst, agent, partition[j]);
        // v/w_j <= claimed/w_i, cross-multiplied (weights are positive).
        if (v * inst.weights[agent] > claimed * inst.weights[j]) return false;
    }
    return true;
}

namespace {

struct FeasibleSearch {
    const MakespanProblem& p;
    std::vector<int> order;  // positive loads, descending
    std::vector<Rational> caps, used;
    std::vector<int> assign;  // per order position
    bool done = false;

    FeasibleSearch(const MakespanProblem& prob, const Rational& T) : p(prob) {
        for (size_t j = 0; j < p.loads.size(); ++j)
            if (p.loads[j].sign() > 0) order.push_back(static_cast<int>(j));
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return p.loads[a] > p.loads[b]; });
        caps.reserve(p.speeds.size());
        for (const Rational& s : p.speeds) caps.push_back(T * s);
        used.assign(p.speeds.size(), Rational(0));
        assign.assign(order.size(), -1);
    }

    bool dfs(size_t pos) {
        if (pos == order.size()) return true;
        const Rational& load = p.loads[order[pos]];
        for (size_t mach = 0; mach < caps.size(); ++mach) {
            bool duplicate = false;
            for (size_t k = 0; k < mach; ++k)
                if (p.speeds[k] == p.speeds[mach] && used[k] == used[mach]) {
                    duplicate = true;
                    break;
                }
            if (duplicate) continue;
            if (used[mach] + load > caps[mach]) continue;
            used[mach] += load;
            assign[pos] = static_cast<int>(mach);
            if (dfs(pos + 1)) return true;
            used[mach] -= load;
        }
        return false;
    }
};

}  // namespace

FeasibilityResult feasible_makespan(const MakespanProblem& p, const Rational& T) {
    if (T.sign() < 0) throw std::invalid_argument("feasible_makespan: negative makespan");
    const int machines = static_cast<int>(p.speeds.size());
    int positive = 0;
    for (const Rational& load : p.loads)
        if (load.sign() > 0) ++positive;

    FeasibilityResult res;
    if (within_enumeration_budget(machines, positive)) {
        res.exact = true;
        FeasibleSearch search(p, T);
        if (search.dfs(0)) {
            std::vector<int> full(p.loads.size(), 0);
            for (size_t pos = 0; pos < search.order.size(); ++pos)
                full[search.order[pos]] = search.assign[pos];
            res.assignment = std::move(full);
        }
        return res;
    }

    // First-fit decreasing over machines in speed-descending order. A success
    // is a witness; a failure is not a proof of infeasibility.
    res.exact = false;
    std::vector<int> mach_order(machines);
    std::iota(mach_order.begin(), mach_order.end(), 0);
    std::stable_sort(mach_order.begin(), mach_order.end(),
                     [&](int a, int b) { return p.speeds[a] > p.speeds[b]; });
    std::vector<int> job_order;
    for (size_t j = 0; j < p.loads.size(); ++j)
        if (p.loads[j].sign() > 0) job_order.push_back(static_cast<int>(j));
    std::stable_sort(job_order.begin(), job_order.end(),
                     [&](int a, int b) { return p.loads[a] > p.loads[b]; });

    std::vector<Rational> used(machines);
    std::vector<int> full(p.loads.size(), machines > 0 ? mach_order[0] : 0);
    for (int j : job_order) {
        bool placed = false;
        for (int mach : mach_order) {
            if (used[mach] + p.loads[j] <= T * p.speeds[mach]) {
                used[mach] += p.loads[j];
                full[j] = mach;
                placed = true;
                break;
            }
        }
        if (!placed) return res;
    }
    res.assignment = std::move(full);
    return res;
}

WmmsEstimate estimate_wmms(const Instance& inst, int agent, const Rational& eps) {
    if (eps.sign() <= 0) throw std::invalid_argument("estimate_wmms: eps must be positive");
    MakespanProblem p{inst.costs[agent], inst.weights};

    Rational total = inst.total_cost(agent);
    if (total.is_zero()) return {Rational(0), true};

    Rational wmax = *std::max_element(inst.weights.begin(), inst.weights.end());
    Rational biggest;
    for (const Rational& c : p.loads)
        if (c > biggest) biggest = c;
    Rational t_lo = total / inst.weight_sum();
    if (biggest / wmax > t_lo) t_lo = biggest / wmax;
    Rational t_hi = total / wmax;

    const Rational step = Rational(1) + eps;
    std::vector<Rational> grid{t_lo};
    while (grid.back() < t_hi) grid.push_back(grid.back() * step);

    int positive = 0;
    for (const Rational& c : p.loads)
        if (c.sign() > 0) ++positive;
    bool exact = within_enumeration_budget(inst.n(), positive);

    // grid.back() is always feasible (everything on the fastest machine).
    size_t lo = 0, hi = grid.size() - 1;
    while (lo < hi) {
        size_t mid = lo + (hi - lo) / 2;
        if (feasible_makespan(p, grid[mid]).assignment)
            hi = mid;
        else
            lo = mid + 1;
    }
    return {inst.weights[agent] * grid[lo], exact};
}

std::optional<std::vector<int>> dyadic_first_fit(const std::vector<Rational>& values,
                                                 const std::vector<Rational>& capacities) {
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return values[a] > values[b]; });
    std::vector<Rational> remaining = capacities;
    std::vector<int> assign(values.size(), 0);
    for (int v : order) {
        if (values[v].is_zero()) continue;  // zero values fit anywhere
        bool placed = false;
        for (size_t b = 0; b < remaining.size(); ++b) {
            if (values[v] <= remaining[b]) {
                remaining[b] -= values[v];
                assign[v] = static_cast<int>(b);
                placed = true;
                break;
            }
        }
        if (!placed) return std::nullopt;
    }
    return assign;
}

}  // namespace wmms
