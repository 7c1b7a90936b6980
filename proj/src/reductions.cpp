#include "wmms/reductions.hpp"

#include <algorithm>

#include "wmms/engine.hpp"

namespace wmms {

IdoTrace to_ido(const Instance& inst) {
    IdoTrace trace;
    trace.original = inst;
    Instance& ido = trace.ido;
    ido.agents = inst.agents;
    ido.weights = inst.weights;
    ido.items.reserve(inst.m());
    for (int h = 0; h < inst.m(); ++h) ido.items.push_back("p" + std::to_string(h + 1));
    ido.costs.reserve(inst.n());
    for (int i = 0; i < inst.n(); ++i) {
        std::vector<Rational> row = inst.costs[i];
        std::sort(row.begin(), row.end(), std::greater<Rational>());
        ido.costs.push_back(std::move(row));
    }
    return trace;
}

Allocation lift_ido_allocation(const IdoTrace& trace, const Allocation& ido_alloc) {
    const Instance& orig = trace.original;
    const Instance& ido = trace.ido;
    if (!ido_alloc.complete(ido))
        throw std::invalid_argument("lift_ido_allocation: allocation of the IDO instance is incomplete");

    std::vector<int> owner(ido.m());
    for (int h = 0; h < ido.m(); ++h) {
        const std::string& agent = ido_alloc.assignment.at(ido.items[h]);
        int i = ido.agent_index(agent);
        if (i < 0) throw std::invalid_argument("lift_ido_allocation: unknown agent '" + agent + "'");
        owner[h] = i;
    }

    std::vector<bool> taken(orig.m(), false);
    Allocation out;
    // Cheapest position first: when position h is processed, h items remain,
    // so the picker always finds one costing at most her h-th largest cost.
    for (int h = ido.m() - 1; h >= 0; --h) {
        int agent = owner[h];
        int pick = -1;
        for (int j = 0; j < orig.m(); ++j) {
            if (taken[j]) continue;
            if (pick < 0 || orig.cost(agent, j) < orig.cost(agent, pick)) pick = j;
        }
        taken[pick] = true;
        out.assignment[orig.items[pick]] = orig.agents[agent];
    }
    return out;
}

RoundWeightsResult round_weights(const Instance& inst) {
    if (inst.n() == 0) throw std::invalid_argument("round_weights: no agents");
    RoundWeightsResult res;
    res.inst = inst;
    res.trace.original = inst.weights;
    Rational w1 = *std::max_element(inst.weights.begin(), inst.weights.end());
    for (int i = 0; i < inst.n(); ++i) res.inst.weights[i] = round_up_pow_half(inst.weights[i], w1);
    res.trace.rounded = res.inst.weights;
    return res;
}

PadResult pad_to_proportional(const Instance& inst) {
    PadResult res;
    res.inst = inst;
    res.trace.profiles.reserve(inst.n());
    for (int i = 0; i < inst.n(); ++i) res.trace.profiles.push_back(exact_wmms(inst, i));

    res.trace.aux_ids.assign(inst.n(), {});
    for (int i = 0; i < inst.n(); ++i) {
        const AgentWmms& prof = res.trace.profiles[i];
        for (int j = 0; j < inst.n(); ++j) {
            std::string id = "aux2:" + inst.agents[i] + ":" + std::to_string(j + 1);
            res.trace.aux_ids[i].push_back(id);
            res.inst.items.push_back(id);
            Rational pad = prof.value / inst.weights[i] * inst.weights[j] -
                           bundle_cost(inst, i, prof.partition[j]);
            if (pad.sign() < 0)
                throw std::logic_error("pad_to_proportional: defining partition violates its bound");
            for (int owner = 0; owner < inst.n(); ++owner)
                res.inst.costs[owner].push_back(owner == i ? pad : Rational(0));
        }
    }
    return res;
}

NormalizeResult normalize_instance(const Instance& inst) {
    NormalizeResult res;
    res.inst = inst;
    res.trace.weight_divisor = inst.weight_sum();
    if (res.trace.weight_divisor.sign() <= 0)
        throw std::invalid_argument("normalize_instance: nonpositive weight sum");
    for (auto& w : res.inst.weights) w /= res.trace.weight_divisor;
    res.trace.value_divisors.reserve(inst.n());
    for (int i = 0; i < inst.n(); ++i) {
        Rational total = inst.total_cost(i);
        if (total.is_zero())
            throw std::invalid_argument("normalize_instance: agent '" + inst.agents[i] +
                                        "' has zero total cost (degenerate)");
        res.trace.value_divisors.push_back(total);
        for (auto& v : res.inst.costs[i]) v /= total;
    }
    return res;
}

namespace {

// Weight-exact defining partitions for a proportional normalized instance,
// recomputed from scratch.
std::vector<std::vector<std::vector<int>>> recompute_partitions(const Instance& inst) {
    std::vector<std::vector<std::vector<int>>> parts(inst.n());
    for (int i = 0; i < inst.n(); ++i) {
        AgentWmms prof = exact_wmms(inst, i);
        if (prof.value != inst.weights[i])
            throw std::invalid_argument(
                "dyadicize_values: input is not proportional (WMMS of agent '" + inst.agents[i] +
                "' differs from her weight)");
        parts[i] = std::move(prof.partition);
    }
    return parts;
}

}  // namespace

DyadicizeResult dyadicize_values(const Instance& inst,
                                 const std::vector<std::vector<std::vector<int>>>* partitions) {
    std::vector<std::vector<std::vector<int>>> own;
    if (!partitions) {
        own = recompute_partitions(inst);
        partitions = &own;
    }
    const Rational w1 = *std::max_element(inst.weights.begin(), inst.weights.end());

    DyadicizeResult res;
    res.inst = inst;
    // Round every positive value down to the dyadic grid.
    for (int i = 0; i < inst.n(); ++i)
        for (int j = 0; j < inst.m(); ++j) {
            const Rational& v = inst.cost(i, j);
            if (v.is_zero()) continue;
            if (v > w1)
                throw std::invalid_argument(
                    "dyadicize_values: value above the largest weight; input is not proportional");
            res.inst.costs[i][j] = round_down_pow_half(v, w1);
        }

    res.trace.aux_ids.assign(inst.n(), std::vector<std::vector<std::string>>(inst.n()));
    res.trace.partitions.assign(
        inst.n(), std::vector<std::vector<int>>(inst.n()));

    // Per bundle, emit auxiliary items refilling the rounding loss.
    for (int i = 0; i < inst.n(); ++i) {
        const auto& bundles = (*partitions)[i];
        if (static_cast<int>(bundles.size()) != inst.n())
            throw std::invalid_argument("dyadicize_values: partition shape mismatch");
        std::vector<int> seen(inst.m(), 0);
        for (const auto& bundle : bundles)
            for (int e : bundle) {
                if (e < 0 || e >= inst.m())
                    throw std::invalid_argument("dyadicize_values: partition item out of range");
                ++seen[e];
            }
        for (int e = 0; e < inst.m(); ++e)
            if (seen[e] != 1)
                throw std::invalid_argument("dyadicize_values: partition does not cover item '" +
                                            inst.items[e] + "' exactly once");
        for (int j = 0; j < inst.n(); ++j) {
            Rational original = bundle_cost(inst, i, bundles[j]);
            if (original != inst.weights[j])
                throw std::invalid_argument(
                    "dyadicize_values: bundle cost differs from its slot weight");
            Rational rounded = bundle_cost(res.inst, i, bundles[j]);
            Rational residual = original - rounded;
            std::vector<Rational> terms = dyadic_expansion(residual, w1);
            res.trace.partitions[i][j] = bundles[j];
            for (size_t t = 0; t < terms.size(); ++t) {
                std::string id = "aux4:" + inst.agents[i] + ":" + std::to_string(j + 1) + ":" +
                                 std::to_string(t + 1);
                res.trace.aux_ids[i][j].push_back(id);
                res.trace.partitions[i][j].push_back(static_cast<int>(res.inst.items.size()));
                res.inst.items.push_back(id);
                for (int owner = 0; owner < inst.n(); ++owner)
                    res.inst.costs[owner].push_back(owner == i ? terms[t] : Rational(0));
            }
        }
    }

    // Other agents' auxiliary items are worthless to agent i; park them in
    // her first bundle so the partitions cover the new instance exactly.
    for (int i = 0; i < inst.n(); ++i)
        for (int other = 0; other < inst.n(); ++other) {
            if (other == i) continue;
            for (int j = 0; j < inst.n(); ++j)
                for (const auto& id : res.trace.aux_ids[other][j])
                    res.trace.partitions[i][0].push_back(res.inst.item_index(id));
        }
    return res;
}

CanonicalResult to_canonical(const Instance& inst) {
    ValidationReport valid = validate_instance(inst);
    if (!valid.ok()) {
        std::string msg = "to_canonical: invalid instance:";
        for (const auto& e : valid.errors) msg += "\n  - " + e;
        throw std::invalid_argument(msg);
    }
    for (const auto& id : inst.items)
        if (id.rfind("aux2:", 0) == 0 || id.rfind("aux4:", 0) == 0)
            throw std::invalid_argument("to_canonical: item id '" + id +
                                        "' collides with the auxiliary namespace");

    CanonicalResult res;
    res.trace.original = inst;

    RoundWeightsResult r1 = round_weights(inst);
    res.trace.weights = r1.trace;

    PadResult r2 = pad_to_proportional(r1.inst);
    res.trace.pad = r2.trace;
    const int m_orig = inst.m();
    const int n = inst.n();

    NormalizeResult r3 = normalize_instance(r2.inst);
    res.trace.scale = r3.trace;

    // Defining partitions on the normalized instance: each padded bundle
    // B^i_j + aux2(i,j) costs exactly w_j; foreign aux items go to bundle 1.
    std::vector<std::vector<std::vector<int>>> partitions(
        n, std::vector<std::vector<int>>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            partitions[i][j] = res.trace.pad.profiles[i].partition[j];
            partitions[i][j].push_back(m_orig + i * n + j);
        }
        for (int other = 0; other < n; ++other) {
            if (other == i) continue;
            for (int j = 0; j < n; ++j) partitions[i][0].push_back(m_orig + other * n + j);
        }
    }

    DyadicizeResult r4 = dyadicize_values(r3.inst, &partitions);
    res.trace.dyadic = r4.trace;

    res.trace.ido = to_ido(r4.inst);
    res.canon = analyze_canonical(res.trace.ido.ido);

    for (const auto& per_agent : res.trace.pad.aux_ids)
        res.trace.aux_ids.insert(per_agent.begin(), per_agent.end());
    for (const auto& per_agent : res.trace.dyadic.aux_ids)
        for (const auto& per_slot : per_agent)
            res.trace.aux_ids.insert(per_slot.begin(), per_slot.end());
    return res;
}

Allocation lift_canonical_allocation(const CanonicalTrace& trace, const Allocation& alloc5) {
    Allocation alloc4 = lift_ido_allocation(trace.ido, alloc5);
    Allocation out;
    for (const auto& [item, agent] : alloc4.assignment)
        if (!trace.aux_ids.count(item)) out.assignment[item] = agent;
    return out;
}

}  // namespace wmms
