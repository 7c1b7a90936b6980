#include "wmms/solver.hpp"

#include "wmms/engine.hpp"

namespace wmms {

CanonicalSolveResult solve_canonical(const CanonicalInstance& canon) {
    const Instance& inst = canon.inst;
    CanonicalSolveResult res;
    res.costs.assign(inst.n(), Rational(0));
    res.exited.assign(inst.n(), false);
    std::vector<int> owner(inst.m(), -1);

    for (int h = 0; h < inst.m(); ++h) {
        int pick = -1;
        for (int i = 0; i < inst.n(); ++i) {
            if (res.exited[i]) continue;
            if (inst.cost(i, h) > inst.weights[i]) continue;  // not active for e_h
            if (pick < 0) {
                pick = i;
                continue;
            }
            // Smallest value, then smallest weight, then smallest index.
            if (inst.cost(i, h) < inst.cost(pick, h) ||
                (inst.cost(i, h) == inst.cost(pick, h) && inst.weights[i] < inst.weights[pick]))
                pick = i;
        }
        if (pick < 0)
            throw NoActiveAgent("solve_canonical: no active agent for item '" + inst.items[h] +
                                "' (input violates a canonical invariant)");
        owner[h] = pick;
        res.costs[pick] += inst.cost(pick, h);
        if (res.costs[pick] >= Rational(3) * inst.weights[pick]) res.exited[pick] = true;
    }
    res.alloc = Allocation::from_indices(inst, owner);
    return res;
}

TwelveWmmsReport solve_12wmms(const Instance& inst) {
    TwelveWmmsReport rep;
    rep.reduction = to_canonical(inst);
    rep.canonical_solution = solve_canonical(rep.reduction.canon);
    rep.alloc = lift_canonical_allocation(rep.reduction.trace, rep.canonical_solution.alloc);

    auto bundles = rep.alloc.bundles(inst);
    rep.agents.resize(inst.n());
    for (int i = 0; i < inst.n(); ++i) {
        AgentRatioReport& a = rep.agents[i];
        a.cost = bundle_cost(inst, i, bundles[i]);
        a.wmms = exact_wmms(inst, i).value;
        if (a.wmms.is_zero()) {
            a.unbounded = a.cost.sign() > 0;
        } else {
            a.ratio = a.cost / a.wmms;
        }
        if (!a.unbounded && a.ratio > rep.max_ratio) rep.max_ratio = a.ratio;
    }
    return rep;
}

}  // namespace wmms
