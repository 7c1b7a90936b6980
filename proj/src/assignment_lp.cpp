#include "wmms/assignment_lp.hpp"

#include <algorithm>

namespace wmms {

LpBuild build_lp(const Instance& inst, const std::vector<Rational>& estimates,
                 const Rational& alpha, const Rational& eps) {
    if (static_cast<int>(estimates.size()) != inst.n())
        throw std::invalid_argument("build_lp: estimate vector size mismatch");
    if (alpha < Rational(1)) throw std::invalid_argument("build_lp: alpha must be at least 1");
    if (eps.sign() <= 0) throw std::invalid_argument("build_lp: eps must be positive");

    LpBuild out;
    const Rational one_plus = Rational(1) + eps;
    out.lp.thresholds.reserve(inst.n());
    out.lp.capacities.reserve(inst.n());
    for (int i = 0; i < inst.n(); ++i) {
        out.lp.thresholds.push_back(one_plus * estimates[i]);
        out.lp.capacities.push_back(one_plus * alpha * estimates[i]);
    }
    out.lp.eligible_agents.assign(inst.m(), {});
    for (int j = 0; j < inst.m(); ++j) {
        for (int i = 0; i < inst.n(); ++i)
            if (inst.cost(i, j) <= out.lp.thresholds[i]) out.lp.eligible_agents[j].push_back(i);
        if (out.lp.eligible_agents[j].empty()) out.uncovered_items.push_back(inst.items[j]);
    }
    return out;
}

std::vector<Rational> FractionalAssignment::agent_costs(const Instance& inst) const {
    std::vector<Rational> costs(inst.n());
    for (const auto& [pair, value] : x) costs[pair.first] += inst.cost(pair.first, pair.second) * value;
    return costs;
}

std::vector<Rational> FractionalAssignment::column_sums(const Instance& inst) const {
    std::vector<Rational> sums(inst.m());
    for (const auto& [pair, value] : x) sums[pair.second] += value;
    return sums;
}

namespace {

// Dense exact-rational tableau for the phase-one simplex. Columns are the
// assignment variables, then agent slacks, then item artificials.
struct Tableau {
    int rows, cols;
    std::vector<std::vector<Rational>> a;  // rows x cols
    std::vector<Rational> b;
    std::vector<Rational> obj;  // reduced costs of the phase-one objective
    Rational obj_value;
    std::vector<int> basis;  // per row, basic column

    void pivot(int row, int col) {
        Rational inv = Rational(1) / a[row][col];
        for (auto& entry : a[row]) entry *= inv;
        b[row] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == row || a[r][col].is_zero()) continue;
            Rational factor = a[r][col];
            for (int c = 0; c < cols; ++c) a[r][c] -= factor * a[row][c];
            b[r] -= factor * b[row];
        }
        if (!obj[col].is_zero()) {
            Rational factor = obj[col];
            for (int c = 0; c < cols; ++c) obj[c] -= factor * a[row][c];
            obj_value -= factor * b[row];
        }
        basis[row] = col;
    }

    // Bland's rule: entering column is the lowest-index negative reduced
    // cost; leaving row has the minimum ratio, ties to the lowest basic
    // column index. Guarantees termination.
    void run() {
        for (;;) {
            int enter = -1;
            for (int c = 0; c < cols; ++c)
                if (obj[c].sign() < 0) { enter = c; break; }
            if (enter < 0) return;
            int leave = -1;
            Rational best;
            for (int r = 0; r < rows; ++r) {
                if (a[r][enter].sign() <= 0) continue;
                Rational ratio = b[r] / a[r][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[r] < basis[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave < 0) throw std::logic_error("simplex: unbounded phase-one objective");
            pivot(leave, enter);
        }
    }
};

}  // namespace

std::optional<FractionalAssignment> solve_basic_feasible(const Instance& inst,
                                                         const AssignmentLp& lp) {
    const int n = inst.n(), m = inst.m();
    // Variable layout: eligible pairs in (item, agent) order, then slacks,
    // then artificials.
    std::vector<std::pair<int, int>> pairs;  // (agent, item)
    for (int j = 0; j < m; ++j)
        for (int i : lp.eligible_agents[j]) pairs.emplace_back(i, j);
    const int e = static_cast<int>(pairs.size());
    const int cols = e + n + m;

    Tableau t;
    t.rows = n + m;
    t.cols = cols;
    t.a.assign(t.rows, std::vector<Rational>(cols));
    t.b.assign(t.rows, Rational(0));
    t.obj.assign(cols, Rational(0));
    t.basis.resize(t.rows);

    for (int v = 0; v < e; ++v) {
        auto [i, j] = pairs[v];
        t.a[i][v] = inst.cost(i, j);  // capacity row of agent i
        t.a[n + j][v] = Rational(1);  // item row of j
    }
    for (int i = 0; i < n; ++i) {
        t.a[i][e + i] = Rational(1);  // slack
        t.b[i] = lp.capacities[i];
        t.basis[i] = e + i;
    }
    for (int j = 0; j < m; ++j) {
        t.a[n + j][e + n + j] = Rational(1);  // artificial
        t.b[n + j] = Rational(1);
        t.basis[n + j] = e + n + j;
    }
    // Phase-one objective min sum(artificials), priced out of the basis.
    for (int c = 0; c < cols; ++c) {
        Rational sum;
        for (int j = 0; j < m; ++j) sum += t.a[n + j][c];
        t.obj[c] = (c >= e + n ? Rational(1) : Rational(0)) - sum;
    }
    for (int j = 0; j < m; ++j) t.obj_value -= t.b[n + j];

    t.run();
    if (!t.obj_value.is_zero()) return std::nullopt;  // certified infeasible

    // Drive lingering zero-value artificials out of the basis so the
    // solution is a genuine vertex of the original system.
    for (int r = 0; r < t.rows; ++r) {
        if (t.basis[r] < e + n) continue;
        int enter = -1;
        for (int c = 0; c < e + n; ++c)
            if (!t.a[r][c].is_zero()) { enter = c; break; }
        if (enter < 0)
            throw std::logic_error("simplex: dependent row; cannot remove artificial");
        t.pivot(r, enter);
    }

    FractionalAssignment frac;
    for (int r = 0; r < t.rows; ++r) {
        if (t.basis[r] >= e || t.b[r].is_zero()) continue;
        frac.x[pairs[t.basis[r]]] = t.b[r];
    }
    return frac;
}

namespace {

struct SupportGraph {
    // Node numbering: agents 0..n-1, item j is n + j.
    int n;
    std::vector<std::vector<int>> adj;

    void remove_edge(int u, int v) {
        std::erase(adj[u], v);
        std::erase(adj[v], u);
    }
};

// Finds the unique cycle in a component (if any) as a closed node walk.
// Components with two or more cycles raise SupportViolation.
std::optional<std::vector<int>> find_cycle(const SupportGraph& g, const std::vector<int>& comp) {
    int edges = 0;
    for (int u : comp) edges += static_cast<int>(g.adj[u].size());
    edges /= 2;
    if (edges < static_cast<int>(comp.size())) return std::nullopt;  // tree
    if (edges > static_cast<int>(comp.size()))
        throw SupportViolation("round_fractional: support component has multiple cycles");

    // Strip leaves until only the cycle remains.
    std::map<int, int> deg;
    for (int u : comp) deg[u] = static_cast<int>(g.adj[u].size());
    std::vector<int> queue;
    for (int u : comp)
        if (deg[u] <= 1) queue.push_back(u);
    while (!queue.empty()) {
        int u = queue.back();
        queue.pop_back();
        deg[u] = 0;
        for (int v : g.adj[u])
            if (deg[v] > 0 && --deg[v] == 1) queue.push_back(v);
    }
    std::vector<int> on_cycle;
    for (int u : comp)
        if (deg[u] >= 2) on_cycle.push_back(u);
    if (on_cycle.empty()) throw std::logic_error("round_fractional: cycle accounting mismatch");

    // Walk the cycle starting from its smallest node.
    std::vector<int> cycle;
    int start = on_cycle.front(), prev = -1, cur = start;
    do {
        cycle.push_back(cur);
        int next = -1;
        for (int v : g.adj[cur]) {
            if (v == prev || deg[v] < 2) continue;
            next = v;
            break;
        }
        if (next < 0) throw std::logic_error("round_fractional: broken cycle walk");
        prev = cur;
        cur = next;
    } while (cur != start);
    return cycle;
}

}  // namespace

RoundingReport round_fractional(const Instance& inst, const FractionalAssignment& frac) {
    const int n = inst.n(), m = inst.m();
    RoundingReport rep;
    rep.fractional_cost = frac.agent_costs(inst);
    rep.extra_item.assign(n, std::nullopt);
    rep.max_fractional_item.assign(n, Rational(0));

    std::vector<int> owner(m, -1);
    SupportGraph g;
    g.n = n;
    g.adj.assign(n + m, {});
    for (const auto& [pair, value] : frac.x) {
        auto [i, j] = pair;
        if (value == Rational(1)) {
            owner[j] = i;
        } else {
            g.adj[i].push_back(n + j);
            g.adj[n + j].push_back(i);
            if (inst.cost(i, j) > rep.max_fractional_item[i])
                rep.max_fractional_item[i] = inst.cost(i, j);
        }
    }
    for (auto& neighbours : g.adj) std::sort(neighbours.begin(), neighbours.end());

    // Components of the fractional support.
    std::vector<int> comp_id(n + m, -1);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < n + m; ++s) {
        if (comp_id[s] >= 0 || g.adj[s].empty()) continue;
        comps.emplace_back();
        std::vector<int> stack{s};
        comp_id[s] = static_cast<int>(comps.size()) - 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comps.back().push_back(u);
            for (int v : g.adj[u])
                if (comp_id[v] < 0) {
                    comp_id[v] = comp_id[u];
                    stack.push_back(v);
                }
        }
        std::sort(comps.back().begin(), comps.back().end());
    }

    std::vector<bool> agent_matched(n, false);
    auto match = [&](int item_node, int agent) {
        if (agent_matched[agent])
            throw SupportViolation("round_fractional: agent matched twice");
        agent_matched[agent] = true;
        owner[item_node - n] = agent;
        rep.extra_item[agent] = item_node - n;
    };

    for (const auto& comp : comps) {
        // Cycle first: orient from its smallest item node towards that
        // item's smaller cycle neighbour, then match each item to the agent
        // that follows it.
        if (auto cycle = find_cycle(g, comp)) {
            auto& cyc = *cycle;
            int best_pos = -1;
            for (size_t p = 0; p < cyc.size(); ++p)
                if (cyc[p] >= n && (best_pos < 0 || cyc[p] < cyc[best_pos]))
                    best_pos = static_cast<int>(p);
            std::rotate(cyc.begin(), cyc.begin() + best_pos, cyc.end());
            int prev = cyc[cyc.size() - 1], next = cyc[1];
            if (std::min(prev, next) == prev) std::reverse(cyc.begin() + 1, cyc.end());
            for (size_t p = 0; p < cyc.size(); p += 2) match(cyc[p], cyc[(p + 1) % cyc.size()]);
            // Matched items leave the graph entirely.
            for (size_t p = 0; p < cyc.size(); p += 2) {
                int item_node = cyc[p];
                std::vector<int> neighbours = g.adj[item_node];
                for (int u : neighbours) g.remove_edge(item_node, u);
            }
        }
    }

    // Remaining support is a forest. Root each tree at its matched agent if
    // it has one, else at its lowest-index agent node; every item then takes
    // its smallest child agent.
    std::vector<bool> visited(n + m, false);
    for (int s = 0; s < n + m; ++s) {
        if (visited[s] || g.adj[s].empty()) continue;
        // Collect the tree.
        std::vector<int> nodes;
        std::vector<int> stack{s};
        visited[s] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            nodes.push_back(u);
            for (int v : g.adj[u])
                if (!visited[v]) {
                    visited[v] = true;
                    stack.push_back(v);
                }
        }
        int root = -1;
        for (int u : nodes)
            if (u < n && agent_matched[u]) {
                if (root >= 0) throw SupportViolation("round_fractional: two matched agents in one tree");
                root = u;
            }
        if (root < 0)
            for (int u : nodes)
                if (u < n) { root = u; break; }
        if (root < 0) throw SupportViolation("round_fractional: tree without agent nodes");

        // BFS orientation away from the root; items match their first child.
        std::vector<int> parent(n + m, -2);
        std::vector<int> order{root};
        parent[root] = -1;
        for (size_t q = 0; q < order.size(); ++q) {
            int u = order[q];
            for (int v : g.adj[u]) {
                if (v == parent[u]) continue;
                parent[v] = u;
                order.push_back(v);
            }
        }
        for (int u : order) {
            if (u < n) continue;  // agent node
            int child = -1;
            for (int v : g.adj[u])
                if (v != parent[u] && (child < 0 || v < child)) child = v;
            if (child < 0)
                throw SupportViolation("round_fractional: fractional item with no child agent");
            match(u, child);
        }
    }

    for (int j = 0; j < m; ++j) {
        bool involved = false;
        for (const auto& [pair, value] : frac.x)
            if (pair.second == j) { involved = true; break; }
        if (involved && owner[j] < 0)
            throw SupportViolation("round_fractional: item left unassigned");
    }

    rep.alloc = Allocation::from_indices(inst, owner);
    rep.rounded_cost.assign(n, Rational(0));
    for (int j = 0; j < m; ++j)
        if (owner[j] >= 0) rep.rounded_cost[owner[j]] += inst.cost(owner[j], j);
    return rep;
}

PolytimeResult solve_polytime(const Instance& inst, const Rational& eps,
                              std::optional<Rational> alpha_max) {
    if (eps.sign() <= 0) throw std::invalid_argument("solve_polytime: eps must be positive");
    const Rational ceiling = alpha_max.value_or(Rational(12));
    if (ceiling < Rational(1)) throw std::invalid_argument("solve_polytime: alpha ceiling below 1");

    PolytimeResult res;
    res.eps = eps;
    res.estimates.reserve(inst.n());
    std::vector<Rational> est_values;
    for (int i = 0; i < inst.n(); ++i) {
        res.estimates.push_back(estimate_wmms(inst, i, eps));
        est_values.push_back(res.estimates.back().value);
    }

    // Multiplicative grid 1, (1+eps), ... capped at the first point >= ceiling.
    const Rational step = Rational(1) + eps;
    std::vector<Rational> grid{Rational(1)};
    while (grid.back() < ceiling) grid.push_back(grid.back() * step);

    auto feasible = [&](const Rational& alpha) -> std::optional<FractionalAssignment> {
        LpBuild build = build_lp(inst, est_values, alpha, eps);
        if (!build.well_formed()) return std::nullopt;
        return solve_basic_feasible(inst, build.lp);
    };

    auto top = feasible(grid.back());
    if (!top)
        throw NoFeasibleAlpha("solve_polytime: no feasible alpha up to " + ceiling.str());

    size_t lo = 0, hi = grid.size() - 1;
    FractionalAssignment frac = *top;
    while (lo < hi) {
        size_t mid = lo + (hi - lo) / 2;
        if (auto f = feasible(grid[mid])) {
            frac = *f;
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    res.alpha = grid[lo];
    res.fractional = frac;
    res.rounding = round_fractional(inst, frac);
    res.alloc = res.rounding.alloc;
    return res;
}

}  // namespace wmms
