#ifndef WMMS_ASSIGNMENT_LP_HPP
#define WMMS_ASSIGNMENT_LP_HPP

#include <map>
#include <optional>

#include "wmms/engine.hpp"
#include "wmms/instance.hpp"

namespace wmms {

/// Generalized-assignment feasibility program built from per-agent WMMS
/// estimates: a variable x_ij exists only for eligible pairs
/// (v_i(e_j) <= (1+eps) * estimate_i), each agent row is capped by
/// (1+eps) * alpha * estimate_i, and each item row sums to one.
struct AssignmentLp {
    std::vector<std::vector<int>> eligible_agents;  // per item, ascending
    std::vector<Rational> thresholds;               // per agent: (1+eps)*estimate
    std::vector<Rational> capacities;               // per agent row cap
};

struct LpBuild {
    AssignmentLp lp;
    std::vector<std::string> uncovered_items;  // items with no eligible agent
    bool well_formed() const { return uncovered_items.empty(); }
};

LpBuild build_lp(const Instance& inst, const std::vector<Rational>& estimates,
                 const Rational& alpha, const Rational& eps);

/// Fractional allocation: column sums are exactly one, support is at most
/// n + m (basic feasible solution).
struct FractionalAssignment {
    std::map<std::pair<int, int>, Rational> x;  // (agent, item) -> value > 0

    int support_size() const { return static_cast<int>(x.size()); }
    std::vector<Rational> agent_costs(const Instance& inst) const;
    std::vector<Rational> column_sums(const Instance& inst) const;
};

/// Exact-rational primal simplex (phase one with Bland's rule) over the
/// explicit (n+m)-row system. Returns a vertex solution or nullopt when the
/// program is infeasible — a certified verdict, not a tolerance call.
std::optional<FractionalAssignment> solve_basic_feasible(const Instance& inst,
                                                         const AssignmentLp& lp);

/// Raised when the fractional input lacks the basic-solution structure the
/// rounding relies on (more than one cycle in a support component).
struct SupportViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RoundingReport {
    Allocation alloc;
    std::vector<Rational> fractional_cost;  // per agent, before rounding
    std::vector<Rational> rounded_cost;     // per agent, after
    /// Item index the agent gained beyond her fully-assigned ones, if any.
    std::vector<std::optional<int>> extra_item;
    /// Largest single item value fractionally assigned to the agent; the
    /// rounded cost never exceeds fractional_cost + this bound.
    std::vector<Rational> max_fractional_item;
};

/// Shmoys-Tardos style rounding of a basic feasible solution: fully assigned
/// items stay put; on the fractional support (a forest plus at most one
/// cycle per component) items are matched around each cycle and then to a
/// child agent in each rooted tree, so every agent gains at most one item
/// beyond her fractional load.
RoundingReport round_fractional(const Instance& inst, const FractionalAssignment& frac);

/// Raised when no alpha up to the ceiling yields a feasible program.
struct NoFeasibleAlpha : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PolytimeResult {
    Allocation alloc;
    Rational alpha;  // smallest feasible grid point
    Rational eps;
    std::vector<WmmsEstimate> estimates;
    FractionalAssignment fractional;  // the rounded vertex, for audits
    RoundingReport rounding;
};

/// Polynomial-time solver: estimates each WMMS within (1+eps), binary
/// searches the smallest feasible alpha on a (1+eps)-resolution grid up to
/// alpha_max (default 12), and rounds the basic feasible solution. When an
/// integral alpha*-WMMS allocation exists the result costs every agent at
/// most (2*alpha* + C*eps) times her WMMS, with C bounded by the audit data
/// in the rounding report.
PolytimeResult solve_polytime(const Instance& inst, const Rational& eps,
                              std::optional<Rational> alpha_max = std::nullopt);

}  // namespace wmms

#endif
