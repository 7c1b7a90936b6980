#ifndef WMMS_SOLVER_HPP
#define WMMS_SOLVER_HPP

#include "wmms/canonical.hpp"
#include "wmms/reductions.hpp"

namespace wmms {

/// Raised when no agent can take the current item. Unreachable on genuinely
/// canonical inputs; surfacing it turns a violated invariant into a test
/// failure instead of a silent skip.
struct NoActiveAgent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CanonicalSolveResult {
    Allocation alloc;
    std::vector<Rational> costs;  // per agent, v_i(A_i)
    std::vector<bool> exited;     // true iff the agent hit the 3*w_i cap
};

/// Greedy sweep over items in instance order: each item goes to the active
/// agent (not exited, item value at most her weight) with the smallest value
/// for it, ties to the smallest weight, then the smallest agent index. An
/// agent exits the moment her bundle reaches 3*w_i, which on canonical
/// instances is always hit exactly. Every agent ends with cost <= 3*w_i.
CanonicalSolveResult solve_canonical(const CanonicalInstance& canon);

struct AgentRatioReport {
    Rational cost;
    Rational wmms;
    bool unbounded = false;  // positive cost against a zero share
    Rational ratio;          // cost / wmms (0 when both are zero)
};

struct TwelveWmmsReport {
    Allocation alloc;
    std::vector<AgentRatioReport> agents;
    Rational max_ratio;
    CanonicalResult reduction;  // the canonical instance and its trace
    CanonicalSolveResult canonical_solution;
};

/// End-to-end solver: reduce to a canonical instance, run the greedy
/// allocator, lift the result back. Each agent's cost is at most 12 times
/// her WMMS. Ratios are reported against exact WMMS values, so the
/// reduction's search budget applies.
TwelveWmmsReport solve_12wmms(const Instance& inst);

}  // namespace wmms

#endif
