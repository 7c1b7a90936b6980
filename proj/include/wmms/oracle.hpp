#ifndef WMMS_ORACLE_HPP
#define WMMS_ORACLE_HPP

#include <functional>
#include <optional>

#include "wmms/instance.hpp"

namespace wmms {

/// Brute-force ground truth. Enumeration walks all n^m complete allocations
/// in mixed-radix counter order (item j is digit j, base n, least significant
/// first). Deliberately shares no search logic with the engine module, so
/// agreement between the two is evidence rather than tautology.
///
/// Each exhaustive operation ships in two variants: a plain serial reference
/// and an OpenMP kernel that partitions the counter range across threads and
/// reduces with an order-independent min, so results never depend on the
/// schedule. The serial form is the reference the parallel one is tested
/// against; wmms_bench compares their throughput.

/// Visits every complete allocation (item index -> agent index) in counter
/// order. The callback may return false to stop early.
/// Throws BudgetExceeded when n^m exceeds the enumeration budget.
void enumerate_allocations(const Instance& inst,
                           const std::function<bool(const std::vector<int>&)>& visit);

Rational brute_wmms_serial(const Instance& inst, int agent);
Rational brute_wmms(const Instance& inst, int agent);

/// A cost/WMMS ratio; unbounded marks positive cost against a zero share.
struct RatioReport {
    bool unbounded = false;
    Rational value;
};

struct OptimalRatioResult {
    /// True when every allocation forces positive cost on some zero-WMMS
    /// agent, i.e. no finite approximation ratio exists.
    bool degenerate = false;
    Rational alpha;     // min over allocations of the max cost/WMMS ratio
    Allocation alloc;   // first allocation (counter order) achieving alpha
    std::vector<Rational> wmms;  // per-agent brute-force WMMS values
};

OptimalRatioResult optimal_ratio_serial(const Instance& inst);
OptimalRatioResult optimal_ratio(const Instance& inst);

struct AlphaCheck {
    std::vector<bool> pass;
    std::vector<RatioReport> ratios;
    bool all_pass = true;
};

/// Per-agent check of v_i(A_i) <= alpha * wmms_i, with exact ratios.
/// Throws std::invalid_argument if the allocation is incomplete.
AlphaCheck verify_alpha(const Instance& inst, const Allocation& alloc,
                        const std::vector<Rational>& wmms, const Rational& alpha);

}  // namespace wmms

#endif
