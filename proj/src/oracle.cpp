#include "wmms/oracle.hpp"

#include <omp.h>

namespace wmms {

namespace {

unsigned long long checked_total(const Instance& inst) {
    unsigned long long total = 0;
    if (!within_enumeration_budget(inst.n(), inst.m(), &total))
        throw BudgetExceeded("enumeration budget exceeded: n=" + std::to_string(inst.n()) +
                             " m=" + std::to_string(inst.m()));
    return total;
}

std::vector<int> decode_counter(unsigned long long t, int n, int m) {
    std::vector<int> digits(m, 0);
    for (int j = 0; j < m; ++j) {
        digits[j] = static_cast<int>(t % n);
        t /= n;
    }
    return digits;
}

// Tracks, for one valuation row, the per-slot bundle sums of the current
// counter state and updates them as the counter increments.
struct SlotSums {
    const std::vector<Rational>* row;
    std::vector<Rational> sums;

    SlotSums(const std::vector<Rational>& r, int slots, const std::vector<int>& digits)
        : row(&r), sums(slots) {
        for (size_t j = 0; j < digits.size(); ++j) sums[digits[j]] += (*row)[j];
    }
    void move_item(int item, int from, int to) {
        sums[from] -= (*row)[item];
        sums[to] += (*row)[item];
    }
};

// Advances the mixed-radix counter by one, reporting item moves.
template <typename MoveFn>
void advance(std::vector<int>& digits, int n, MoveFn&& move) {
    for (size_t h = 0;; ++h) {
        int old = digits[h];
        if (old == n - 1) {
            digits[h] = 0;
            move(static_cast<int>(h), old, 0);
        } else {
            digits[h] = old + 1;
            move(static_cast<int>(h), old, old + 1);
            return;
        }
    }
}

struct BruteBest {
    bool found = false;
    Rational makespan;  // min over allocations of max_j sums[j]/w_j
};

// Sweeps counter values [lo, hi) for one agent's valuation row.
BruteBest brute_sweep(const Instance& inst, int agent, unsigned long long lo,
                      unsigned long long hi) {
    BruteBest best;
    if (lo >= hi) return best;
    const int n = inst.n();
    std::vector<int> digits = decode_counter(lo, n, inst.m());
    SlotSums sums(inst.costs[agent], n, digits);
    std::vector<Rational> tau(n);  // tau[j] = best.makespan * w_j

    for (unsigned long long t = lo;; ++t) {
        bool better = true;
        if (best.found) {
            for (int j = 0; j < n; ++j)
                if (sums.sums[j] >= tau[j]) { better = false; break; }
        }
        if (better) {
            Rational score = sums.sums[0] / inst.weights[0];
            for (int j = 1; j < n; ++j) {
                Rational r = sums.sums[j] / inst.weights[j];
                if (r > score) score = r;
            }
            if (!best.found || score < best.makespan) {
                best.found = true;
                best.makespan = score;
                for (int j = 0; j < n; ++j) tau[j] = score * inst.weights[j];
            }
        }
        if (t + 1 >= hi) break;
        advance(digits, n, [&](int item, int from, int to) { sums.move_item(item, from, to); });
    }
    return best;
}

struct RatioBest {
    bool found = false;
    Rational alpha;
    unsigned long long at = 0;
};

// Sweeps [lo, hi) scoring each allocation by max_i v_i(A_i)/wmms_i.
// Agents with zero WMMS admit only zero-cost bundles; allocations violating
// that have an unbounded score and are never selected.
RatioBest ratio_sweep(const Instance& inst, const std::vector<Rational>& wmms,
                      unsigned long long lo, unsigned long long hi) {
    RatioBest best;
    if (lo >= hi) return best;
    const int n = inst.n();
    std::vector<int> digits = decode_counter(lo, n, inst.m());
    // cost[i] tracks v_i of the bundle currently assigned to agent i.
    std::vector<Rational> cost(n);
    for (int j = 0; j < inst.m(); ++j) cost[digits[j]] += inst.cost(digits[j], j);

    std::vector<Rational> tau(n);
    for (unsigned long long t = lo;; ++t) {
        bool admissible = true;
        for (int i = 0; i < n && admissible; ++i)
            if (wmms[i].is_zero() && cost[i].sign() > 0) admissible = false;
        if (admissible) {
            bool better = true;
            if (best.found) {
                for (int i = 0; i < n; ++i) {
                    if (wmms[i].is_zero()) continue;  // cost is zero here
                    if (cost[i] >= tau[i]) { better = false; break; }
                }
            }
            if (better) {
                Rational score;
                for (int i = 0; i < n; ++i) {
                    if (wmms[i].is_zero()) continue;
                    Rational r = cost[i] / wmms[i];
                    if (r > score) score = r;
                }
                if (!best.found || score < best.alpha) {
                    best.found = true;
                    best.alpha = score;
                    best.at = t;
                    for (int i = 0; i < n; ++i) tau[i] = score * wmms[i];
                }
            }
        }
        if (t + 1 >= hi) break;
        advance(digits, inst.n(), [&](int item, int from, int to) {
            cost[from] -= inst.cost(from, item);
            cost[to] += inst.cost(to, item);
        });
    }
    return best;
}

std::vector<std::pair<unsigned long long, unsigned long long>> split_range(
    unsigned long long total, int parts) {
    std::vector<std::pair<unsigned long long, unsigned long long>> out;
    unsigned long long chunk = total / parts, rest = total % parts, lo = 0;
    for (int p = 0; p < parts; ++p) {
        unsigned long long len = chunk + (static_cast<unsigned long long>(p) < rest ? 1 : 0);
        out.emplace_back(lo, lo + len);
        lo += len;
    }
    return out;
}

}  // namespace

void enumerate_allocations(const Instance& inst,
                           const std::function<bool(const std::vector<int>&)>& visit) {
    unsigned long long total = checked_total(inst);
    std::vector<int> digits(inst.m(), 0);
    for (unsigned long long t = 0;; ++t) {
        if (!visit(digits)) return;
        if (t + 1 >= total) return;
        advance(digits, inst.n(), [](int, int, int) {});
    }
}

Rational brute_wmms_serial(const Instance& inst, int agent) {
    unsigned long long total = checked_total(inst);
    const int n = inst.n();
    Rational best;
    bool found = false;
    std::vector<int> digits(inst.m(), 0);
    for (unsigned long long t = 0;; ++t) {
        std::vector<Rational> sums(n);
        for (int j = 0; j < inst.m(); ++j) sums[digits[j]] += inst.cost(agent, j);
        Rational score = sums[0] / inst.weights[0];
        for (int j = 1; j < n; ++j) {
            Rational r = sums[j] / inst.weights[j];
            if (r > score) score = r;
        }
        if (!found || score < best) { best = score; found = true; }
        if (t + 1 >= total) break;
        advance(digits, n, [](int, int, int) {});
    }
    return inst.weights[agent] * best;
}

Rational brute_wmms(const Instance& inst, int agent) {
    unsigned long long total = checked_total(inst);
    int threads = omp_get_max_threads();
    auto ranges = split_range(total, threads);
    std::vector<BruteBest> results(ranges.size());
#pragma omp parallel for schedule(static, 1)
    for (size_t p = 0; p < ranges.size(); ++p)
        results[p] = brute_sweep(inst, agent, ranges[p].first, ranges[p].second);
    BruteBest best;
    for (const auto& r : results) {
        if (!r.found) continue;
        if (!best.found || r.makespan < best.makespan) best = r;
    }
    return inst.weights[agent] * best.makespan;
}

namespace {

OptimalRatioResult optimal_ratio_impl(const Instance& inst, bool parallel) {
    unsigned long long total = checked_total(inst);
    OptimalRatioResult res;
    res.wmms.reserve(inst.n());
    for (int i = 0; i < inst.n(); ++i)
        res.wmms.push_back(parallel ? brute_wmms(inst, i) : brute_wmms_serial(inst, i));

    RatioBest best;
    if (parallel) {
        int threads = omp_get_max_threads();
        auto ranges = split_range(total, threads);
        std::vector<RatioBest> results(ranges.size());
#pragma omp parallel for schedule(static, 1)
        for (size_t p = 0; p < ranges.size(); ++p)
            results[p] = ratio_sweep(inst, res.wmms, ranges[p].first, ranges[p].second);
        for (const auto& r : results) {
            if (!r.found) continue;
            if (!best.found || r.alpha < best.alpha ||
                (r.alpha == best.alpha && r.at < best.at))
                best = r;
        }
    } else {
        best = ratio_sweep(inst, res.wmms, 0, total);
    }

    if (!best.found) {
        res.degenerate = true;
        return res;
    }
    res.alpha = best.alpha;
    std::vector<int> digits = decode_counter(best.at, inst.n(), inst.m());
    res.alloc = Allocation::from_indices(inst, digits);
    return res;
}

}  // namespace

OptimalRatioResult optimal_ratio_serial(const Instance& inst) {
    return optimal_ratio_impl(inst, false);
}

OptimalRatioResult optimal_ratio(const Instance& inst) {
    return optimal_ratio_impl(inst, true);
}

AlphaCheck verify_alpha(const Instance& inst, const Allocation& alloc,
                        const std::vector<Rational>& wmms, const Rational& alpha) {
    if (!alloc.complete(inst)) throw std::invalid_argument("verify_alpha: incomplete allocation");
    if (static_cast<int>(wmms.size()) != inst.n())
        throw std::invalid_argument("verify_alpha: wmms vector size mismatch");
    auto bundles = alloc.bundles(inst);
    AlphaCheck out;
    out.pass.resize(inst.n());
    out.ratios.resize(inst.n());
    for (int i = 0; i < inst.n(); ++i) {
        Rational c = bundle_cost(inst, i, bundles[i]);
        bool ok = c <= alpha * wmms[i];
        if (wmms[i].is_zero()) {
            if (c.sign() > 0) {
                out.ratios[i].unbounded = true;
                ok = false;
            } else {
                out.ratios[i].value = Rational(0);
            }
        } else {
            out.ratios[i].value = c / wmms[i];
        }
        out.pass[i] = ok;
        if (!ok) out.all_pass = false;
    }
    return out;
}

}  // namespace wmms
