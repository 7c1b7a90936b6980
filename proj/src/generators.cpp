#include "wmms/generators.hpp"

#include <algorithm>

namespace wmms {

namespace {

// SplitMix64: tiny, stable across platforms, good enough for test families.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

}  // namespace

Instance example_table1(const Rational& eps) {
    if (eps.sign() <= 0 || eps >= Rational(1, 3))
        throw std::invalid_argument("example_table1: eps must lie strictly between 0 and 1/3");
    Instance inst;
    inst.agents = {"a1", "a2"};
    inst.weights = {Rational(1) - eps, eps};
    inst.items = {"e1", "e2"};
    inst.costs = {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}};
    return inst;
}

Instance gen_random(std::uint64_t seed, int n, int m, const RandomSpec& spec) {
    if (n < 1 || m < 1) throw std::invalid_argument("gen_random: need n, m >= 1");
    SplitMix64 rng(seed);
    Instance inst;
    for (int i = 0; i < n; ++i) {
        inst.agents.push_back("a" + std::to_string(i + 1));
        inst.weights.push_back(Rational(
            1 + static_cast<long>(rng.below(2 * spec.weight_den - 1)), spec.weight_den));
    }
    for (int j = 0; j < m; ++j) inst.items.push_back("e" + std::to_string(j + 1));
    inst.costs.assign(n, {});
    for (int i = 0; i < n; ++i) {
        bool positive = false;
        for (int j = 0; j < m; ++j) {
            long num = static_cast<long>(rng.below(spec.cost_num_max * spec.cost_den + 1));
            if (num > 0) positive = true;
            inst.costs[i].emplace_back(num, spec.cost_den);
        }
        if (spec.ensure_positive_rows && !positive)
            inst.costs[i][m - 1] = Rational(1, spec.cost_den);
    }
    return inst;
}

namespace {

GenCanonicalResult gen_tiling(std::uint64_t seed, int n, int m) {
    if (n < 1 || m < n)
        throw std::invalid_argument("gen_canonical: tiling mode needs 1 <= n <= m");
    SplitMix64 rng(seed);

    // Random dyadic composition of 1 into n weights.
    std::vector<Rational> weights{Rational(1)};
    while (static_cast<int>(weights.size()) < n) {
        size_t idx = rng.below(weights.size());
        Rational half = weights[idx] / Rational(2);
        weights[idx] = half;
        weights.push_back(half);
    }
    std::sort(weights.begin(), weights.end(), std::greater<Rational>());

    // Refine each weight into items; the slot tag remembers the tiling.
    std::vector<std::pair<Rational, int>> tiles;
    for (int j = 0; j < n; ++j) tiles.emplace_back(weights[j], j);
    while (static_cast<int>(tiles.size()) < m) {
        size_t idx = rng.below(tiles.size());
        Rational half = tiles[idx].first / Rational(2);
        int slot = tiles[idx].second;
        tiles[idx].first = half;
        tiles.emplace_back(half, slot);
    }
    std::stable_sort(tiles.begin(), tiles.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });

    Instance inst;
    for (int i = 0; i < n; ++i) inst.agents.push_back("a" + std::to_string(i + 1));
    inst.weights = weights;
    std::vector<Rational> row;
    for (int j = 0; j < m; ++j) {
        inst.items.push_back("e" + std::to_string(j + 1));
        row.push_back(tiles[j].first);
    }
    inst.costs.assign(n, row);

    GenCanonicalResult res;
    res.tiling_partition = std::vector<std::vector<int>>(n);
    for (int j = 0; j < m; ++j) (*res.tiling_partition)[tiles[j].second].push_back(j);
    res.canon = analyze_canonical(inst);
    return res;
}

}  // namespace

GenCanonicalResult gen_canonical(std::uint64_t seed, int n, int m, CanonicalMode mode) {
    if (mode == CanonicalMode::DirectTiling) return gen_tiling(seed, n, m);
    GenCanonicalResult res;
    CanonicalResult reduced = to_canonical(gen_random(seed, n, m));
    res.canon = std::move(reduced.canon);
    res.trace = std::move(reduced.trace);
    return res;
}

long long GroupedInstance::agent_count() const {
    long long total = 0;
    for (const auto& g : groups) total += g.count;
    return total;
}

Rational GroupedInstance::weight_sum() const {
    Rational total;
    for (const auto& g : groups) total += g.weight * Rational(static_cast<long>(g.count));
    return total;
}

Rational GroupedInstance::group_value(int group) const {
    Rational total;
    for (const auto& v : groups[group].values) total += v;
    return total;
}

Instance GroupedInstance::expand(long long max_agents) const {
    if (agent_count() > max_agents)
        throw BudgetExceeded("GroupedInstance::expand: " + std::to_string(agent_count()) +
                             " agents exceed the expansion cap");
    Instance inst;
    inst.items = items;
    for (const auto& g : groups)
        for (long long t = 1; t <= g.count; ++t) {
            inst.agents.push_back(g.prefix + ":" + std::to_string(t));
            inst.weights.push_back(g.weight);
            inst.costs.push_back(g.values);
        }
    return inst;
}

LowerBoundFamily gen_lower_bound(int k) {
    if (k < 2) throw std::invalid_argument("gen_lower_bound: k must be at least 2");

    LowerBoundFamily fam;
    fam.k = k;
    fam.delta = 1LL << k;
    fam.deep_regime = k >= 4;

    long long total_items = 1;
    fam.group_sizes = {1};
    fam.item_counts = {1};
    fam.weights = {Rational(1)};
    fam.group_totals = {Rational(1)};
    for (int i = 2; i <= k; ++i) {
        long long n_i = 1;
        for (int t = 0; t < i - 1; ++t) n_i *= fam.delta;
        long long m_i = 3 * n_i / 2;
        fam.group_sizes.push_back(n_i);
        fam.item_counts.push_back(m_i);
        fam.weights.push_back(pow2(i - 2) / Rational(static_cast<long>(n_i)));
        fam.group_totals.push_back(pow2(i - 2));
        total_items += m_i;
    }
    if (total_items > 100000)
        throw BudgetExceeded("gen_lower_bound: k=" + std::to_string(k) + " needs " +
                             std::to_string(total_items) + " items; too large to materialize");

    // Item layout: M_1, then per group M_i^1 followed by M_i^2. T_i is the
    // lexicographically first slice of M_i^1.
    GroupedInstance& gi = fam.inst;
    std::vector<long long> class1_start(k + 1, 0), class2_start(k + 1, 0), t_size(k + 1, 0);
    gi.items.push_back("m1:1");
    for (int i = 2; i <= k; ++i) {
        long long half = fam.group_sizes[i - 1] / 2;
        long long earlier = 0;
        for (int j = 1; j < i; ++j) earlier += fam.item_counts[j - 1];
        t_size[i] = half - earlier;
        if (t_size[i] < 0)
            throw std::invalid_argument("gen_lower_bound: group " + std::to_string(i) +
                                        " has negative surplus; construction ill-formed");
        class1_start[i] = static_cast<long long>(gi.items.size());
        for (long long t = 1; t <= half; ++t)
            gi.items.push_back("m" + std::to_string(i) + "a:" + std::to_string(t));
        class2_start[i] = static_cast<long long>(gi.items.size());
        for (long long t = 1; t <= fam.group_sizes[i - 1]; ++t)
            gi.items.push_back("m" + std::to_string(i) + "b:" + std::to_string(t));
    }

    // Valuations, one row per group.
    for (int g = 1; g <= k; ++g) {
        AgentGroupSpec spec;
        spec.prefix = "g" + std::to_string(g);
        spec.count = fam.group_sizes[g - 1];
        spec.weight = fam.weights[g - 1];
        spec.values.assign(gi.items.size(), Rational(0));
        const Rational& w_g = spec.weight;

        spec.values[0] = g == 1 ? Rational(1) : Rational(2) * w_g;  // M_1
        for (int i = 2; i <= k; ++i) {
            const Rational& w_i = fam.weights[i - 1];
            long long half = fam.group_sizes[i - 1] / 2;
            for (long long t = 0; t < half; ++t) {
                Rational v;
                if (g < i)
                    v = w_i;
                else if (g == i)
                    v = t < t_size[i] ? Rational(2) * w_i : Rational(0);
                else
                    v = Rational(2) * w_g;
                spec.values[class1_start[i] + t] = v;
            }
            for (long long t = 0; t < fam.group_sizes[i - 1]; ++t) {
                Rational v;
                if (g < i)
                    v = w_i / Rational(2);
                else if (g == i)
                    v = w_i;
                else
                    v = Rational(2) * w_g;
                spec.values[class2_start[i] + t] = v;
            }
        }
        gi.groups.push_back(std::move(spec));
    }

    // Certificates: one defining partition per group's valuation.
    for (int i = 1; i <= k; ++i) {
        LowerBoundCertificate cert;
        cert.group = i - 1;
        cert.bundles.resize(k);
        for (int g = 1; g <= k; ++g)
            cert.bundles[g - 1].resize(fam.group_sizes[g - 1]);

        // Groups after (or all groups, for i = 1): one class-1 item or two
        // class-2 items per agent.
        for (int g = std::max(2, i + 1); g <= k; ++g) {
            long long half = fam.group_sizes[g - 1] / 2;
            for (long long t = 0; t < half; ++t)
                cert.bundles[g - 1][t].push_back(static_cast<int>(class1_start[g] + t));
            for (long long t = half; t < fam.group_sizes[g - 1]; ++t) {
                long long off = 2 * (t - half);
                cert.bundles[g - 1][t].push_back(static_cast<int>(class2_start[g] + off));
                cert.bundles[g - 1][t].push_back(static_cast<int>(class2_start[g] + off + 1));
            }
        }
        if (i == 1) {
            cert.bundles[0][0].push_back(0);  // the sole M_1 item
        } else {
            // B_i (everything before this group plus T_i) fills the earlier
            // agents to exactly their weights, 2 w_i at a time.
            std::vector<int> pool;
            for (long long j = 0; j < class1_start[2]; ++j) pool.push_back(static_cast<int>(j));
            for (int p = 2; p < i; ++p) {
                for (long long t = 0; t < fam.group_sizes[p - 1] / 2; ++t)
                    pool.push_back(static_cast<int>(class1_start[p] + t));
                for (long long t = 0; t < fam.group_sizes[p - 1]; ++t)
                    pool.push_back(static_cast<int>(class2_start[p] + t));
            }
            for (long long t = 0; t < t_size[i]; ++t)
                pool.push_back(static_cast<int>(class1_start[i] + t));

            const Rational two_wi = Rational(2) * fam.weights[i - 1];
            size_t cursor = 0;
            for (int g = 1; g < i; ++g) {
                Rational per_agent = fam.weights[g - 1] / two_wi;
                if (per_agent.den() != 1)
                    throw std::logic_error("gen_lower_bound: non-integral fill count");
                long long fill = per_agent.num().get_si();
                for (long long t = 0; t < fam.group_sizes[g - 1]; ++t)
                    for (long long c = 0; c < fill; ++c)
                        cert.bundles[g - 1][t].push_back(pool.at(cursor++));
            }
            if (cursor != pool.size())
                throw std::logic_error("gen_lower_bound: B_i does not tile the earlier groups");

            // Own group: one class-2 item each; the worthless remainder of
            // class 1 goes to the first agent.
            for (long long t = 0; t < fam.group_sizes[i - 1]; ++t)
                cert.bundles[i - 1][t].push_back(static_cast<int>(class2_start[i] + t));
            for (long long t = t_size[i]; t < fam.group_sizes[i - 1] / 2; ++t)
                cert.bundles[i - 1][0].push_back(static_cast<int>(class1_start[i] + t));
        }
        fam.certificates.push_back(std::move(cert));
    }
    return fam;
}

LowerBoundReport verify_lower_bound(const GroupedInstance& gi,
                                    const std::vector<LowerBoundCertificate>& certs) {
    LowerBoundReport rep;
    Rational total_weight = gi.weight_sum();
    const int m = static_cast<int>(gi.items.size());

    for (const auto& cert : certs) {
        LowerBoundReport::Group g;
        const auto& values = gi.groups[cert.group].values;

        std::vector<int> seen(m, 0);
        bool coverage = true;
        bool bundles_exact = true;
        if (cert.bundles.size() != gi.groups.size()) {
            g.violations.push_back("certificate shape does not match the groups");
            coverage = false;
        } else {
            for (size_t og = 0; og < cert.bundles.size(); ++og) {
                if (static_cast<long long>(cert.bundles[og].size()) != gi.groups[og].count) {
                    g.violations.push_back("bundle count mismatch in group " + std::to_string(og + 1));
                    coverage = false;
                    continue;
                }
                const Rational& cap = gi.groups[og].weight;
                for (const auto& bundle : cert.bundles[og]) {
                    Rational v;
                    for (int e : bundle) {
                        if (e < 0 || e >= m) {
                            g.violations.push_back("item index out of range");
                            coverage = false;
                            continue;
                        }
                        ++seen[e];
                        v += values[e];
                    }
                    if (v != cap) {
                        bundles_exact = false;
                        if (v > cap)
                            g.violations.push_back("a bundle of group " + std::to_string(og + 1) +
                                                   " exceeds its weight");
                        else
                            g.violations.push_back("a bundle of group " + std::to_string(og + 1) +
                                                   " falls short of its weight");
                    }
                }
            }
            for (int e = 0; e < m && coverage; ++e)
                if (seen[e] != 1) {
                    g.violations.push_back("certificate does not cover item '" + gi.items[e] +
                                           "' exactly once");
                    coverage = false;
                }
        }
        g.upper_ok = coverage && bundles_exact;

        if (gi.group_value(cert.group) == total_weight) {
            g.lower_ok = true;
        } else {
            g.violations.push_back("group total value differs from the weight sum");
        }
        rep.groups.push_back(std::move(g));
    }
    return rep;
}

bool LowerBoundReport::ok() const {
    if (groups.empty()) return false;
    for (const auto& g : groups)
        if (!g.upper_ok || !g.lower_ok) return false;
    return true;
}

}  // namespace wmms
