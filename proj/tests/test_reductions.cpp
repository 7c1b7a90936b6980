#include <doctest.h>

#include <algorithm>
#include <map>

#include "helpers.hpp"
#include "wmms/engine.hpp"
#include "wmms/generators.hpp"
#include "wmms/oracle.hpp"
#include "wmms/reductions.hpp"
#include "wmms/solver.hpp"

using namespace wmms;
using wmms::test::R;
using wmms::test::make_instance;
using wmms::test::two_agent_example;

namespace {

std::multiset<Rational> row_multiset(const Instance& inst, int agent) {
    return {inst.costs[agent].begin(), inst.costs[agent].end()};
}

// Random complete allocation of an instance, deterministic in the seed.
Allocation random_allocation(const Instance& inst, std::uint64_t seed) {
    std::vector<int> owner(inst.m());
    std::uint64_t state = seed * 0x9E3779B97F4A7C15ULL + 12345;
    for (int j = 0; j < inst.m(); ++j) {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        owner[j] = static_cast<int>(state % inst.n());
    }
    return Allocation::from_indices(inst, owner);
}

}  // namespace

TEST_SUITE_BEGIN("reductions");

TEST_CASE("to_ido sorts every row and preserves multisets") {
    Instance conflicting =
        make_instance({{"a1", "1/2"}, {"a2", "1/2"}}, {"e1", "e2"}, {{"2", "1"}, {"1", "2"}});
    IdoTrace trace = to_ido(conflicting);
    CHECK(is_ido(trace.ido));
    CHECK(trace.ido.costs[0] == std::vector<Rational>{R(2), R(1)});
    CHECK(trace.ido.costs[1] == std::vector<Rational>{R(2), R(1)});

    Instance already = make_instance({{"a1", "1/2"}}, {"e1", "e2"}, {{"3", "1"}});
    CHECK(to_ido(already).ido.costs[0] == already.costs[0]);

    Instance table = two_agent_example(R(1, 4));
    CHECK(to_ido(table).ido.costs == table.costs);

    for (std::uint64_t seed = 400; seed < 412; ++seed) {
        Instance inst = gen_random(seed, 1 + seed % 3, 1 + seed % 6);
        IdoTrace t = to_ido(inst);
        for (int i = 0; i < inst.n(); ++i) {
            CHECK(row_multiset(inst, i) == row_multiset(t.ido, i));
            CHECK(exact_wmms(t.ido, i).value == exact_wmms(inst, i).value);
        }
    }
}

TEST_CASE("lift_ido_allocation never costs more than the ido bundle") {
    Instance conflicting =
        make_instance({{"a1", "1/2"}, {"a2", "1/2"}}, {"e1", "e2"}, {{"2", "1"}, {"1", "2"}});
    IdoTrace trace = to_ido(conflicting);
    Allocation ido_alloc;
    ido_alloc.assignment = {{"p1", "a1"}, {"p2", "a2"}};
    Allocation lifted = lift_ido_allocation(trace, ido_alloc);
    // a2 holds the cheap position, so she must end with her cost-1 item.
    auto bundles = lifted.bundles(conflicting);
    CHECK(bundle_cost(conflicting, 0, bundles[0]) <= R(2));
    CHECK(bundle_cost(conflicting, 1, bundles[1]) <= R(1));
    CHECK(bundle_cost(conflicting, 1, bundles[1]) == R(1));

    // All positions to one agent: she receives everything at equal total.
    Allocation all;
    all.assignment = {{"p1", "a1"}, {"p2", "a1"}};
    Allocation lifted_all = lift_ido_allocation(trace, all);
    auto all_bundles = lifted_all.bundles(conflicting);
    CHECK(all_bundles[0].size() == 2);
    CHECK(bundle_cost(conflicting, 0, all_bundles[0]) == R(3));

    Allocation incomplete;
    incomplete.assignment = {{"p1", "a1"}};
    CHECK_THROWS_AS(lift_ido_allocation(trace, incomplete), std::invalid_argument);

    for (std::uint64_t seed = 500; seed < 540; ++seed) {
        Instance inst = gen_random(seed, 1 + seed % 3, 1 + seed % 7);
        IdoTrace t = to_ido(inst);
        Allocation ido = random_allocation(t.ido, seed);
        Allocation mapped = lift_ido_allocation(t, ido);
        auto ido_bundles = ido.bundles(t.ido);
        auto orig_bundles = mapped.bundles(inst);
        for (int i = 0; i < inst.n(); ++i)
            CHECK(bundle_cost(inst, i, orig_bundles[i]) <= bundle_cost(t.ido, i, ido_bundles[i]));
    }
}

TEST_CASE("round_weights hits the power-of-half grid from below") {
    Instance a = make_instance({{"a1", "3/5"}, {"a2", "2/5"}}, {"e1"}, {{"1"}, {"1"}});
    CHECK(round_weights(a).inst.weights == std::vector<Rational>{R(3, 5), R(3, 5)});

    Instance b = make_instance({{"a1", "1/2"}, {"a2", "1/4"}}, {"e1"}, {{"1"}, {"1"}});
    CHECK(round_weights(b).inst.weights == b.weights);

    Instance c = make_instance({{"a1", "1"}, {"a2", "1/3"}}, {"e1"}, {{"1"}, {"1"}});
    CHECK(round_weights(c).inst.weights == std::vector<Rational>{R(1), R(1, 2)});

    for (std::uint64_t seed = 600; seed < 620; ++seed) {
        Instance inst = gen_random(seed, 1 + seed % 4, 1 + seed % 4);
        RoundWeightsResult res = round_weights(inst);
        for (int i = 0; i < inst.n(); ++i) {
            CHECK(inst.weights[i] <= res.inst.weights[i]);
            CHECK(res.inst.weights[i] < R(2) * inst.weights[i]);
        }
        // The rounding at most doubles each share.
        for (int i = 0; i < inst.n(); ++i)
            CHECK(exact_wmms(res.inst, i).value <= R(2) * exact_wmms(inst, i).value);
    }
}

TEST_CASE("pad_to_proportional pads the running example as expected") {
    Instance table = two_agent_example(R(1, 4));
    PadResult res = pad_to_proportional(table);
    REQUIRE(res.inst.m() == 6);

    // Agent a1: WMMS 1 with both items in the heavy bundle; padding adds
    // (4/3 * 3/4 - 1, 4/3 * 1/4 - 0) = (0, 1/3).
    CHECK(res.trace.profiles[0].value == R(1));
    int aux11 = res.inst.item_index("aux2:a1:1");
    int aux12 = res.inst.item_index("aux2:a1:2");
    REQUIRE(aux11 >= 0);
    REQUIRE(aux12 >= 0);
    CHECK(res.inst.cost(0, aux11) == R(0));
    CHECK(res.inst.cost(0, aux12) == R(1, 3));
    CHECK(res.inst.cost(1, aux11) == R(0));  // worthless to the other agent
    CHECK(res.inst.cost(1, aux12) == R(0));

    // Afterwards the share equals the proportional share for everyone.
    for (int i = 0; i < res.inst.n(); ++i) {
        Rational wmms = exact_wmms(res.inst, i).value;
        CHECK(wmms == proportional_share(res.inst, i));
        CHECK(wmms == res.trace.profiles[i].value);  // unchanged by padding
    }
}

TEST_CASE("pad_to_proportional adds zero items when already proportional") {
    Instance solo = make_instance({{"a1", "1/2"}}, {"e1", "e2"}, {{"2", "3"}});
    PadResult res = pad_to_proportional(solo);
    REQUIRE(res.inst.m() == 3);
    CHECK(res.inst.cost(0, 2) == R(0));
}

TEST_CASE("pad_to_proportional keeps every share unchanged") {
    for (std::uint64_t seed = 700; seed < 720; ++seed) {
        Instance inst = gen_random(seed, 1 + seed % 3, 1 + seed % 5);
        PadResult res = pad_to_proportional(inst);
        for (int i = 0; i < inst.n(); ++i) {
            Rational after = brute_wmms(res.inst, i);
            CHECK(after == res.trace.profiles[i].value);
            CHECK(after == proportional_share(res.inst, i));
        }
    }
}

TEST_CASE("normalize_instance") {
    Instance inst = make_instance({{"a1", "2"}, {"a2", "2"}}, {"e1", "e2"},
                                  {{"1", "3"}, {"2", "2"}});
    NormalizeResult res = normalize_instance(inst);
    CHECK(res.inst.weights == std::vector<Rational>{R(1, 2), R(1, 2)});
    CHECK(res.inst.total_cost(0) == R(1));
    CHECK(res.inst.total_cost(1) == R(1));
    CHECK(res.inst.cost(0, 0) == R(1, 4));
    CHECK(res.trace.weight_divisor == R(4));
    CHECK(res.trace.value_divisors == std::vector<Rational>{R(4), R(4)});

    // Already normalized: identity.
    NormalizeResult again = normalize_instance(res.inst);
    CHECK(again.inst.weights == res.inst.weights);
    CHECK(again.inst.costs == res.inst.costs);

    // Weight scaling cancels in the share; only the value divisor remains.
    Rational before = exact_wmms(inst, 0).value;
    CHECK(exact_wmms(res.inst, 0).value == before / R(4));

    Instance degenerate = make_instance({{"a1", "1/2"}}, {"e1"}, {{"0"}});
    CHECK_THROWS_AS(normalize_instance(degenerate), std::invalid_argument);
}

TEST_CASE("dyadicize_values rounds, refills and preserves shares") {
    for (std::uint64_t seed = 800; seed < 815; ++seed) {
        Instance raw = gen_random(seed, 1 + seed % 3, 1 + seed % 4);
        Instance i3 = normalize_instance(pad_to_proportional(round_weights(raw).inst).inst).inst;

        DyadicizeResult res = dyadicize_values(i3);  // standalone: recomputes partitions
        const Rational w1 = *std::max_element(i3.weights.begin(), i3.weights.end());

        for (int i = 0; i < i3.n(); ++i) {
            // Bracket on every original item.
            for (int j = 0; j < i3.m(); ++j) {
                const Rational &before = i3.cost(i, j), &after = res.inst.cost(i, j);
                if (before.is_zero()) {
                    CHECK(after.is_zero());
                } else {
                    CHECK(after <= before);
                    CHECK(R(2) * after > before);
                    CHECK(is_dyadic_of(after, w1));
                }
            }
            // Totals and shares survive.
            CHECK(res.inst.total_cost(i) == R(1));
            CHECK(verify_partition(res.inst, i, res.trace.partitions[i], res.inst.weights[i]));
            if (within_enumeration_budget(res.inst.n(), res.inst.m()))
                CHECK(brute_wmms(res.inst, i) == i3.weights[i]);
        }
    }
}

TEST_CASE("to_canonical on the running example lands on weights (2/3, 1/3)") {
    CanonicalResult res = to_canonical(two_agent_example(R(1, 4)));
    REQUIRE(res.canon.groups.size() == 2);
    CHECK(res.canon.groups[0].weight == R(2, 3));
    CHECK(res.canon.groups[1].weight == R(1, 3));
    CHECK(res.canon.inst.weight_sum() == R(1));
    CHECK(check_threshold_claim(res.canon).ok());
}

TEST_CASE("to_canonical is a fixed point up to worthless auxiliaries") {
    GenCanonicalResult tiling = gen_canonical(42, 3, 6, CanonicalMode::DirectTiling);
    const Instance& inst = tiling.canon.inst;
    CanonicalResult res = to_canonical(inst);

    CHECK(res.canon.inst.weights == inst.weights);
    for (const auto& id : res.trace.aux_ids) {
        int j = res.trace.ido.original.item_index(id);
        REQUIRE(j >= 0);
        for (int i = 0; i < inst.n(); ++i) CHECK(res.trace.ido.original.cost(i, j).is_zero());
    }
    // Positive values per agent survive as multisets.
    for (int i = 0; i < inst.n(); ++i) {
        std::multiset<Rational> before, after;
        for (const auto& v : inst.costs[i])
            if (!v.is_zero()) before.insert(v);
        for (const auto& v : res.canon.inst.costs[i])
            if (!v.is_zero()) after.insert(v);
        CHECK(before == after);
    }
}

TEST_CASE("to_canonical output passes every canonical check on random inputs") {
    for (std::uint64_t seed = 900; seed < 915; ++seed) {
        Instance inst = gen_random(seed, 1 + seed % 3, 1 + seed % 6);
        CanonicalResult res = to_canonical(inst);
        CHECK(check_canonical(res.canon.inst).ok());
        CHECK(check_threshold_claim(res.canon).ok());
        CHECK(res.canon.inst.weight_sum() == R(1));
    }
}

TEST_CASE("to_canonical rejects invalid input and aux-namespace collisions") {
    Instance bad = make_instance({{"a1", "0"}}, {"e1"}, {{"1"}});
    CHECK_THROWS_AS(to_canonical(bad), std::invalid_argument);

    Instance clash = make_instance({{"a1", "1/2"}}, {"aux2:a1:1"}, {{"1"}});
    CHECK_THROWS_AS(to_canonical(clash), std::invalid_argument);
}

TEST_CASE("lift_canonical_allocation strips auxiliaries and keeps zero-cost bundles empty") {
    Instance table = two_agent_example(R(1, 4));
    CanonicalResult res = to_canonical(table);
    const Instance& canon = res.canon.inst;

    // Hand every position to a1: the lift gives her both original items.
    Allocation all;
    for (const auto& item : canon.items) all.assignment[item] = "a1";
    Allocation lifted = lift_canonical_allocation(res.trace, all);
    REQUIRE(lifted.assignment.size() == 2);
    CHECK(lifted.assignment.at("e1") == "a1");
    CHECK(lifted.assignment.at("e2") == "a1");

    // An agent whose canonical bundle is worthless lifts to a costless one;
    // with all-positive original costs that bundle is empty.
    auto bundles = [&](const Allocation& a) { return a.bundles(table); };
    CanonicalSolveResult greedy = solve_canonical(res.canon);
    Allocation mapped = lift_canonical_allocation(res.trace, greedy.alloc);
    auto ido_bundles = greedy.alloc.bundles(canon);
    for (int i = 0; i < table.n(); ++i) {
        if (bundle_cost(canon, i, ido_bundles[i]).is_zero())
            CHECK(bundles(mapped)[i].empty());
    }
}

TEST_CASE("full pipeline bound: lifted cost within 4 alpha5 and 12") {
    for (std::uint64_t seed = 1000; seed < 1030; ++seed) {
        Instance inst = gen_random(seed, 1 + seed % 3, 1 + seed % 5);
        CanonicalResult res = to_canonical(inst);
        CanonicalSolveResult greedy = solve_canonical(res.canon);

        // alpha on the canonical instance, where WMMS equals the weight.
        Rational alpha5;
        for (int i = 0; i < res.canon.inst.n(); ++i) {
            Rational ratio = greedy.costs[i] / res.canon.inst.weights[i];
            if (ratio > alpha5) alpha5 = ratio;
        }
        CHECK(alpha5 <= R(3));

        Allocation lifted = lift_canonical_allocation(res.trace, greedy.alloc);
        CHECK(lifted.complete(inst));
        auto bundles = lifted.bundles(inst);
        for (int i = 0; i < inst.n(); ++i) {
            Rational wmms = exact_wmms(inst, i).value;
            Rational cost = bundle_cost(inst, i, bundles[i]);
            CHECK(cost <= R(4) * alpha5 * wmms);
            CHECK(cost <= R(12) * wmms);
        }
    }
}

TEST_SUITE_END();
