#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "wmms/generators.hpp"
#include "wmms/oracle.hpp"

using namespace wmms;
using wmms::test::R;
using wmms::test::make_instance;
using wmms::test::two_agent_example;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("enumeration counts and order") {
    Instance inst = two_agent_example(R(1, 4));
    std::vector<std::vector<int>> seen;
    enumerate_allocations(inst, [&](const std::vector<int>& a) {
        seen.push_back(a);
        return true;
    });
    REQUIRE(seen.size() == 4);
    CHECK(seen[0] == std::vector<int>{0, 0});  // item 0 is the least significant digit
    CHECK(seen[1] == std::vector<int>{1, 0});
    CHECK(seen[2] == std::vector<int>{0, 1});
    CHECK(seen[3] == std::vector<int>{1, 1});

    Instance solo = make_instance({{"a1", "1/2"}}, {"e1", "e2", "e3"}, {{"1", "1", "1"}});
    int count = 0;
    enumerate_allocations(solo, [&](const std::vector<int>&) {
        ++count;
        return true;
    });
    CHECK(count == 1);

    Instance three = make_instance({{"a1", "1/3"}, {"a2", "1/3"}, {"a3", "1/3"}},
                                   {"e1", "e2", "e3"},
                                   {{"1", "1", "1"}, {"1", "1", "1"}, {"1", "1", "1"}});
    std::set<std::vector<int>> distinct;
    enumerate_allocations(three, [&](const std::vector<int>& a) {
        distinct.insert(a);
        return true;
    });
    CHECK(distinct.size() == 27);
}

TEST_CASE("brute_wmms on the two-agent example") {
    Instance inst = two_agent_example(R(1, 4));
    CHECK(brute_wmms(inst, 0) == R(1));
    CHECK(brute_wmms(inst, 1) == R(1, 3));  // eps/(1-eps) at eps = 1/4
    CHECK(brute_wmms_serial(inst, 0) == R(1));
    CHECK(brute_wmms_serial(inst, 1) == R(1, 3));
}

TEST_CASE("brute_wmms hand cases") {
    // A single chore sits with the heavy agent in her best partition, so her
    // share equals the item cost.
    Instance one = make_instance({{"big", "3/4"}, {"small", "1/4"}}, {"e1"}, {{"1"}, {"1"}});
    CHECK(brute_wmms(one, 0) == R(1));

    Instance thirds = make_instance({{"a1", "1/2"}, {"a2", "1/2"}}, {"e1", "e2", "e3"},
                                    {{"1/3", "1/3", "1/3"}, {"1/3", "1/3", "1/3"}});
    CHECK(brute_wmms(thirds, 0) == R(2, 3));

    Instance empty = make_instance({{"a1", "1/2"}, {"a2", "1/2"}}, {}, {{}, {}});
    CHECK(brute_wmms(empty, 0) == R(0));
}

TEST_CASE("parallel kernel agrees with the serial reference") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        Instance inst = gen_random(seed, 1 + seed % 3, 1 + seed % 6);
        for (int i = 0; i < inst.n(); ++i)
            CHECK(brute_wmms(inst, i) == brute_wmms_serial(inst, i));
        OptimalRatioResult par = optimal_ratio(inst);
        OptimalRatioResult ser = optimal_ratio_serial(inst);
        CHECK(par.alpha == ser.alpha);
        CHECK(par.alloc.assignment == ser.alloc.assignment);
    }
}

TEST_CASE("optimal_ratio on the two-agent example") {
    Instance inst = two_agent_example(R(1, 4));
    OptimalRatioResult res = optimal_ratio(inst);
    CHECK_FALSE(res.degenerate);
    CHECK(res.alpha == R(1));
    CHECK(res.alloc.assignment.at("e1") == "a1");
    CHECK(res.alloc.assignment.at("e2") == "a1");
}

TEST_CASE("optimal_ratio hand cases") {
    Instance solo = make_instance({{"a1", "1/2"}}, {"e1", "e2"}, {{"1", "2"}});
    CHECK(optimal_ratio(solo).alpha == R(1));

    // One big chore, one tiny-weight agent: the optimum hands the chore to
    // the large-weight agent.
    Instance chore = make_instance({{"big", "9/10"}, {"small", "1/10"}}, {"e1"}, {{"1"}, {"1"}});
    OptimalRatioResult res = optimal_ratio(chore);
    CHECK(res.alpha == R(1));
    CHECK(res.alloc.assignment.at("e1") == "big");
}

TEST_CASE("optimal_ratio stays below the agent count") {
    for (std::uint64_t seed = 50; seed < 70; ++seed) {
        Instance inst = gen_random(seed, 1 + seed % 3, 1 + seed % 5);
        OptimalRatioResult res = optimal_ratio(inst);
        REQUIRE_FALSE(res.degenerate);
        CHECK(res.alpha <= R(inst.n()));
    }
}

TEST_CASE("verify_alpha") {
    Instance inst = two_agent_example(R(1, 4));
    OptimalRatioResult opt = optimal_ratio(inst);

    AlphaCheck pass = verify_alpha(inst, opt.alloc, opt.wmms, R(1));
    CHECK(pass.all_pass);
    CHECK(pass.ratios[0].value == R(1));
    CHECK(pass.ratios[1].value == R(0));  // empty-handed agent passes any alpha

    Allocation swapped;
    swapped.assignment = {{"e1", "a2"}, {"e2", "a1"}};
    AlphaCheck fail = verify_alpha(inst, swapped, opt.wmms, R(1));
    CHECK_FALSE(fail.all_pass);
    CHECK(fail.pass[0]);
    CHECK_FALSE(fail.pass[1]);  // 1/2 > 1 * 1/3
    CHECK(fail.ratios[1].value == R(3, 2));

    // Just below the optimum the optimal allocation must fail.
    AlphaCheck tight = verify_alpha(inst, opt.alloc, opt.wmms, R(1) - R(1, 1000));
    CHECK_FALSE(tight.all_pass);

    Allocation partial;
    partial.assignment = {{"e1", "a1"}};
    CHECK_THROWS_AS(verify_alpha(inst, partial, opt.wmms, R(1)), std::invalid_argument);

    // A zero share with positive cost is reported as unbounded.
    AlphaCheck degenerate = verify_alpha(inst, swapped, {R(1), R(0)}, R(100));
    CHECK_FALSE(degenerate.all_pass);
    CHECK(degenerate.ratios[1].unbounded);
}

TEST_CASE("budget guard") {
    Instance big = gen_random(7, 4, 30);
    CHECK_THROWS_AS(brute_wmms(big, 0), BudgetExceeded);
    CHECK_THROWS_AS(enumerate_allocations(big, [](const std::vector<int>&) { return true; }),
                    BudgetExceeded);
}

TEST_SUITE_END();
