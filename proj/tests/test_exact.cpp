#include <doctest.h>

#include <set>

#include "corrclus/exact.hpp"
#include "test_support.hpp"

using namespace corrclus;
using namespace testsupport;

TEST_CASE("partition cursor stepping") {
    PartitionCursor cursor(4, 3);
    CHECK(cursor.rgs() == std::vector<std::uint32_t>{0, 0, 0, 0});
    REQUIRE(cursor.advance());
    CHECK(cursor.rgs() == std::vector<std::uint32_t>{0, 0, 0, 1});
    CHECK(cursor.last_changed() == 3);

    SUBCASE("floor position freezes a prefix") {
        cursor.set_prefix(std::vector<std::uint32_t>{0, 1});
        std::size_t completions = 1;
        while (cursor.advance(2)) {
            CHECK(cursor.rgs()[0] == 0);
            CHECK(cursor.rgs()[1] == 1);
            ++completions;
        }
        // strings 01xy: x in {0,1,2}; y in {0,1,2} for each x; 9 in total
        // (5 more have prefix 00, giving the 14 partitions of [4] into <= 3)
        CHECK(completions == 9);
    }
    SUBCASE("malformed prefixes are rejected") {
        CHECK_THROWS_AS(cursor.set_prefix(std::vector<std::uint32_t>{1}),
                        std::invalid_argument);
        CHECK_THROWS_AS(cursor.set_prefix(std::vector<std::uint32_t>{0, 2}),
                        std::invalid_argument);  // skips a symbol
        CHECK_THROWS_AS(cursor.set_prefix(std::vector<std::uint32_t>{0, 1, 2, 0, 0}),
                        std::invalid_argument);  // longer than n
    }
    SUBCASE("cap of one pins everything to a single block") {
        PartitionCursor flat(5, 1);
        CHECK(!flat.advance());
        CHECK(flat.rgs() == std::vector<std::uint32_t>(5, 0));
    }
}

TEST_CASE("partition enumeration order and counts") {
    std::vector<std::vector<ClusterId>> seen;
    enumerate_partitions(3, 2, [&](const Clustering& c) { seen.push_back(c.assignment); });
    const std::vector<std::vector<ClusterId>> expect{
        {0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}};
    CHECK(seen == expect);

    std::size_t bell3 = 0;
    enumerate_partitions(3, 3, [&](const Clustering&) { ++bell3; });
    CHECK(bell3 == 5);

    std::size_t s42 = 0;
    enumerate_partitions(4, 2, [&](const Clustering&) { ++s42; });
    CHECK(s42 == 8);
    CHECK(s42 == count_partitions_naive(4, 2));  // independent recursive count
}

TEST_CASE("partition_count matches enumeration") {
    for (std::uint32_t n = 1; n <= 9; ++n)
        for (std::uint32_t k = 1; k <= n + 1; ++k) {
            std::uint64_t enumerated = 0;
            enumerate_partitions(n, k, [&](const Clustering&) { ++enumerated; });
            CHECK(partition_count(n, k) == enumerated);
            CHECK(partition_count(n, k) == count_partitions_naive(n, k));
        }
}

TEST_CASE("every enumerated partition is unique and valid") {
    std::set<std::vector<ClusterId>> seen;
    enumerate_partitions(6, 3, [&](const Clustering& c) {
        CHECK(c.assignment[0] == 0);
        ClusterId prefix_max = 0;
        for (ClusterId id : c.assignment) {
            CHECK(id < 3);
            CHECK(id <= prefix_max + 1);
            prefix_max = std::max(prefix_max, id);
        }
        CHECK(seen.insert(c.assignment).second);
    });
    CHECK(seen.size() == partition_count(6, 3));
}

TEST_CASE("hard cap produces a feasibility error") {
    const SignedCompleteGraph g(17);
    CHECK_THROWS_AS(exact_best(g, 2, Objective::MinDisagreements), FeasibilityError);
    CHECK_THROWS_AS(enumerate_partitions(17, 2, [](const Clustering&) {}), FeasibilityError);
    // override for the adventurous
    std::size_t count = 0;
    enumerate_partitions(4, 2, [&](const Clustering&) { ++count; }, /*hard_cap=*/4);
    CHECK(count == 8);
}

TEST_CASE("exact optimum on the worked examples") {
    CHECK(exact_best(k_uniform(3, -1), 2, Objective::MinDisagreements).disagreements == 1);
    CHECK(exact_best(g4mix(), 2, Objective::MinDisagreements).disagreements == 0);
    CHECK(exact_best(k_uniform(6, -1), 3, Objective::MinDisagreements).disagreements == 3);
}

TEST_CASE("exact optimum matches the assignment-string brute force") {
    Rng rng(2001);
    for (int round = 0; round < 30; ++round) {
        const auto n = static_cast<std::uint32_t>(2 + rng.below(7));
        const auto k = static_cast<ClusterId>(1 + rng.below(3));
        const auto g = random_instance(rng, n);
        const auto report = exact_best(g, k, Objective::MaxAgreements);
        const auto brute = brute_force_by_assignments(g, k);
        CHECK(report.agreements == brute.best_agreements);
        CHECK(report.disagreements == brute.best_disagreements);
        CHECK(agreements(g, report.clustering) == report.agreements);
    }
}

TEST_CASE("objectives are complementary and monotone in k") {
    Rng rng(2002);
    for (int round = 0; round < 10; ++round) {
        const auto n = static_cast<std::uint32_t>(3 + rng.below(6));
        const auto g = random_instance(rng, n);
        EdgeCount prev_dis = g.pair_count() + 1;
        EdgeCount prev_agree = 0;
        for (ClusterId k = 1; k <= 4; ++k) {
            const auto rep = exact_best(g, k, Objective::MinDisagreements);
            CHECK(rep.agreements + rep.disagreements == g.pair_count());
            CHECK(rep.disagreements <= prev_dis);  // non-increasing in k
            CHECK(rep.agreements >= prev_agree);   // non-decreasing in k
            prev_dis = rep.disagreements;
            prev_agree = rep.agreements;
        }
    }
}

TEST_CASE("optimum clears the trivial floors") {
    Rng rng(2003);
    for (int round = 0; round < 20; ++round) {
        const auto n = static_cast<std::uint32_t>(6 + rng.below(4));
        const auto k = static_cast<ClusterId>(2 + rng.below(2));
        const auto g = random_instance(rng, n);
        const auto rep = exact_best(g, k, Objective::MaxAgreements);
        CHECK(16 * rep.agreements >= static_cast<EdgeCount>(n) * n);
        CHECK(rep.agreements >= g.plus_count());
    }
}

TEST_CASE("thread count does not change the result") {
    Rng rng(2004);
    for (int round = 0; round < 8; ++round) {
        const auto n = static_cast<std::uint32_t>(4 + rng.below(7));
        const auto k = static_cast<ClusterId>(2 + rng.below(3));
        const auto g = random_instance(rng, n);
        const auto one = exact_best(g, k, Objective::MinDisagreements, 1);
        const auto four = exact_best(g, k, Objective::MinDisagreements, 4);
        const auto seven = exact_best(g, k, Objective::MinDisagreements, 7);
        CHECK(one.clustering.assignment == four.clustering.assignment);
        CHECK(one.clustering.assignment == seven.clustering.assignment);
        CHECK(one.agreements == four.agreements);
        CHECK(one.trace.enumerated == four.trace.enumerated);
    }
}

TEST_CASE("first optimum in enumeration order is kept") {
    // all-minus K_4 with k=2: several optima exist; the first one in RGS
    // order must be returned
    const auto g = k_uniform(4, -1);
    const auto rep = exact_best(g, 2, Objective::MinDisagreements);
    std::vector<ClusterId> first_opt;
    EdgeCount best = 0;
    bool have = false;
    enumerate_partitions(4, 2, [&](const Clustering& c) {
        const EdgeCount a = agreements(g, c);
        if (!have || a > best) {
            have = true;
            best = a;
            first_opt = c.assignment;
        }
    });
    CHECK(rep.clustering.assignment == first_opt);
}
