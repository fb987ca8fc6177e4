#include <doctest.h>

#include "corrclus/exact.hpp"
#include "corrclus/generators.hpp"
#include "corrclus/mindisagree.hpp"
#include "test_support.hpp"

using namespace corrclus;
using namespace testsupport;

TEST_CASE("beta parameter") {
    CHECK(beta_param(0.1, 2) == doctest::Approx(7.8125e-5).epsilon(1e-12));
    CHECK(beta_param(1.0, 2) == doctest::Approx(7.8125e-4).epsilon(1e-12));
    // doubling k quarters beta
    CHECK(beta_param(0.3, 4) == doctest::Approx(beta_param(0.3, 2) / 4.0).epsilon(1e-12));
}

TEST_CASE("theoretical sample size for the minimizer") {
    CHECK(theoretical_sample_size_min(100, 7.8125e-5) == 3772555417ULL);
    // halving beta roughly quadruples the size (exact up to ceiling slack)
    const auto s1 = theoretical_sample_size_min(50, 0.02);
    const auto s2 = theoretical_sample_size_min(50, 0.01);
    CHECK(s2 >= 4 * s1 - 3);
    CHECK(s2 <= 4 * s1);
    CHECK_THROWS_AS(theoretical_sample_size_min(1, 0.5), std::invalid_argument);
}

TEST_CASE("pval_sample") {
    const auto g = g4mix();
    CHECK(pval_sample(g, 0, {{1}, {2}}, 0) == Fraction{2, 2});
    CHECK(pval_sample(g, 0, {{1}, {2}}, 1) == Fraction{0, 2});
    SUBCASE("vertex with only minus edges into the sample") {
        // numerator must be |S| - |S_j| for any part j
        Rng rng(4001);
        const auto inst = random_instance(rng, 8);
        SignedCompleteGraph g2 = inst;
        for (Vertex w = 1; w < 8; ++w) g2.set_label(0, w, -1);
        const std::vector<std::vector<Vertex>> parts{{1, 2, 3}, {4, 5}, {6}};
        for (ClusterId j = 0; j < 3; ++j) {
            const auto f = pval_sample(g2, 0, parts, j);
            CHECK(f.den == 6);
            CHECK(f.num == 6 - parts[j].size());
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(pval_sample(g, 0, {{}, {}}, 0), std::invalid_argument);
        CHECK_THROWS_AS(pval_sample(g, 1, {{1}, {2}}, 0), std::invalid_argument);
        CHECK_THROWS_AS(pval_sample(g, 0, {{1}, {2}}, 2), std::invalid_argument);
    }
}

TEST_CASE("large/small classification") {
    SUBCASE("n=8 k=2 sizes 5,3: both large") {
        const auto ls = classify_large_small({{0, 1, 2, 3, 4}, {5, 6, 7}}, 8);
        CHECK(ls.large == std::vector<ClusterId>{0, 1});
        CHECK(ls.small.empty());
    }
    SUBCASE("n=8 k=2 sizes 7,1: second is small") {
        const auto ls = classify_large_small({{0, 1, 2, 3, 4, 5, 6}, {7}}, 8);
        CHECK(ls.large == std::vector<ClusterId>{0});
        CHECK(ls.small == std::vector<ClusterId>{1});
    }
    SUBCASE("n=6 k=3 sizes 4,1,1: exact threshold keeps all large") {
        const auto ls = classify_large_small({{0, 1, 2, 3}, {4}, {5}}, 6);
        CHECK(ls.large == std::vector<ClusterId>{0, 1, 2});
        CHECK(ls.small.empty());
    }
    SUBCASE("at least one cluster is always large") {
        Rng rng(4002);
        for (int round = 0; round < 50; ++round) {
            const auto n = static_cast<std::uint32_t>(1 + rng.below(20));
            const auto k = static_cast<ClusterId>(1 + rng.below(5));
            std::vector<std::vector<Vertex>> clusters(k);
            for (Vertex v = 0; v < n; ++v) clusters[rng.below(k)].push_back(v);
            const auto ls = classify_large_small(clusters, n);
            CHECK(ls.large.size() >= 1);
            CHECK(ls.small.size() < k);
        }
    }
}

TEST_CASE("min_dis_ag trivial cases") {
    SUBCASE("k=1 returns the single cluster") {
        Rng rng(4003);
        const auto g = random_instance(rng, 9);
        MinDisParams params;
        params.base.k = 1;
        params.base.epsilon = 0.5;
        const auto rep = min_dis_ag(g, params);
        CHECK(rep.disagreements == g.minus_count());
        CHECK(rep.clustering.assignment == std::vector<ClusterId>(9, 0));
        CHECK(rep.guarantee_valid);
    }
    SUBCASE("single vertex") {
        MinDisParams params;
        params.base.k = 3;
        const auto rep = min_dis_ag(SignedCompleteGraph(1), params);
        CHECK(rep.disagreements == 0);
    }
}

TEST_CASE("full-sample mode equals the exact oracle") {
    Rng rng(4004);
    for (int round = 0; round < 12; ++round) {
        const auto n = static_cast<std::uint32_t>(4 + rng.below(6));
        const auto k = static_cast<ClusterId>(2 + rng.below(2));
        const auto g = random_instance(rng, n);
        MinDisParams params;
        params.base.k = k;
        params.base.epsilon = 0.5;
        params.base.seed = rng.next();
        params.propagate_full_sample = true;
        const auto rep = min_dis_ag(g, params);
        const auto oracle = exact_best(g, k, Objective::MinDisagreements);
        CHECK(rep.disagreements == oracle.disagreements);
        CHECK(!rep.guarantee_valid);  // sampling was overridden
    }
}

TEST_CASE("sampled mode dominates the oracle and stays deterministic") {
    Rng rng(4005);
    for (int round = 0; round < 10; ++round) {
        const auto n = static_cast<std::uint32_t>(5 + rng.below(5));
        const auto k = static_cast<ClusterId>(2 + rng.below(2));
        const auto g = random_instance(rng, n);
        MinDisParams params;
        params.base.k = k;
        params.base.epsilon = 0.5;
        params.base.seed = rng.next();
        params.base.sample_override = 5;
        const auto rep = min_dis_ag(g, params);
        const auto rep2 = min_dis_ag(g, params);
        CHECK(rep.clustering.assignment == rep2.clustering.assignment);
        CHECK(rep.disagreements >= exact_best(g, k, Objective::MinDisagreements).disagreements);
        CHECK(rep.agreements + rep.disagreements == g.pair_count());
        CHECK(!rep.guarantee_valid);
    }
}

TEST_CASE("budget truncation reports best-so-far") {
    Rng rng(4006);
    const auto g = random_instance(rng, 10);
    MinDisParams params;
    params.base.k = 2;
    params.base.epsilon = 0.5;
    params.base.sample_override = 6;
    params.base.enumeration_budget = 3;
    const auto rep = min_dis_ag(g, params);
    CHECK(!rep.guarantee_valid);
    CHECK(rep.trace.truncated);
    CHECK(rep.agreements + rep.disagreements == g.pair_count());
}

TEST_CASE("planted three-cluster recovery") {
    std::uint32_t hits = 0;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto inst = planted(60, 3, 0.0, derive_seed(616, seed));
        MinDisParams params;
        params.base.k = 3;
        params.base.epsilon = 0.5;
        params.base.seed = seed;
        params.base.sample_override = 12;
        const auto rep = min_dis_ag(inst.graph, params);
        if (rep.disagreements == 0) ++hits;
    }
    CHECK(hits >= 3);  // the acceptance suite runs the full 20-seed version
}

TEST_CASE("output is the better of the two branches in the trace") {
    Rng rng(4010);
    for (int round = 0; round < 15; ++round) {
        const auto n = static_cast<std::uint32_t>(5 + rng.below(8));
        const auto g = random_instance(rng, n);
        MinDisParams params;
        params.base.k = static_cast<ClusterId>(2 + rng.below(2));
        params.base.epsilon = 0.5;
        params.base.seed = rng.next();
        params.base.sample_override = 5;
        const auto rep = min_dis_ag(g, params);
        const auto expected = std::min(rep.trace.branch_max_disagreements,
                                       rep.trace.branch_min_disagreements);
        CHECK(rep.disagreements == expected);
    }
    // the k=1 shortcut reports its single answer as both branches
    MinDisParams one;
    one.base.k = 1;
    const auto g = random_instance(rng, 6);
    const auto rep = min_dis_ag(g, one);
    CHECK(rep.trace.branch_max_disagreements == rep.disagreements);
    CHECK(rep.trace.branch_min_disagreements == rep.disagreements);
}

TEST_CASE("small clusters are re-clustered recursively and traced") {
    // full-sample enumeration over n=8, k=3 visits candidates with singleton
    // clusters, which are below the n/(2k) threshold and trigger recursion
    Rng rng(4009);
    const auto g = random_instance(rng, 8);
    MinDisParams params;
    params.base.k = 3;
    params.base.epsilon = 0.5;
    params.propagate_full_sample = true;
    const auto rep = min_dis_ag(g, params);
    CHECK(rep.trace.recursion_depth >= 1);
    CHECK(rep.trace.enumerated > 6561);  // top-level 3^8 plus recursive work
    CHECK(rep.trace.sample_distinct_max == 8);
}

TEST_CASE("local switch improvement") {
    SUBCASE("one move reaches the optimum on the all-plus triangle") {
        const auto g = k_uniform(3, +1);
        const Clustering start{2, {0, 1, 1}};
        const auto improved = local_switch_improve(g, start, 10);
        CHECK(disagreements(g, improved) == 0);
        CHECK(agreements(g, improved) == 3);
    }
    SUBCASE("local optimum is a fixpoint") {
        const auto g = g4mix();
        const Clustering perfect{2, {0, 0, 1, 1}};
        const auto out = local_switch_improve(g, perfect, 10);
        CHECK(out.assignment == perfect.assignment);
    }
    SUBCASE("never increases disagreements, round by round") {
        Rng rng(4007);
        for (int round = 0; round < 60; ++round) {
            const auto n = static_cast<std::uint32_t>(2 + rng.below(24));
            const auto k = static_cast<ClusterId>(1 + rng.below(4));
            const auto g = random_instance(rng, n);
            Clustering current = random_clustering(rng, n, k);
            EdgeCount dis = disagreements(g, current);
            for (int step = 0; step < 6; ++step) {
                current = local_switch_improve(g, current, 1);
                const EdgeCount next = disagreements(g, current);
                CHECK(next <= dis);
                dis = next;
            }
        }
    }
    SUBCASE("terminates at a fixpoint within the round limit") {
        Rng rng(4008);
        const auto g = random_instance(rng, 14);
        const auto out = local_switch_improve(g, random_clustering(rng, 14, 3), 1000);
        const auto again = local_switch_improve(g, out, 1);
        CHECK(out.assignment == again.assignment);
    }
}
