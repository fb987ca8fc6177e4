#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "corrclus/instance.hpp"

namespace corrclus {

/// Graph plus ground truth: labels start consistent with `truth` and each
/// one is then flipped independently with probability `noise`.
struct PlantedInstance {
    SignedCompleteGraph graph;
    Clustering truth;
    double noise = 0.0;
    std::uint64_t seed = 0;
};

enum class Balance { Balanced, RandomSizes };

/// Balanced mode gives contiguous ground-truth clusters whose sizes differ
/// by at most one; RandomSizes draws the size vector uniformly among all
/// compositions of n into k non-negative parts (so tiny clusters do occur).
PlantedInstance planted(std::uint32_t n, ClusterId k, double p, std::uint64_t seed,
                        Balance balance = Balance::Balanced);

/// Plain undirected graph, input to the reduction builders.
struct SimpleGraph {
    std::uint32_t n = 0;
    std::set<std::pair<Vertex, Vertex>> edges;  // pairs stored with first < second

    explicit SimpleGraph(std::uint32_t n_) : n(n_) {}
    void add_edge(Vertex u, Vertex v);
    bool has_edge(Vertex u, Vertex v) const;
};

/// Reduction from Min Bisection: every vertex v of G becomes a group of
/// n+1 vertices (v plus n clones) fully '+' inside; G's edges stay '+'
/// between the group representatives; everything else is '-'. The first
/// vertex of group v, i.e. v*(n+1), is the original vertex.
SignedCompleteGraph bisection_gadget(const SimpleGraph& g);

/// Appends k_target-2 groups of g.n+1 vertices each, '+' inside a group and
/// '-' everywhere else. With k_target = 2 the instance is unchanged.
SignedCompleteGraph pad_groups(const SignedCompleteGraph& g, ClusterId k_target);

/// Trivial clusterings: everything in one cluster, a seeded uniform random
/// k-assignment, and the balanced round robin v -> v mod k.
std::vector<Clustering> baselines(const SignedCompleteGraph& g, ClusterId k,
                                  std::uint64_t seed);

SignedCompleteGraph all_plus(std::uint32_t n);
SignedCompleteGraph all_minus(std::uint32_t n);

}  // namespace corrclus
