#include "corrclus/generators.hpp"

#include <algorithm>

#include "corrclus/rng.hpp"

namespace corrclus {

namespace {

// Ground-truth cluster sizes. The uniform composition is drawn via its
// stars-and-bars encoding: k-1 distinct divider positions among n+k-1 slots.
std::vector<std::uint32_t> truth_sizes(std::uint32_t n, ClusterId k, Balance balance,
                                       Rng& rng) {
    std::vector<std::uint32_t> sizes(k, 0);
    if (balance == Balance::Balanced) {
        for (ClusterId j = 0; j < k; ++j) sizes[j] = n / k + (j < n % k ? 1 : 0);
        return sizes;
    }
    const std::uint64_t slots = static_cast<std::uint64_t>(n) + k - 1;
    std::set<std::uint64_t> dividers;
    while (dividers.size() < k - 1) dividers.insert(rng.below(slots));
    std::uint64_t prev = 0, used = 0;
    ClusterId j = 0;
    for (std::uint64_t divider : dividers) {
        sizes[j++] = static_cast<std::uint32_t>(divider - prev);
        prev = divider + 1;
        used += sizes[j - 1];
    }
    sizes[j] = static_cast<std::uint32_t>(n - used);
    return sizes;
}

}  // namespace

PlantedInstance planted(std::uint32_t n, ClusterId k, double p, std::uint64_t seed,
                        Balance balance) {
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("planted: need 1 <= k <= n");
    if (!(p >= 0.0) || p > 1.0) throw std::invalid_argument("planted: p must be in [0,1]");

    Rng rng(seed);
    Rng sizes_rng = rng.child(1);
    Rng flips_rng = rng.child(2);

    const auto sizes = truth_sizes(n, k, balance, sizes_rng);
    Clustering truth{k, std::vector<ClusterId>(n, 0)};
    {
        Vertex v = 0;
        for (ClusterId j = 0; j < k; ++j)
            for (std::uint32_t t = 0; t < sizes[j]; ++t) truth.assignment[v++] = j;
    }

    SignedCompleteGraph g(n);
    for (Vertex i = 0; i + 1 < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) {
            bool plus = truth.assignment[i] == truth.assignment[j];
            if (flips_rng.unit() < p) plus = !plus;
            if (plus) g.set_label(i, j, +1);
        }
    return PlantedInstance{std::move(g), std::move(truth), p, seed};
}

void SimpleGraph::add_edge(Vertex u, Vertex v) {
    if (u == v) throw std::invalid_argument("SimpleGraph: self-loop");
    if (u >= n || v >= n) throw std::invalid_argument("SimpleGraph: vertex out of range");
    if (u > v) std::swap(u, v);
    if (!edges.emplace(u, v).second) throw std::invalid_argument("SimpleGraph: duplicate edge");
}

bool SimpleGraph::has_edge(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    return edges.count({u, v}) > 0;
}

SignedCompleteGraph bisection_gadget(const SimpleGraph& g) {
    if (g.n < 2 || g.n % 2 != 0)
        throw std::invalid_argument("bisection_gadget: vertex count must be even and >= 2");
    for (const auto& [u, v] : g.edges)
        if (v >= g.n) throw std::invalid_argument("bisection_gadget: edge out of range");

    const std::uint32_t group = g.n + 1;
    SignedCompleteGraph out(g.n * group);  // all '-'
    for (Vertex v = 0; v < g.n; ++v)
        for (Vertex a = v * group; a < (v + 1) * group; ++a)
            for (Vertex b = a + 1; b < (v + 1) * group; ++b) out.set_label(a, b, +1);
    for (const auto& [u, v] : g.edges) out.set_label(u * group, v * group, +1);
    return out;
}

SignedCompleteGraph pad_groups(const SignedCompleteGraph& g, ClusterId k_target) {
    if (k_target < 2) throw std::invalid_argument("pad_groups: k_target must be >= 2");
    const std::uint32_t group = g.n() + 1;
    const std::uint32_t n_out = g.n() + (k_target - 2) * group;
    SignedCompleteGraph out(n_out);  // all '-'
    for (Vertex i = 0; i + 1 < g.n(); ++i)
        for (Vertex j = i + 1; j < g.n(); ++j)
            if (g.is_plus(i, j)) out.set_label(i, j, +1);
    for (std::uint32_t t = 0; t + 2 < k_target; ++t) {
        const Vertex base = g.n() + t * group;
        for (Vertex a = base; a < base + group; ++a)
            for (Vertex b = a + 1; b < base + group; ++b) out.set_label(a, b, +1);
    }
    return out;
}

std::vector<Clustering> baselines(const SignedCompleteGraph& g, ClusterId k,
                                  std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("baselines: k must be >= 1");
    const std::uint32_t n = g.n();
    Clustering all_one{k, std::vector<ClusterId>(n, 0)};
    Clustering random{k, std::vector<ClusterId>(n, 0)};
    Rng rng(seed);
    for (Vertex v = 0; v < n; ++v) random.assignment[v] = static_cast<ClusterId>(rng.below(k));
    Clustering round_robin{k, std::vector<ClusterId>(n, 0)};
    for (Vertex v = 0; v < n; ++v) round_robin.assignment[v] = v % k;
    return {std::move(all_one), std::move(random), std::move(round_robin)};
}

SignedCompleteGraph all_plus(std::uint32_t n) { return SignedCompleteGraph(n, +1); }
SignedCompleteGraph all_minus(std::uint32_t n) { return SignedCompleteGraph(n, -1); }

}  // namespace corrclus
