#include "corrclus/mindisagree.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>

#include "corrclus/maxagree.hpp"
#include "corrclus/rng.hpp"

namespace corrclus {

double beta_param(double epsilon, ClusterId k, double c1) {
    if (!(epsilon > 0.0) || k < 1 || !(c1 > 0.0))
        throw std::invalid_argument("beta_param: bad parameters");
    return c1 * epsilon / (16.0 * k * k);
}

std::uint64_t theoretical_sample_size_min(std::uint32_t n, double beta) {
    if (n < 2) throw std::invalid_argument("theoretical_sample_size_min: n must be >= 2");
    if (!(beta > 0.0)) throw std::invalid_argument("theoretical_sample_size_min: beta <= 0");
    const long double x =
        5.0L * std::log(static_cast<long double>(n)) / (static_cast<long double>(beta) * beta);
    const long double r = std::ceil(x);
    if (!(r < 1.8e19L)) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(r);
}

Fraction pval_sample(const SignedCompleteGraph& g, Vertex u,
                     const std::vector<std::vector<Vertex>>& sample_parts, ClusterId i) {
    if (u >= g.n()) throw std::invalid_argument("pval_sample: vertex out of range");
    if (i >= sample_parts.size()) throw std::invalid_argument("pval_sample: part out of range");
    std::uint64_t total = 0, agree = 0;
    for (ClusterId j = 0; j < sample_parts.size(); ++j)
        for (Vertex s : sample_parts[j]) {
            if (s == u) throw std::invalid_argument("pval_sample: u must not be in the sample");
            ++total;
            const bool same = j == i;
            if (g.is_plus(u, s) == same) ++agree;
        }
    if (total == 0) throw std::invalid_argument("pval_sample: empty sample");
    return Fraction{agree, total};
}

LargeSmall classify_large_small(const std::vector<std::vector<Vertex>>& clusters,
                                std::uint64_t n) {
    LargeSmall out;
    const std::uint64_t k = clusters.size();
    for (ClusterId j = 0; j < k; ++j) {
        if (2 * k * clusters[j].size() >= n)
            out.large.push_back(j);
        else
            out.small.push_back(j);
    }
    return out;
}

namespace {

using detail::EnumBudget;

// stream keys for the seed substreams of one solve level
constexpr std::uint64_t kTagMaxAgBranch = 11;
constexpr std::uint64_t kTagSample = 12;
constexpr std::uint64_t kTagRecursion = 13;

std::uint64_t hash_vertices(const std::vector<Vertex>& vs, std::uint64_t salt) {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ salt;
    for (Vertex v : vs) {
        h ^= v;
        h *= 0x100000001b3ULL;
    }
    return h;
}

struct LevelOutcome {
    Clustering clustering;
    bool guarantee_valid = true;
};

struct GlobalState {
    EnumBudget budget;
    std::uint64_t enumerated = 0;
    std::uint32_t max_depth = 0;
    std::uint64_t sample_target = 0;    // remaining fields: top level only
    std::uint64_t sample_distinct = 0;
    std::uint64_t branch_max_dis = 0;
    std::uint64_t branch_min_dis = 0;
};

// Counts agreements of a full assignment through bit rows:
// agreements = n_minus + 2 * (plus pairs within clusters) - (pairs within).
EdgeCount agreements_fast(const BitRows& rows, const std::vector<ClusterId>& assignment,
                          std::vector<std::uint64_t>& cluster_masks,
                          std::vector<std::uint64_t>& sizes, ClusterId k,
                          std::uint64_t n_minus) {
    const std::size_t words = rows.words();
    std::fill(cluster_masks.begin(), cluster_masks.end(), 0);
    std::fill(sizes.begin(), sizes.end(), 0);
    for (Vertex v = 0; v < assignment.size(); ++v) {
        cluster_masks[assignment[v] * words + (v >> 6)] |= 1ULL << (v & 63);
        ++sizes[assignment[v]];
    }
    std::uint64_t plus_within_twice = 0;
    for (Vertex v = 0; v < assignment.size(); ++v) {
        const std::uint64_t* row = rows.plus_row(v);
        const std::uint64_t* mask = cluster_masks.data() + assignment[v] * words;
        for (std::size_t w = 0; w < words; ++w)
            plus_within_twice += std::popcount(row[w] & mask[w]);
    }
    std::uint64_t within_pairs = 0;
    for (ClusterId j = 0; j < k; ++j) within_pairs += sizes[j] * (sizes[j] - 1) / 2;
    return n_minus + plus_within_twice - within_pairs;
}

LevelOutcome solve_level(const SignedCompleteGraph& g, const MinDisParams& params,
                         std::uint32_t depth, GlobalState& state) {
    const std::uint32_t n = g.n();
    const ClusterId k = params.base.k;
    state.max_depth = std::max(state.max_depth, depth);

    if (k == 1 || n <= 1) {
        if (depth == 0) {
            const std::uint64_t dis = n <= 1 ? 0 : g.minus_count();
            state.branch_max_dis = dis;
            state.branch_min_dis = dis;
        }
        return LevelOutcome{Clustering{k, std::vector<ClusterId>(n, 0)}, true};
    }

    // Branch 1: agreement maximizer at the accuracy the final bound needs.
    // Its additive error is eps_max * n^2 / 2, so eps_max doubles the target.
    SolverParams sub = params.base;
    const double eps = params.base.epsilon;
    sub.epsilon = 2.0 * (eps * eps * params.c1 * params.c1) /
                  (32.0 * std::pow(static_cast<double>(k), 4));
    sub.delta = 0.1;
    sub.seed = derive_seed(params.base.seed, kTagMaxAgBranch);
    sub.enumeration_budget.reset();  // the shared countdown governs
    const SolveReport clus_max = detail::max_ag_impl(g, sub, state.budget);
    state.enumerated += clus_max.trace.enumerated;
    bool valid = clus_max.guarantee_valid;

    // Branch 2: guess the clustering of a sample, place the rest by pval.
    std::vector<Vertex> sample;
    std::uint64_t draw_target = 0;
    if (params.propagate_full_sample) {
        sample.resize(n);
        for (Vertex v = 0; v < n; ++v) sample[v] = v;
        valid = false;  // sampling mode overridden
    } else {
        const double beta = beta_param(eps, k, params.c1);
        draw_target = params.base.sample_override ? *params.base.sample_override
                                                  : theoretical_sample_size_min(n, beta);
        Rng rng(derive_seed(params.base.seed, kTagSample));
        sample = detail::sample_distinct(rng, n, 0, 0, draw_target);
        if (params.base.sample_override) valid = false;
    }
    if (depth == 0) {
        state.sample_target = params.propagate_full_sample ? n : draw_target;
        state.sample_distinct = sample.size();
    }

    const std::size_t d = sample.size();
    std::vector<bool> in_sample(n, false);
    for (Vertex s : sample) in_sample[s] = true;
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < n; ++v)
        if (!in_sample[v]) rest.push_back(v);

    const BitRows rows(g);
    const std::uint64_t n_minus = g.minus_count();
    std::vector<std::uint64_t> cluster_masks(static_cast<std::size_t>(k) * rows.words());
    std::vector<std::uint64_t> size_scratch(k);

    // memo for the recursive subproblems; the recursion seed depends only on
    // the vertex set and s, so equal keys really are the same subproblem
    std::map<std::pair<std::vector<Vertex>, ClusterId>, LevelOutcome> memo;

    bool have_best = false;
    std::uint64_t best_agree = 0;
    std::vector<ClusterId> best_assignment;
    bool best_valid = true;

    std::vector<ClusterId> sig(d, 0);  // sample assignment, digit 0 fastest
    std::vector<ClusterId> assignment(n, 0);
    std::vector<std::uint64_t> plus_into(k), minus_into(k);
    std::vector<std::vector<Vertex>> clusters(k);

    for (std::uint64_t index = 0;; ++index) {
        if (!state.budget.allow(index)) break;
        ++state.enumerated;

        for (ClusterId j = 0; j < k; ++j) clusters[j].clear();
        for (std::size_t s = 0; s < d; ++s) {
            assignment[sample[s]] = sig[s];
            clusters[sig[s]].push_back(sample[s]);
        }

        // place each remaining vertex into its best part w.r.t. the sample
        for (Vertex u : rest) {
            std::fill(plus_into.begin(), plus_into.end(), 0);
            std::fill(minus_into.begin(), minus_into.end(), 0);
            std::uint64_t minus_total = 0;
            for (std::size_t s = 0; s < d; ++s) {
                if (g.is_plus(u, sample[s])) {
                    ++plus_into[sig[s]];
                } else {
                    ++minus_into[sig[s]];
                    ++minus_total;
                }
            }
            ClusterId best_j = 0;
            std::uint64_t best_num = plus_into[0] + (minus_total - minus_into[0]);
            for (ClusterId j = 1; j < k; ++j) {
                const std::uint64_t num = plus_into[j] + (minus_total - minus_into[j]);
                if (num > best_num) {  // ties keep the smaller index
                    best_num = num;
                    best_j = j;
                }
            }
            assignment[u] = best_j;
            clusters[best_j].push_back(u);
        }

        // split off the small clusters and re-cluster them with fewer parts
        std::vector<ClusterId> small_ids;
        for (ClusterId j = 0; j < k; ++j)
            if (2 * static_cast<std::uint64_t>(k) * clusters[j].size() < n)
                small_ids.push_back(j);
        const auto s_count = static_cast<ClusterId>(small_ids.size());
        assert(s_count < k);

        bool candidate_valid = true;
        if (s_count >= 1) {
            std::vector<Vertex> w;
            for (ClusterId j : small_ids)
                w.insert(w.end(), clusters[j].begin(), clusters[j].end());
            if (!w.empty()) {
                std::sort(w.begin(), w.end());
                const auto key = std::make_pair(w, s_count);
                auto it = memo.find(key);
                if (it == memo.end()) {
                    MinDisParams rec = params;
                    rec.base.k = s_count;
                    rec.base.epsilon = eps / 10.0;
                    rec.base.seed = derive_seed(derive_seed(params.base.seed, kTagRecursion),
                                                hash_vertices(w, s_count));
                    const SignedCompleteGraph sub_g = induced_subgraph(g, w);
                    it = memo.emplace(key, solve_level(sub_g, rec, depth + 1, state)).first;
                }
                const LevelOutcome& rec_out = it->second;
                candidate_valid = rec_out.guarantee_valid;
                for (std::size_t t = 0; t < w.size(); ++t)
                    assignment[w[t]] = small_ids[rec_out.clustering.assignment[t]];
            }
        }

        const EdgeCount agree =
            agreements_fast(rows, assignment, cluster_masks, size_scratch, k, n_minus);
        if (!have_best || agree >= best_agree) {  // ties keep the latest, as specified
            have_best = true;
            best_agree = agree;
            best_assignment = assignment;
            best_valid = candidate_valid;
        }

        std::size_t pos = 0;
        while (pos < d && sig[pos] == k - 1) sig[pos++] = 0;
        if (pos == d) break;
        ++sig[pos];
    }

    valid = valid && best_valid && !state.budget.truncated;

    // better of the two branches by disagreements (= larger agreement count)
    const EdgeCount max_branch_agree = clus_max.agreements;
    if (depth == 0) {
        state.branch_max_dis = g.pair_count() - max_branch_agree;
        state.branch_min_dis = have_best ? g.pair_count() - best_agree : state.branch_max_dis;
    }
    if (have_best && best_agree >= max_branch_agree)
        return LevelOutcome{Clustering{k, std::move(best_assignment)}, valid};
    return LevelOutcome{clus_max.clustering, valid};
}

}  // namespace

SolveReport min_dis_ag(const SignedCompleteGraph& g, const MinDisParams& params) {
    const auto t0 = std::chrono::steady_clock::now();
    params.validate();
    GlobalState state{EnumBudget(params.base.enumeration_budget), 0, 0, 0, 0};
    LevelOutcome out = solve_level(g, params, 0, state);

    SolveReport report;
    report.clustering = std::move(out.clustering);
    report.agreements = agreements(g, report.clustering);
    report.disagreements = g.pair_count() - report.agreements;
    report.guarantee_valid = out.guarantee_valid && !state.budget.truncated;
    report.trace.enumerated = state.enumerated;
    report.trace.recursion_depth = state.max_depth;
    report.trace.sample_target = state.sample_target;
    report.trace.sample_distinct_min = state.sample_distinct;
    report.trace.sample_distinct_max = state.sample_distinct;
    report.trace.truncated = state.budget.truncated;
    report.trace.branch_max_disagreements = state.branch_max_dis;
    report.trace.branch_min_disagreements = state.branch_min_dis;
    report.trace.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

Clustering local_switch_improve(const SignedCompleteGraph& g, const Clustering& c,
                                std::uint32_t max_rounds) {
    check_clustering(c);
    if (c.assignment.size() != g.n())
        throw std::invalid_argument("local_switch_improve: clustering length mismatch");
    Clustering work = c;
    const std::uint32_t n = g.n();
    const ClusterId k = work.k;
    std::vector<std::uint64_t> plus_into(k), minus_into(k);
    for (std::uint32_t round = 0; round < max_rounds; ++round) {
        bool improved = false;
        for (Vertex u = 0; u < n; ++u) {
            std::fill(plus_into.begin(), plus_into.end(), 0);
            std::fill(minus_into.begin(), minus_into.end(), 0);
            std::uint64_t minus_total = 0;
            for (Vertex w = 0; w < n; ++w) {
                if (w == u) continue;
                if (g.is_plus(u, w)) {
                    ++plus_into[work.assignment[w]];
                } else {
                    ++minus_into[work.assignment[w]];
                    ++minus_total;
                }
            }
            ClusterId best_j = 0;
            std::uint64_t best_num = plus_into[0] + (minus_total - minus_into[0]);
            for (ClusterId j = 1; j < k; ++j) {
                const std::uint64_t num = plus_into[j] + (minus_total - minus_into[j]);
                if (num > best_num) {
                    best_num = num;
                    best_j = j;
                }
            }
            const ClusterId cur = work.assignment[u];
            const std::uint64_t cur_num = plus_into[cur] + (minus_total - minus_into[cur]);
            if (best_num > cur_num) {  // strict improvement only
                work.assignment[u] = best_j;
                improved = true;
            }
        }
        if (!improved) break;
    }
    return work;
}

}  // namespace corrclus
