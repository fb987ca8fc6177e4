#pragma once

#include <cstdint>
#include <vector>

#include "corrclus/solver.hpp"

namespace corrclus {

struct MinDisParams {
    SolverParams base;       // k, epsilon, seed and the practical overrides
    double c1 = 1.0 / 20.0;  // the absolute constant of the analysis
    /// Testing mode: use S = V at every recursion level. With the whole
    /// vertex set enumerated the solver is exact (and slow).
    bool propagate_full_sample = false;

    void validate() const {
        base.validate();
        if (!(c1 > 0.0)) throw std::invalid_argument("params: c1 must be positive");
    }
};

/// beta = c1 * epsilon / (16 k^2).
double beta_param(double epsilon, ClusterId k, double c1 = 1.0 / 20.0);

/// ceil(5 ln(n) / beta^2) sample draws. Saturates at uint64 max.
std::uint64_t theoretical_sample_size_min(std::uint32_t n, double beta);

/// Fraction of edges from u into the sample that agree when u is placed in
/// part i: numerator counts agreements, denominator is the (distinct)
/// sample size. u must not be in the sample, which must be nonempty.
Fraction pval_sample(const SignedCompleteGraph& g, Vertex u,
                     const std::vector<std::vector<Vertex>>& sample_parts, ClusterId i);

struct LargeSmall {
    std::vector<ClusterId> large;
    std::vector<ClusterId> small;
};

/// Splits cluster ids by the size threshold n/(2k), compared exactly as
/// 2k|C_j| >= n. At least one cluster is always large, so |small| < k.
LargeSmall classify_large_small(const std::vector<std::vector<Vertex>>& clusters,
                                std::uint64_t n);

/// Recursive disagreement minimizer: run the agreement maximizer at high
/// accuracy, enumerate all clusterings of a seeded sample, place every
/// remaining vertex by pval, re-cluster the small clusters recursively with
/// fewer parts, and return whichever of the two branch outputs has fewer
/// disagreements.
SolveReport min_dis_ag(const SignedCompleteGraph& g, const MinDisParams& params);

/// Round-based single-vertex hill climbing: scan vertices in index order and
/// move each to its best cluster when that strictly improves its agreeing
/// edge count, until a fixpoint or max_rounds. Never increases the number of
/// disagreements.
Clustering local_switch_improve(const SignedCompleteGraph& g, const Clustering& c,
                                std::uint32_t max_rounds);

}  // namespace corrclus
