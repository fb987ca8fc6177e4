#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "corrclus/rng.hpp"
#include "corrclus/solver.hpp"

namespace corrclus {

/// Balanced contiguous split of [0,n) into m index ranges whose sizes differ
/// by at most one. Ranges are computed on demand; m can be huge when the
/// accuracy is tiny, in which case all pieces past the first n are empty.
struct PiecePartition {
    std::uint32_t n = 0;
    std::uint64_t m = 1;

    struct Range {
        Vertex begin = 0;
        Vertex end = 0;  // half-open
        std::uint32_t size() const { return end - begin; }
    };

    Range range(std::uint64_t i) const;
    std::uint64_t count() const { return m; }
    /// Pieces with at least one vertex; they always come first.
    std::uint64_t nonempty_count() const { return std::min<std::uint64_t>(m, n); }
};

/// m = ceil(4/epsilon) pieces.
PiecePartition piece_partition(std::uint32_t n, double epsilon);

/// Smallest closed-form sample size satisfying the additive-Chernoff
/// requirement behind the placement rule:
/// ceil((512/eps^2) * ln(64*m*k/(eps*delta))). Saturates at uint64 max.
std::uint64_t theoretical_sample_size(double epsilon, double delta, ClusterId k,
                                      std::uint64_t m);

/// beta_j(v): agreements of v's edges into the sample if v joins part j,
/// i.e. '+' neighbours inside part j plus '-' neighbours in all other parts.
/// The parts must be pairwise disjoint and must not contain v.
std::vector<std::uint64_t> beta_scores(const SignedCompleteGraph& g, Vertex v,
                                       const std::vector<std::vector<Vertex>>& sample_parts);

/// Assigns every piece vertex to the part maximizing its beta score,
/// smallest part index on ties. Returns one cluster id per piece vertex.
std::vector<ClusterId> place_piece(const SignedCompleteGraph& g,
                                   const std::vector<Vertex>& piece,
                                   const std::vector<std::vector<Vertex>>& sample_parts);

/// Agreements on edges with one endpoint in the piece and the other in the
/// sample, under the given joint placement.
std::uint64_t score_piece_placement(const SignedCompleteGraph& g,
                                    const std::vector<Vertex>& piece,
                                    const std::vector<ClusterId>& placement,
                                    const std::vector<std::vector<Vertex>>& sample_parts);

/// Sampling-based agreement maximizer: per piece, draw a seeded sample from
/// the rest of the graph, enumerate every clustering of the sample, place
/// the piece by beta scores, and keep the best-scoring placement; the union
/// is finally compared against the trivial baselines.
SolveReport max_ag(const SignedCompleteGraph& g, const SolverParams& params);

namespace detail {

inline constexpr Vertex kUnplaced = 0xffffffffu;

/// Draw `draws` vertices u.a.r. with replacement from [0,n) minus the range
/// [ex_begin,ex_end), returning the sorted set of distinct vertices seen.
/// Stops early once the whole pool has been drawn, since further draws
/// cannot change the set.
std::vector<Vertex> sample_distinct(Rng& rng, std::uint32_t n, Vertex ex_begin, Vertex ex_end,
                                    std::uint64_t draws);

struct PieceOutcome {
    std::vector<ClusterId> placement;  // one id per piece vertex
    std::uint64_t best_score = 0;
    std::uint64_t tried = 0;
};

/// Core of one algorithm step: enumerate the assignments of `sample` into k
/// parts and keep the placement of [piece.begin, piece.end) with the highest
/// score. The score counts agreements between the sample hypothesis and both
/// the candidate piece placement and every vertex already placed (`placed`,
/// kUnplaced elsewhere); without the placed term the cluster labels chosen
/// by different pieces would be mutually arbitrary and the union of the
/// pieces would mix them. For the same reason, sample vertices that are
/// already placed keep their label instead of being enumerated.
PieceOutcome solve_piece(const SignedCompleteGraph& g, PiecePartition::Range piece,
                         std::span<const ClusterId> placed, std::span<const Vertex> sample,
                         ClusterId k, EnumBudget& budget);

/// max_ag with an externally owned budget (shared with a caller).
SolveReport max_ag_impl(const SignedCompleteGraph& g, const SolverParams& params,
                        EnumBudget& budget);

}  // namespace detail

}  // namespace corrclus
