#include "corrclus/maxagree.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace corrclus {

PiecePartition::Range PiecePartition::range(std::uint64_t i) const {
    if (i >= m) throw std::invalid_argument("piece index out of range");
    const std::uint64_t q = n / m;
    const std::uint64_t r = n % m;
    std::uint64_t begin, size;
    if (i < r) {
        size = q + 1;
        begin = i * (q + 1);
    } else {
        size = q;
        begin = r * (q + 1) + (i - r) * q;
    }
    return Range{static_cast<Vertex>(begin), static_cast<Vertex>(begin + size)};
}

PiecePartition piece_partition(std::uint32_t n, double epsilon) {
    if (n == 0) throw std::invalid_argument("piece_partition: n must be >= 1");
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw std::invalid_argument("piece_partition: epsilon must be in (0,1]");
    const double m_real = std::ceil(4.0 / epsilon);
    PiecePartition pp;
    pp.n = n;
    pp.m = m_real >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max()
                            : static_cast<std::uint64_t>(m_real);
    return pp;
}

std::uint64_t theoretical_sample_size(double epsilon, double delta, ClusterId k,
                                      std::uint64_t m) {
    if (!(epsilon > 0.0) || !(delta > 0.0) || k < 1 || m < 1)
        throw std::invalid_argument("theoretical_sample_size: bad parameters");
    const long double x = (512.0L / (static_cast<long double>(epsilon) * epsilon)) *
                          std::log(64.0L * static_cast<long double>(m) * k /
                                   (static_cast<long double>(epsilon) * delta));
    const long double r = std::ceil(x);
    if (!(r < 1.8e19L)) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(r);
}

namespace {

void check_sample_parts(const SignedCompleteGraph& g, Vertex v,
                        const std::vector<std::vector<Vertex>>& parts) {
    std::vector<bool> seen(g.n(), false);
    for (const auto& part : parts)
        for (Vertex s : part) {
            if (s >= g.n()) throw std::invalid_argument("sample vertex out of range");
            if (s == v) throw std::invalid_argument("sample must not contain the placed vertex");
            if (seen[s]) throw std::invalid_argument("sample parts must be disjoint");
            seen[s] = true;
        }
}

}  // namespace

std::vector<std::uint64_t> beta_scores(const SignedCompleteGraph& g, Vertex v,
                                       const std::vector<std::vector<Vertex>>& sample_parts) {
    if (v >= g.n()) throw std::invalid_argument("beta_scores: vertex out of range");
    check_sample_parts(g, v, sample_parts);
    const std::size_t k = sample_parts.size();
    std::vector<std::uint64_t> plus_into(k, 0), minus_into(k, 0);
    std::uint64_t minus_total = 0;
    for (std::size_t j = 0; j < k; ++j)
        for (Vertex s : sample_parts[j]) {
            if (g.is_plus(v, s)) {
                ++plus_into[j];
            } else {
                ++minus_into[j];
                ++minus_total;
            }
        }
    std::vector<std::uint64_t> beta(k, 0);
    for (std::size_t j = 0; j < k; ++j) beta[j] = plus_into[j] + (minus_total - minus_into[j]);
    return beta;
}

std::vector<ClusterId> place_piece(const SignedCompleteGraph& g,
                                   const std::vector<Vertex>& piece,
                                   const std::vector<std::vector<Vertex>>& sample_parts) {
    std::vector<ClusterId> out;
    out.reserve(piece.size());
    for (Vertex v : piece) {
        const auto beta = beta_scores(g, v, sample_parts);
        ClusterId best = 0;
        for (ClusterId j = 1; j < beta.size(); ++j)
            if (beta[j] > beta[best]) best = j;  // ties keep the smaller index
        out.push_back(best);
    }
    return out;
}

std::uint64_t score_piece_placement(const SignedCompleteGraph& g,
                                    const std::vector<Vertex>& piece,
                                    const std::vector<ClusterId>& placement,
                                    const std::vector<std::vector<Vertex>>& sample_parts) {
    if (piece.size() != placement.size())
        throw std::invalid_argument("score_piece_placement: placement length mismatch");
    std::uint64_t score = 0;
    for (std::size_t t = 0; t < piece.size(); ++t) {
        const Vertex v = piece[t];
        for (ClusterId j = 0; j < sample_parts.size(); ++j)
            for (Vertex s : sample_parts[j]) {
                const bool same = placement[t] == j;
                if (g.is_plus(v, s) == same) ++score;
            }
    }
    return score;
}

namespace detail {

std::vector<Vertex> sample_distinct(Rng& rng, std::uint32_t n, Vertex ex_begin, Vertex ex_end,
                                    std::uint64_t draws) {
    const std::uint64_t excluded = ex_end - ex_begin;
    const std::uint64_t pool = n - excluded;
    std::vector<Vertex> out;
    if (pool == 0 || draws == 0) return out;
    std::vector<bool> seen(n, false);
    std::uint64_t distinct = 0;
    for (std::uint64_t d = 0; d < draws && distinct < pool; ++d) {
        auto x = static_cast<Vertex>(rng.below(pool));
        if (x >= ex_begin) x += static_cast<Vertex>(excluded);
        if (!seen[x]) {
            seen[x] = true;
            ++distinct;
        }
    }
    out.reserve(distinct);
    for (Vertex v = 0; v < n; ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

PieceOutcome solve_piece(const SignedCompleteGraph& g, PiecePartition::Range piece,
                         std::span<const ClusterId> placed, std::span<const Vertex> sample,
                         ClusterId k, EnumBudget& budget) {
    const std::size_t d = sample.size();
    const std::uint32_t piece_size = piece.size();

    // score contributions of the already placed vertices towards each
    // hypothetical part of every sample vertex
    std::vector<std::uint64_t> chain_plus(d * k, 0), chain_minus(d * k, 0);
    std::vector<std::uint64_t> chain_minus_total(d, 0);
    for (Vertex x = 0; x < g.n(); ++x) {
        if (placed[x] == kUnplaced) continue;
        if (std::binary_search(sample.begin(), sample.end(), x)) continue;
        for (std::size_t s = 0; s < d; ++s) {
            if (g.is_plus(x, sample[s])) {
                ++chain_plus[s * k + placed[x]];
            } else {
                ++chain_minus[s * k + placed[x]];
                ++chain_minus_total[s];
            }
        }
    }

    PieceOutcome best;
    best.placement.assign(piece_size, 0);

    // Sample vertices already placed by an earlier piece keep that label: a
    // free digit could reward a hypothesis that contradicts the union built
    // so far. Only the unplaced sample vertices are enumerated.
    std::vector<ClusterId> sig(d, 0);  // current sample assignment
    std::vector<std::size_t> free_digits;
    for (std::size_t s = 0; s < d; ++s) {
        if (placed[sample[s]] != kUnplaced)
            sig[s] = placed[sample[s]];
        else
            free_digits.push_back(s);  // digit 0 of the counter varies fastest
    }

    std::vector<ClusterId> cand(piece_size, 0);  // candidate piece placement
    std::vector<std::uint64_t> plus_into(k), minus_into(k);
    bool have_best = false;

    for (std::uint64_t index = 0;; ++index) {
        if (!budget.allow(index)) break;

        std::uint64_t score = 0;
        for (std::uint32_t t = 0; t < piece_size; ++t) {
            const Vertex v = piece.begin + t;
            std::fill(plus_into.begin(), plus_into.end(), 0);
            std::fill(minus_into.begin(), minus_into.end(), 0);
            std::uint64_t minus_total = 0;
            for (std::size_t s = 0; s < d; ++s) {
                if (g.is_plus(v, sample[s])) {
                    ++plus_into[sig[s]];
                } else {
                    ++minus_into[sig[s]];
                    ++minus_total;
                }
            }
            ClusterId best_j = 0;
            std::uint64_t best_beta = plus_into[0] + (minus_total - minus_into[0]);
            for (ClusterId j = 1; j < k; ++j) {
                const std::uint64_t beta = plus_into[j] + (minus_total - minus_into[j]);
                if (beta > best_beta) {
                    best_beta = beta;
                    best_j = j;
                }
            }
            cand[t] = best_j;
            score += best_beta;
        }
        for (std::size_t s = 0; s < d; ++s)
            score += chain_plus[s * k + sig[s]] +
                     (chain_minus_total[s] - chain_minus[s * k + sig[s]]);

        ++best.tried;
        if (!have_best || score > best.best_score) {  // first-enumerated wins ties
            have_best = true;
            best.best_score = score;
            best.placement = cand;
        }

        // next assignment of the free sample vertices into k parts
        std::size_t pos = 0;
        while (pos < free_digits.size() && sig[free_digits[pos]] == k - 1)
            sig[free_digits[pos++]] = 0;
        if (pos == free_digits.size()) break;
        ++sig[free_digits[pos]];
    }
    return best;
}

SolveReport max_ag_impl(const SignedCompleteGraph& g, const SolverParams& params,
                        EnumBudget& budget) {
    const auto t0 = std::chrono::steady_clock::now();
    params.validate();
    const std::uint32_t n = g.n();
    const ClusterId k = params.k;

    const PiecePartition pieces = piece_partition(n, params.epsilon);
    const std::uint64_t r_target =
        params.sample_override ? *params.sample_override
                               : theoretical_sample_size(params.epsilon, params.delta, k,
                                                         pieces.count());

    SolveReport report;
    report.trace.pieces_total = pieces.count();
    report.trace.pieces_nonempty = pieces.nonempty_count();
    report.trace.sample_target = r_target;

    const Rng piece_streams(derive_seed(params.seed, /*key=*/1));
    std::vector<ClusterId> assign(n, detail::kUnplaced);
    for (std::uint64_t i = 0; i < pieces.nonempty_count(); ++i) {
        const auto range = pieces.range(i);
        Rng rng = piece_streams.child(i);
        const auto sample = sample_distinct(rng, n, range.begin, range.end, r_target);
        const auto outcome = solve_piece(g, range, assign, sample, k, budget);
        for (std::uint32_t t = 0; t < range.size(); ++t)
            assign[range.begin + t] = outcome.placement[t];

        report.trace.enumerated += outcome.tried;
        const std::uint64_t ds = sample.size();
        if (i == 0 || ds < report.trace.sample_distinct_min)
            report.trace.sample_distinct_min = ds;
        report.trace.sample_distinct_max = std::max(report.trace.sample_distinct_max, ds);
    }

    // never return anything worse than the trivial baselines
    Clustering united{k, std::move(assign)};
    Clustering all_one{k, std::vector<ClusterId>(n, 0)};
    Clustering round_robin{k, std::vector<ClusterId>(n, 0)};
    for (Vertex v = 0; v < n; ++v) round_robin.assignment[v] = v % k;

    const Clustering* choice = &united;
    EdgeCount best_agree = agreements(g, united);
    for (const Clustering* c : {&all_one, &round_robin}) {
        const EdgeCount a = agreements(g, *c);
        if (a > best_agree) {
            best_agree = a;
            choice = c;
        }
    }

    report.clustering = *choice;
    report.agreements = best_agree;
    report.disagreements = g.pair_count() - best_agree;
    report.trace.truncated = budget.truncated;
    report.guarantee_valid = !params.sample_override && !budget.truncated;
    report.trace.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace detail

SolveReport max_ag(const SignedCompleteGraph& g, const SolverParams& params) {
    detail::EnumBudget budget(params.enumeration_budget);
    return detail::max_ag_impl(g, params, budget);
}

}  // namespace corrclus
