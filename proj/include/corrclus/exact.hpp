#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "corrclus/solver.hpp"

namespace corrclus {

/// Enumerating past this many vertices is refused with a FeasibilityError;
/// the Bell numbers grow too fast for anything beyond it.
inline constexpr std::uint32_t kEnumerationHardCap = 16;

/// Cursor over restricted growth strings of length n with block cap `cap`,
/// in lexicographic order. An RGS encodes a set partition canonically
/// (rgs[0] = 0, each symbol at most one above the prefix maximum), so each
/// partition into at most `cap` blocks appears exactly once.
class PartitionCursor {
public:
    PartitionCursor(std::uint32_t n, std::uint32_t cap);

    const std::vector<std::uint32_t>& rgs() const { return rgs_; }
    std::uint32_t cap() const { return cap_; }

    /// Advance to the lexicographic successor, modifying only positions
    /// >= floor_pos. Returns false once exhausted. The position of the
    /// leftmost change is available through last_changed().
    bool advance(std::uint32_t floor_pos = 1);

    std::uint32_t last_changed() const { return last_changed_; }

    /// Reset to `prefix` followed by zeros. The prefix must itself be a
    /// valid RGS under the cap.
    void set_prefix(std::span<const std::uint32_t> prefix);

private:
    std::vector<std::uint32_t> rgs_;
    std::vector<std::uint32_t> prefix_max_;  // prefix_max_[i] = max rgs_[0..i-1]
    std::uint32_t cap_;
    std::uint32_t last_changed_;
};

/// Number of set partitions of [n] into at most k blocks
/// (sum of Stirling numbers of the second kind).
std::uint64_t partition_count(std::uint32_t n, std::uint32_t k);

/// Calls fn once per partition of [n] into at most k blocks, as a Clustering
/// with the given k, in RGS-lexicographic order.
void enumerate_partitions(std::uint32_t n, std::uint32_t k,
                          const std::function<void(const Clustering&)>& fn,
                          std::uint32_t hard_cap = kEnumerationHardCap);

/// Exhaustive optimum over all clusterings into at most k clusters. Ties are
/// broken towards the earliest partition in enumeration order (equivalently
/// the lexicographically smallest RGS), which makes the result independent
/// of the number of worker threads.
SolveReport exact_best(const SignedCompleteGraph& g, ClusterId k, Objective objective,
                       unsigned threads = 1, std::uint32_t hard_cap = kEnumerationHardCap);

}  // namespace corrclus
