#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "corrclus/instance.hpp"

namespace corrclus {

enum class Objective { MinDisagreements, MaxAgreements };

/// Raised when a request exceeds a hard feasibility limit (e.g. asking the
/// exact oracle to enumerate past its vertex cap).
struct FeasibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverParams {
    ClusterId k = 2;
    double epsilon = 0.5;
    double delta = 0.1;
    std::uint64_t seed = 0;
    /// Per-sample draw count replacing the theoretical size. Practical runs
    /// need this; setting it clears guarantee_valid on the report.
    std::optional<std::uint64_t> sample_override;
    /// Cap on the total number of sample clusterings evaluated across the
    /// whole solve (recursive calls included).
    std::optional<std::uint64_t> enumeration_budget;

    void validate() const {
        if (k < 1) throw std::invalid_argument("params: k must be >= 1");
        if (!(epsilon > 0.0) || epsilon > 1.0)
            throw std::invalid_argument("params: epsilon must be in (0,1]");
        if (!(delta > 0.0) || delta > 1.0)
            throw std::invalid_argument("params: delta must be in (0,1]");
        if (sample_override && *sample_override < 1)
            throw std::invalid_argument("params: sample override must be >= 1");
    }
};

struct TraceInfo {
    std::uint64_t pieces_total = 0;     // m (piece-based solver only)
    std::uint64_t pieces_nonempty = 0;
    std::uint64_t sample_target = 0;    // draws requested per sample
    std::uint64_t sample_distinct_min = 0;
    std::uint64_t sample_distinct_max = 0;
    std::uint64_t enumerated = 0;       // candidate clusterings evaluated
    std::uint32_t recursion_depth = 0;  // deepest recursive level reached
    bool truncated = false;             // enumeration budget was exhausted
    // two-branch minimizer only: disagreement counts of the maximizer branch
    // and of the best enumeration candidate (the output takes their minimum)
    std::uint64_t branch_max_disagreements = 0;
    std::uint64_t branch_min_disagreements = 0;
    double wall_ms = 0.0;
};

struct SolveReport {
    Clustering clustering;
    EdgeCount agreements = 0;
    EdgeCount disagreements = 0;
    /// True only when theoretical sample sizes were used and every
    /// enumeration ran to completion, i.e. the analysis applies as stated.
    bool guarantee_valid = true;
    TraceInfo trace;
};

namespace detail {

/// Countdown over candidate evaluations. The first candidate at any
/// enumeration site is always admitted so a result is defined even with a
/// zero budget; admitting it while broke still marks truncation.
struct EnumBudget {
    std::optional<std::uint64_t> remaining;
    bool truncated = false;

    explicit EnumBudget(std::optional<std::uint64_t> cap) : remaining(cap) {}

    bool allow(std::uint64_t index_at_site) {
        if (!remaining) return true;
        if (*remaining == 0) {
            truncated = true;
            return index_at_site == 0;
        }
        --*remaining;
        return true;
    }
};

}  // namespace detail

}  // namespace corrclus
