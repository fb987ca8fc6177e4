#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace corrclus {

using Vertex = std::uint32_t;
using ClusterId = std::uint32_t;
using EdgeCount = std::uint64_t;

/// Exact non-negative rational, kept unreduced. Used for the per-vertex
/// agreement fractions, whose identities must hold bit-exactly.
struct Fraction {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Fraction& a, const Fraction& b) {
        return static_cast<unsigned __int128>(a.num) * b.den ==
               static_cast<unsigned __int128>(b.num) * a.den;
    }
    friend bool operator<(const Fraction& a, const Fraction& b) {
        return static_cast<unsigned __int128>(a.num) * b.den <
               static_cast<unsigned __int128>(b.num) * a.den;
    }
};

/// Complete graph on n vertices with a +/- label per unordered pair.
/// Labels live in a flat bit-packed upper-triangular array,
/// idx(i,j) = i*n - i*(i+1)/2 + (j-i-1) for i < j; bit set means '+'.
/// Instances are built once (set_label) and treated as immutable afterwards;
/// every query is const and safe for concurrent readers.
class SignedCompleteGraph {
public:
    /// All pairs initialized to fill_sign (+1 or -1).
    explicit SignedCompleteGraph(std::uint32_t n, int fill_sign = -1);

    std::uint32_t n() const { return n_; }
    EdgeCount pair_count() const { return static_cast<EdgeCount>(n_) * (n_ - 1) / 2; }

    /// +1 or -1. Rejects i == j and out-of-range vertices.
    int label(Vertex i, Vertex j) const { return is_plus(i, j) ? +1 : -1; }

    bool is_plus(Vertex i, Vertex j) const {
        const std::size_t idx = index_of(i, j);
        return (bits_[idx >> 6] >> (idx & 63)) & 1u;
    }

    void set_label(Vertex i, Vertex j, int sign);

    EdgeCount plus_count() const;
    EdgeCount minus_count() const { return pair_count() - plus_count(); }

    /// Vertices adjacent to v via '+' edges, ascending. Together with
    /// gamma_minus(v) this partitions V \ {v}.
    std::vector<Vertex> gamma_plus(Vertex v) const;
    std::vector<Vertex> gamma_minus(Vertex v) const;

    /// Flat index of pair {i,j}; throws on i == j or out of range.
    std::size_t index_of(Vertex i, Vertex j) const {
        if (i == j || i >= n_ || j >= n_)
            throw std::invalid_argument("SignedCompleteGraph: bad vertex pair");
        if (i > j) std::swap(i, j);
        return static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i + 1) / 2 +
               (j - i - 1);
    }

private:
    std::uint32_t n_;
    std::vector<std::uint64_t> bits_;
};

/// Assignment of every vertex to one of at most k clusters (ids in [0,k)).
/// Empty clusters are fine.
struct Clustering {
    ClusterId k = 1;
    std::vector<ClusterId> assignment;
};

/// Throws invalid_argument when an id is >= k.
void check_clustering(const Clustering& c);

/// Clustering identical to c except that u is placed in cluster `to`.
Clustering move_vertex(const Clustering& c, Vertex u, ClusterId to);

EdgeCount agreements(const SignedCompleteGraph& g, const Clustering& c);
EdgeCount disagreements(const SignedCompleteGraph& g, const Clustering& c);

/// Number of edges incident on u that agree with c (the numerator of val).
std::uint64_t agreeing_edges_at(const SignedCompleteGraph& g, const Clustering& c, Vertex u);

/// Fraction of u's incident edges agreeing with c; denominator n-1.
Fraction val(const SignedCompleteGraph& g, const Clustering& c, Vertex u);

/// val after hypothetically moving u to cluster i (everything else fixed).
Fraction pval(const SignedCompleteGraph& g, const Clustering& c, Vertex u, ClusterId i);

/// Complete graph induced on the given vertices (ascending order expected);
/// vertex t of the result corresponds to vertices[t].
SignedCompleteGraph induced_subgraph(const SignedCompleteGraph& g,
                                     std::span<const Vertex> vertices);

/// Per-vertex '+' and '-' adjacency as bit rows, the workhorse for the
/// solvers' counting loops. Row v has bit u set iff label(u,v) matches the
/// row sign; the diagonal bit is always clear.
class BitRows {
public:
    explicit BitRows(const SignedCompleteGraph& g);

    std::size_t words() const { return words_; }
    const std::uint64_t* plus_row(Vertex v) const { return plus_.data() + v * words_; }
    const std::uint64_t* minus_row(Vertex v) const { return minus_.data() + v * words_; }

private:
    std::size_t words_;
    std::vector<std::uint64_t> plus_;
    std::vector<std::uint64_t> minus_;
};

}  // namespace corrclus
