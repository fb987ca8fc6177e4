#include "corrclus/instance.hpp"

#include <cassert>

namespace corrclus {

SignedCompleteGraph::SignedCompleteGraph(std::uint32_t n, int fill_sign) : n_(n) {
    if (n == 0) throw std::invalid_argument("SignedCompleteGraph: n must be >= 1");
    if (fill_sign != +1 && fill_sign != -1)
        throw std::invalid_argument("SignedCompleteGraph: sign must be +1 or -1");
    const std::size_t nbits = pair_count();
    bits_.assign((nbits + 63) / 64, fill_sign == +1 ? ~0ULL : 0ULL);
    if (fill_sign == +1 && (nbits & 63) != 0)
        bits_.back() &= (1ULL << (nbits & 63)) - 1;  // keep spare bits zero for popcounts
}

void SignedCompleteGraph::set_label(Vertex i, Vertex j, int sign) {
    if (sign != +1 && sign != -1)
        throw std::invalid_argument("SignedCompleteGraph: sign must be +1 or -1");
    const std::size_t idx = index_of(i, j);
    if (sign == +1)
        bits_[idx >> 6] |= 1ULL << (idx & 63);
    else
        bits_[idx >> 6] &= ~(1ULL << (idx & 63));
}

EdgeCount SignedCompleteGraph::plus_count() const {
    EdgeCount c = 0;
    for (std::uint64_t w : bits_) c += static_cast<EdgeCount>(__builtin_popcountll(w));
    return c;
}

std::vector<Vertex> SignedCompleteGraph::gamma_plus(Vertex v) const {
    if (v >= n_) throw std::invalid_argument("gamma_plus: vertex out of range");
    std::vector<Vertex> out;
    for (Vertex u = 0; u < n_; ++u)
        if (u != v && is_plus(u, v)) out.push_back(u);
    return out;
}

std::vector<Vertex> SignedCompleteGraph::gamma_minus(Vertex v) const {
    if (v >= n_) throw std::invalid_argument("gamma_minus: vertex out of range");
    std::vector<Vertex> out;
    for (Vertex u = 0; u < n_; ++u)
        if (u != v && !is_plus(u, v)) out.push_back(u);
    return out;
}

void check_clustering(const Clustering& c) {
    for (ClusterId id : c.assignment)
        if (id >= c.k) throw std::invalid_argument("Clustering: cluster id out of range");
}

Clustering move_vertex(const Clustering& c, Vertex u, ClusterId to) {
    if (u >= c.assignment.size()) throw std::invalid_argument("move_vertex: vertex out of range");
    if (to >= c.k) throw std::invalid_argument("move_vertex: cluster id out of range");
    Clustering out = c;
    out.assignment[u] = to;
    return out;
}

namespace {

void check_sizes(const SignedCompleteGraph& g, const Clustering& c) {
    if (c.assignment.size() != g.n())
        throw std::invalid_argument("clustering length does not match instance size");
}

}  // namespace

EdgeCount agreements(const SignedCompleteGraph& g, const Clustering& c) {
    check_sizes(g, c);
    EdgeCount agree = 0;
    for (Vertex i = 0; i + 1 < g.n(); ++i)
        for (Vertex j = i + 1; j < g.n(); ++j) {
            const bool same = c.assignment[i] == c.assignment[j];
            if (g.is_plus(i, j) == same) ++agree;
        }
    return agree;
}

EdgeCount disagreements(const SignedCompleteGraph& g, const Clustering& c) {
    check_sizes(g, c);
    EdgeCount dis = 0;
    for (Vertex i = 0; i + 1 < g.n(); ++i)
        for (Vertex j = i + 1; j < g.n(); ++j) {
            const bool same = c.assignment[i] == c.assignment[j];
            if (g.is_plus(i, j) != same) ++dis;
        }
    assert(dis == g.pair_count() - agreements(g, c));
    return dis;
}

std::uint64_t agreeing_edges_at(const SignedCompleteGraph& g, const Clustering& c, Vertex u) {
    check_sizes(g, c);
    if (u >= g.n()) throw std::invalid_argument("vertex out of range");
    std::uint64_t agree = 0;
    for (Vertex w = 0; w < g.n(); ++w) {
        if (w == u) continue;
        const bool same = c.assignment[w] == c.assignment[u];
        if (g.is_plus(u, w) == same) ++agree;
    }
    return agree;
}

Fraction val(const SignedCompleteGraph& g, const Clustering& c, Vertex u) {
    if (g.n() < 2) throw std::invalid_argument("val: undefined for a single-vertex instance");
    return Fraction{agreeing_edges_at(g, c, u), g.n() - 1};
}

Fraction pval(const SignedCompleteGraph& g, const Clustering& c, Vertex u, ClusterId i) {
    check_sizes(g, c);
    if (g.n() < 2) throw std::invalid_argument("pval: undefined for a single-vertex instance");
    if (u >= g.n()) throw std::invalid_argument("pval: vertex out of range");
    if (i >= c.k) throw std::invalid_argument("pval: cluster id out of range");
    std::uint64_t agree = 0;
    for (Vertex w = 0; w < g.n(); ++w) {
        if (w == u) continue;
        const bool same = c.assignment[w] == i;
        if (g.is_plus(u, w) == same) ++agree;
    }
    return Fraction{agree, g.n() - 1};
}

SignedCompleteGraph induced_subgraph(const SignedCompleteGraph& g,
                                     std::span<const Vertex> vertices) {
    if (vertices.empty()) throw std::invalid_argument("induced_subgraph: empty vertex set");
    SignedCompleteGraph sub(static_cast<std::uint32_t>(vertices.size()));
    for (std::size_t a = 0; a + 1 < vertices.size(); ++a)
        for (std::size_t b = a + 1; b < vertices.size(); ++b)
            if (g.is_plus(vertices[a], vertices[b]))
                sub.set_label(static_cast<Vertex>(a), static_cast<Vertex>(b), +1);
    return sub;
}

BitRows::BitRows(const SignedCompleteGraph& g) {
    const std::uint32_t n = g.n();
    words_ = (n + 63) / 64;
    plus_.assign(static_cast<std::size_t>(n) * words_, 0);
    minus_.assign(static_cast<std::size_t>(n) * words_, 0);
    for (Vertex i = 0; i + 1 < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) {
            auto& rows = g.is_plus(i, j) ? plus_ : minus_;
            rows[i * words_ + (j >> 6)] |= 1ULL << (j & 63);
            rows[j * words_ + (i >> 6)] |= 1ULL << (i & 63);
        }
}

}  // namespace corrclus
