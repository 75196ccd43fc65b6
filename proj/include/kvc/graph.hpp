#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kvc/error.hpp"

namespace kvc {

using Vertex = int;

// Sorted, duplicate-free list of vertex ids. Comparison is lexicographic on
// the sorted members, which is the tie-break order used everywhere.
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::initializer_list<Vertex> init) : members_(init) { normalize(); }
    explicit VertexSet(std::vector<Vertex> members) : members_(std::move(members)) { normalize(); }

    static VertexSet range(int n)
    {
        VertexSet s;
        s.members_.resize(static_cast<std::size_t>(std::max(n, 0)));
        for (int i = 0; i < n; ++i) s.members_[static_cast<std::size_t>(i)] = i;
        return s;
    }

    bool contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    Vertex operator[](std::size_t i) const { return members_[i]; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }
    const std::vector<Vertex>& members() const { return members_; }

    void insert(Vertex v)
    {
        auto it = std::lower_bound(members_.begin(), members_.end(), v);
        if (it == members_.end() || *it != v) members_.insert(it, v);
    }

    void erase(Vertex v)
    {
        auto it = std::lower_bound(members_.begin(), members_.end(), v);
        if (it != members_.end() && *it == v) members_.erase(it);
    }

    bool subset_of(const VertexSet& other) const
    {
        return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
    }

    friend auto operator<=>(const VertexSet&, const VertexSet&) = default;
    friend bool operator==(const VertexSet&, const VertexSet&) = default;

    friend VertexSet set_union(const VertexSet& a, const VertexSet& b)
    {
        VertexSet r;
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.members_));
        return r;
    }
    friend VertexSet set_intersection(const VertexSet& a, const VertexSet& b)
    {
        VertexSet r;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.members_));
        return r;
    }
    friend VertexSet set_difference(const VertexSet& a, const VertexSet& b)
    {
        VertexSet r;
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.members_));
        return r;
    }

private:
    void normalize()
    {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    std::vector<Vertex> members_;
};

// Per-vertex membership flags over 0..n-1; used by the masked algorithms that
// work on G[alive] without materializing the induced subgraph.
using VertexMask = std::vector<char>;

inline VertexMask full_mask(int n) { return VertexMask(static_cast<std::size_t>(n), 1); }

inline VertexMask mask_of(int n, const VertexSet& s)
{
    VertexMask m(static_cast<std::size_t>(n), 0);
    for (Vertex v : s) m[static_cast<std::size_t>(v)] = 1;
    return m;
}

inline VertexSet set_of(const VertexMask& m)
{
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < m.size(); ++v)
        if (m[v]) out.push_back(static_cast<Vertex>(v));
    return VertexSet(std::move(out));
}

// Finite undirected simple graph on vertices 0..n-1. Neighbour lists are kept
// sorted; labels are metadata only.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n)
        : adj_(n < 0 ? throw precondition_error("graph order must be nonnegative") : static_cast<std::size_t>(n))
    {
    }

    static Graph complete(int n)
    {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
        return g;
    }
    static Graph cycle(int n)
    {
        Graph g(n);
        for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
        return g;
    }
    static Graph path(int n)
    {
        Graph g(n);
        for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
        return g;
    }
    static Graph star(int leaves)
    {
        Graph g(leaves + 1);
        for (int v = 1; v <= leaves; ++v) g.add_edge(0, v);
        return g;
    }
    static Graph complete_bipartite(int a, int b)
    {
        Graph g(a + b);
        for (int u = 0; u < a; ++u)
            for (int v = 0; v < b; ++v) g.add_edge(u, a + v);
        return g;
    }

    int order() const { return static_cast<int>(adj_.size()); }
    std::size_t size() const { return edge_count_; }

    /// Throws input_error on a loop, a duplicate or an endpoint out of range.
    void add_edge(Vertex u, Vertex v)
    {
        if (u < 0 || v < 0 || u >= order() || v >= order())
            throw input_error("edge (" + std::to_string(u) + "," + std::to_string(v) + ") has an endpoint out of range");
        if (u == v) throw input_error("self-loop at vertex " + std::to_string(u));
        auto& nu = adj_[static_cast<std::size_t>(u)];
        auto it = std::lower_bound(nu.begin(), nu.end(), v);
        if (it != nu.end() && *it == v)
            throw input_error("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        nu.insert(it, v);
        auto& nv = adj_[static_cast<std::size_t>(v)];
        nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
        ++edge_count_;
    }

    bool adjacent(Vertex u, Vertex v) const
    {
        const auto& nu = adj_[static_cast<std::size_t>(u)];
        return std::binary_search(nu.begin(), nu.end(), v);
    }

    std::span<const Vertex> neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

    int max_degree() const
    {
        int d = 0;
        for (const auto& n : adj_) d = std::max(d, static_cast<int>(n.size()));
        return d;
    }

    std::vector<std::pair<Vertex, Vertex>> edges() const
    {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(edge_count_);
        for (Vertex u = 0; u < order(); ++u)
            for (Vertex v : neighbors(u))
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> labels)
    {
        if (!labels.empty() && labels.size() != adj_.size())
            throw input_error("label count " + std::to_string(labels.size()) + " does not match vertex count " +
                              std::to_string(adj_.size()));
        labels_ = std::move(labels);
    }

    bool valid(const VertexSet& s) const { return s.empty() || (s[0] >= 0 && s.members().back() < order()); }

    friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_ && a.labels_ == b.labels_; }

private:
    std::vector<std::vector<Vertex>> adj_;
    std::size_t edge_count_ = 0;
    std::vector<std::string> labels_;
};

inline void require_valid(const Graph& g, const VertexSet& s, const char* what)
{
    if (!g.valid(s))
        throw precondition_error(std::string(what) + " contains a vertex outside 0.." + std::to_string(g.order() - 1));
}

} // namespace kvc
