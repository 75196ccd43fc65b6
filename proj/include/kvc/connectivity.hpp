#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "kvc/graph.hpp"

namespace kvc {

namespace detail {

inline bool alive_at(const VertexMask* alive, Vertex v) { return alive == nullptr || (*alive)[static_cast<std::size_t>(v)]; }

inline std::vector<Vertex> alive_list(const Graph& g, const VertexMask* alive)
{
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.order(); ++v)
        if (alive_at(alive, v)) out.push_back(v);
    return out;
}

} // namespace detail

/// Connected component id per vertex of G[alive]; dead vertices get -1.
struct Components {
    std::vector<int> id;
    int count = 0;
};

inline Components components(const Graph& g, const VertexMask* alive = nullptr)
{
    Components c;
    c.id.assign(static_cast<std::size_t>(g.order()), -1);
    std::vector<Vertex> stack;
    for (Vertex r = 0; r < g.order(); ++r) {
        if (!detail::alive_at(alive, r) || c.id[static_cast<std::size_t>(r)] != -1) continue;
        c.id[static_cast<std::size_t>(r)] = c.count;
        stack.push_back(r);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v)) {
                if (!detail::alive_at(alive, w) || c.id[static_cast<std::size_t>(w)] != -1) continue;
                c.id[static_cast<std::size_t>(w)] = c.count;
                stack.push_back(w);
            }
        }
        ++c.count;
    }
    return c;
}

/// False for the empty graph.
inline bool is_connected(const Graph& g, const VertexMask* alive = nullptr)
{
    return components(g, alive).count == 1;
}

struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_original;   // new id -> old id
    std::vector<Vertex> from_original; // old id -> new id, -1 if dropped
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s)
{
    require_valid(g, s, "induced vertex set");
    InducedSubgraph out;
    out.to_original = s.members();
    out.from_original.assign(static_cast<std::size_t>(g.order()), -1);
    for (std::size_t i = 0; i < s.size(); ++i) out.from_original[static_cast<std::size_t>(s[i])] = static_cast<Vertex>(i);
    out.graph = Graph(static_cast<int>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i)
        for (Vertex w : g.neighbors(s[i])) {
            Vertex j = out.from_original[static_cast<std::size_t>(w)];
            if (j > static_cast<Vertex>(i)) out.graph.add_edge(static_cast<Vertex>(i), j);
        }
    if (!g.labels().empty()) {
        std::vector<std::string> labels;
        for (Vertex v : s) labels.push_back(g.labels()[static_cast<std::size_t>(v)]);
        out.graph.set_labels(std::move(labels));
    }
    return out;
}

namespace detail {

// Unit vertex-capacity flow network: v_in = 2v, v_out = 2v + 1.
class SplitFlow {
public:
    SplitFlow(const Graph& g, const VertexMask* alive, Vertex s, Vertex t) : g_(g), s_(s), t_(t)
    {
        const int n = g.order();
        const int big = n + 1;
        arcs_.assign(static_cast<std::size_t>(2 * n), {});
        for (Vertex v = 0; v < n; ++v) {
            if (!alive_at(alive, v)) continue;
            add(2 * v, 2 * v + 1, (v == s || v == t) ? big : 1);
            for (Vertex w : g.neighbors(v)) {
                if (!alive_at(alive, w) || w == s || v == t) continue;
                add(2 * v + 1, 2 * w, big);
            }
        }
    }

    // Augments until the flow reaches cap or no path remains; returns the flow value.
    int run(int cap)
    {
        const int source = 2 * s_ + 1, sink = 2 * t_;
        while (flow_ < cap) {
            std::vector<std::pair<int, int>> via(arcs_.size(), {-1, -1});
            std::vector<char> seen(arcs_.size(), 0);
            std::queue<int> q;
            q.push(source);
            seen[static_cast<std::size_t>(source)] = 1;
            while (!q.empty() && !seen[static_cast<std::size_t>(sink)]) {
                int x = q.front();
                q.pop();
                for (std::size_t i = 0; i < arcs_[static_cast<std::size_t>(x)].size(); ++i) {
                    const Arc& a = arcs_[static_cast<std::size_t>(x)][i];
                    if (a.cap <= 0 || seen[static_cast<std::size_t>(a.to)]) continue;
                    seen[static_cast<std::size_t>(a.to)] = 1;
                    via[static_cast<std::size_t>(a.to)] = {x, static_cast<int>(i)};
                    q.push(a.to);
                }
            }
            if (!seen[static_cast<std::size_t>(sink)]) break;
            for (int x = sink; x != source;) {
                auto [p, i] = via[static_cast<std::size_t>(x)];
                Arc& a = arcs_[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)];
                a.cap -= 1;
                arcs_[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].cap += 1;
                x = p;
            }
            ++flow_;
        }
        return flow_;
    }

    // Internal vertices whose inner arc is saturated on the residual cut.
    // Only meaningful once run() stopped below its cap.
    VertexSet separator() const
    {
        std::vector<char> seen(arcs_.size(), 0);
        std::vector<int> stack{2 * s_ + 1};
        seen[static_cast<std::size_t>(stack.back())] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const Arc& a : arcs_[static_cast<std::size_t>(x)])
                if (a.cap > 0 && !seen[static_cast<std::size_t>(a.to)]) {
                    seen[static_cast<std::size_t>(a.to)] = 1;
                    stack.push_back(a.to);
                }
        }
        std::vector<Vertex> sep;
        for (Vertex v = 0; v < g_.order(); ++v)
            if (v != s_ && v != t_ && seen[static_cast<std::size_t>(2 * v)] && !seen[static_cast<std::size_t>(2 * v + 1)])
                sep.push_back(v);
        return VertexSet(std::move(sep));
    }

    std::vector<std::vector<Vertex>> paths() const
    {
        // Flow on an arc = reverse residual capacity of its partner for forward arcs.
        std::vector<std::vector<int>> used(arcs_.size());
        for (std::size_t x = 0; x < arcs_.size(); ++x)
            for (std::size_t i = 0; i < arcs_[x].size(); ++i) {
                const Arc& a = arcs_[x][i];
                if (!a.forward || (x % 2) == 0) continue;
                int flow = arcs_[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].cap;
                for (int f = 0; f < flow; ++f) used[x].push_back(a.to);
            }
        std::vector<std::vector<Vertex>> out;
        for (int p = 0; p < flow_; ++p) {
            std::vector<Vertex> path{s_};
            int x = 2 * s_ + 1;
            while (path.back() != t_) {
                auto& u = used[static_cast<std::size_t>(x)];
                int nxt = u.back();
                u.pop_back();
                Vertex w = nxt / 2;
                path.push_back(w);
                x = 2 * w + 1;
            }
            out.push_back(std::move(path));
        }
        return out;
    }

private:
    struct Arc {
        int to;
        int cap;
        int rev;
        bool forward;
    };

    void add(int u, int v, int cap)
    {
        auto& au = arcs_[static_cast<std::size_t>(u)];
        auto& av = arcs_[static_cast<std::size_t>(v)];
        au.push_back({v, cap, static_cast<int>(av.size()), true});
        av.push_back({u, 0, static_cast<int>(au.size()) - 1, false});
    }

    const Graph& g_;
    Vertex s_, t_;
    std::vector<std::vector<Arc>> arcs_;
    int flow_ = 0;
};

} // namespace detail

/// Menger data for one non-adjacent pair: disjoint paths and a minimum separator.
struct LocalConnectivity {
    int value = 0;
    std::vector<std::vector<Vertex>> paths;
    VertexSet separator;
};

/// Internally vertex-disjoint s-t paths in G[alive] together with a minimum
/// s-t vertex separator of the same size. s and t must be distinct and non-adjacent.
inline LocalConnectivity local_connectivity(const Graph& g, Vertex s, Vertex t, const VertexMask* alive = nullptr)
{
    if (s == t || g.adjacent(s, t))
        throw precondition_error("local connectivity needs two distinct non-adjacent vertices");
    detail::SplitFlow flow(g, alive, s, t);
    LocalConnectivity out;
    out.value = flow.run(std::numeric_limits<int>::max());
    out.paths = flow.paths();
    out.separator = flow.separator();
    return out;
}

/// min(kappa(G[alive]), cap), plus a separator achieving it when that is below cap.
/// A disconnected graph yields 0 with the empty separator.
struct SeparatorResult {
    int connectivity = 0;
    std::optional<VertexSet> separator;
};

inline SeparatorResult minimum_separator(const Graph& g, const VertexMask* alive, int cap)
{
    const std::vector<Vertex> verts = detail::alive_list(g, alive);
    const int h = static_cast<int>(verts.size());
    if (h <= 1) return {0, std::nullopt};
    if (!is_connected(g, alive)) return {0, VertexSet{}};
    SeparatorResult best{std::min(h - 1, cap), std::nullopt};
    // A separator smaller than `best` misses one of any `best` vertices.
    for (int i = 0; i < h && i < best.connectivity; ++i) {
        const Vertex v = verts[static_cast<std::size_t>(i)];
        for (Vertex u : verts) {
            if (u == v || g.adjacent(u, v)) continue;
            detail::SplitFlow flow(g, alive, v, u);
            int f = flow.run(best.connectivity);
            if (f < best.connectivity) {
                best.connectivity = f;
                best.separator = flow.separator();
                if (f == 0) return best;
            }
        }
    }
    return best;
}

/// kappa(G); kappa(K_n) = n - 1 and a disconnected graph has connectivity 0.
inline int vertex_connectivity(const Graph& g)
{
    if (g.order() < 2) throw precondition_error("undefined connectivity: fewer than two vertices");
    return minimum_separator(g, nullptr, g.order()).connectivity;
}

namespace detail {

// Definition-level 2-connectivity: connected, at least three vertices, and no
// single deletion disconnects it.
inline bool is_biconnected_by_deletion(const Graph& g, const VertexMask& alive)
{
    const std::vector<Vertex> verts = alive_list(g, &alive);
    if (verts.size() < 3 || !is_connected(g, &alive)) return false;
    VertexMask probe = alive;
    for (Vertex v : verts) {
        probe[static_cast<std::size_t>(v)] = 0;
        bool ok = is_connected(g, &probe);
        probe[static_cast<std::size_t>(v)] = 1;
        if (!ok) return false;
    }
    return true;
}

} // namespace detail

/// k = 1: connected with at least one vertex (a single vertex counts).
/// k >= 2: at least k + 1 vertices and connectivity >= k.
inline bool is_k_connected(const Graph& g, const VertexMask* alive, int k)
{
    if (k < 1) throw precondition_error("k must be at least 1");
    if (k == 1) return is_connected(g, alive);
    const VertexMask mask = alive ? *alive : full_mask(g.order());
    int h = static_cast<int>(std::count(mask.begin(), mask.end(), 1));
    if (h < k + 1) return false;
    if (k == 2) return detail::is_biconnected_by_deletion(g, mask);
    return minimum_separator(g, &mask, k).connectivity >= k;
}

inline bool is_k_connected(const Graph& g, int k) { return is_k_connected(g, nullptr, k); }

/// Biconnected components of G[alive]: bridges give 2-element blocks and
/// isolated vertices give singletons. Sorted lexicographically.
inline std::vector<VertexSet> blocks(const Graph& g, const VertexMask* alive = nullptr)
{
    const int n = g.order();
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<VertexSet> out;
    std::vector<std::pair<Vertex, Vertex>> edge_stack;
    struct Frame {
        Vertex v;
        Vertex parent;
        std::size_t next;
    };
    std::vector<Frame> frames;
    int timer = 0;
    auto D = [&](Vertex v) -> int& { return disc[static_cast<std::size_t>(v)]; };
    auto L = [&](Vertex v) -> int& { return low[static_cast<std::size_t>(v)]; };

    for (Vertex r = 0; r < n; ++r) {
        if (!detail::alive_at(alive, r) || D(r) != -1) continue;
        D(r) = L(r) = timer++;
        bool has_edge = false;
        for (Vertex w : g.neighbors(r))
            if (detail::alive_at(alive, w)) has_edge = true;
        if (!has_edge) {
            out.push_back(VertexSet{r});
            continue;
        }
        frames.push_back({r, -1, 0});
        while (!frames.empty()) {
            Frame& f = frames.back();
            const Vertex v = f.v;
            auto nbrs = g.neighbors(v);
            if (f.next < nbrs.size()) {
                const Vertex w = nbrs[f.next++];
                if (!detail::alive_at(alive, w)) continue;
                if (D(w) == -1) {
                    edge_stack.emplace_back(v, w);
                    D(w) = L(w) = timer++;
                    frames.push_back({w, v, 0});
                } else if (w != f.parent && D(w) < D(v)) {
                    edge_stack.emplace_back(v, w);
                    L(v) = std::min(L(v), D(w));
                }
                continue;
            }
            frames.pop_back();
            if (frames.empty()) break;
            const Vertex p = frames.back().v;
            L(p) = std::min(L(p), L(v));
            if (L(v) >= D(p)) {
                std::vector<Vertex> members;
                while (true) {
                    auto e = edge_stack.back();
                    edge_stack.pop_back();
                    members.push_back(e.first);
                    members.push_back(e.second);
                    if (e.first == p && e.second == v) break;
                }
                out.emplace_back(std::move(members));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Maximal vertex set of G[alive] whose induced subgraph has minimum degree >= k.
inline VertexMask k_core_mask(const Graph& g, int k, const VertexMask* alive = nullptr)
{
    if (k < 0) throw precondition_error("k-core needs k >= 0");
    const int n = g.order();
    VertexMask in(static_cast<std::size_t>(n), 0);
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> queue;
    for (Vertex v = 0; v < n; ++v)
        if (detail::alive_at(alive, v)) in[static_cast<std::size_t>(v)] = 1;
    for (Vertex v = 0; v < n; ++v) {
        if (!in[static_cast<std::size_t>(v)]) continue;
        for (Vertex w : g.neighbors(v))
            if (in[static_cast<std::size_t>(w)]) ++deg[static_cast<std::size_t>(v)];
        if (deg[static_cast<std::size_t>(v)] < k) queue.push_back(v);
    }
    while (!queue.empty()) {
        Vertex v = queue.back();
        queue.pop_back();
        if (!in[static_cast<std::size_t>(v)]) continue;
        in[static_cast<std::size_t>(v)] = 0;
        for (Vertex w : g.neighbors(v)) {
            if (!in[static_cast<std::size_t>(w)]) continue;
            if (--deg[static_cast<std::size_t>(w)] == k - 1) queue.push_back(w);
        }
    }
    return in;
}

inline VertexSet k_core(const Graph& g, int k) { return set_of(k_core_mask(g, k)); }

enum class TwinMode { open, closed };

/// Partition into classes of vertices with equal open (N(v)) or closed (N[v])
/// neighbourhoods, ordered by smallest member.
inline std::vector<VertexSet> twin_classes(const Graph& g, TwinMode mode)
{
    std::map<std::vector<Vertex>, std::vector<Vertex>> groups;
    for (Vertex v = 0; v < g.order(); ++v) {
        std::vector<Vertex> key(g.neighbors(v).begin(), g.neighbors(v).end());
        if (mode == TwinMode::closed) key.insert(std::lower_bound(key.begin(), key.end(), v), v);
        groups[std::move(key)].push_back(v);
    }
    std::vector<VertexSet> out;
    for (auto& [key, members] : groups) out.emplace_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

/// Open twin classes, with closed twin classes used for vertices that have no
/// open twin. Every swap of two members of one class is an automorphism.
inline std::vector<VertexSet> symmetry_classes(const Graph& g)
{
    std::vector<int> cls(static_cast<std::size_t>(g.order()), -1);
    std::vector<std::vector<Vertex>> groups;
    for (const VertexSet& c : twin_classes(g, TwinMode::open)) {
        if (c.size() < 2) continue;
        for (Vertex v : c) cls[static_cast<std::size_t>(v)] = static_cast<int>(groups.size());
        groups.push_back(c.members());
    }
    for (const VertexSet& c : twin_classes(g, TwinMode::closed)) {
        std::vector<Vertex> free;
        for (Vertex v : c)
            if (cls[static_cast<std::size_t>(v)] == -1) free.push_back(v);
        if (free.empty()) continue;
        for (Vertex v : free) cls[static_cast<std::size_t>(v)] = static_cast<int>(groups.size());
        groups.push_back(std::move(free));
    }
    std::vector<VertexSet> out;
    for (auto& gr : groups) out.emplace_back(std::move(gr));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace kvc
