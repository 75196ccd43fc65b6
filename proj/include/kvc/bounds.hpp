#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "kvc/connectivity.hpp"
#include "kvc/graph.hpp"

namespace kvc {

enum class TreeMode { exact, greedy };

/// Rooted spanning tree; parent[root] == -1.
struct SpanningTreeResult {
    std::vector<Vertex> parent;
    int leaf_count = 0;
    bool optimal = false;
};

struct TreeSearchLimits {
    std::int64_t node_budget = 200'000'000;
};

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b)
{
    // b > 0
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

/// Number of degree-1 vertices of the tree given by a parent array.
inline int tree_leaf_count(const std::vector<Vertex>& parent)
{
    std::vector<int> deg(parent.size(), 0);
    for (std::size_t v = 0; v < parent.size(); ++v)
        if (parent[v] >= 0) {
            ++deg[v];
            ++deg[static_cast<std::size_t>(parent[v])];
        }
    return static_cast<int>(std::count(deg.begin(), deg.end(), 1));
}

/// Checks that `parent` encodes a spanning tree of g using only edges of g.
inline bool is_spanning_tree(const Graph& g, const std::vector<Vertex>& parent)
{
    if (static_cast<int>(parent.size()) != g.order() || g.order() == 0) return false;
    int roots = 0;
    Graph t(g.order());
    for (Vertex v = 0; v < g.order(); ++v) {
        Vertex p = parent[static_cast<std::size_t>(v)];
        if (p < 0) {
            ++roots;
            continue;
        }
        if (p >= g.order() || !g.adjacent(v, p) || t.adjacent(v, p)) return false;
        t.add_edge(v, p);
    }
    return roots == 1 && is_connected(t);
}

/// ell(G) <= n - ceil((n-2)/(Delta-1)).
inline int leaf_count_upper_bound(int n, int max_degree)
{
    if (n < 2) throw precondition_error("leaf bound needs n >= 2");
    if (max_degree < 2) throw precondition_error("degenerate: G is a disjoint union of edges/vertices");
    return n - static_cast<int>(ceil_div(n - 2, max_degree - 1));
}

/// VC_{k-con}(G) <= ell - k + 1 for k >= 2; the raw value is returned, even when <= 0.
inline int upper_bound_kcon(int ell, int k)
{
    if (k < 2) throw precondition_error("k-connected upper bound needs k >= 2 (use [ell, ell+1] for k = 1)");
    return ell - k + 1;
}

/// ceil(n^2/(n^2-2m) - 1) - k, computed as ceil(2m/(n^2-2m)) - k in integers.
inline int lower_bound_turan(int n, std::int64_t m, int k)
{
    const std::int64_t nn = static_cast<std::int64_t>(n) * n;
    if (n < 1 || m < 0 || 2 * m > static_cast<std::int64_t>(n) * (n - 1))
        throw precondition_error("Turan bound needs a simple graph: 0 <= m <= n(n-1)/2");
    return static_cast<int>(ceil_div(2 * m, nn - 2 * m)) - k;
}

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::int64_t ceil() const { return ceil_div(num, den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// ell - k + 1 - (n + 2 - ceil((n-2)/(Delta-1)) - n^2/(n^2-2m)) as an exact fraction.
inline Rational lower_bound_thm5_exact(int n, std::int64_t m, int max_degree, int ell, int k)
{
    if (max_degree < 2) throw precondition_error("degenerate: maximum degree below 2");
    if (n < 2) throw precondition_error("bound needs n >= 2");
    const std::int64_t nn = static_cast<std::int64_t>(n) * n;
    if (2 * m >= nn) throw precondition_error("bound needs n^2 > 2m");
    const std::int64_t c = ceil_div(n - 2, max_degree - 1);
    const std::int64_t whole = static_cast<std::int64_t>(ell) - k + 1 - (n + 2 - c);
    const std::int64_t den = nn - 2 * m;
    Rational r{whole * den + nn, den};
    std::int64_t g = std::gcd(r.num < 0 ? -r.num : r.num, r.den);
    if (g > 1) {
        r.num /= g;
        r.den /= g;
    }
    return r;
}

inline double lower_bound_thm5(int n, std::int64_t m, int max_degree, int ell, int k)
{
    return lower_bound_thm5_exact(n, m, max_degree, ell, k).value();
}

namespace detail {

// Exhaustive search for a minimum connected dominating set by increasing size.
// Each connected set is generated once (extension by exclusive neighbourhood,
// smallest member as root); undominated vertices bound the remaining budget.
class ConnectedDominatingSearch {
public:
    ConnectedDominatingSearch(const Graph& g, TreeSearchLimits limits) : g_(g), limits_(limits)
    {
        cover_.assign(static_cast<std::size_t>(g.order()), 0);
        in_sub_.assign(static_cast<std::size_t>(g.order()), 0);
        delta_ = g.max_degree();
    }

    std::optional<std::vector<Vertex>> find(int size)
    {
        target_ = size;
        undominated_ = g_.order();
        for (Vertex r = 0; r < g_.order(); ++r) {
            root_ = r;
            add(r);
            std::vector<Vertex> ext;
            for (Vertex w : g_.neighbors(r))
                if (w > r) ext.push_back(w);
            bool found = extend(ext);
            if (found) return sub_;
            remove(r);
        }
        return std::nullopt;
    }

private:
    void add(Vertex v)
    {
        sub_.push_back(v);
        in_sub_[static_cast<std::size_t>(v)] = 1;
        if (cover_[static_cast<std::size_t>(v)]++ == 0) --undominated_;
        for (Vertex w : g_.neighbors(v))
            if (cover_[static_cast<std::size_t>(w)]++ == 0) --undominated_;
    }
    void remove(Vertex v)
    {
        sub_.pop_back();
        in_sub_[static_cast<std::size_t>(v)] = 0;
        if (--cover_[static_cast<std::size_t>(v)] == 0) ++undominated_;
        for (Vertex w : g_.neighbors(v))
            if (--cover_[static_cast<std::size_t>(w)] == 0) ++undominated_;
    }

    bool extend(std::vector<Vertex> ext)
    {
        if (++nodes_ > limits_.node_budget) throw scale_error("max-leaf search exceeded its node budget");
        const int have = static_cast<int>(sub_.size());
        if (have == target_) return undominated_ == 0;
        if (undominated_ > static_cast<std::int64_t>(target_ - have) * (delta_ + 1)) return false;
        while (!ext.empty()) {
            Vertex w = ext.back();
            ext.pop_back();
            std::vector<Vertex> next = ext;
            for (Vertex u : g_.neighbors(w)) {
                if (u <= root_ || in_sub_[static_cast<std::size_t>(u)]) continue;
                // exclusive: not adjacent to the current set
                bool exclusive = true;
                for (Vertex x : g_.neighbors(u))
                    if (in_sub_[static_cast<std::size_t>(x)]) {
                        exclusive = false;
                        break;
                    }
                if (exclusive && std::find(next.begin(), next.end(), u) == next.end()) next.push_back(u);
            }
            add(w);
            if (extend(std::move(next))) return true;
            remove(w);
        }
        return false;
    }

    const Graph& g_;
    TreeSearchLimits limits_;
    std::vector<int> cover_;
    VertexMask in_sub_;
    std::vector<Vertex> sub_;
    std::int64_t undominated_ = 0;
    int delta_ = 0;
    int target_ = 0;
    Vertex root_ = 0;
    std::int64_t nodes_ = 0;
};

// BFS tree of G[core] from its smallest vertex; all other vertices hang off
// their smallest neighbour in core.
inline std::vector<Vertex> tree_over_core(const Graph& g, const std::vector<Vertex>& core_list)
{
    const VertexSet core(core_list);
    std::vector<Vertex> parent(static_cast<std::size_t>(g.order()), -2);
    std::queue<Vertex> q;
    parent[static_cast<std::size_t>(core[0])] = -1;
    q.push(core[0]);
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        for (Vertex w : g.neighbors(v))
            if (core.contains(w) && parent[static_cast<std::size_t>(w)] == -2) {
                parent[static_cast<std::size_t>(w)] = v;
                q.push(w);
            }
    }
    for (Vertex v = 0; v < g.order(); ++v) {
        if (core.contains(v)) continue;
        for (Vertex w : g.neighbors(v))
            if (core.contains(w)) {
                parent[static_cast<std::size_t>(v)] = w;
                break;
            }
    }
    return parent;
}

} // namespace detail

/// Exact mode: the non-leaves of a maximum-leaf spanning tree form a minimum
/// connected dominating set, so the tree is built around one found by
/// increasing-size search starting at n - leaf_count_upper_bound.
/// Greedy mode: repeatedly expand the tree vertex with most outside neighbours.
inline SpanningTreeResult max_leaf_spanning_tree(const Graph& g, TreeMode mode, TreeSearchLimits limits = {})
{
    const int n = g.order();
    if (n < 2) throw precondition_error("spanning tree needs n >= 2");
    if (!is_connected(g)) throw precondition_error("graph is disconnected");
    SpanningTreeResult out;
    if (n == 2) {
        out.parent = {-1, 0};
        out.leaf_count = 2;
        out.optimal = true;
        return out;
    }
    if (mode == TreeMode::exact) {
        const int delta = g.max_degree();
        int lo = std::max(1, n - leaf_count_upper_bound(n, delta));
        detail::ConnectedDominatingSearch search(g, limits);
        for (int s = lo; s <= n; ++s) {
            if (auto core = search.find(s)) {
                out.parent = detail::tree_over_core(g, *core);
                out.leaf_count = tree_leaf_count(out.parent);
                out.optimal = true;
                return out;
            }
        }
        throw error("no connected dominating set found in a connected graph");
    }

    std::vector<Vertex> parent(static_cast<std::size_t>(n), -2);
    Vertex root = 0;
    for (Vertex v = 1; v < n; ++v)
        if (g.degree(v) > g.degree(root)) root = v;
    parent[static_cast<std::size_t>(root)] = -1;
    std::vector<Vertex> in_tree{root};
    auto outside = [&](Vertex v) {
        int c = 0;
        for (Vertex w : g.neighbors(v))
            if (parent[static_cast<std::size_t>(w)] == -2) ++c;
        return c;
    };
    int placed = 1;
    while (placed < n) {
        Vertex best = -1;
        int best_gain = 0;
        for (Vertex v : in_tree) {
            int gain = outside(v);
            if (gain > best_gain || (gain == best_gain && gain > 0 && v < best)) {
                best = v;
                best_gain = gain;
            }
        }
        for (Vertex w : g.neighbors(best))
            if (parent[static_cast<std::size_t>(w)] == -2) {
                parent[static_cast<std::size_t>(w)] = best;
                in_tree.push_back(w);
                ++placed;
            }
    }
    out.parent = std::move(parent);
    out.leaf_count = tree_leaf_count(out.parent);
    out.optimal = false;
    return out;
}

/// Every closed-form quantity for one connected graph and one k.
struct BoundReport {
    int n = 0;
    std::int64_t m = 0;
    int max_degree = 0;
    int k = 1;
    TreeMode ell_mode = TreeMode::exact;
    int ell = 0;       // exact value, or the greedy lower bound
    int ell_upper = 0; // equals ell in exact mode
    std::optional<int> upper_kcon;
    int lower_turan = 0;
    std::optional<Rational> lower_thm5;
};

inline BoundReport make_bound_report(const Graph& g, int k, TreeMode mode, TreeSearchLimits limits = {})
{
    if (k < 1) throw precondition_error("k must be at least 1");
    BoundReport r;
    r.n = g.order();
    r.m = static_cast<std::int64_t>(g.size());
    r.max_degree = g.max_degree();
    r.k = k;
    r.ell_mode = mode;
    auto tree = max_leaf_spanning_tree(g, mode, limits);
    r.ell = tree.leaf_count;
    r.ell_upper = tree.optimal ? r.ell : (r.max_degree >= 2 ? leaf_count_upper_bound(r.n, r.max_degree) : r.n);
    if (k >= 2) r.upper_kcon = upper_bound_kcon(r.ell_upper, k);
    r.lower_turan = lower_bound_turan(r.n, r.m, k);
    if (r.max_degree >= 2) r.lower_thm5 = lower_bound_thm5_exact(r.n, r.m, r.max_degree, r.ell, k);
    return r;
}

} // namespace kvc
