#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "kvc/connectivity.hpp"
#include "kvc/graph.hpp"

// Graph corpora for sweeps: every connected graph up to isomorphism on few
// vertices, and seeded random connected graphs.

namespace kvc::corpus {

namespace detail {

// Upper-triangle adjacency bits under the given vertex order.
inline std::uint64_t encode(const Graph& g, const std::vector<Vertex>& order)
{
    std::uint64_t code = 0;
    int bit = 0;
    const int n = g.order();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
            if (g.adjacent(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)])) code |= std::uint64_t{1} << bit;
    return code;
}

// Iterated degree refinement; returns a colour per vertex that is invariant
// under isomorphism.
inline std::vector<int> refine(const Graph& g)
{
    const int n = g.order();
    std::vector<int> colour(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) colour[static_cast<std::size_t>(v)] = g.degree(v);
    for (int round = 0; round < n; ++round) {
        std::vector<std::pair<int, std::vector<int>>> sig(static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v) {
            std::vector<int> nb;
            for (Vertex w : g.neighbors(v)) nb.push_back(colour[static_cast<std::size_t>(w)]);
            std::sort(nb.begin(), nb.end());
            sig[static_cast<std::size_t>(v)] = {colour[static_cast<std::size_t>(v)], std::move(nb)};
        }
        auto sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> next(static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v)
            next[static_cast<std::size_t>(v)] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[static_cast<std::size_t>(v)]) - sorted.begin());
        if (next == colour) break;
        colour = std::move(next);
    }
    return colour;
}

} // namespace detail

/// Canonical code: the smallest adjacency encoding over all vertex orders
/// that list the refined colour classes in increasing colour. n <= 11.
inline std::uint64_t canonical_code(const Graph& g)
{
    const int n = g.order();
    const auto colour = detail::refine(g);
    std::vector<std::vector<Vertex>> cells;
    std::map<int, std::vector<Vertex>> by_colour;
    for (Vertex v = 0; v < n; ++v) by_colour[colour[static_cast<std::size_t>(v)]].push_back(v);
    for (auto& [c, cell] : by_colour) cells.push_back(cell);
    std::uint64_t best = ~std::uint64_t{0};
    std::vector<Vertex> order;
    auto rec = [&](auto&& self, std::size_t ci) -> void {
        if (ci == cells.size()) {
            best = std::min(best, detail::encode(g, order));
            return;
        }
        auto cell = cells[ci];
        std::sort(cell.begin(), cell.end());
        do {
            order.insert(order.end(), cell.begin(), cell.end());
            self(self, ci + 1);
            order.resize(order.size() - cell.size());
        } while (std::next_permutation(cell.begin(), cell.end()));
    };
    rec(rec, 0);
    return best;
}

inline Graph decode(int n, std::uint64_t code)
{
    Graph g(n);
    int bit = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
            if (code >> bit & 1u) g.add_edge(i, j);
    return g;
}

/// One representative per isomorphism class of graphs on exactly n vertices,
/// grown vertex by vertex. Ordered by edge count, then canonical code.
inline std::vector<Graph> all_graphs(int n)
{
    std::set<std::uint64_t> level{0};
    for (int order = 2; order <= n; ++order) {
        std::set<std::uint64_t> next;
        for (std::uint64_t code : level) {
            const Graph base = decode(order - 1, code);
            for (std::uint32_t nb = 0; nb < (1u << (order - 1)); ++nb) {
                Graph g(order);
                for (auto [u, v] : base.edges()) g.add_edge(u, v);
                for (int u = 0; u < order - 1; ++u)
                    if (nb >> u & 1u) g.add_edge(u, order - 1);
                next.insert(canonical_code(g));
            }
        }
        level = std::move(next);
    }
    std::vector<Graph> out;
    if (n < 1) return out;
    for (std::uint64_t code : level) out.push_back(decode(n, code));
    std::stable_sort(out.begin(), out.end(), [](const Graph& a, const Graph& b) { return a.size() < b.size(); });
    return out;
}

/// Connected graphs on 1..max_n vertices up to isomorphism, smallest first.
inline std::vector<Graph> connected_graphs_up_to(int max_n)
{
    std::vector<Graph> out;
    for (int n = 1; n <= max_n; ++n)
        for (Graph& g : all_graphs(n))
            if (is_connected(g)) out.push_back(std::move(g));
    return out;
}

/// Seeded random connected graph: a random recursive tree plus each further
/// pair independently with probability density. Portable draws only.
inline Graph random_connected_graph(int n, double density, std::mt19937_64& rng)
{
    Graph g(n);
    auto below = [&](std::uint64_t bound) { return static_cast<int>(rng() % bound); };
    for (int v = 1; v < n; ++v) g.add_edge(below(static_cast<std::uint64_t>(v)), v);
    const auto threshold = static_cast<std::uint64_t>(density * 1'000'000.0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.adjacent(u, v) && rng() % 1'000'000 < threshold) g.add_edge(u, v);
    return g;
}

inline std::vector<Graph> random_connected_graphs(int count, int min_n, int max_n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Graph> out;
    for (int i = 0; i < count; ++i) {
        const int n = min_n + static_cast<int>(rng() % static_cast<std::uint64_t>(max_n - min_n + 1));
        const double density = static_cast<double>(rng() % 1000) / 1000.0;
        out.push_back(random_connected_graph(n, density, rng));
    }
    return out;
}

} // namespace kvc::corpus
