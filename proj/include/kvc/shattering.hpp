#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kvc/bounds.hpp"
#include "kvc/connectivity.hpp"
#include "kvc/graph.hpp"

// Shattering by the family P_k of k-connected subgraphs of G.
//
// Conventions used throughout:
//  * the empty subgraph belongs to P_k, so the empty trace is always realized;
//  * for k = 1 the family is the nonempty connected subgraphs, single vertices included;
//  * only induced subgraphs are considered: adding edges never breaks
//    k-connectivity and a trace depends on the vertex set alone.

namespace kvc {

struct RealizeLimits {
    // Node budget of the exact k >= 3 search, per realizability call.
    std::int64_t general_k_budget = 2'000'000;
};

struct OracleLimits {
    int max_set = 20;   // |A|
    int max_order = 24; // |V|, the oracle enumerates every vertex subset
};

/// True iff S is empty, or G[S] is connected (k = 1), or G[S] is k-connected (k >= 2).
inline bool family_member(const Graph& g, const VertexSet& s, int k)
{
    require_valid(g, s, "vertex set");
    if (k < 1) throw precondition_error("k must be at least 1");
    if (s.empty()) return true;
    const VertexMask mask = mask_of(g.order(), s);
    return is_k_connected(g, &mask, k);
}

namespace detail {

// Exact search for a k-connected induced subgraph of G[alive] containing W.
// Any such subgraph survives k-core peeling and lies in one component; if the
// component is not k-connected, a separator S with |S| < k puts every
// k-connected subgraph inside C + S for a single component C of the rest.
class KConnectedFinder {
public:
    KConnectedFinder(const Graph& g, int k, const VertexSet& w, RealizeLimits limits)
        : g_(g), k_(k), w_(w), limits_(limits)
    {
    }

    std::optional<VertexSet> find(const VertexMask& alive) { return search(alive); }

private:
    std::optional<VertexSet> search(const VertexMask& start)
    {
        if (++nodes_ > limits_.general_k_budget)
            throw scale_error("k-connected subgraph search exceeded its budget of " +
                              std::to_string(limits_.general_k_budget) + " nodes");
        VertexMask h = k_core_mask(g_, k_, &start);
        for (Vertex w : w_)
            if (!h[static_cast<std::size_t>(w)]) return std::nullopt;
        const Components comps = components(g_, &h);
        const int cid = comps.id[static_cast<std::size_t>(w_[0])];
        int count = 0;
        for (std::size_t v = 0; v < h.size(); ++v) {
            if (h[v] && comps.id[v] != cid) h[v] = 0;
            count += h[v];
        }
        for (Vertex w : w_)
            if (!h[static_cast<std::size_t>(w)]) return std::nullopt;
        if (count < k_ + 1) return std::nullopt;
        if (!visited_.insert(h).second) return std::nullopt;

        const SeparatorResult sep = minimum_separator(g_, &h, k_);
        if (sep.connectivity >= k_) return set_of(h);

        VertexMask rest = h;
        for (Vertex s : *sep.separator) rest[static_cast<std::size_t>(s)] = 0;
        const Components parts = components(g_, &rest);
        for (int c = 0; c < parts.count; ++c) {
            VertexMask piece = sep.separator ? mask_of(g_.order(), *sep.separator) : VertexMask(h.size(), 0);
            for (std::size_t v = 0; v < h.size(); ++v)
                if (parts.id[v] == c) piece[v] = 1;
            bool holds_w = true;
            for (Vertex w : w_)
                if (!piece[static_cast<std::size_t>(w)]) holds_w = false;
            if (!holds_w) continue;
            if (auto found = search(piece)) return found;
        }
        return std::nullopt;
    }

    const Graph& g_;
    int k_;
    const VertexSet& w_;
    RealizeLimits limits_;
    std::set<VertexMask> visited_;
    std::int64_t nodes_ = 0;
};

// Realizability inside G[alive] for a nonempty trace W.
inline std::optional<VertexSet> realize_in(const Graph& g, const VertexMask& alive, const VertexSet& w, int k,
                                           RealizeLimits limits)
{
    if (k == 1) {
        const Components comps = components(g, &alive);
        const int cid = comps.id[static_cast<std::size_t>(w[0])];
        for (Vertex v : w)
            if (comps.id[static_cast<std::size_t>(v)] != cid) return std::nullopt;
        std::vector<Vertex> members;
        for (Vertex v = 0; v < g.order(); ++v)
            if (comps.id[static_cast<std::size_t>(v)] == cid) members.push_back(v);
        return VertexSet(std::move(members));
    }
    if (k == 2) {
        for (VertexSet& b : blocks(g, &alive))
            if (b.size() >= 3 && w.subset_of(b)) return std::move(b);
        return std::nullopt;
    }
    return KConnectedFinder(g, k, w, limits).find(alive);
}

} // namespace detail

/// Is there S with S n A = W and G[S] in P_k? On success *witness receives S
/// (the empty set for W = {}).
inline bool realizable(const Graph& g, const VertexSet& a, const VertexSet& w, int k, VertexSet* witness = nullptr,
                       RealizeLimits limits = {})
{
    if (k < 1) throw precondition_error("k must be at least 1");
    require_valid(g, a, "shattered candidate");
    if (!w.subset_of(a)) throw precondition_error("trace W is not a subset of A");
    if (w.empty()) {
        if (witness) *witness = VertexSet{};
        return true;
    }
    VertexMask alive = full_mask(g.order());
    for (Vertex v : a)
        if (!w.contains(v)) alive[static_cast<std::size_t>(v)] = 0;
    auto found = detail::realize_in(g, alive, w, k, limits);
    if (found && witness) *witness = std::move(*found);
    return found.has_value();
}

/// Trace -> witness map backing a shattering claim. An empty witness stands
/// for the empty subgraph and is only legal for the empty trace.
struct ShatterCertificate {
    struct Entry {
        VertexSet trace;
        VertexSet witness;
    };
    VertexSet set;
    int k = 1;
    bool compressed = false; // entries cover one representative per twin orbit
    std::vector<Entry> entries;
};

struct ShatterOptions {
    bool certificate = false;
    bool twin_compression = false;
    RealizeLimits realize;
};

struct ShatterCheck {
    bool shattered = false;
    std::optional<VertexSet> failing_trace;
    std::optional<ShatterCertificate> certificate;
    std::int64_t traces_checked = 0;
};

namespace detail {

// Calls f on every subset of items of size <= max_size, by size then lexicographically.
// Stops early when f returns false.
inline bool for_each_small_subset(const std::vector<Vertex>& items, int max_size,
                                  const std::function<bool(const std::vector<Vertex>&)>& f)
{
    const int n = static_cast<int>(items.size());
    std::vector<Vertex> cur;
    for (int size = 0; size <= std::min(max_size, n); ++size) {
        std::vector<int> idx(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
        while (true) {
            cur.clear();
            for (int i : idx) cur.push_back(items[static_cast<std::size_t>(i)]);
            if (!f(cur)) return false;
            int i = size - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - size + i) --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < size; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return true;
}

// One representative trace per orbit under permutations inside twin classes:
// the first c_i members of each class intersected with A, total <= max_size.
inline void for_each_canonical_trace(const std::vector<std::vector<Vertex>>& groups, int max_size,
                                     const std::function<bool(const VertexSet&)>& f)
{
    std::vector<Vertex> cur;
    bool stop = false;
    std::function<void(std::size_t, int)> rec = [&](std::size_t gi, int left) {
        if (stop) return;
        if (gi == groups.size()) {
            if (!f(VertexSet(cur))) stop = true;
            return;
        }
        const auto& grp = groups[gi];
        const int top = std::min<int>(left, static_cast<int>(grp.size()));
        for (int c = 0; c <= top && !stop; ++c) {
            for (int i = 0; i < c; ++i) cur.push_back(grp[static_cast<std::size_t>(i)]);
            rec(gi + 1, left - c);
            for (int i = 0; i < c; ++i) cur.pop_back();
        }
    };
    rec(0, max_size);
}

inline std::vector<std::vector<Vertex>> twin_groups_within(const Graph& g, const VertexSet& a)
{
    std::vector<std::vector<Vertex>> groups;
    for (const VertexSet& cls : symmetry_classes(g)) {
        std::vector<Vertex> in_a;
        for (Vertex v : cls)
            if (a.contains(v)) in_a.push_back(v);
        if (!in_a.empty()) groups.push_back(std::move(in_a));
    }
    return groups;
}

} // namespace detail

/// Shattering test through traces of size <= k + 1 only. Larger traces follow:
/// fix K in W with |K| = k; the witnesses of K + {w} pairwise share K, so
/// their union is k-connected and has trace exactly W.
inline ShatterCheck check_shattered_poly(const Graph& g, const VertexSet& a, int k, const ShatterOptions& opts = {})
{
    if (k < 1) throw precondition_error("k must be at least 1");
    require_valid(g, a, "shattered candidate");
    ShatterCheck out;
    out.shattered = true;
    if (opts.certificate) {
        out.certificate = ShatterCertificate{a, k, opts.twin_compression, {}};
    }
    auto visit = [&](const VertexSet& w) {
        ++out.traces_checked;
        VertexSet witness;
        if (!realizable(g, a, w, k, &witness, opts.realize)) {
            out.shattered = false;
            out.failing_trace = w;
            return false;
        }
        if (out.certificate) out.certificate->entries.push_back({w, std::move(witness)});
        return true;
    };
    if (opts.twin_compression) {
        detail::for_each_canonical_trace(detail::twin_groups_within(g, a), k + 1, visit);
    } else {
        detail::for_each_small_subset(a.members(), k + 1,
                                      [&](const std::vector<Vertex>& w) { return visit(VertexSet(w)); });
    }
    if (!out.shattered) out.certificate.reset();
    return out;
}

inline bool is_shattered_poly(const Graph& g, const VertexSet& a, int k)
{
    return check_shattered_poly(g, a, k).shattered;
}

/// Definition-level oracle: enumerates every vertex subset of G once, keeps the
/// family members, and answers shattering queries by projecting their traces.
class BruteForceOracle {
public:
    BruteForceOracle(const Graph& g, int k, OracleLimits limits = {}) : g_(g), k_(k), limits_(limits)
    {
        if (k < 1) throw precondition_error("k must be at least 1");
        if (g.order() > limits.max_order)
            throw scale_error("oracle scale exceeded: " + std::to_string(g.order()) + " vertices (limit " +
                              std::to_string(limits.max_order) + ")");
        const std::uint32_t total = 1u << g.order();
        for (std::uint32_t bits = 0; bits < total; ++bits) {
            VertexMask mask(static_cast<std::size_t>(g.order()), 0);
            for (int v = 0; v < g.order(); ++v)
                if (bits >> v & 1u) mask[static_cast<std::size_t>(v)] = 1;
            if (bits == 0 || is_k_connected(g, &mask, k)) members_.push_back(bits);
        }
    }

    const std::vector<std::uint32_t>& members() const { return members_; }

    bool shattered(const VertexSet& a) const
    {
        require_valid(g_, a, "shattered candidate");
        if (static_cast<int>(a.size()) > limits_.max_set)
            throw scale_error("oracle scale exceeded: |A| = " + std::to_string(a.size()) + " (limit " +
                              std::to_string(limits_.max_set) + ")");
        const std::size_t traces = std::size_t{1} << a.size();
        std::vector<char> seen(traces, 0);
        std::size_t distinct = 0;
        for (std::uint32_t s : members_) {
            std::size_t t = 0;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (s >> a[i] & 1u) t |= std::size_t{1} << i;
            if (!seen[t]) {
                seen[t] = 1;
                if (++distinct == traces) return true;
            }
        }
        return distinct == traces;
    }

    /// Exact VC dimension and the lexicographically smallest maximum shattered set.
    std::pair<int, VertexSet> vc_dimension() const
    {
        const std::vector<Vertex> all = VertexSet::range(g_.order()).members();
        for (int size = std::min(g_.order(), limits_.max_set); size >= 1; --size) {
            std::optional<VertexSet> hit;
            std::vector<int> idx(static_cast<std::size_t>(size));
            for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
            const int n = g_.order();
            while (true) {
                std::vector<Vertex> cur;
                for (int i : idx) cur.push_back(all[static_cast<std::size_t>(i)]);
                VertexSet a(std::move(cur));
                if (shattered(a)) {
                    hit = std::move(a);
                    break;
                }
                int i = size - 1;
                while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - size + i) --i;
                if (i < 0) break;
                ++idx[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < size; ++j)
                    idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
            }
            if (hit) return {size, *hit};
        }
        return {0, VertexSet{}};
    }

private:
    const Graph& g_;
    int k_;
    OracleLimits limits_;
    std::vector<std::uint32_t> members_;
};

inline bool is_shattered_bruteforce(const Graph& g, const VertexSet& a, int k, OracleLimits limits = {})
{
    if (static_cast<int>(a.size()) > limits.max_set)
        throw scale_error("oracle scale exceeded: |A| = " + std::to_string(a.size()));
    return BruteForceOracle(g, k, limits).shattered(a);
}

struct CertificateCheck {
    bool valid = true;    // every entry re-validates
    bool complete = true; // every trace of size <= k + 1 has an entry
    std::vector<std::string> problems;
};

/// Re-validates every entry with family_member and trace equality, independent
/// of how the certificate was produced.
inline CertificateCheck validate_certificate(const Graph& g, const ShatterCertificate& cert)
{
    CertificateCheck out;
    auto fail = [&](std::string msg) {
        out.valid = false;
        out.problems.push_back(std::move(msg));
    };
    std::set<VertexSet> seen;
    for (const auto& e : cert.entries) {
        if (!g.valid(e.trace) || !g.valid(e.witness)) {
            fail("entry references a vertex outside the graph");
            continue;
        }
        if (!e.trace.subset_of(cert.set)) fail("trace is not a subset of the certified set");
        if (e.witness.empty()) {
            if (!e.trace.empty()) fail("empty witness for a nonempty trace");
        } else {
            if (set_intersection(e.witness, cert.set) != e.trace) fail("witness does not cut out its trace");
            if (!family_member(g, e.witness, cert.k)) fail("witness is not in the family");
        }
        seen.insert(e.trace);
    }
    if (cert.compressed) {
        out.complete = false;
    } else {
        detail::for_each_small_subset(cert.set.members(), cert.k + 1, [&](const std::vector<Vertex>& w) {
            if (!seen.count(VertexSet(w))) out.complete = false;
            return out.complete;
        });
    }
    return out;
}

struct SearchOptions {
    bool twin_pruning = true;
    bool leaf_bound = true;  // cap the search at the leaf-count upper bound
    bool incremental = true; // false rechecks every trace from scratch at each node
    std::int64_t node_budget = 20'000'000;
    std::int64_t call_budget = 2'000'000'000; // realizability calls
    RealizeLimits realize;
};

struct SearchStats {
    std::int64_t sets_examined = 0;
    std::int64_t realizability_calls = 0;
};

struct VCResult {
    int dimension = 0;
    VertexSet witness;
    ShatterCertificate certificate;
    SearchStats stats;
};

struct DecisionResult {
    bool holds = false;
    std::optional<VertexSet> witness;
    SearchStats stats;
};

/// Largest size any shattered set can have: |V|, tightened by
/// leaf_count_upper_bound(n, Delta) + 1 (k = 1) or - k + 1 (k >= 2).
inline int search_upper_bound(const Graph& g, int k, bool use_leaf_bound)
{
    int upper = g.order();
    if (use_leaf_bound && g.order() >= 2 && g.max_degree() >= 2) {
        const int leaves = leaf_count_upper_bound(g.order(), g.max_degree());
        upper = std::min(upper, k == 1 ? leaves + 1 : std::max(0, leaves - k + 1));
    }
    return upper;
}

namespace detail {

// Depth-first growth of shattered sets in increasing vertex order, so sets are
// visited in lexicographic order and every prefix is itself shattered.
class ShatterSearch {
public:
    ShatterSearch(const Graph& g, int k, const SearchOptions& opts) : g_(g), k_(k), opts_(opts)
    {
        const int n = g.order();
        in_a_.assign(static_cast<std::size_t>(n), 0);
        class_prev_.assign(static_cast<std::size_t>(n), -1);
        if (opts.twin_pruning)
            for (const VertexSet& cls : symmetry_classes(g))
                for (std::size_t i = 1; i < cls.size(); ++i) class_prev_[static_cast<std::size_t>(cls[i])] = cls[i - 1];
        viable_.assign(static_cast<std::size_t>(n), 0);
        for (Vertex v = 0; v < n; ++v) {
            ++stats_.realizability_calls;
            viable_[static_cast<std::size_t>(v)] = realizable(g, VertexSet{v}, VertexSet{v}, k, nullptr, opts.realize);
        }
        suffix_.assign(static_cast<std::size_t>(n) + 1, 0);
        for (int v = n - 1; v >= 0; --v)
            suffix_[static_cast<std::size_t>(v)] = suffix_[static_cast<std::size_t>(v) + 1] + viable_[static_cast<std::size_t>(v)];
        upper_ = search_upper_bound(g, k, opts.leaf_bound);
    }

    int upper() const { return upper_; }
    const SearchStats& stats() const { return stats_; }

    // target < 0: maximize. Otherwise stop at the first set of size target.
    VertexSet run(int target)
    {
        target_ = target;
        best_.clear();
        done_ = false;
        if (target >= 0 && target > upper_) return {};
        std::vector<Entry> root_cache;
        dfs(root_cache, 0);
        return VertexSet(best_);
    }

private:
    struct Entry {
        VertexSet trace;
        VertexSet witness;
    };

    void charge(std::int64_t calls)
    {
        stats_.realizability_calls += calls;
        if (stats_.realizability_calls > opts_.call_budget)
            throw scale_error("shattered-set search exceeded its budget of " + std::to_string(opts_.call_budget) +
                              " realizability calls");
    }

    bool realize(const VertexSet& a, const VertexSet& w, VertexSet* witness)
    {
        charge(1);
        return realizable(g_, a, w, k_, witness, opts_.realize);
    }

    bool extend(const std::vector<Entry>& cache, Vertex v, std::vector<Entry>& out)
    {
        std::vector<Vertex> grown = a_;
        grown.push_back(v);
        const VertexSet a(grown);
        out.clear();
        if (!opts_.incremental) {
            ShatterOptions so;
            so.certificate = true;
            so.realize = opts_.realize;
            auto check = check_shattered_poly(g_, a, k_, so);
            charge(check.traces_checked);
            if (!check.shattered) return false;
            for (auto& e : check.certificate->entries)
                if (!e.trace.empty()) out.push_back({std::move(e.trace), std::move(e.witness)});
            return true;
        }
        // New traces W0 + {v}, |W0| <= k.
        bool ok = for_each_small_subset(a_, k_, [&](const std::vector<Vertex>& w0) {
            VertexSet w(w0);
            w.insert(v);
            VertexSet witness;
            if (!realize(a, w, &witness)) return false;
            out.push_back({std::move(w), std::move(witness)});
            return true;
        });
        if (!ok) return false;
        // Old witnesses that use v no longer cut out their trace.
        for (const Entry& e : cache) {
            if (!e.witness.contains(v)) {
                out.push_back(e);
                continue;
            }
            VertexSet witness;
            if (!realize(a, e.trace, &witness)) return false;
            out.push_back({e.trace, std::move(witness)});
        }
        return true;
    }

    void dfs(const std::vector<Entry>& cache, Vertex start)
    {
        if (++stats_.sets_examined > opts_.node_budget)
            throw scale_error("shattered-set search exceeded its node budget of " + std::to_string(opts_.node_budget));
        const int size = static_cast<int>(a_.size());
        if (size > static_cast<int>(best_.size())) {
            best_ = a_;
            if (size == target_ || size == upper_) {
                done_ = true;
                return;
            }
        }
        std::vector<Entry> child;
        for (Vertex v = start; v < g_.order() && !done_; ++v) {
            const int reachable = size + suffix_[static_cast<std::size_t>(v)];
            if (target_ >= 0 ? reachable < target_ : reachable <= static_cast<int>(best_.size())) break;
            if (!viable_[static_cast<std::size_t>(v)]) continue;
            const Vertex prev = class_prev_[static_cast<std::size_t>(v)];
            if (prev >= 0 && !in_a_[static_cast<std::size_t>(prev)]) continue;
            if (!extend(cache, v, child)) continue;
            a_.push_back(v);
            in_a_[static_cast<std::size_t>(v)] = 1;
            dfs(child, v + 1);
            in_a_[static_cast<std::size_t>(v)] = 0;
            a_.pop_back();
        }
    }

    const Graph& g_;
    int k_;
    SearchOptions opts_;
    std::vector<char> in_a_;
    std::vector<Vertex> class_prev_;
    std::vector<char> viable_;
    std::vector<int> suffix_;
    std::vector<Vertex> a_;
    std::vector<Vertex> best_;
    int upper_ = 0;
    int target_ = -1;
    bool done_ = false;
    SearchStats stats_;
};

} // namespace detail

/// Exact VC_{k-con}(G) with the lexicographically smallest maximum shattered set.
inline VCResult vc_dimension(const Graph& g, int k, const SearchOptions& opts = {})
{
    if (k < 1) throw precondition_error("k must be at least 1");
    detail::ShatterSearch search(g, k, opts);
    VCResult out;
    out.witness = search.run(-1);
    out.dimension = static_cast<int>(out.witness.size());
    ShatterOptions so;
    so.certificate = true;
    so.realize = opts.realize;
    out.certificate = *check_shattered_poly(g, out.witness, k, so).certificate;
    out.stats = search.stats();
    return out;
}

/// Decision variant: is VC_{k-con}(G) >= s? The witness is the lexicographically
/// smallest shattered set of size s.
inline DecisionResult vc_at_least(const Graph& g, int k, int s, const SearchOptions& opts = {})
{
    if (k < 1) throw precondition_error("k must be at least 1");
    if (s < 1) throw precondition_error("threshold s must be at least 1");
    detail::ShatterSearch search(g, k, opts);
    DecisionResult out;
    VertexSet found = search.run(s);
    if (static_cast<int>(found.size()) >= s) {
        out.holds = true;
        out.witness = std::move(found);
    }
    out.stats = search.stats();
    return out;
}

} // namespace kvc
