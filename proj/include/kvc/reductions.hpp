#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kvc/connectivity.hpp"
#include "kvc/graph.hpp"
#include "kvc/planarity.hpp"
#include "kvc/sat.hpp"
#include "kvc/shattering.hpp"

// Instance builders for the two hardness reductions (set multicover to
// k-connected VC dimension, planar monotone 1-in-3 SAT to planar
// 2-connected VC dimension), with encoders, decoders and checking harnesses.

namespace kvc {

/// A constructed graph plus the bookkeeping needed to read it back: a role
/// tag and an owner ("variable:2", "clause:0", "element:1", "none") per vertex.
struct GadgetGraph {
    Graph graph;
    std::vector<std::string> roles;
    std::vector<std::string> provenance;
    int threshold = 0;
    int intended_k = 2;
    int p = 0;
    bool faithful_p = true;

    std::vector<Vertex> with_role(const std::string& role) const
    {
        std::vector<Vertex> out;
        for (Vertex v = 0; v < graph.order(); ++v)
            if (roles[static_cast<std::size_t>(v)] == role) out.push_back(v);
        return out;
    }
};

namespace detail {

class GadgetBuilder {
public:
    Vertex add(std::string role, std::string owner)
    {
        roles_.push_back(std::move(role));
        owners_.push_back(std::move(owner));
        return static_cast<Vertex>(roles_.size()) - 1;
    }
    void edge(Vertex u, Vertex v) { edges_.emplace_back(u, v); }

    GadgetGraph finish()
    {
        GadgetGraph gg;
        gg.graph = Graph(static_cast<int>(roles_.size()));
        for (auto [u, v] : edges_) gg.graph.add_edge(u, v);
        gg.roles = std::move(roles_);
        gg.provenance = std::move(owners_);
        return gg;
    }

    int size() const { return static_cast<int>(roles_.size()); }

private:
    std::vector<std::string> roles_;
    std::vector<std::string> owners_;
    std::vector<std::pair<Vertex, Vertex>> edges_;
};

inline std::string owner(const char* kind, std::size_t i) { return std::string(kind) + ":" + std::to_string(i); }

} // namespace detail

// ---------------------------------------------------------------------------
// Set multicover

struct MulticoverInstance {
    int ground_size = 1;
    std::vector<std::vector<int>> subsets;
    int k = 2;
    int t = 0;
};

inline void validate_instance(const MulticoverInstance& inst)
{
    if (inst.ground_size < 1) throw input_error("ground set must be nonempty");
    if (inst.k < 1) throw input_error("coverage k must be at least 1");
    if (inst.t < 0) throw input_error("budget t must be nonnegative");
    for (std::size_t i = 0; i < inst.subsets.size(); ++i)
        for (int e : inst.subsets[i])
            if (e < 0 || e >= inst.ground_size)
                throw input_error("subset " + std::to_string(i) + " contains element " + std::to_string(e) +
                                  " outside the ground set");
}

struct MulticoverLimits {
    int max_subsets = 20;
};

/// Lexicographically first index set (0-based, sorted) covering every element
/// at least k times with at most t subsets, or nullopt.
inline std::optional<std::vector<int>> solve_multicover(const MulticoverInstance& inst, MulticoverLimits limits = {})
{
    validate_instance(inst);
    const int m = static_cast<int>(inst.subsets.size());
    if (m > limits.max_subsets)
        throw scale_error("multicover solver refuses " + std::to_string(m) + " subsets (limit " +
                          std::to_string(limits.max_subsets) + ")");
    std::vector<std::vector<char>> member(static_cast<std::size_t>(m),
                                          std::vector<char>(static_cast<std::size_t>(inst.ground_size), 0));
    for (int i = 0; i < m; ++i)
        for (int e : inst.subsets[static_cast<std::size_t>(i)]) member[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)] = 1;
    std::vector<int> cover(static_cast<std::size_t>(inst.ground_size), 0);
    std::vector<int> chosen;
    auto covered = [&] {
        for (int c : cover)
            if (c < inst.k) return false;
        return true;
    };
    std::function<bool(int)> dfs = [&](int from) {
        if (covered()) return true;
        if (static_cast<int>(chosen.size()) == inst.t) return false;
        for (int i = from; i < m; ++i) {
            chosen.push_back(i);
            for (int e = 0; e < inst.ground_size; ++e) cover[static_cast<std::size_t>(e)] += member[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)];
            if (dfs(i + 1)) return true;
            for (int e = 0; e < inst.ground_size; ++e) cover[static_cast<std::size_t>(e)] -= member[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)];
            chosen.pop_back();
        }
        return false;
    };
    if (dfs(0)) return chosen;
    return std::nullopt;
}

/// Columns of t+k+1 copies per element, one vertex per subset, a k-clique
/// joined to every subset vertex and to t+m+1 reservoir vertices. Vertex ids:
/// columns, then subset vertices, then the clique, then the reservoir.
inline GadgetGraph multicover_to_graph(const MulticoverInstance& inst)
{
    validate_instance(inst);
    if (inst.k < 2) throw precondition_error("the multicover construction needs k >= 2");
    const int n = inst.ground_size, m = static_cast<int>(inst.subsets.size()), k = inst.k, t = inst.t;
    const int height = t + k + 1;
    detail::GadgetBuilder b;
    std::vector<std::vector<Vertex>> column(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        for (int c = 0; c < height; ++c) column[static_cast<std::size_t>(j)].push_back(b.add("column-copy", detail::owner("element", static_cast<std::size_t>(j))));
    std::vector<Vertex> sets, clique, reservoir;
    for (int i = 0; i < m; ++i) sets.push_back(b.add("set-vertex", detail::owner("set", static_cast<std::size_t>(i))));
    for (int i = 0; i < k; ++i) clique.push_back(b.add("clique", "none"));
    for (int i = 0; i < t + m + 1; ++i) reservoir.push_back(b.add("reservoir", "none"));

    for (std::size_t a = 0; a < clique.size(); ++a)
        for (std::size_t c = a + 1; c < clique.size(); ++c) b.edge(clique[a], clique[c]);
    for (Vertex c : clique) {
        for (Vertex s : sets) b.edge(c, s);
        for (Vertex d : reservoir) b.edge(c, d);
    }
    for (int i = 0; i < m; ++i) {
        const auto& subset = inst.subsets[static_cast<std::size_t>(i)];
        std::vector<char> in(static_cast<std::size_t>(n), 0);
        for (int e : subset) in[static_cast<std::size_t>(e)] = 1;
        for (int j = 0; j < n; ++j)
            if (in[static_cast<std::size_t>(j)])
                for (Vertex v : column[static_cast<std::size_t>(j)]) b.edge(sets[static_cast<std::size_t>(i)], v);
    }
    GadgetGraph gg = b.finish();
    gg.threshold = gg.graph.order() - (t + k);
    gg.intended_k = k;
    return gg;
}

/// The shattered set built from a cover I: columns, reservoir and the subset
/// vertices outside I.
inline VertexSet multicover_shattered_set(const GadgetGraph& gg, const std::vector<int>& cover)
{
    std::vector<Vertex> out;
    for (Vertex v = 0; v < gg.graph.order(); ++v) {
        const auto& role = gg.roles[static_cast<std::size_t>(v)];
        if (role == "column-copy" || role == "reservoir") out.push_back(v);
        if (role == "set-vertex") {
            const int i = std::stoi(gg.provenance[static_cast<std::size_t>(v)].substr(4));
            if (std::find(cover.begin(), cover.end(), i) == cover.end()) out.push_back(v);
        }
    }
    return VertexSet(std::move(out));
}

/// Explicit certificate for that set: trace W is cut out by clique + W + the
/// subset vertices of I. Every copy in W then has k neighbours among the
/// chosen subset vertices and every other vertex sees the whole clique.
inline ShatterCertificate multicover_certificate(const GadgetGraph& gg, const std::vector<int>& cover)
{
    const VertexSet shattered = multicover_shattered_set(gg, cover);
    std::vector<Vertex> base;
    for (Vertex v = 0; v < gg.graph.order(); ++v) {
        const auto& role = gg.roles[static_cast<std::size_t>(v)];
        if (role == "clique") base.push_back(v);
        if (role == "set-vertex") {
            const int i = std::stoi(gg.provenance[static_cast<std::size_t>(v)].substr(4));
            if (std::find(cover.begin(), cover.end(), i) != cover.end()) base.push_back(v);
        }
    }
    const VertexSet core(base);
    ShatterCertificate cert{shattered, gg.intended_k, false, {}};
    detail::for_each_small_subset(shattered.members(), gg.intended_k + 1, [&](const std::vector<Vertex>& w) {
        VertexSet trace(w);
        cert.entries.push_back({trace, trace.empty() ? VertexSet{} : set_union(core, trace)});
        return true;
    });
    return cert;
}

struct MulticoverReport {
    std::optional<std::vector<int>> cover;
    bool vc_holds = false;
    bool agreement = false;
    int order = 0;
    int threshold = 0;
    std::optional<VertexSet> search_witness;
    std::optional<VertexSet> shattered_set;
    std::optional<ShatterCertificate> certificate;
    bool certificate_valid = false;
    bool poly_check = false;
};

/// Solves the multicover instance and the VC question independently and
/// compares. A YES answer also carries a certificate re-validated by both
/// validate_certificate and the polynomial shattering check.
inline MulticoverReport verify_multicover_reduction(const MulticoverInstance& inst, const SearchOptions& opts = {})
{
    MulticoverReport r;
    r.cover = solve_multicover(inst);
    const GadgetGraph gg = multicover_to_graph(inst);
    r.order = gg.graph.order();
    r.threshold = gg.threshold;
    const DecisionResult d = vc_at_least(gg.graph, gg.intended_k, gg.threshold, opts);
    r.vc_holds = d.holds;
    r.search_witness = d.witness;
    r.agreement = r.cover.has_value() == r.vc_holds;
    if (r.cover) {
        r.shattered_set = multicover_shattered_set(gg, *r.cover);
        r.certificate = multicover_certificate(gg, *r.cover);
        const CertificateCheck check = validate_certificate(gg.graph, *r.certificate);
        r.certificate_valid = check.valid && check.complete &&
                              static_cast<int>(r.shattered_set->size()) >= gg.threshold;
        r.poly_check = is_shattered_poly(gg.graph, *r.shattered_set, gg.intended_k);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Planar monotone 1-in-3 SAT

inline int faithful_p(int clauses, int variables) { return 5 * clauses + 6 * variables + 1; }

struct ShamrockFragment {
    std::array<Vertex, 3> centre{};
    std::array<std::vector<Vertex>, 3> veins;
    std::array<std::optional<Vertex>, 3> peaks; // leaf i spans centre i and i+1 mod 3
};

namespace detail {

inline ShamrockFragment add_shamrock(GadgetBuilder& b, int p, bool peaked, const std::string& who)
{
    if (p < 1) throw precondition_error("gadget parameter p must be at least 1");
    ShamrockFragment s;
    for (auto& c : s.centre) c = b.add("centre", who);
    for (int i = 0; i < 3; ++i) b.edge(s.centre[static_cast<std::size_t>(i)], s.centre[static_cast<std::size_t>((i + 1) % 3)]);
    for (std::size_t i = 0; i < 3; ++i) {
        const Vertex u = s.centre[i], w = s.centre[(i + 1) % 3];
        for (int j = 0; j < p; ++j) {
            const Vertex v = b.add("vein", who);
            b.edge(u, v);
            b.edge(w, v);
            s.veins[i].push_back(v);
        }
        if (peaked) {
            const Vertex v = b.add("peak", who);
            b.edge(u, v);
            b.edge(w, v);
            s.peaks[i] = v;
        }
    }
    return s;
}

} // namespace detail

struct VariableFragment {
    Vertex left = 0, positive = 0, right = 0, negative = 0;
    ShamrockFragment shamrock;
};

struct ConnectorFragment {
    std::vector<Vertex> mids;
};

/// Clause gadget: shamrock with p veins per leaf and one peak per leaf.
inline ShamrockFragment build_clause_gadget(detail::GadgetBuilder& b, int p, std::size_t clause)
{
    return detail::add_shamrock(b, p, true, detail::owner("clause", clause));
}

/// Variable gadget: 4-cycle left - x - right - not x, plus a peakless shamrock
/// whose centre is joined to x, not x and the left horizontal vertex.
inline VariableFragment build_variable_gadget(detail::GadgetBuilder& b, int p, std::size_t var)
{
    if (p < 1) throw precondition_error("gadget parameter p must be at least 1");
    const std::string who = detail::owner("variable", var);
    VariableFragment f;
    f.left = b.add("horizontal-left", who);
    f.positive = b.add("literal-pos", who);
    f.right = b.add("horizontal-right", who);
    f.negative = b.add("literal-neg", who);
    b.edge(f.left, f.positive);
    b.edge(f.positive, f.right);
    b.edge(f.right, f.negative);
    b.edge(f.negative, f.left);
    f.shamrock = detail::add_shamrock(b, p, false, who);
    b.edge(f.shamrock.centre[0], f.positive);
    b.edge(f.shamrock.centre[1], f.negative);
    b.edge(f.shamrock.centre[2], f.left);
    return f;
}

/// p + 1 internally disjoint paths between two horizontal vertices: one edge
/// and p paths through a fresh middle vertex.
inline ConnectorFragment build_connector(detail::GadgetBuilder& b, int p, Vertex from, Vertex to, std::size_t index)
{
    if (p < 1) throw precondition_error("gadget parameter p must be at least 1");
    ConnectorFragment c;
    b.edge(from, to);
    for (int i = 0; i < p; ++i) {
        const Vertex v = b.add("connector-mid", detail::owner("connector", index));
        b.edge(from, v);
        b.edge(v, to);
        c.mids.push_back(v);
    }
    return c;
}

/// The planar graph of a monotone laid-out formula. Variables are numbered in
/// line order, then clauses by index, then connectors; connectors close the
/// variable sequence into a ring. p <= 0 selects 5m + 6n + 1.
inline GadgetGraph monotone1in3_to_planar_graph(const sat::Formula& f, const sat::RectilinearLayout& l, int p = 0)
{
    sat::require_valid_layout(f, l);
    if (!sat::is_monotone(f)) throw precondition_error("formula is not monotone");
    if (!sat::find_inconsistent_pairs(f, l).empty())
        throw precondition_error("layout is not monotone: some clause sits on the wrong side");
    if (f.num_vars < 1) throw precondition_error("formula has no variables");
    const int m = static_cast<int>(f.clauses.size()), n = f.num_vars;
    const bool faithful = p <= 0;
    if (faithful) p = faithful_p(m, n);

    detail::GadgetBuilder b;
    std::vector<VariableFragment> vars(static_cast<std::size_t>(n));
    for (int var : l.order) vars[static_cast<std::size_t>(var)] = build_variable_gadget(b, p, static_cast<std::size_t>(var));
    for (std::size_t j = 0; j < f.clauses.size(); ++j) {
        const ShamrockFragment s = build_clause_gadget(b, p, j);
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& lit = f.clauses[j].lits[i];
            const auto& vf = vars[static_cast<std::size_t>(lit.var)];
            b.edge(*s.peaks[i], lit.negated ? vf.negative : vf.positive);
        }
    }
    for (std::size_t i = 0; i < l.order.size(); ++i) {
        const auto& from = vars[static_cast<std::size_t>(l.order[i])];
        const auto& to = vars[static_cast<std::size_t>(l.order[(i + 1) % l.order.size()])];
        build_connector(b, p, from.right, to.left, i);
    }
    GadgetGraph gg = b.finish();
    gg.p = p;
    gg.faithful_p = faithful;
    gg.intended_k = 2;
    gg.threshold = gg.graph.order() - (5 * m + 6 * n);
    return gg;
}

namespace detail {

inline std::pair<std::string, int> parse_owner(const std::string& s)
{
    const auto colon = s.find(':');
    if (colon == std::string::npos) return {s, -1};
    return {s.substr(0, colon), std::stoi(s.substr(colon + 1))};
}

struct LiteralVertices {
    Vertex positive = -1, negative = -1;
};

inline std::vector<LiteralVertices> literal_vertices(const GadgetGraph& gg)
{
    std::vector<LiteralVertices> out;
    for (Vertex v = 0; v < gg.graph.order(); ++v) {
        const auto& role = gg.roles[static_cast<std::size_t>(v)];
        if (role != "literal-pos" && role != "literal-neg") continue;
        const int var = parse_owner(gg.provenance[static_cast<std::size_t>(v)]).second;
        if (var >= static_cast<int>(out.size())) out.resize(static_cast<std::size_t>(var) + 1);
        (role == "literal-pos" ? out[static_cast<std::size_t>(var)].positive : out[static_cast<std::size_t>(var)].negative) = v;
    }
    return out;
}

} // namespace detail

/// The removed set for a satisfying assignment: every shamrock centre, both
/// horizontal vertices and the false literal vertex of every variable, and the
/// false peaks of every clause.
inline VertexSet removed_set_from_assignment(const GadgetGraph& gg, const sat::Formula& f, const sat::Assignment& a)
{
    if (!sat::eval_1in3(f, a)) throw precondition_error("assignment does not satisfy the formula in the 1-in-3 sense");
    std::vector<Vertex> removed;
    for (Vertex v = 0; v < gg.graph.order(); ++v) {
        const auto& role = gg.roles[static_cast<std::size_t>(v)];
        if (role == "centre" || role == "horizontal-left" || role == "horizontal-right") {
            removed.push_back(v);
        } else if (role == "literal-pos" || role == "literal-neg") {
            const int var = detail::parse_owner(gg.provenance[static_cast<std::size_t>(v)]).second;
            if (a[static_cast<std::size_t>(var)] != (role == "literal-pos")) removed.push_back(v);
        } else if (role == "peak") {
            for (Vertex w : gg.graph.neighbors(v)) {
                const auto& wr = gg.roles[static_cast<std::size_t>(w)];
                if (wr != "literal-pos" && wr != "literal-neg") continue;
                const int var = detail::parse_owner(gg.provenance[static_cast<std::size_t>(w)]).second;
                if (a[static_cast<std::size_t>(var)] != (wr == "literal-pos")) removed.push_back(v);
            }
        }
    }
    return VertexSet(std::move(removed));
}

inline VertexSet shattered_set_from_assignment(const GadgetGraph& gg, const sat::Formula& f, const sat::Assignment& a)
{
    return set_difference(VertexSet::range(gg.graph.order()), removed_set_from_assignment(gg, f, a));
}

/// Structural facts the removed set must have: it is 2-connected, its
/// horizontal and literal vertices form a single cycle of length 3n, and each
/// gadget's centre group meets that cycle in exactly two edges.
inline std::vector<std::string> check_removed_structure(const GadgetGraph& gg, const VertexSet& removed)
{
    std::vector<std::string> problems;
    const VertexMask in = mask_of(gg.graph.order(), removed);
    if (!is_k_connected(gg.graph, &in, 2)) problems.push_back("removed set is not 2-connected");
    VertexMask ring(in.size(), 0);
    int ring_size = 0, variables = 0;
    for (Vertex v : removed) {
        const auto& role = gg.roles[static_cast<std::size_t>(v)];
        if (role.rfind("horizontal", 0) == 0 || role.rfind("literal", 0) == 0) {
            ring[static_cast<std::size_t>(v)] = 1;
            ++ring_size;
        }
        if (role == "horizontal-left") ++variables;
    }
    bool cycle = is_connected(gg.graph, &ring) && ring_size == 3 * variables;
    for (Vertex v = 0; v < gg.graph.order() && cycle; ++v) {
        if (!ring[static_cast<std::size_t>(v)]) continue;
        int d = 0;
        for (Vertex w : gg.graph.neighbors(v)) d += ring[static_cast<std::size_t>(w)];
        cycle = d == 2;
    }
    if (!cycle) problems.push_back("horizontal and false literal vertices do not form a 3n-cycle");
    std::map<std::string, int> joins;
    for (Vertex v : removed) {
        if (ring[static_cast<std::size_t>(v)]) continue;
        const auto& owner = gg.provenance[static_cast<std::size_t>(v)];
        joins.emplace(owner, 0);
        for (Vertex w : gg.graph.neighbors(v)) joins[owner] += ring[static_cast<std::size_t>(w)];
    }
    for (const auto& [owner, count] : joins)
        if (count != 2) problems.push_back(owner + " meets the cycle in " + std::to_string(count) + " edges");
    return problems;
}

/// A literal is true iff its vertex is in the shattered set. When both literal
/// vertices of a variable are present, literal vertices of degree 3 (unused by
/// any clause) are dropped first.
inline sat::Assignment assignment_from_shattered_set(const GadgetGraph& gg, const VertexSet& shattered)
{
    if (static_cast<int>(shattered.size()) < gg.threshold)
        throw precondition_error("set has " + std::to_string(shattered.size()) + " vertices, below the threshold " +
                                 std::to_string(gg.threshold));
    const auto lits = detail::literal_vertices(gg);
    sat::Assignment a(lits.size(), false);
    for (std::size_t var = 0; var < lits.size(); ++var) {
        bool pos = shattered.contains(lits[var].positive);
        bool neg = shattered.contains(lits[var].negative);
        if (pos && neg) {
            if (gg.graph.degree(lits[var].positive) == 3) pos = false;
            if (gg.graph.degree(lits[var].negative) == 3) neg = false;
        }
        if (pos == neg)
            throw precondition_error("not a canonical witness: variable " + std::to_string(var) + " has " +
                                     (pos ? "both" : "neither") + " literal vertices in the set");
        a[var] = pos;
    }
    return a;
}

struct PlanarForwardReport {
    int order = 0;
    int threshold = 0;
    int removed_size = 0;
    int shattered_size = 0;
    bool planar = false;
    std::vector<std::string> structure_problems;
    bool shattered = false;
    std::int64_t traces_checked = 0;
    bool certificate_valid = false;
    int spot_checks = 0;
    int spot_disagreements = 0;
    bool round_trip = false;
};

/// Forward direction for one satisfying assignment: build, encode, and check
/// the encoded set with the twin-compressed polynomial test. A seeded sample of
/// random traces of size <= 3 is also checked directly, without compression.
inline PlanarForwardReport verify_planar_forward(const sat::Formula& f, const sat::RectilinearLayout& l,
                                                 const sat::Assignment& a, int p = 0, int spot_checks = 1000,
                                                 std::uint64_t seed = 1)
{
    PlanarForwardReport r;
    const GadgetGraph gg = monotone1in3_to_planar_graph(f, l, p);
    r.order = gg.graph.order();
    r.threshold = gg.threshold;
    r.planar = is_planar(gg.graph);
    const VertexSet removed = removed_set_from_assignment(gg, f, a);
    r.removed_size = static_cast<int>(removed.size());
    r.structure_problems = check_removed_structure(gg, removed);
    const VertexSet shattered = set_difference(VertexSet::range(gg.graph.order()), removed);
    r.shattered_size = static_cast<int>(shattered.size());

    ShatterOptions so;
    so.certificate = true;
    so.twin_compression = true;
    const ShatterCheck check = check_shattered_poly(gg.graph, shattered, 2, so);
    r.shattered = check.shattered;
    r.traces_checked = check.traces_checked;
    if (check.certificate) r.certificate_valid = validate_certificate(gg.graph, *check.certificate).valid;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, shattered.size() - 1);
    std::uniform_int_distribution<int> size(1, 3);
    for (int i = 0; i < spot_checks; ++i) {
        std::vector<Vertex> w;
        const int s = size(rng);
        while (static_cast<int>(w.size()) < s) {
            const Vertex v = shattered[pick(rng)];
            if (std::find(w.begin(), w.end(), v) == w.end()) w.push_back(v);
        }
        VertexSet witness;
        const bool ok = realizable(gg.graph, shattered, VertexSet(w), 2, &witness);
        ++r.spot_checks;
        if (ok != r.shattered || (ok && !family_member(gg.graph, witness, 2))) ++r.spot_disagreements;
    }
    r.round_trip = assignment_from_shattered_set(gg, shattered) == a;
    return r;
}

struct ProbeOutcome {
    bool satisfiable = false;
    std::optional<bool> vc_holds; // empty when the search ran out of budget
    int order = 0;
    int threshold = 0;
};

/// Reduced-p soundness probe. With small p the construction is not the
/// faithful one; the outcome is reported and never asserted.
inline ProbeOutcome probe_reduced_p(const sat::Formula& f, const sat::RectilinearLayout& l, int p,
                                    std::int64_t node_budget, std::int64_t call_budget = 1'000'000)
{
    ProbeOutcome out;
    out.satisfiable = sat::solve_1in3(f).has_value();
    const GadgetGraph gg = monotone1in3_to_planar_graph(f, l, p);
    out.order = gg.graph.order();
    out.threshold = gg.threshold;
    SearchOptions opts;
    opts.node_budget = node_budget;
    opts.call_budget = call_budget;
    try {
        out.vc_holds = vc_at_least(gg.graph, 2, gg.threshold, opts).holds;
    } catch (const scale_error&) {
        out.vc_holds.reset();
    }
    return out;
}

} // namespace kvc
