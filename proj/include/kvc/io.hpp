#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "kvc/bounds.hpp"
#include "kvc/graph.hpp"
#include "kvc/reductions.hpp"
#include "kvc/sat.hpp"
#include "kvc/shattering.hpp"

// File formats. JSON is canonical (keys sorted, arrays in canonical order);
// DIMACS is accepted for graphs and CNF; DOT is write-only.

namespace kvc::io {

using json = nlohmann::json;

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline int line_of_offset(const std::string& text, std::size_t offset)
{
    int line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) line += text[i] == '\n';
    return line;
}

inline json parse_json(const std::string& text, const std::string& where)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(where + ":" + std::to_string(line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1)) +
                          ": malformed JSON: " + e.what());
    }
}

// Line of the index-th element of the array stored under key.
inline int line_of_element(const std::string& text, const std::string& key, std::size_t index)
{
    const auto at = text.find("\"" + key + "\"");
    if (at == std::string::npos) return 1;
    auto open = text.find('[', at);
    if (open == std::string::npos) return line_of_offset(text, at);
    int depth = 0;
    std::size_t seen = 0;
    for (std::size_t i = open; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '[' || c == '{') {
            ++depth;
            if (depth == 2) {
                if (seen == index) return line_of_offset(text, i);
                ++seen;
            }
        } else if (c == ']' || c == '}') {
            if (--depth == 0) break;
        } else if (depth == 1 && c != ',' && !std::isspace(static_cast<unsigned char>(c))) {
            if (seen == index) return line_of_offset(text, i);
            ++seen;
            while (i + 1 < text.size() && text[i + 1] != ',' && text[i + 1] != ']') ++i;
        }
    }
    return line_of_offset(text, at);
}

template <class T>
T get_field(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key)) throw input_error(where + ": missing field \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw input_error(where + ": field \"" + std::string(key) + "\" has the wrong type");
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Graphs

inline json graph_to_json(const Graph& g)
{
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    json j{{"n", g.order()}, {"edges", edges}};
    if (!g.labels().empty()) j["labels"] = g.labels();
    return j;
}

/// {"n": N, "edges": [[u, v], ...], "labels": [...]}, 0-indexed.
inline Graph parse_graph_json(const std::string& text, const std::string& where = "graph")
{
    const json j = detail::parse_json(text, where);
    const int n = detail::get_field<int>(j, "n", where);
    if (n < 0) throw input_error(where + ":" + std::to_string(detail::line_of_element(text, "n", 0)) + ": negative vertex count");
    Graph g(n);
    const json edges = j.contains("edges") ? j.at("edges") : json::array();
    if (!edges.is_array()) throw input_error(where + ": \"edges\" must be an array");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        const std::string at = where + ":" + std::to_string(detail::line_of_element(text, "edges", i));
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw input_error(at + ": edge " + std::to_string(i) + " must be a pair of integers");
        try {
            g.add_edge(e[0].get<int>(), e[1].get<int>());
        } catch (const input_error& err) {
            throw input_error(at + ": " + err.what());
        }
    }
    if (j.contains("labels")) {
        try {
            g.set_labels(j.at("labels").get<std::vector<std::string>>());
        } catch (const json::exception&) {
            throw input_error(where + ": \"labels\" must be an array of strings");
        } catch (const input_error& err) {
            throw input_error(where + ": " + err.what());
        }
    }
    return g;
}

/// "p edge N M" header and "e u v" lines, 1-indexed; "c" lines are comments.
inline Graph parse_graph_dimacs(const std::string& text, const std::string& where = "graph")
{
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::optional<Graph> g;
    long declared = -1, seen = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string at = where + ":" + std::to_string(lineno);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        if (tag == "p") {
            std::string kind;
            long n = -1;
            if (g) throw input_error(at + ": second problem line");
            if (!(ls >> kind >> n >> declared) || (kind != "edge" && kind != "col") || n < 0 || declared < 0)
                throw input_error(at + ": expected \"p edge <vertices> <edges>\"");
            g.emplace(static_cast<int>(n));
        } else if (tag == "e") {
            if (!g) throw input_error(at + ": edge before the problem line");
            long u = 0, v = 0;
            std::string extra;
            if (!(ls >> u >> v) || (ls >> extra)) throw input_error(at + ": expected \"e <u> <v>\"");
            try {
                g->add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
            } catch (const input_error& err) {
                throw input_error(at + ": " + err.what() + " (ids are 1-based)");
            }
            ++seen;
        } else {
            throw input_error(at + ": unknown line type \"" + tag + "\"");
        }
    }
    if (!g) throw input_error(where + ": missing problem line");
    if (seen != declared)
        throw input_error(where + ": problem line declares " + std::to_string(declared) + " edges, found " +
                          std::to_string(seen));
    return std::move(*g);
}

inline bool looks_like_json(const std::string& text)
{
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) return c == '{' || c == '[';
    return false;
}

inline Graph read_graph(const std::string& path)
{
    const std::string text = read_file(path);
    return looks_like_json(text) ? parse_graph_json(text, path) : parse_graph_dimacs(text, path);
}

inline std::string graph_to_dimacs(const Graph& g)
{
    std::ostringstream out;
    out << "p edge " << g.order() << ' ' << g.size() << '\n';
    for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

inline VertexSet parse_vertex_list(const std::string& text)
{
    std::vector<Vertex> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        const auto e = item.find_last_not_of(" \t");
        const std::string tok = item.substr(b, e - b + 1);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw input_error("vertex list: \"" + tok + "\" is not an integer");
        out.push_back(v);
    }
    return VertexSet(std::move(out));
}

// ---------------------------------------------------------------------------
// Certificates and results

inline json certificate_to_json(const ShatterCertificate& c)
{
    json traces = json::array();
    for (const auto& e : c.entries) {
        json t{{"W", e.trace.members()}};
        if (e.witness.empty()) t["witness"] = "empty";
        else t["witness"] = e.witness.members();
        traces.push_back(std::move(t));
    }
    json j{{"A", c.set.members()}, {"k", c.k}, {"traces", traces}};
    if (c.compressed) j["compressed"] = true;
    return j;
}

inline ShatterCertificate certificate_from_json(const json& j, const std::string& where = "certificate")
{
    ShatterCertificate c;
    c.set = VertexSet(detail::get_field<std::vector<int>>(j, "A", where));
    c.k = detail::get_field<int>(j, "k", where);
    c.compressed = j.contains("compressed") && j.at("compressed").get<bool>();
    for (const auto& t : detail::get_field<json>(j, "traces", where)) {
        ShatterCertificate::Entry e;
        e.trace = VertexSet(detail::get_field<std::vector<int>>(t, "W", where));
        const json& w = detail::get_field<json>(t, "witness", where);
        if (w.is_string()) {
            if (w.get<std::string>() != "empty") throw input_error(where + ": witness must be a list or \"empty\"");
        } else {
            e.witness = VertexSet(w.get<std::vector<int>>());
        }
        c.entries.push_back(std::move(e));
    }
    return c;
}

inline json stats_to_json(const SearchStats& s)
{
    return {{"realizability_calls", s.realizability_calls}, {"sets_examined", s.sets_examined}};
}

inline json vc_result_to_json(const VCResult& r)
{
    return {{"dimension", r.dimension},
            {"witness", r.witness.members()},
            {"certificate", certificate_to_json(r.certificate)},
            {"search_stats", stats_to_json(r.stats)}};
}

inline json rational_to_json(const Rational& r)
{
    return {{"num", r.num}, {"den", r.den}, {"value", r.value()}, {"ceil", r.ceil()}};
}

inline json bound_report_to_json(const BoundReport& r)
{
    json j{{"n", r.n},
           {"m", r.m},
           {"max_degree", r.max_degree},
           {"k", r.k},
           {"ell", r.ell},
           {"ell_mode", r.ell_mode == TreeMode::exact ? "exact" : "greedy"},
           {"ell_upper", r.ell_upper},
           {"lower_turan", r.lower_turan},
           {"leaf_count_upper_bound", r.max_degree >= 2 ? json(leaf_count_upper_bound(r.n, r.max_degree)) : json(nullptr)}};
    j["upper_kcon"] = r.upper_kcon ? json(*r.upper_kcon) : json(nullptr);
    j["lower_thm5"] = r.lower_thm5 ? rational_to_json(*r.lower_thm5) : json(nullptr);
    return j;
}

inline json spanning_tree_to_json(const SpanningTreeResult& t)
{
    json edges = json::array();
    for (std::size_t v = 0; v < t.parent.size(); ++v)
        if (t.parent[v] >= 0) edges.push_back({std::min<int>(t.parent[v], static_cast<int>(v)), std::max<int>(t.parent[v], static_cast<int>(v))});
    std::sort(edges.begin(), edges.end());
    return {{"parent", t.parent}, {"edges", edges}, {"leaf_count", t.leaf_count}, {"optimal", t.optimal}};
}

// ---------------------------------------------------------------------------
// Formulas

inline json formula_to_json(const sat::Formula& f, const sat::RectilinearLayout* l)
{
    json clauses = json::array();
    for (std::size_t j = 0; j < f.clauses.size(); ++j) {
        json lits = json::array();
        for (const auto& lit : f.clauses[j].lits) lits.push_back({lit.var, lit.negated});
        json c{{"lits", lits}};
        if (l) {
            c["side"] = sat::side_name(l->clauses[j].side);
            c["level"] = l->clauses[j].level;
        }
        clauses.push_back(std::move(c));
    }
    json out{{"num_vars", f.num_vars}, {"clauses", clauses}};
    if (l) out["order"] = l->order;
    return out;
}

struct FormulaFile {
    sat::Formula formula;
    std::optional<sat::RectilinearLayout> layout;

    const sat::RectilinearLayout& require_layout() const
    {
        if (!layout) throw precondition_error("this operation needs a rectilinear layout; the input has none");
        return *layout;
    }
};

/// {"num_vars", "order", "clauses": [{"lits": [[var, neg] x3], "side", "level"}]}.
/// The layout is present only when "order" and every side/level are given.
inline FormulaFile parse_formula_json(const std::string& text, const std::string& where = "formula")
{
    const json j = detail::parse_json(text, where);
    FormulaFile out;
    out.formula.num_vars = detail::get_field<int>(j, "num_vars", where);
    const json clauses = detail::get_field<json>(j, "clauses", where);
    if (!clauses.is_array()) throw input_error(where + ": \"clauses\" must be an array");
    bool laid_out = j.contains("order");
    sat::RectilinearLayout layout;
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        const auto& c = clauses[i];
        const std::string at = where + ":" + std::to_string(detail::line_of_element(text, "clauses", i));
        const json lits = c.is_object() && c.contains("lits") ? c.at("lits") : json();
        if (!lits.is_array() || lits.size() != 3)
            throw input_error(at + ": clause " + std::to_string(i) + " must have exactly 3 literals");
        sat::Clause clause;
        for (std::size_t h = 0; h < 3; ++h) {
            const auto& l = lits[h];
            if (!l.is_array() || l.size() != 2 || !l[0].is_number_integer() || !l[1].is_boolean())
                throw input_error(at + ": literal must be [var, negated]");
            clause.lits[h] = sat::Literal{l[0].get<int>(), l[1].get<bool>()};
        }
        out.formula.clauses.push_back(clause);
        if (c.contains("side") && c.contains("level")) {
            const std::string side = c.at("side").get<std::string>();
            if (side != "above" && side != "below") throw input_error(at + ": side must be \"above\" or \"below\"");
            layout.clauses.push_back({side == "above" ? sat::Side::above : sat::Side::below, c.at("level").get<int>()});
        } else {
            laid_out = false;
        }
    }
    try {
        sat::validate_formula(out.formula);
    } catch (const input_error& e) {
        throw input_error(where + ": " + e.what());
    }
    if (laid_out) {
        layout.order = j.at("order").get<std::vector<int>>();
        out.layout = std::move(layout);
    }
    return out;
}

/// Plain DIMACS CNF with exactly three literals per clause; no layout.
inline FormulaFile parse_formula_dimacs(const std::string& text, const std::string& where = "formula")
{
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool header = false;
    long declared = 0;
    FormulaFile out;
    std::vector<long> pending;
    int pending_line = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string at = where + ":" + std::to_string(lineno);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c" || tok == "%") continue;
        if (tok == "p") {
            std::string kind;
            long vars = -1;
            if (!(ls >> kind >> vars >> declared) || kind != "cnf" || vars < 0)
                throw input_error(at + ": expected \"p cnf <vars> <clauses>\"");
            out.formula.num_vars = static_cast<int>(vars);
            header = true;
            continue;
        }
        if (!header) throw input_error(at + ": clause before the problem line");
        std::istringstream all(line);
        long lit = 0;
        while (all >> tok) {
            try {
                lit = std::stol(tok);
            } catch (const std::exception&) {
                throw input_error(at + ": \"" + tok + "\" is not a literal");
            }
            if (pending.empty()) pending_line = lineno;
            if (lit != 0) {
                pending.push_back(lit);
                continue;
            }
            if (pending.size() != 3)
                throw input_error(where + ":" + std::to_string(pending_line) + ": clause has " +
                                  std::to_string(pending.size()) + " literals, expected 3");
            sat::Clause c;
            for (std::size_t h = 0; h < 3; ++h)
                c.lits[h] = sat::Literal{static_cast<int>(std::labs(pending[h]) - 1), pending[h] < 0};
            out.formula.clauses.push_back(c);
            pending.clear();
        }
    }
    if (!header) throw input_error(where + ": missing problem line");
    if (!pending.empty()) throw input_error(where + ":" + std::to_string(pending_line) + ": clause not terminated by 0");
    if (static_cast<long>(out.formula.clauses.size()) != declared)
        throw input_error(where + ": problem line declares " + std::to_string(declared) + " clauses, found " +
                          std::to_string(out.formula.clauses.size()));
    try {
        sat::validate_formula(out.formula);
    } catch (const input_error& e) {
        throw input_error(where + ": " + e.what());
    }
    return out;
}

inline FormulaFile read_formula(const std::string& path)
{
    const std::string text = read_file(path);
    return looks_like_json(text) ? parse_formula_json(text, path) : parse_formula_dimacs(text, path);
}

inline json assignment_to_json(const sat::Assignment& a)
{
    json out = json::array();
    for (bool b : a) out.push_back(b);
    return out;
}

// ---------------------------------------------------------------------------
// Reductions

inline json gadget_graph_to_json(const GadgetGraph& gg)
{
    json j = graph_to_json(gg.graph);
    j["roles"] = gg.roles;
    j["provenance"] = gg.provenance;
    j["threshold"] = gg.threshold;
    j["intended_k"] = gg.intended_k;
    j["faithful_p"] = gg.faithful_p;
    if (gg.p > 0) j["p"] = gg.p;
    return j;
}

inline GadgetGraph gadget_graph_from_json(const std::string& text, const std::string& where = "gadget graph")
{
    GadgetGraph gg;
    gg.graph = parse_graph_json(text, where);
    const json j = json::parse(text);
    gg.roles = detail::get_field<std::vector<std::string>>(j, "roles", where);
    gg.provenance = detail::get_field<std::vector<std::string>>(j, "provenance", where);
    gg.threshold = detail::get_field<int>(j, "threshold", where);
    gg.intended_k = detail::get_field<int>(j, "intended_k", where);
    gg.faithful_p = detail::get_field<bool>(j, "faithful_p", where);
    gg.p = j.contains("p") ? j.at("p").get<int>() : 0;
    if (gg.roles.size() != static_cast<std::size_t>(gg.graph.order()) || gg.provenance.size() != gg.roles.size())
        throw input_error(where + ": roles/provenance length does not match the vertex count");
    return gg;
}

inline std::string gadget_graph_to_dot(const GadgetGraph& gg)
{
    static const std::map<std::string, std::string> colours{
        {"centre", "firebrick"},        {"vein", "gray70"},          {"peak", "darkorange"},
        {"literal-pos", "forestgreen"}, {"literal-neg", "royalblue"}, {"horizontal-left", "purple"},
        {"horizontal-right", "purple"}, {"connector-mid", "gold"},   {"column-copy", "gray70"},
        {"set-vertex", "forestgreen"},  {"clique", "firebrick"},     {"reservoir", "royalblue"}};
    std::ostringstream out;
    out << "graph G {\n  node [style=filled, shape=circle, fontsize=8];\n";
    for (Vertex v = 0; v < gg.graph.order(); ++v) {
        const auto& role = gg.roles[static_cast<std::size_t>(v)];
        const auto it = colours.find(role);
        out << "  " << v << " [fillcolor=\"" << (it == colours.end() ? "white" : it->second) << "\", tooltip=\""
            << role << ' ' << gg.provenance[static_cast<std::size_t>(v)] << "\"];\n";
    }
    for (auto [u, v] : gg.graph.edges()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
    return out.str();
}

/// {"ground_size": n, "subsets": [[...], ...], "k"?: int, "t"?: int}
inline MulticoverInstance parse_multicover_json(const std::string& text, const std::string& where = "instance")
{
    const json j = detail::parse_json(text, where);
    MulticoverInstance inst;
    inst.ground_size = detail::get_field<int>(j, "ground_size", where);
    inst.subsets = detail::get_field<std::vector<std::vector<int>>>(j, "subsets", where);
    if (j.contains("k")) inst.k = j.at("k").get<int>();
    if (j.contains("t")) inst.t = j.at("t").get<int>();
    for (std::size_t i = 0; i < inst.subsets.size(); ++i)
        for (int e : inst.subsets[i])
            if (e < 0 || e >= inst.ground_size)
                throw input_error(where + ":" + std::to_string(detail::line_of_element(text, "subsets", i)) +
                                  ": subset " + std::to_string(i) + " has element " + std::to_string(e) +
                                  " outside the ground set");
    return inst;
}

} // namespace kvc::io
