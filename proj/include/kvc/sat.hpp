#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "kvc/error.hpp"

// 1-in-3 satisfiability, rectilinear layouts and the conversion to a planar
// monotone instance through inequality gadgets.

namespace kvc::sat {

struct Literal {
    int var = 0;
    bool negated = false;
    friend auto operator<=>(const Literal&, const Literal&) = default;
};

struct Clause {
    std::array<Literal, 3> lits{};
    friend bool operator==(const Clause&, const Clause&) = default;
};

struct Formula {
    int num_vars = 0;
    std::vector<Clause> clauses;
    friend bool operator==(const Formula&, const Formula&) = default;
};

using Assignment = std::vector<bool>;

/// Throws input_error on an out-of-range variable or a clause repeating a variable.
inline void validate_formula(const Formula& f)
{
    if (f.num_vars < 0) throw input_error("negative variable count");
    for (std::size_t j = 0; j < f.clauses.size(); ++j) {
        const auto& c = f.clauses[j];
        for (int i = 0; i < 3; ++i) {
            const int v = c.lits[static_cast<std::size_t>(i)].var;
            if (v < 0 || v >= f.num_vars)
                throw input_error("clause " + std::to_string(j) + " uses variable " + std::to_string(v) +
                                  " outside 0.." + std::to_string(f.num_vars - 1));
            for (int h = 0; h < i; ++h)
                if (c.lits[static_cast<std::size_t>(h)].var == v)
                    throw input_error("clause " + std::to_string(j) + " repeats variable " + std::to_string(v));
        }
    }
}

inline bool literal_value(const Literal& l, const Assignment& a)
{
    return a[static_cast<std::size_t>(l.var)] != l.negated;
}

inline bool eval_1in3(const Formula& f, const Assignment& a)
{
    if (a.size() != static_cast<std::size_t>(f.num_vars))
        throw precondition_error("assignment has " + std::to_string(a.size()) + " values for " +
                                 std::to_string(f.num_vars) + " variables");
    for (const auto& c : f.clauses) {
        int t = 0;
        for (const auto& l : c.lits) t += literal_value(l, a);
        if (t != 1) return false;
    }
    return true;
}

inline bool is_monotone(const Formula& f)
{
    for (const auto& c : f.clauses) {
        const bool n0 = c.lits[0].negated;
        if (c.lits[1].negated != n0 || c.lits[2].negated != n0) return false;
    }
    return true;
}

struct SolveLimits {
    int max_vars = 128;
};

namespace detail {

// Backtracking over variables in index order, false before true, with
// exactly-one propagation. Propagation only removes values that cannot extend
// the current prefix, so the first model found is the lexicographically first.
class OneInThreeSolver {
public:
    explicit OneInThreeSolver(const Formula& f) : f_(f), value_(static_cast<std::size_t>(f.num_vars), -1)
    {
        occurs_.resize(static_cast<std::size_t>(f.num_vars));
        for (std::size_t j = 0; j < f.clauses.size(); ++j)
            for (const auto& l : f.clauses[j].lits) occurs_[static_cast<std::size_t>(l.var)].push_back(j);
    }

    std::optional<Assignment> solve()
    {
        // Clauses are checked up front so an empty-variable formula is handled.
        std::vector<int> trail;
        for (std::size_t j = 0; j < f_.clauses.size(); ++j)
            if (!propagate_clause(j, trail)) return std::nullopt;
        if (!drain(trail)) return std::nullopt;
        if (!search(0)) return std::nullopt;
        Assignment a(value_.size());
        for (std::size_t v = 0; v < value_.size(); ++v) a[v] = value_[v] == 1;
        return a;
    }

private:
    bool assign(int var, int val, std::vector<int>& trail)
    {
        auto& cur = value_[static_cast<std::size_t>(var)];
        if (cur != -1) return cur == val;
        cur = static_cast<signed char>(val);
        trail.push_back(var);
        pending_.push_back(var);
        return true;
    }

    bool propagate_clause(std::size_t j, std::vector<int>& trail)
    {
        const auto& c = f_.clauses[j];
        int trues = 0, open = 0;
        const Literal* last_open = nullptr;
        for (const auto& l : c.lits) {
            const int v = value_[static_cast<std::size_t>(l.var)];
            if (v == -1) {
                ++open;
                last_open = &l;
            } else if ((v == 1) != l.negated) {
                ++trues;
            }
        }
        if (trues > 1) return false;
        if (trues == 1) {
            for (const auto& l : c.lits)
                if (value_[static_cast<std::size_t>(l.var)] == -1 && !assign(l.var, l.negated ? 1 : 0, trail))
                    return false;
            return true;
        }
        if (open == 0) return false;
        if (open == 1) return assign(last_open->var, last_open->negated ? 0 : 1, trail);
        return true;
    }

    bool drain(std::vector<int>& trail)
    {
        while (!pending_.empty()) {
            const int var = pending_.back();
            pending_.pop_back();
            for (std::size_t j : occurs_[static_cast<std::size_t>(var)])
                if (!propagate_clause(j, trail)) {
                    pending_.clear();
                    return false;
                }
        }
        return true;
    }

    bool search(int from)
    {
        int var = from;
        while (var < f_.num_vars && value_[static_cast<std::size_t>(var)] != -1) ++var;
        if (var == f_.num_vars) return true;
        for (int val = 0; val <= 1; ++val) {
            std::vector<int> trail;
            if (assign(var, val, trail) && drain(trail) && search(var + 1)) return true;
            for (int v : trail) value_[static_cast<std::size_t>(v)] = -1;
        }
        return false;
    }

    const Formula& f_;
    std::vector<signed char> value_;
    std::vector<std::vector<std::size_t>> occurs_;
    std::vector<int> pending_;
};

} // namespace detail

/// Lexicographically first 1-in-3 model (false < true, variable 0 most significant), or nullopt.
inline std::optional<Assignment> solve_1in3(const Formula& f, SolveLimits limits = {})
{
    validate_formula(f);
    if (f.num_vars > limits.max_vars)
        throw scale_error("1-in-3 solver refuses " + std::to_string(f.num_vars) + " variables (limit " +
                          std::to_string(limits.max_vars) + ")");
    return detail::OneInThreeSolver(f).solve();
}

enum class Side { above, below };

inline const char* side_name(Side s) { return s == Side::above ? "above" : "below"; }

struct Placement {
    Side side = Side::above;
    int level = 1;
    friend bool operator==(const Placement&, const Placement&) = default;
};

/// order[i] is the variable at position i on the line; clauses[j] places clause j.
struct RectilinearLayout {
    std::vector<int> order;
    std::vector<Placement> clauses;
    friend bool operator==(const RectilinearLayout&, const RectilinearLayout&) = default;
};

namespace detail {

inline std::vector<int> positions(const Formula& f, const RectilinearLayout& l)
{
    std::vector<int> pos(static_cast<std::size_t>(f.num_vars), -1);
    for (std::size_t i = 0; i < l.order.size(); ++i) {
        const int v = l.order[i];
        if (v >= 0 && v < f.num_vars) pos[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    return pos;
}

struct Span {
    int lo, hi;
    std::array<int, 3> legs;
};

inline Span span_of(const Clause& c, const std::vector<int>& pos)
{
    Span s{};
    for (int i = 0; i < 3; ++i) s.legs[static_cast<std::size_t>(i)] = pos[static_cast<std::size_t>(c.lits[static_cast<std::size_t>(i)].var)];
    std::sort(s.legs.begin(), s.legs.end());
    s.lo = s.legs[0];
    s.hi = s.legs[2];
    return s;
}

inline bool contains_span(const Span& outer, const Span& inner)
{
    return outer.lo <= inner.lo && inner.hi <= outer.hi && (outer.lo != inner.lo || outer.hi != inner.hi);
}

} // namespace detail

/// Empty when the layout is a valid rectilinear representation of f. Each
/// violation starts with its category: "order", "placement", "crossing" or "level order".
inline std::vector<std::string> validate_layout(const Formula& f, const RectilinearLayout& l)
{
    std::vector<std::string> out;
    std::vector<char> seen(static_cast<std::size_t>(std::max(f.num_vars, 0)), 0);
    bool order_ok = l.order.size() == static_cast<std::size_t>(f.num_vars);
    for (int v : l.order) {
        if (v < 0 || v >= f.num_vars || seen[static_cast<std::size_t>(v)]) {
            order_ok = false;
            break;
        }
        seen[static_cast<std::size_t>(v)] = 1;
    }
    if (!order_ok) {
        out.push_back("order: variable order is not a permutation of 0.." + std::to_string(f.num_vars - 1));
        return out;
    }
    if (l.clauses.size() != f.clauses.size()) {
        out.push_back("placement: " + std::to_string(l.clauses.size()) + " placements for " +
                      std::to_string(f.clauses.size()) + " clauses");
        return out;
    }
    for (std::size_t j = 0; j < l.clauses.size(); ++j)
        if (l.clauses[j].level < 1) out.push_back("placement: clause " + std::to_string(j) + " has level < 1");

    const auto pos = detail::positions(f, l);
    std::vector<detail::Span> spans;
    for (const auto& c : f.clauses) spans.push_back(detail::span_of(c, pos));
    for (std::size_t i = 0; i < spans.size(); ++i) {
        for (std::size_t j = i + 1; j < spans.size(); ++j) {
            if (l.clauses[i].side != l.clauses[j].side) continue;
            const auto& a = spans[i];
            const auto& b = spans[j];
            const std::string pair = "clauses " + std::to_string(i) + " and " + std::to_string(j);
            if (a.hi <= b.lo || b.hi <= a.lo) continue;
            if ((a.lo < b.lo && b.lo < a.hi && a.hi < b.hi) || (b.lo < a.lo && a.lo < b.hi && b.hi < a.hi)) {
                out.push_back("crossing: " + pair + " interleave");
                continue;
            }
            // Nested (or equal): the wider one, or the higher one on ties, is outer.
            bool i_outer = detail::contains_span(a, b) ||
                           (a.lo == b.lo && a.hi == b.hi && l.clauses[i].level >= l.clauses[j].level);
            const std::size_t o = i_outer ? i : j;
            const std::size_t n = i_outer ? j : i;
            const auto& outer = spans[o];
            const auto& inner = spans[n];
            bool crossing = false;
            for (int leg : outer.legs)
                if (inner.lo < leg && leg < inner.hi) crossing = true;
            if (crossing) {
                out.push_back("crossing: a leg of clause " + std::to_string(o) + " lies inside clause " +
                              std::to_string(n));
                continue;
            }
            if (l.clauses[n].level >= l.clauses[o].level)
                out.push_back("level order: clause " + std::to_string(n) + " is nested in clause " +
                              std::to_string(o) + " but not strictly lower");
        }
    }
    return out;
}

/// Recomputes levels bottom-up: 1 + the highest nested same-side clause.
inline void relevel(const Formula& f, RectilinearLayout& l)
{
    const auto pos = detail::positions(f, l);
    std::vector<detail::Span> spans;
    for (const auto& c : f.clauses) spans.push_back(detail::span_of(c, pos));
    std::vector<std::size_t> idx(spans.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return spans[a].hi - spans[a].lo < spans[b].hi - spans[b].lo;
    });
    for (std::size_t i : idx) {
        int level = 1;
        for (std::size_t j : idx) {
            if (j == i || l.clauses[j].side != l.clauses[i].side) continue;
            if (detail::contains_span(spans[i], spans[j])) level = std::max(level, l.clauses[j].level + 1);
        }
        l.clauses[i].level = level;
    }
}

struct InconsistentPair {
    std::size_t clause = 0;
    int literal = 0; // index 0..2 inside the clause
    friend bool operator==(const InconsistentPair&, const InconsistentPair&) = default;
};

inline void require_valid_layout(const Formula& f, const RectilinearLayout& l)
{
    validate_formula(f);
    const auto problems = validate_layout(f, l);
    if (!problems.empty()) throw precondition_error("invalid layout: " + problems.front());
}

/// Negative literals in clauses above the line and positive literals below it,
/// ordered above-first, then by leftmost clause, then by leftmost literal.
inline std::vector<InconsistentPair> find_inconsistent_pairs(const Formula& f, const RectilinearLayout& l)
{
    require_valid_layout(f, l);
    const auto pos = detail::positions(f, l);
    std::vector<InconsistentPair> out;
    for (std::size_t j = 0; j < f.clauses.size(); ++j)
        for (int i = 0; i < 3; ++i) {
            const Literal& lit = f.clauses[j].lits[static_cast<std::size_t>(i)];
            if (lit.negated == (l.clauses[j].side == Side::above)) out.push_back({j, i});
        }
    auto key = [&](const InconsistentPair& p) {
        const auto sp = detail::span_of(f.clauses[p.clause], pos);
        const int leg = pos[static_cast<std::size_t>(f.clauses[p.clause].lits[static_cast<std::size_t>(p.literal)].var)];
        return std::make_tuple(l.clauses[p.clause].side == Side::above ? 0 : 1, sp.lo, p.clause, leg);
    };
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
    return out;
}

struct GadgetFragment {
    std::vector<Clause> clauses;
    std::vector<Side> sides;
};

/// x != y as (x | a | y) & (a | b | c) & (~b | ~c | ~d), the positive clauses
/// above the line and the negative one below. fresh = {a, b, c, d}.
inline GadgetFragment inequality_gadget(const Formula& f, int x, int y, std::array<int, 4> fresh)
{
    std::vector<char> used(static_cast<std::size_t>(std::max(f.num_vars, 0)), 0);
    for (const auto& c : f.clauses)
        for (const auto& l : c.lits) used[static_cast<std::size_t>(l.var)] = 1;
    for (std::size_t i = 0; i < 4; ++i) {
        const int v = fresh[i];
        if (v == x || v == y) throw precondition_error("gadget variable collides with x or y");
        for (std::size_t h = 0; h < i; ++h)
            if (fresh[h] == v) throw precondition_error("gadget variables are not distinct");
        if (v >= 0 && v < f.num_vars && used[static_cast<std::size_t>(v)])
            throw precondition_error("gadget variable " + std::to_string(v) + " is already in use");
    }
    if (x == y) throw precondition_error("inequality gadget needs two distinct variables");
    const auto [a, b, c, d] = fresh;
    GadgetFragment g;
    g.clauses.push_back(Clause{{Literal{x, false}, Literal{a, false}, Literal{y, false}}});
    g.clauses.push_back(Clause{{Literal{a, false}, Literal{b, false}, Literal{c, false}}});
    g.clauses.push_back(Clause{{Literal{b, true}, Literal{c, true}, Literal{d, true}}});
    g.sides = {Side::above, Side::above, Side::below};
    return g;
}

struct LaidOutFormula {
    Formula formula;
    RectilinearLayout layout;
};

namespace detail {

// Left-to-right order of the same-side legs meeting at one variable: clauses
// ending there (inner first), then the one passing through, then clauses
// starting there (outer first).
inline std::vector<std::size_t> legs_at(const Formula& f, const RectilinearLayout& l, const std::vector<int>& pos,
                                        int var, Side side)
{
    struct Leg {
        int group;
        int key;
        std::size_t clause;
    };
    std::vector<Leg> legs;
    const int p = pos[static_cast<std::size_t>(var)];
    for (std::size_t j = 0; j < f.clauses.size(); ++j) {
        if (l.clauses[j].side != side) continue;
        bool has = false;
        for (const auto& lit : f.clauses[j].lits) has = has || lit.var == var;
        if (!has) continue;
        const auto sp = span_of(f.clauses[j], pos);
        const int level = l.clauses[j].level;
        if (sp.hi == p) legs.push_back({0, level, j});
        else if (sp.lo == p) legs.push_back({2, -level, j});
        else legs.push_back({1, 0, j});
    }
    std::sort(legs.begin(), legs.end(),
              [](const Leg& a, const Leg& b) { return std::tie(a.group, a.key, a.clause) < std::tie(b.group, b.key, b.clause); });
    std::vector<std::size_t> out;
    for (const auto& leg : legs) out.push_back(leg.clause);
    return out;
}

} // namespace detail

/// One surgery step: C_j's offending literal on x_i moves to a fresh x with
/// x_i != x != y, and same-side legs right of C_j at x_i move to y. Adds
/// exactly 10 variables and 6 clauses.
inline LaidOutFormula remove_inconsistent_pair(const Formula& f, const RectilinearLayout& l, InconsistentPair pair)
{
    const auto pairs = find_inconsistent_pairs(f, l);
    if (std::find(pairs.begin(), pairs.end(), pair) == pairs.end())
        throw precondition_error("literal " + std::to_string(pair.literal) + " of clause " + std::to_string(pair.clause) +
                                 " is not an inconsistent pair");
    const auto pos = detail::positions(f, l);
    const Side side = l.clauses[pair.clause].side;
    const int xi = f.clauses[pair.clause].lits[static_cast<std::size_t>(pair.literal)].var;
    const int nv = f.num_vars;
    const int x = nv, y = nv + 1;
    const std::array<int, 4> g1{nv + 2, nv + 3, nv + 4, nv + 5};
    const std::array<int, 4> g2{nv + 6, nv + 7, nv + 8, nv + 9};

    const auto legs = detail::legs_at(f, l, pos, xi, side);
    const auto me = std::find(legs.begin(), legs.end(), pair.clause);

    LaidOutFormula out{f, l};
    Formula& nf = out.formula;
    RectilinearLayout& nl = out.layout;
    for (auto it = std::next(me); it != legs.end(); ++it)
        for (auto& lit : nf.clauses[*it].lits)
            if (lit.var == xi) lit.var = y;
    nf.clauses[pair.clause].lits[static_cast<std::size_t>(pair.literal)] = Literal{x, side == Side::below};
    nf.num_vars = nv + 10;

    for (const auto& frag : {inequality_gadget(nf, xi, x, g1), inequality_gadget(nf, x, y, g2)}) {
        for (std::size_t i = 0; i < frag.clauses.size(); ++i) {
            nf.clauses.push_back(frag.clauses[i]);
            nl.clauses.push_back(Placement{frag.sides[i], 1});
        }
    }
    const auto at = std::find(nl.order.begin(), nl.order.end(), xi);
    nl.order.insert(std::next(at), {g1[0], g1[1], g1[2], g1[3], x, g2[0], g2[1], g2[2], g2[3], y});
    relevel(nf, nl);
    return out;
}

struct MonotoneResult {
    Formula formula;
    RectilinearLayout layout;
    int steps = 0;
    std::vector<InconsistentPair> processed;
};

/// Removes inconsistent pairs one at a time (first in find_inconsistent_pairs
/// order) until the representation is monotone.
inline MonotoneResult make_monotone(const Formula& f, const RectilinearLayout& l)
{
    MonotoneResult out{f, l, 0, {}};
    auto pairs = find_inconsistent_pairs(f, l);
    const std::size_t cap = 3 * f.clauses.size();
    while (!pairs.empty()) {
        if (static_cast<std::size_t>(out.steps) >= cap)
            throw std::logic_error("monotone conversion exceeded 3m steps");
        auto next = remove_inconsistent_pair(out.formula, out.layout, pairs.front());
        out.processed.push_back(pairs.front());
        out.formula = std::move(next.formula);
        out.layout = std::move(next.layout);
        ++out.steps;
        pairs = find_inconsistent_pairs(out.formula, out.layout);
    }
    return out;
}

} // namespace kvc::sat
