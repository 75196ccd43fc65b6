#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "kvc/sat.hpp"

namespace fixtures {

using namespace kvc::sat;

/// Seeded random formula with a valid rectilinear layout: clauses over three
/// distinct variables with random signs and sides, rejected until the layout
/// validates. Levels come from relevel.
inline LaidOutFormula random_laid_out(std::mt19937_64& rng, int max_vars, int max_clauses)
{
    while (true) {
        const int n = 3 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_vars - 2));
        const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_clauses));
        LaidOutFormula lf;
        lf.formula.num_vars = n;
        for (int v = 0; v < n; ++v) lf.layout.order.push_back(v);
        for (int i = n - 1; i > 0; --i)
            std::swap(lf.layout.order[static_cast<std::size_t>(i)], lf.layout.order[rng() % static_cast<std::uint64_t>(i + 1)]);
        for (int j = 0; j < m; ++j) {
            std::vector<int> vars;
            while (vars.size() < 3) {
                const int v = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
                if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
            }
            Clause c;
            for (std::size_t i = 0; i < 3; ++i) c.lits[i] = Literal{vars[i], (rng() & 1u) != 0};
            lf.formula.clauses.push_back(c);
            lf.layout.clauses.push_back(Placement{(rng() & 1u) ? Side::above : Side::below, 1});
        }
        relevel(lf.formula, lf.layout);
        if (validate_layout(lf.formula, lf.layout).empty()) return lf;
    }
}

inline Clause clause(int a, bool na, int b, bool nb, int c, bool nc)
{
    return Clause{{Literal{a, na}, Literal{b, nb}, Literal{c, nc}}};
}

/// (x0 | x1 | x2) above or (~x0 | ~x1 | ~x2) below, variables in index order.
inline LaidOutFormula single_monotone_clause(bool negative)
{
    LaidOutFormula lf;
    lf.formula.num_vars = 3;
    lf.formula.clauses.push_back(clause(0, negative, 1, negative, 2, negative));
    lf.layout.order = {0, 1, 2};
    lf.layout.clauses.push_back(Placement{negative ? Side::below : Side::above, 1});
    return lf;
}

} // namespace fixtures
