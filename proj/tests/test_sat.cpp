#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace kvc;
using namespace kvc::sat;
using fixtures::clause;

TEST(Formula, Validation)
{
    Formula f{3, {clause(0, false, 1, false, 2, false)}};
    EXPECT_NO_THROW(validate_formula(f));
    f.clauses.push_back(clause(0, false, 0, true, 2, false));
    EXPECT_THROW(validate_formula(f), input_error);
    f.clauses.back() = clause(0, false, 1, true, 3, false);
    EXPECT_THROW(validate_formula(f), input_error);
    EXPECT_THROW(eval_1in3(Formula{3, {}}, Assignment(2)), precondition_error);
}

TEST(Solver, Examples)
{
    const Formula one{3, {clause(0, false, 1, false, 2, false)}};
    EXPECT_EQ(solve_1in3(one), (Assignment{false, false, true}));
    const Formula both{3, {clause(0, false, 1, false, 2, false), clause(0, true, 1, true, 2, true)}};
    EXPECT_FALSE(solve_1in3(both));
    EXPECT_EQ(solve_1in3(Formula{0, {}}), Assignment{});
    EXPECT_THROW(solve_1in3(Formula{200, {}}), scale_error);
}

TEST(Solver, LexFirstModelMatchesEnumeration)
{
    std::mt19937_64 rng(71);
    int sat = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const auto lf = fixtures::random_laid_out(rng, 9, 6);
        const auto models = oracle::all_models(lf.formula);
        const auto got = solve_1in3(lf.formula);
        ASSERT_EQ(got.has_value(), !models.empty()) << trial;
        if (got) {
            ++sat;
            EXPECT_EQ(*got, models.front());
            EXPECT_TRUE(eval_1in3(lf.formula, *got));
        }
    }
    EXPECT_GT(sat, 50);
}

TEST(Gadget, TruthTable)
{
    const auto g = inequality_gadget(Formula{2, {}}, 0, 1, {2, 3, 4, 5});
    const Formula f{6, g.clauses};
    std::set<std::pair<bool, bool>> reachable;
    for (int bits = 0; bits < 64; ++bits) {
        Assignment a(6);
        for (int v = 0; v < 6; ++v) a[static_cast<std::size_t>(v)] = bits >> v & 1;
        if (eval_1in3(f, a)) reachable.insert({a[0], a[1]});
    }
    EXPECT_EQ(reachable, (std::set<std::pair<bool, bool>>{{false, true}, {true, false}}));
    // a=F, b=T, c=F, d=T, x=T, y=F.
    EXPECT_TRUE(eval_1in3(f, Assignment{true, false, false, true, false, true}));
    EXPECT_EQ(g.sides, (std::vector<Side>{Side::above, Side::above, Side::below}));
}

TEST(Gadget, RejectsCollisions)
{
    const Formula f{4, {clause(0, false, 1, false, 2, false)}};
    EXPECT_THROW(inequality_gadget(f, 0, 1, {2, 5, 6, 7}), precondition_error);
    EXPECT_THROW(inequality_gadget(f, 0, 1, {0, 5, 6, 7}), precondition_error);
    EXPECT_THROW(inequality_gadget(f, 0, 1, {5, 5, 6, 7}), precondition_error);
    EXPECT_THROW(inequality_gadget(f, 0, 0, {4, 5, 6, 7}), precondition_error);
    EXPECT_NO_THROW(inequality_gadget(f, 0, 1, {3, 5, 6, 7}));
}

TEST(Layout, ValidationCategories)
{
    const Formula f{4, {clause(0, false, 1, false, 2, false), clause(1, false, 2, false, 3, false)}};
    RectilinearLayout l{{0, 1, 2, 3}, {{Side::above, 1}, {Side::above, 1}}};
    auto p = validate_layout(f, l);
    ASSERT_FALSE(p.empty());
    EXPECT_EQ(p.front().rfind("crossing", 0), 0u);
    l.clauses[1].side = Side::below;
    EXPECT_TRUE(validate_layout(f, l).empty());
    l.order = {0, 1, 1, 3};
    EXPECT_EQ(validate_layout(f, l).front().rfind("order", 0), 0u);
    l.order = {0, 1, 2, 3};
    l.clauses.pop_back();
    EXPECT_EQ(validate_layout(f, l).front().rfind("placement", 0), 0u);

    // Nested clause must sit strictly lower than the one around it.
    const Formula g{5, {clause(0, false, 1, false, 4, false), clause(1, false, 2, false, 3, false)}};
    RectilinearLayout nested{{0, 1, 2, 3, 4}, {{Side::above, 1}, {Side::above, 1}}};
    EXPECT_EQ(validate_layout(g, nested).front().rfind("level order", 0), 0u);
    relevel(g, nested);
    EXPECT_EQ(nested.clauses[0].level, 2);
    EXPECT_TRUE(validate_layout(g, nested).empty());

    // A middle leg strictly inside a nested clause crosses it.
    const Formula h{5, {clause(0, false, 2, false, 4, false), clause(1, false, 3, false, 4, true)}};
    RectilinearLayout cross{{0, 1, 2, 3, 4}, {{Side::above, 2}, {Side::above, 1}}};
    const auto hp = validate_layout(h, cross);
    ASSERT_FALSE(hp.empty());
    EXPECT_EQ(hp.front().rfind("crossing", 0), 0u);
}

TEST(Layout, InconsistentPairsAreOrdered)
{
    const Formula f{4, {clause(0, true, 1, false, 2, true), clause(1, false, 2, false, 3, false)}};
    const RectilinearLayout l{{0, 1, 2, 3}, {{Side::above, 1}, {Side::below, 1}}};
    EXPECT_EQ(find_inconsistent_pairs(f, l),
              (std::vector<InconsistentPair>{{0, 0}, {0, 2}, {1, 0}, {1, 1}, {1, 2}}));
}

// Projection of the models of the rewritten formula onto the original variables.
static std::set<Assignment> projected_models(const Formula& f, int keep)
{
    std::set<Assignment> out;
    for (const auto& a : oracle::all_models(f)) out.insert(Assignment(a.begin(), a.begin() + keep));
    return out;
}

TEST(Surgery, SingleStepPreservesModelsAndLayout)
{
    std::mt19937_64 rng(73);
    int steps = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto lf = fixtures::random_laid_out(rng, 6, 4);
        const auto pairs = find_inconsistent_pairs(lf.formula, lf.layout);
        if (pairs.empty()) continue;
        const auto pair = pairs[rng() % pairs.size()];
        const auto out = remove_inconsistent_pair(lf.formula, lf.layout, pair);
        ++steps;
        ASSERT_TRUE(validate_layout(out.formula, out.layout).empty()) << trial << ": " << validate_layout(out.formula, out.layout).front();
        EXPECT_EQ(out.formula.num_vars, lf.formula.num_vars + 10);
        EXPECT_EQ(out.formula.clauses.size(), lf.formula.clauses.size() + 6);
        EXPECT_EQ(find_inconsistent_pairs(out.formula, out.layout).size(), pairs.size() - 1);
        std::set<Assignment> original;
        for (const auto& a : oracle::all_models(lf.formula)) original.insert(a);
        EXPECT_EQ(projected_models(out.formula, lf.formula.num_vars), original) << trial;
    }
    EXPECT_GT(steps, 100);
}

TEST(Surgery, RejectsConsistentLiteral)
{
    const auto lf = fixtures::single_monotone_clause(false);
    EXPECT_THROW(remove_inconsistent_pair(lf.formula, lf.layout, {0, 0}), precondition_error);
}

TEST(Surgery, MakeMonotoneIsEquisatisfiable)
{
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 150; ++trial) {
        const auto lf = fixtures::random_laid_out(rng, 7, 5);
        const auto pairs = find_inconsistent_pairs(lf.formula, lf.layout);
        const auto r = make_monotone(lf.formula, lf.layout);
        EXPECT_EQ(r.steps, static_cast<int>(pairs.size()));
        EXPECT_LE(r.steps, 3 * static_cast<int>(lf.formula.clauses.size()));
        EXPECT_TRUE(is_monotone(r.formula));
        EXPECT_TRUE(find_inconsistent_pairs(r.formula, r.layout).empty());
        ASSERT_TRUE(validate_layout(r.formula, r.layout).empty());
        const auto model = solve_1in3(r.formula);
        EXPECT_EQ(model.has_value(), oracle::satisfiable(lf.formula)) << trial;
        if (model) {
            EXPECT_TRUE(eval_1in3(lf.formula, Assignment(model->begin(), model->begin() + lf.formula.num_vars)));
        }
    }
}

TEST(Surgery, SingleNegativeLiteralAboveTakesOneStep)
{
    const Formula f{3, {clause(0, false, 1, true, 2, false)}};
    const RectilinearLayout l{{0, 1, 2}, {{Side::above, 1}}};
    const auto r = make_monotone(f, l);
    EXPECT_EQ(r.steps, 1);
    EXPECT_EQ(r.formula.clauses.size(), 7u);
    // Two inequality gadgets bring four fresh variables each, plus x and y.
    EXPECT_EQ(r.formula.num_vars, 13);
    EXPECT_TRUE(is_monotone(r.formula));
    EXPECT_EQ(solve_1in3(r.formula).has_value(), oracle::satisfiable(f));
}
