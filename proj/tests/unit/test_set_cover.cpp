#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "thermo/set_cover.hpp"

using namespace thermo;

namespace {

struct Instance {
    std::vector<PointSet> sets;
    std::vector<double> weights;
};

Instance random_instance(std::mt19937& rng, std::size_t elements, std::size_t sets, double density)
{
    std::bernoulli_distribution in(density);
    std::uniform_real_distribution<double> w(0.5, 3.0);
    Instance inst;
    for (std::size_t i = 0; i < sets; ++i) {
        PointSet s(elements);
        for (std::size_t e = 0; e < elements; ++e)
            if (in(rng))
                s.set(e);
        inst.sets.push_back(s);
        inst.weights.push_back(std::round(w(rng) * 4.0) / 4.0);
    }
    // every element needs some set
    for (std::size_t e = 0; e < elements; ++e)
        inst.sets[e % sets].set(e);
    return inst;
}

double brute_cover(const Instance& inst)
{
    std::size_t m = inst.sets.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
        PointSet u(inst.sets.front().size());
        double w = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1U) {
                u |= inst.sets[i];
                w += inst.weights[i];
            }
        if (u.all())
            best = std::min(best, w);
    }
    return best;
}

double brute_independent(const std::vector<PointSet>& adj, const std::vector<double>& w)
{
    std::size_t n = adj.size();
    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        bool ok = true;
        double total = 0.0;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (!(mask >> i & 1U))
                continue;
            total += w[i];
            for (std::size_t j = i + 1; j < n && ok; ++j)
                ok = !((mask >> j & 1U) && adj[i].test(j));
        }
        if (ok)
            best = std::max(best, total);
    }
    return best;
}

} // namespace

TEST(SetCover, MatchesBruteForce)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t elements = 4 + trial % 14;
        std::size_t sets = 3 + trial % 11;
        double density = trial % 3 == 0 ? 0.15 : trial % 3 == 1 ? 0.35 : 0.6;
        auto inst = random_instance(rng, elements, sets, density);
        auto sol = min_weight_set_cover(inst.sets, inst.weights);
        ASSERT_EQ(sol.bound, Bound::exact);
        ASSERT_NEAR(sol.value, brute_cover(inst), 1e-12) << "trial " << trial;

        PointSet u(elements);
        double w = 0.0;
        for (auto i : sol.chosen) {
            u |= inst.sets[i];
            w += inst.weights[i];
        }
        EXPECT_TRUE(u.all());
        EXPECT_NEAR(w, sol.value, 1e-12);

        auto g = greedy_set_cover(inst.sets, inst.weights);
        EXPECT_GE(g.value, sol.value - 1e-12);
        EXPECT_EQ(g.bound, Bound::upper);
    }
}

TEST(SetCover, DuplicatesAndNestedSets)
{
    PointSet a(6), b(6), c(6);
    a.set(0).set(1).set(2);
    b.set(0).set(1);
    c.set(3).set(4).set(5);
    std::vector<PointSet> sets{b, a, a, c, b};
    std::vector<double> w{1.0, 1.5, 1.2, 2.0, 0.5};
    auto sol = min_weight_set_cover(sets, w);
    EXPECT_DOUBLE_EQ(sol.value, 3.2);
}

TEST(SetCover, BudgetExhaustionIsFlaggedUpper)
{
    std::mt19937 rng(11);
    auto inst = random_instance(rng, 60, 90, 0.08);
    auto sol = min_weight_set_cover(inst.sets, inst.weights, SolverMode::exact, 50);
    EXPECT_NE(sol.bound, Bound::lower);
    if (sol.bound == Bound::upper)
        EXPECT_GE(sol.value, min_weight_set_cover(inst.sets, inst.weights).value - 1e-12);
}

TEST(IndependentSet, MatchesBruteForce)
{
    std::mt19937 rng(3);
    std::bernoulli_distribution edge(0.3);
    std::uniform_real_distribution<double> wd(0.1, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 3 + trial % 14;
        std::vector<PointSet> adj(n, PointSet(n));
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = wd(rng);
            for (std::size_t j = i + 1; j < n; ++j)
                if (edge(rng)) {
                    adj[i].set(j);
                    adj[j].set(i);
                }
        }
        auto sol = max_weight_independent_set(adj, w);
        ASSERT_EQ(sol.bound, Bound::exact);
        ASSERT_NEAR(sol.value, brute_independent(adj, w), 1e-12) << "trial " << trial;
        for (std::size_t a = 0; a < sol.chosen.size(); ++a)
            for (std::size_t b = a + 1; b < sol.chosen.size(); ++b)
                EXPECT_FALSE(adj[sol.chosen[a]].test(sol.chosen[b]));
        auto g = greedy_independent_set(adj, w);
        EXPECT_LE(g.value, sol.value + 1e-12);
        EXPECT_EQ(g.bound, Bound::lower);
    }
}

TEST(SetCover, CyclicIntervalsMatchBruteForce)
{
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> wd(0.5, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t m = 3 + trial % 17;
        std::size_t count = 3 + trial % 10;
        std::uniform_int_distribution<std::size_t> start(0, m - 1), len(1, m);
        Instance inst;
        for (std::size_t i = 0; i < count; ++i) {
            PointSet s(m);
            auto a = start(rng);
            auto l = trial % 5 == 0 ? len(rng) : std::min<std::size_t>(len(rng), 1 + m / 3);
            for (std::size_t k = 0; k < l; ++k)
                s.set((a + k) % m);
            inst.sets.push_back(s);
            inst.weights.push_back(std::round(wd(rng) * 4.0) / 4.0);
        }
        for (std::size_t e = 0; e < m; ++e) {
            PointSet s(m);
            s.set(e);
            inst.sets.push_back(s);
            inst.weights.push_back(5.0);
        }
        if (inst.sets.size() > 20)
            continue;
        auto sol = min_weight_set_cover(inst.sets, inst.weights);
        ASSERT_EQ(sol.bound, Bound::exact);
        ASSERT_NEAR(sol.value, brute_cover(inst), 1e-12) << "trial " << trial;
        PointSet u(m);
        for (auto i : sol.chosen)
            u |= inst.sets[i];
        EXPECT_TRUE(u.all());
    }
}

TEST(SetCover, LargeArcFamilyIsSolvedDirectly)
{
    const std::size_t m = 3000;
    Instance inst;
    for (std::size_t a = 0; a < m; ++a) {
        PointSet s(m);
        for (std::size_t k = 0; k < 7; ++k)
            s.set((a + k) % m);
        inst.sets.push_back(s);
        inst.weights.push_back(1.0);
    }
    auto sol = min_weight_set_cover(inst.sets, inst.weights);
    EXPECT_EQ(sol.bound, Bound::exact);
    EXPECT_DOUBLE_EQ(sol.value, 429.0);
}

TEST(IndependentSet, BandsAndCyclesMatchBruteForce)
{
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> wd(0.1, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 4 + trial % 13;
        bool cyclic = trial % 2 == 1;
        std::uniform_int_distribution<std::size_t> rd(0, 3);
        std::vector<PointSet> adj(n, PointSet(n));
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = wd(rng);
            auto r = rd(rng);
            for (std::size_t k = 1; k <= r; ++k) {
                if (!cyclic && i + k >= n)
                    break;
                auto j = (i + k) % n;
                if (j == i)
                    continue;
                adj[i].set(j);
                adj[j].set(i);
            }
        }
        auto sol = max_weight_independent_set(adj, w);
        ASSERT_EQ(sol.bound, Bound::exact);
        ASSERT_NEAR(sol.value, brute_independent(adj, w), 1e-12) << "trial " << trial;
        for (std::size_t a = 0; a < sol.chosen.size(); ++a)
            for (std::size_t b = a + 1; b < sol.chosen.size(); ++b)
                EXPECT_FALSE(adj[sol.chosen[a]].test(sol.chosen[b]));
    }
}

TEST(IndependentSet, LargeCirculantIsSolvedDirectly)
{
    const std::size_t n = 2000, r = 9;
    std::vector<PointSet> adj(n, PointSet(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 1; k <= r; ++k) {
            adj[i].set((i + k) % n);
            adj[(i + k) % n].set(i);
        }
    std::vector<double> w(n, 1.0);
    auto sol = max_weight_independent_set(adj, w);
    EXPECT_EQ(sol.bound, Bound::exact);
    EXPECT_EQ(sol.nodes, 0U);
    EXPECT_DOUBLE_EQ(sol.value, 200.0);
}
