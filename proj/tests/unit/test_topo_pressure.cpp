#include <cmath>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "thermo/topo_pressure.hpp"
#include "thermo/zoo.hpp"

using namespace thermo;
using namespace thermo::test;

namespace {

const double log2_ = std::log(2.0);
const double log_1e = std::log(1.0 + std::exp(1.0));

} // namespace

TEST(CoverLevels, ZeroPotentialCountsSubcovers)
{
    auto s = System::full_shift(2, 5);
    auto a = depth1(s);
    auto zero = Potential::constant(0);
    for (int n = 1; n <= 4; ++n) {
        double n_cover = static_cast<double>(min_subcover_cardinality(iterate_cover(s, a, n)).value);
        EXPECT_DOUBLE_EQ(q_value(s, zero, a, n).value, n_cover);
        EXPECT_DOUBLE_EQ(p_value(s, zero, a, n).value, n_cover);
        EXPECT_NEAR(p_value(s, Potential::constant(0.7), a, n).value, std::exp(0.7 * n) * n_cover, 1e-9);
    }
    EXPECT_DOUBLE_EQ(q_value(s, zero, a, 3).value, 8.0);
}

TEST(CoverLevels, LocallyConstantPotential)
{
    const double a = 0.4, b = -1.1;
    auto s = System::full_shift(2, 5);
    auto f = Potential::cylinder(2, 1, {a, b});
    EXPECT_NEAR(q_value(s, f, depth1(s), 1).value, std::exp(a) + std::exp(b), 1e-12);
    EXPECT_NEAR(p_value(s, f, depth1(s), 2).value, std::pow(std::exp(a) + std::exp(b), 2), 1e-12);
}

TEST(CoverPressure, TrivialCover)
{
    auto s = System::full_shift(2, 6);
    auto r = cover_pressure(s, Potential::constant(0), Cover(s, {s.full_set()}), 5);
    EXPECT_EQ(r.qminus.extrapolated, 0.0);
    EXPECT_EQ(r.qplus.extrapolated, 0.0);
    EXPECT_EQ(r.pcover.extrapolated, 0.0);
}

TEST(CoverPressure, FullShiftIsExactlyLogTwo)
{
    auto s = System::full_shift(2, 10);
    auto r = cover_pressure(s, Potential::constant(0), depth1(s), 10);
    for (const auto* e : {&r.qminus, &r.qplus, &r.pcover}) {
        EXPECT_NEAR(e->extrapolated, log2_, 1e-9);
        for (double v : e->values)
            EXPECT_NEAR(v, log2_, 1e-9);
    }
}

TEST(CoverPressure, GoldenMeanNearOracle)
{
    auto s = zoo_entry("golden-mean").scaffold(12, 0.3);
    auto r = cover_pressure(s, Potential::constant(0), depth1(s), 12);
    EXPECT_NEAR(r.pcover.extrapolated, 0.4812118250596, 0.02);
    double running = r.pcover.values.front();
    for (double v : r.pcover.values) {
        running = std::min(running, v);
        EXPECT_GE(running, 0.4812118250596 - 1e-9);
    }
}

TEST(SeparatedLevels, SinglePoint)
{
    auto s = System::full_shift(1, 1);
    EXPECT_EQ(s_value(s, Potential::constant(0), 0.3, 1).value, 1.0);
    EXPECT_EQ(g_value(s, Potential::constant(0), 0.3, 1).value, 1.0);
}

TEST(SeparatedLevels, FullShiftCounts)
{
    // Bowen (n, 0.3)-balls are depth n + 1 cylinders under d = 2^-k.
    auto s = System::full_shift(2, scaffold_depth(4, 0.3));
    EXPECT_EQ(s_value(s, Potential::constant(0), 0.3, 4).value, 32.0);
    EXPECT_EQ(g_value(s, Potential::constant(0), 0.3, 4).value, 32.0);

    const double a = 0.25, b = 1.5;
    auto s1 = System::full_shift(2, 3);
    EXPECT_NEAR(s_value(s1, Potential::cylinder(2, 1, {a, b}), 0.3, 1).value, 2 * (std::exp(a) + std::exp(b)), 1e-12);
}

TEST(SeparatedLevels, ChosenSetsAreValid)
{
    auto gm = zoo_entry("golden-mean").scaffold(5, 0.3);
    auto f = Potential::indicator(2, {0});
    for (int n = 1; n <= 5; ++n) {
        auto sep = separated_set(gm, f, 0.3, n);
        auto gen = generating_set(gm, f, 0.3, n);
        EXPECT_TRUE(is_separated(gm, 0.3, n, sep.points));
        EXPECT_TRUE(is_generating(gm, 0.3, n, gen.points));
        EXPECT_LE(gen.value, sep.value * (1 + 1e-12));
    }
}

TEST(TopologicalPressure, FullShiftZero)
{
    auto e = zoo_entry("full-2-shift");
    auto r = topological_pressure(e.scaffold, Potential::constant(0), {0.3}, 10);
    EXPECT_NEAR(r.consolidated.extrapolated, log2_, 1e-6);
    EXPECT_EQ(r.consolidated.bounds.back(), Bound::exact);
}

TEST(TopologicalPressure, FullShiftIndicator)
{
    auto e = zoo_entry("full-2-shift");
    auto r = topological_pressure(e.scaffold, Potential::indicator(2, {0}), {0.3}, 10);
    EXPECT_NEAR(r.consolidated.extrapolated, log_1e, 0.02);
    EXPECT_NEAR(r.consolidated.extrapolated, 1.3132616875182386, 1e-9);
}

TEST(TopologicalPressure, TranslationVanishesUpToTheConstant)
{
    auto e = zoo_entry("translation-Z");
    TopologicalOptions o;
    o.cover_n_max = 0;
    for (double c : {0.0, 2.0}) {
        auto r = topological_pressure(e.scaffold, bump_potential(1.0, 4.0, c), e.default_eps, e.default_n_max, o);
        EXPECT_NEAR(r.consolidated.extrapolated, c, 0.05);
    }
}

TEST(TopologicalPressure, RejectsPotentialsWithoutALimitAtInfinity)
{
    auto e = zoo_entry("translation-Z");
    auto f = Potential::on_coordinate([](double m) { return m > 0 ? 1.0 : 0.0; });
    EXPECT_THROW(topological_pressure(e.scaffold, f, {0.25}, 4), ContractError);
}

TEST(IteratedSystem, Examples)
{
    auto full = System::full_shift(2, 8);
    auto zero = Potential::constant(0);
    EXPECT_TRUE(iterated_system_inequality_check(full, zero, depth1(full), 1, 3).passed);
    auto r = iterated_system_inequality_check(full, zero, depth1(full), 2, 3);
    EXPECT_TRUE(r.passed);
    EXPECT_NEAR(r.slack, 0.0, 1e-9);
    auto gm = zoo_entry("golden-mean").scaffold(8, 0.3);
    EXPECT_TRUE(iterated_system_inequality_check(gm, zero, depth1(gm), 2, 3).passed);
}

TEST(EpsGrid, DefaultHalvesFromAQuarterDiameter)
{
    auto grid = default_eps_grid(translation_on_z(8), 3);
    ASSERT_EQ(grid.size(), 3U);
    EXPECT_DOUBLE_EQ(grid[1], grid[0] / 2);
    EXPECT_DOUBLE_EQ(grid[2], grid[0] / 4);
}
