#include <gtest/gtest.h>

#include "test_util.hpp"
#include "thermo/compactification.hpp"
#include "thermo/zoo.hpp"

using namespace thermo;
using namespace thermo::test;

namespace {

ExtendedSystem fiber_example()
{
    auto e = zoo_entry("fiber-example");
    auto sys = e.scaffold(4, 0.3);
    return extend_system(sys, e.extension(sys));
}

} // namespace

TEST(Extend, CompactIsTrivial)
{
    auto ext = extend_system(System::full_shift(2, 4));
    EXPECT_TRUE(ext.is_trivial());
    for (PointId x = 0; x < 16; ++x)
        EXPECT_EQ(ext.project(x), x);
}

TEST(Extend, TranslationAddsAFixedInfinity)
{
    auto e = zoo_entry("translation-Z");
    auto sys = e.scaffold(4, 0.3);
    EXPECT_THROW(extend_system(sys), ContractError);
    auto ext = extend_system(sys, e.extension(sys));
    ASSERT_EQ(ext.fiber_size(), 1U);
    PointId inf = static_cast<PointId>(sys.size());
    EXPECT_EQ(ext.total().apply(inf), inf);
    EXPECT_EQ(ext.project(inf), infinity_token);
    for (PointId x = 0; x + 1 < sys.size(); ++x)
        EXPECT_EQ(ext.total().apply(x), sys.apply(x));
}

TEST(Extend, FiberHasDiameterZero)
{
    auto ext = fiber_example();
    ASSERT_EQ(ext.fiber_size(), 2U);
    auto a = static_cast<PointId>(ext.base().size());
    EXPECT_EQ(ext.pseudometric(a, a + 1), 0.0);
    EXPECT_EQ(ext.project(a), infinity_token);
    EXPECT_EQ(ext.project(a + 1), infinity_token);
    EXPECT_EQ(ext.total().apply(a), a + 1);
    for (PointId z = 0; z < ext.total().size(); ++z)
        for (double r : {0.05, 0.2, 0.6}) {
            auto b = ball(ext.total(), z, r);
            EXPECT_EQ(b.test(a), b.test(a + 1));
        }
}

TEST(Lift, ValuesOnTheFiber)
{
    auto ext = fiber_example();
    auto a = static_cast<PointId>(ext.base().size());
    auto zero = lift_potential(Potential::constant(0), ext);
    for (PointId z = 0; z < ext.total().size(); ++z)
        EXPECT_EQ(zero(ext.total(), z), 0.0);
    auto c0 = lift_potential(bump_potential(1.0, 3.0), ext);
    EXPECT_EQ(c0(ext.total(), a), 0.0);
    auto shifted = lift_potential(bump_potential(1.0, 3.0, 2.5), ext);
    EXPECT_EQ(shifted(ext.total(), a + 1), 2.5);
    EXPECT_EQ(shifted(ext.total(), 3), bump_potential(1.0, 3.0, 2.5)(ext.base(), 3));
}

TEST(Measures, RestrictAndExtend)
{
    auto ext = fiber_example();
    auto nx = ext.base().size();
    auto nz = ext.total().size();
    auto on_x = FiniteMeasure::point_mass(nx, 4);
    auto r = restrict_measure(ext, extend_measure(ext, on_x));
    EXPECT_EQ(r.weights(), on_x.weights());
    EXPECT_EQ(restrict_measure(ext, FiniteMeasure::point_mass(nz, static_cast<PointId>(nx))).total_mass(), 0.0);
    std::vector<double> w(nz, 0.0);
    w[2] = 0.5;
    w[nx + 1] = 0.5;
    EXPECT_DOUBLE_EQ(restrict_measure(ext, FiniteMeasure(w)).total_mass(), 0.5);
}

TEST(CompactifiedBound, CompactCase)
{
    auto ext = extend_system(System::full_shift(2, 6));
    auto mu = FiniteMeasure::uniform(64);
    auto r = compactified_bound_check(ext, mu, Partition::cylinders(ext.total(), 1), Potential::indicator(2, {0}), 4);
    EXPECT_TRUE(r.passed);
    EXPECT_NEAR(r.slack, 0.0, 1e-12);
}

TEST(CompactifiedBound, MassAtInfinityOnly)
{
    auto e = zoo_entry("translation-Z");
    auto sys = e.scaffold(4, 0.3);
    auto ext = extend_system(sys, e.extension(sys));
    auto nz = ext.total().size();
    auto mu = FiniteMeasure::point_mass(nz, static_cast<PointId>(nz - 1));
    std::vector<std::uint32_t> labels(nz, 1);
    labels[nz - 1] = 0;
    for (PointId x = 0; x < sys.size(); ++x)
        labels[x] = sys.infinity_distance(x) < 0.2 ? 0 : 1;
    auto r = compactified_bound_check(ext, mu, Partition(labels, 2), bump_potential(1.0, 4.0), 3);
    EXPECT_TRUE(r.passed);
}

TEST(CompactifiedBound, FiberExampleIntegrals)
{
    auto ext = fiber_example();
    auto nz = ext.total().size();
    const int m = 8;
    std::vector<double> w(nz, 0.0);
    w[tz(-2, m)] = 0.5;
    w[tz(3, m)] = 0.5;
    FiniteMeasure mu(w);
    auto f = bump_potential(1.0, 4.0);
    EXPECT_NEAR(integral(ext.total(), lift_potential(f, ext), mu),
                integral(ext.base(), f, restrict_measure(ext, mu)), 1e-12);
}

TEST(RestrictionCommutes, Exhaustive)
{
    auto ext = fiber_example();
    EXPECT_TRUE(restriction_commutes_check(ext, ball_cover(ext.total(), 0.4), 5).passed);
    auto e = zoo_entry("translation-Z");
    auto sys = e.scaffold(4, 0.3);
    auto text = extend_system(sys, e.extension(sys));
    EXPECT_TRUE(restriction_commutes_check(text, ball_cover(text.total(), 0.3), 5).passed);
}

TEST(Extend, InfinityIsNotAnXPoint)
{
    auto ext = fiber_example();
    EXPECT_FALSE(ext.in_base(static_cast<PointId>(ext.base().size())));
    EXPECT_THROW(ext.base().check_point(infinity_token), DomainError);
}
