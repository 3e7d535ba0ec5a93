#include <cmath>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "thermo/misiurewicz.hpp"
#include "thermo/zoo.hpp"

using namespace thermo;
using namespace thermo::test;

namespace {

ExtendedSystem extended(const std::string& name, int n, double eps)
{
    return extension_factory(zoo_entry(name))(n, eps);
}

} // namespace

TEST(Empirical, SinglePoint)
{
    auto ext = extend_system(System::full_shift(1, 1));
    auto b = empirical_construction(ext, Potential::constant(0.3), 0.3, 1);
    ASSERT_EQ(b.points.size(), 1U);
    EXPECT_NEAR(b.a_n, std::exp(0.3), 1e-15);
    EXPECT_EQ(b.sigma.weight(0), 1.0);
}

TEST(Empirical, FullShiftUniformBundle)
{
    // Bowen (2, 0.3)-balls are depth-3 cylinders: |E_2| = A_2 = 8.
    auto ext = extended("full-2-shift", 2, 0.3);
    auto b = empirical_construction(ext, Potential::constant(0), 0.3, 2);
    EXPECT_EQ(b.points.size(), 8U);
    EXPECT_DOUBLE_EQ(b.a_n, 8.0);
    for (auto x : b.points)
        EXPECT_DOUBLE_EQ(b.sigma.weight(x), 0.125);
    EXPECT_NEAR(b.mu.total_mass(), 1.0, 1e-12);

    auto part = boundary_safe_partition(ext, b.mu, 0.3);
    auto id = entropy_identity_check(ext, b, part, Potential::constant(0));
    EXPECT_NEAR(id.entropy_identity, 0.0, 1e-12);
}

TEST(Empirical, WeightsLieBetweenHalfAndFullSeparatedValue)
{
    auto e = zoo_entry("golden-mean");
    auto f = Potential::indicator(2, {0});
    for (int n = 1; n <= 6; ++n) {
        auto ext = extension_factory(e)(n, 0.3);
        auto b = empirical_construction(ext, f, 0.3, n);
        double s = s_value(ext.base(), f, 0.3, n).value;
        EXPECT_LE(b.a_n, s * (1 + 1e-12));
        EXPECT_GE(b.a_n, 0.5 * s);
    }
}

TEST(Empirical, TranslationGrowsPolynomially)
{
    auto ext = extended("translation-Z", 8, 0.4);
    auto f = bump_potential(1.0, 4.0);
    auto b = empirical_construction(ext, f, 0.4, 8);
    EXPECT_LE(b.a_n, std::exp(4.0) * 8.0 * 8.0);
}

TEST(EntropyIdentity, WeightedSingleStep)
{
    auto ext = extended("full-2-shift", 1, 0.3);
    auto f = Potential::indicator(2, {0});
    auto b = empirical_construction(ext, f, 0.3, 1);
    auto id = entropy_identity_check(ext, b, boundary_safe_partition(ext, b.mu, 0.3), f);
    EXPECT_NEAR(id.entropy_identity, 0.0, 1e-12);
    EXPECT_NEAR(id.birkhoff_identity, 0.0, 1e-12);
}

TEST(EntropyIdentity, RejectsCoarsePartitions)
{
    auto ext = extended("full-2-shift", 2, 0.3);
    auto b = empirical_construction(ext, Potential::constant(0), 0.3, 2);
    EXPECT_THROW(entropy_identity_check(ext, b, Partition::cylinders(ext.total(), 1), Potential::constant(0)),
                 DomainError);
}

TEST(Chunked, Examples)
{
    auto ext1 = extend_system(System::full_shift(1, 1));
    auto one = empirical_construction(ext1, Potential::constant(0), 0.3, 3);
    EXPECT_GE(chunked_entropy_bound(ext1, one, boundary_safe_partition(ext1, one.mu, 0.3), 2).slack, 0.0);

    auto ext = extended("full-2-shift", 6, 0.3);
    auto b = empirical_construction(ext, Potential::constant(0), 0.3, 6);
    auto r = chunked_entropy_bound(ext, b, boundary_safe_partition(ext, b.mu, 0.3), 2);
    EXPECT_GE(r.slack, 0.0);
    EXPECT_LE(r.lhs, r.rhs);

    auto gm = extended("golden-mean", 9, 0.3);
    auto g = empirical_construction(gm, Potential::constant(0), 0.3, 9);
    EXPECT_GE(chunked_entropy_bound(gm, g, boundary_safe_partition(gm, g.mu, 0.3), 3).slack, 0.0);

    EXPECT_THROW(chunked_entropy_bound(ext, b, boundary_safe_partition(ext, b.mu, 0.3), 1), DomainError);
}

TEST(Defect, LongOrbitsOnAFixedScaffold)
{
    auto ext = extend_system(System::full_shift(2, 8));
    auto f = Potential::indicator(2, {0, 1});
    auto b = empirical_construction(ext, f, 0.3, 64);
    auto d = invariance_defect(ext, b, boundary_safe_partition(ext, b.mu, 0.3), f);
    EXPECT_LE(d.defect, 2.0 / 64 + 1e-12);
    EXPECT_DOUBLE_EQ(d.bound, 2.0 / 64);
}

TEST(Defect, FixedPointAtom)
{
    auto ext = extend_system(System::full_shift(1, 1));
    auto b = empirical_construction(ext, Potential::constant(0), 0.3, 5);
    EXPECT_EQ(invariance_defect(ext, b, boundary_safe_partition(ext, b.mu, 0.3), Potential::constant(0)).defect, 0.0);
}

TEST(Defect, TranslationMassDriftsToInfinity)
{
    auto e = zoo_entry("translation-Z");
    auto ext = extension_factory(e)(32, 0.4);
    auto f = bump_potential(1.0, 4.0);
    auto b = empirical_construction(ext, f, 0.4, 32);
    auto d = invariance_defect(ext, b, boundary_safe_partition(ext, b.mu, 0.4), f);
    EXPECT_LE(d.defect, 1.0 / 16);
    double near_infinity = 0.0;
    for (PointId x = 0; x < ext.base().size(); ++x)
        if (ext.base().infinity_distance(x) < 0.1)
            near_infinity += b.mu.weight(x);
    EXPECT_GT(near_infinity, 0.25);
}

TEST(BoundarySafe, FullShiftCylinders)
{
    auto ext = extended("full-2-shift", 3, 0.3);
    auto mu = FiniteMeasure::uniform(ext.total().size());
    auto p = boundary_safe_partition(ext, mu, 0.3);
    auto cyl = Partition::cylinders(ext.total(), 3);
    EXPECT_TRUE(p.as_cover(ext.total()).same_members(cyl.as_cover(ext.total())));
}

TEST(BoundarySafe, SingleAtom)
{
    auto ext = extended("full-2-shift", 2, 0.3);
    auto p = boundary_safe_partition(ext, FiniteMeasure::point_mass(ext.total().size(), 0), 0.3);
    EXPECT_GE(p.nonempty_count(), 2U);
}

TEST(BoundarySafe, TranslationTail)
{
    auto ext = extended("translation-Z", 4, 0.4);
    auto mu = FiniteMeasure::uniform(ext.total().size());
    auto p = boundary_safe_partition(ext, mu, 0.4);
    auto inf = static_cast<PointId>(ext.base().size());
    EXPECT_EQ(p.label(inf), 0U);
    auto members = p.members(ext.total());
    for (std::size_t i = 1; i < members.size(); ++i)
        for (auto z = members[i].find_first(); z != PointSet::npos; z = members[i].find_next(z))
            for (auto w = members[i].find_first(); w != PointSet::npos; w = members[i].find_next(w))
                EXPECT_LT(ext.pseudometric(static_cast<PointId>(z), static_cast<PointId>(w)), 0.4);
}

TEST(Pipeline, FullShiftZero)
{
    auto e = zoo_entry("full-2-shift");
    std::vector<int> ns{2, 3, 4, 5, 6, 7, 8, 9, 10};
    auto [mu, r] = lower_bound_pipeline(extension_factory(e), Potential::constant(0), 0.3, ns, {2, 3});
    EXPECT_TRUE(r.passed);
    EXPECT_LE(r.gap, 0.05);
    EXPECT_NEAR(r.measure_pressure, std::log(2.0), 0.05);
    EXPECT_NEAR(r.entropy_identity_residual, 0.0, 1e-9);
}

TEST(Pipeline, FullShiftIndicator)
{
    auto e = zoo_entry("full-2-shift");
    std::vector<int> ns{2, 3, 4, 5, 6, 7, 8, 9, 10};
    auto [mu, r] = lower_bound_pipeline(extension_factory(e), Potential::indicator(2, {0}), 0.3, ns, {2, 3});
    EXPECT_NEAR(r.measure_pressure, std::log(1 + std::exp(1.0)), 0.05);
    EXPECT_LE(r.gap, 0.05);
}
