#include <cmath>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "thermo/cover_algebra.hpp"
#include "thermo/zoo.hpp"

using namespace thermo;
using namespace thermo::test;

TEST(Bowen, IdenticalPointsAreAtZero)
{
    auto s = System::full_shift(2, 5);
    auto x = point_of(s, word_of("00000"));
    EXPECT_EQ(bowen_distance(s, x, x, 5), 0.0);
}

TEST(Bowen, DisagreementAtIndexZero)
{
    auto s = System::full_shift(2, 5);
    EXPECT_EQ(bowen_distance(s, point_of(s, word_of("01111")), point_of(s, word_of("10000")), 1), 1.0);
}

TEST(Bowen, LaterDisagreementShiftsToFront)
{
    auto s = System::full_shift(2, 5);
    auto x = point_of(s, word_of("00100"));
    auto y = point_of(s, word_of("00000"));
    EXPECT_EQ(bowen_distance(s, x, y, 3), 1.0);
    EXPECT_EQ(bowen_distance(s, x, y, 2), 0.5);
}

TEST(Birkhoff, ZeroAndConstantPotentials)
{
    auto s = System::full_shift(2, 6);
    EXPECT_EQ(birkhoff_sum(s, Potential::constant(0), 3, 7), 0.0);
    EXPECT_DOUBLE_EQ(birkhoff_sum(s, Potential::constant(1), 3, 9), 9.0);
}

TEST(Birkhoff, AlternatingOrbit)
{
    auto s = System::full_shift(2, 4);
    EXPECT_DOUBLE_EQ(birkhoff_sum(s, Potential::indicator(2, {0}), point_of(s, word_of("0101")), 4), 2.0);
}

TEST(Metric, AxiomsByExhaustion)
{
    for (const auto& sys : {System::full_shift(2, 4), zoo_entry("golden-mean").scaffold(3, 0.3), translation_on_z(6),
                            doubling_map(5)}) {
        for (PointId x = 0; x < sys.size(); ++x) {
            EXPECT_EQ(sys.metric(x, x), 0.0);
            EXPECT_LT(sys.apply(x), sys.size());
            for (PointId y = 0; y < sys.size(); ++y) {
                EXPECT_EQ(sys.metric(x, y), sys.metric(y, x));
                for (PointId z = 0; z < sys.size(); ++z)
                    EXPECT_LE(sys.metric(x, z), sys.metric(x, y) + sys.metric(y, z) + 1e-12);
            }
        }
    }
}

TEST(Metric, FinitelyManyPointsFarFromInfinity)
{
    auto sys = translation_on_z(20);
    for (double delta : {0.5, 0.1, 0.05}) {
        std::size_t far = 0;
        for (PointId x = 0; x < sys.size(); ++x)
            far += sys.infinity_distance(x) > delta ? 1 : 0;
        EXPECT_LE(far, static_cast<std::size_t>(2.0 / delta));
    }
}

TEST(BallCover, RadiusAboveDiameter)
{
    auto s = System::full_shift(2, 4);
    auto c = ball_cover(s, 2.0);
    ASSERT_EQ(c.size(), s.size());
    for (const auto& m : c.members())
        EXPECT_EQ(m.count(), s.size());
}

TEST(BallCover, PrefixMetricBallsAreCylinders)
{
    auto s = System::full_shift(2, 4);
    auto c = ball_cover(s, 0.3);
    for (PointId x = 0; x < s.size(); ++x) {
        EXPECT_EQ(c[x].count(), 4U);
        const auto& w = s.word(x);
        EXPECT_EQ(c[x], cylinder(s, std::string{char('0' + w[0]), char('0' + w[1])}));
    }
    EXPECT_EQ(cylinder_depth_for_radius(0.3), 2);
}

TEST(BallCover, TranslationBallsAreAdmissible)
{
    auto s = translation_on_z(16);
    EXPECT_TRUE(ball_cover(s, 0.4).admissible());
}

TEST(Potential, DecompositionAndTail)
{
    auto sys = translation_on_z(32);
    auto f = bump_potential(1.0, 4.0, 2.0);
    EXPECT_DOUBLE_EQ(f.at_infinity(), 2.0);
    for (PointId x = 0; x < sys.size(); ++x)
        EXPECT_DOUBLE_EQ(f(sys, x), 2.0 + f.core(sys, x));
    EXPECT_DOUBLE_EQ(f.plus_constant(-2.0).at_infinity(), 0.0);
    EXPECT_DOUBLE_EQ(f.plus_constant(-2.0).plus_constant(2.0)(sys, tz(0, 32)), f(sys, tz(0, 32)));
    EXPECT_EQ(f.tail_oscillation(sys, 0.1), 0.0);
}

TEST(Systems, PowerIteratesTheMap)
{
    auto s = System::full_shift(3, 4);
    auto s2 = s.power(2);
    for (PointId x = 0; x < s.size(); ++x)
        EXPECT_EQ(s2.apply(x), s.iterate(x, 2));
}

TEST(Systems, GoldenMeanScaffoldAvoidsEleven)
{
    auto s = zoo_entry("golden-mean").scaffold(4, 0.3);
    for (PointId x = 0; x < s.size(); ++x) {
        const auto& w = s.word(x);
        for (std::size_t i = 0; i < w.size(); ++i)
            EXPECT_FALSE(w[i] == 1 && w[(i + 1) % w.size()] == 1);
    }
}

TEST(Systems, RejectsBadInput)
{
    EXPECT_THROW(System::symbolic(2, {{1, 1}}, 3), DomainError);
    EXPECT_THROW(translation_on_z(0), DomainError);
    EXPECT_THROW(System::full_shift(2, 3).check_point(8), DomainError);
}
