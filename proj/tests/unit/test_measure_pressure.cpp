#include <cmath>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "thermo/measure_pressure.hpp"
#include "thermo/zoo.hpp"

using namespace thermo;
using namespace thermo::test;

namespace {

const double log2_ = std::log(2.0);
const double log_phi = 0.48121182505960347;

} // namespace

TEST(Integral, Examples)
{
    auto s = System::full_shift(2, 4);
    EXPECT_EQ(integral(s, Potential::indicator(2, {0}), FiniteMeasure::zero(s.size())), 0.0);
    EXPECT_NEAR(integral(s, Potential::indicator(2, {0}), FiniteMeasure::uniform(s.size())), 0.5, 1e-15);
    EXPECT_NEAR(integral(s, Potential::constant(3.25), FiniteMeasure::point_mass(s.size(), 5)), 3.25, 1e-15);
    EXPECT_NEAR(integral(Potential::indicator(2, {0}), MarkovMeasure::bernoulli({0.5, 0.5})), 0.5, 1e-15);
}

TEST(FiniteMeasure, RejectsBadWeights)
{
    EXPECT_THROW(FiniteMeasure({0.5, -0.1}), DomainError);
    EXPECT_THROW(FiniteMeasure({0.7, 0.7}), DomainError);
}

TEST(PartitionEntropy, Examples)
{
    auto s = System::full_shift(2, 3);
    auto c = Partition::cylinders(s, 1);
    EXPECT_EQ(partition_entropy(s, FiniteMeasure::point_mass(s.size(), 2), c), 0.0);
    EXPECT_NEAR(partition_entropy(s, FiniteMeasure::uniform(s.size()), c), log2_, 1e-15);

    std::vector<double> w(s.size(), 0.0);
    w[point_of(s, word_of("000"))] = 0.25;
    w[point_of(s, word_of("100"))] = 0.75;
    EXPECT_NEAR(partition_entropy(s, FiniteMeasure(w), c), 0.5623351446188083, 1e-12);
}

TEST(ConditionalEntropy, Examples)
{
    auto s = System::full_shift(2, 4);
    auto mu = FiniteMeasure::uniform(s.size());
    auto c = Partition::cylinders(s, 1);
    EXPECT_NEAR(conditional_entropy(s, mu, c, c), 0.0, 1e-15);
    Partition whole(std::vector<std::uint32_t>(s.size(), 0), 1);
    EXPECT_NEAR(conditional_entropy(s, mu, c, whole), log2_, 1e-15);

    // K_0 holds one point of each half with mass 0.05 each.
    auto a = point_of(s, word_of("0000"));
    auto b = point_of(s, word_of("1111"));
    std::vector<double> w(s.size(), 0.9 / 14);
    w[a] = w[b] = 0.05;
    std::vector<std::uint32_t> labels(s.size());
    for (PointId x = 0; x < s.size(); ++x)
        labels[x] = (x == a || x == b) ? 0U : 1U + s.word(x)[0];
    EXPECT_NEAR(conditional_entropy(s, FiniteMeasure(w), c, Partition(labels, 3)), 0.1 * log2_, 1e-12);
}

TEST(DynamicEntropy, PointMassOnFixedPoint)
{
    auto s = System::full_shift(2, 6);
    auto mu = FiniteMeasure::point_mass(s.size(), point_of(s, word_of("000000")));
    auto seq = dynamic_partition_entropy(s, mu, Partition::cylinders(s, 1), 5);
    for (double v : seq.values)
        EXPECT_EQ(v, 0.0);
}

TEST(DynamicEntropy, UniformOnFullShift)
{
    auto s = System::full_shift(2, 8);
    auto seq = dynamic_partition_entropy(s, FiniteMeasure::uniform(s.size()), Partition::cylinders(s, 1), 8);
    for (double v : seq.values)
        EXPECT_NEAR(v, log2_, 1e-12);
}

TEST(DynamicEntropy, RejectsNonInvariantMeasures)
{
    auto s = System::full_shift(2, 4);
    auto mu = FiniteMeasure::point_mass(s.size(), point_of(s, word_of("0001")));
    EXPECT_THROW(dynamic_partition_entropy(s, mu, Partition::cylinders(s, 1), 3), ContractError);
}

TEST(DynamicEntropy, ParryMeasure)
{
    auto parry = gibbs_markov_measure(2, {{1, 1}, {1, 0}}, Potential::constant(0));
    auto seq = dynamic_partition_entropy(parry, 1, 10);
    EXPECT_NEAR(seq.extrapolated, log_phi, 1e-6);
}

TEST(KsEntropy, Examples)
{
    auto s = System::full_shift(2, 8);
    std::vector<Partition> family{Partition::cylinders(s, 1), Partition::cylinders(s, 2)};
    auto mu = FiniteMeasure::uniform(s.size());
    KsOptions o;
    EXPECT_EQ(ks_entropy(s, FiniteMeasure::point_mass(s.size(), 0), family, o), 0.0);
    EXPECT_NEAR(ks_entropy(s, mu, family, o), log2_, 1e-12);
    EXPECT_NEAR(ks_entropy(s, mu.scaled(0.5), family, o), 0.34657359027997264, 1e-12);
    EXPECT_NEAR(ks_entropy(MarkovMeasure::bernoulli({0.5, 0.5}), {1, 2}), log2_, 1e-12);
}

TEST(MeasurePressure, Examples)
{
    auto s = System::full_shift(2, 8);
    auto family = cylinder_family(s, 2);
    EXPECT_EQ(measure_pressure(s, FiniteMeasure::zero(s.size()), Potential::indicator(2, {0}), family), 0.0);
    auto mu = FiniteMeasure::uniform(s.size());
    EXPECT_NEAR(measure_pressure(s, mu, Potential::constant(0), family), log2_, 1e-12);
    EXPECT_NEAR(measure_pressure(s, mu, Potential::indicator(2, {0}), family), log2_ + 0.5, 1e-12);
    auto bern = MarkovMeasure::bernoulli({0.5, 0.5});
    EXPECT_NEAR(measure_pressure(bern, Potential::indicator(2, {0}), {1, 2}), 1.1931471805599454, 1e-12);
}

TEST(IteratedMeasurePressure, Bernoulli)
{
    auto bern = MarkovMeasure::bernoulli({0.5, 0.5});
    EXPECT_TRUE(iterated_measure_pressure_check(bern, Potential::constant(0), 1).passed);
    EXPECT_TRUE(iterated_measure_pressure_check(bern, Potential::constant(0), 2).passed);
    auto r = iterated_measure_pressure_check(bern, Potential::indicator(2, {0}), 2);
    EXPECT_TRUE(r.passed);
    EXPECT_GE(r.slack, -1e-9);
}

TEST(UpperBound, Examples)
{
    auto s = System::full_shift(2, 6);
    auto mu = FiniteMeasure::uniform(s.size());
    EXPECT_TRUE(upper_bound_inequality_check(s, mu, Potential::constant(0), Partition::cylinders(s, 1), 4).passed);
    auto bern = MarkovMeasure::bernoulli({0.5, 0.5});
    auto r = upper_bound_inequality_check(bern, Potential::indicator(2, {0}), 1, 3);
    EXPECT_TRUE(r.passed);
    EXPECT_GT(r.slack, 0.0);

    auto f = Potential::indicator(2, {0});
    auto gibbs = gibbs_markov_measure(2, {{1, 1}, {1, 0}}, f);
    auto tight = upper_bound_inequality_check(gibbs, f, 1, 10);
    EXPECT_TRUE(tight.passed);
    EXPECT_LT(tight.slack, 0.1);
}

TEST(AdmissibleRefinement, MovesOnlyMassNearInfinity)
{
    auto s = translation_on_z(16);
    std::vector<double> w(s.size(), 0.0);
    w[tz(-16, 16)] = 0.25;
    w[tz(0, 16)] = 0.5;
    w[tz(16, 16)] = 0.25;
    FiniteMeasure mu(w);
    std::vector<std::uint32_t> labels(s.size());
    for (PointId x = 0; x < s.size(); ++x)
        labels[x] = s.coordinates(x)[0] < 0 ? 0 : 1;
    auto r = admissible_refinement(s, mu, Partition(labels, 2), 1e-3);
    EXPECT_TRUE(r.partition.admissible(s));
    EXPECT_LE(r.moved_mass, 0.25 + 1e-15);
}
