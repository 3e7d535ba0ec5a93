#include <cmath>

#include <gtest/gtest.h>

#include "thermo/zoo.hpp"

using namespace thermo;

namespace {

const double phi = (1 + std::sqrt(5.0)) / 2;

} // namespace

TEST(TransferMatrix, Oracles)
{
    EXPECT_NEAR(transfer_matrix_pressure(2, {{1, 1}, {1, 1}}, Potential::constant(0)), std::log(2.0), 1e-10);
    EXPECT_NEAR(transfer_matrix_pressure(2, {{1, 1}, {1, 1}}, Potential::indicator(2, {0})),
                std::log(1 + std::exp(1.0)), 1e-10);
    EXPECT_NEAR(transfer_matrix_pressure(2, {{1, 1}, {1, 0}}, Potential::constant(0)), std::log(phi), 1e-10);
    EXPECT_NEAR(transfer_matrix_pressure(3, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}, Potential::constant(0.5)),
                std::log(3.0) + 0.5, 1e-10);
}

TEST(TransferMatrix, TwoSymbolPotentialUsesBlocks)
{
    auto f = Potential::indicator(2, {0, 1});
    auto t = transfer_matrix(2, {{1, 1}, {1, 1}}, f);
    EXPECT_EQ(t.states.size(), 2U);
    // Eigenvalue of [[1, e], [1, 1]].
    EXPECT_NEAR(transfer_matrix_pressure(2, {{1, 1}, {1, 1}}, f), std::log(1 + std::exp(0.5)), 1e-10);
}

TEST(MarkovEntropy, Examples)
{
    MarkovMeasure perm(2, {{0}, {1}}, {{0, 1}, {1, 0}}, {0.5, 0.5});
    EXPECT_EQ(markov_entropy(perm), 0.0);
    EXPECT_NEAR(markov_entropy(MarkovMeasure::bernoulli({0.5, 0.5})), std::log(2.0), 1e-15);
    auto parry = gibbs_markov_measure(2, {{1, 1}, {1, 0}}, Potential::constant(0));
    EXPECT_NEAR(markov_entropy(parry), std::log(phi), 1e-10);
}

TEST(Gibbs, Examples)
{
    auto b = gibbs_markov_measure(2, {{1, 1}, {1, 1}}, Potential::constant(0));
    EXPECT_NEAR(b.p()[0][0], 0.5, 1e-12);
    EXPECT_NEAR(b.pi()[1], 0.5, 1e-12);

    double e = std::exp(1.0);
    auto g = gibbs_markov_measure(2, {{1, 1}, {1, 1}}, Potential::indicator(2, {0}));
    for (int i = 0; i < 2; ++i) {
        EXPECT_NEAR(g.p()[i][0], e / (1 + e), 1e-12);
        EXPECT_NEAR(g.p()[i][1], 1 / (1 + e), 1e-12);
    }

    auto parry = gibbs_markov_measure(2, {{1, 1}, {1, 0}}, Potential::constant(0));
    EXPECT_NEAR(parry.p()[0][0], 1 / phi, 1e-12);
    EXPECT_NEAR(parry.p()[0][1], 1 / (phi * phi), 1e-12);
    EXPECT_NEAR(parry.p()[1][0], 1.0, 1e-12);
    EXPECT_NEAR(parry.pi()[0], phi * phi / (1 + phi * phi), 1e-12);
}

TEST(Zoo, NamesAndDescriptions)
{
    auto names = zoo_names();
    EXPECT_EQ(names.size(), 6U);
    for (const auto& n : names) {
        auto e = zoo_entry(n);
        EXPECT_EQ(e.name, n);
        EXPECT_FALSE(describe(e).empty());
    }
    EXPECT_THROW(zoo_entry("tent-map"), DomainError);
}

TEST(Zoo, InvariantProbabilityFlags)
{
    EXPECT_TRUE(zoo_entry("full-2-shift").invariant_probability);
    EXPECT_FALSE(zoo_entry("translation-Z").invariant_probability);
    EXPECT_FALSE(zoo_entry("fiber-example").invariant_probability);
}

TEST(Zoo, DoublingMapIsCodedByTheFullShift)
{
    auto e = zoo_entry("doubling-map");
    ASSERT_TRUE(e.sft);
    EXPECT_EQ(e.sft->first, 2);
    auto sys = e.scaffold(4, 0.3);
    for (PointId x = 0; x < sys.size(); ++x) {
        double v = sys.coordinates(x)[0];
        double image = std::fmod(2 * v, 1.0);
        EXPECT_NEAR(sys.coordinates(sys.apply(x))[0], image, 1e-12);
    }
}

TEST(Zoo, TranslationBoundaryIsRecorded)
{
    auto sys = translation_on_z(10);
    EXPECT_EQ(sys.apply(20), 20U);
    EXPECT_GT(sys.max_projection_error(), 0.0);
    EXPECT_EQ(sys.projection_error(3), 0.0);
}

TEST(Zoo, CustomEntries)
{
    auto e = custom_sft_entry("even", 2, {{1, 1}, {1, 0}});
    EXPECT_EQ(e.scaffold(3, 0.3).depth(), scaffold_depth(3, 0.3));
    EXPECT_THROW(custom_sft_entry("bad", 2, {{1, 2}, {1, 0}}), DomainError);
    auto s = custom_sampled_entry(translation_on_z(4));
    EXPECT_FALSE(s.extension(s.scaffold(1, 0.3)));
}
