#include <gtest/gtest.h>

#include "thermo/properties.hpp"

using namespace thermo;

TEST(Properties, GoldenMeanSuitePasses)
{
    auto e = zoo_entry("golden-mean", property_zoo_params());
    for (const auto& r : property_suite(e, sample_potential(e)))
        EXPECT_TRUE(r.passed) << r.name;
}

TEST(Properties, FiberExampleSuitePasses)
{
    auto e = zoo_entry("fiber-example", property_zoo_params());
    for (const auto& r : property_suite(e, sample_potential(e)))
        EXPECT_TRUE(r.passed) << r.name;
}

TEST(Properties, SuiteNamesAreStable)
{
    auto names_of = [](const std::string& entry) {
        auto e = zoo_entry(entry, property_zoo_params());
        std::vector<std::string> names;
        for (const auto& r : property_suite(e, sample_potential(e)))
            names.push_back(r.name);
        return names;
    };
    std::vector<std::string> common{"refinement monotonicity",
                                    "zero potential counts",
                                    "separated below half-radius cover",
                                    "admissible cover below generating",
                                    "maximal separated is generating",
                                    "intersection counting",
                                    "inside partition bound",
                                    "conditional entropy bound",
                                    "measure pressure upper bound",
                                    "entropy scaling",
                                    "entropy identity",
                                    "chunked entropy bound",
                                    "invariance defect",
                                    "iterated system"};
    auto coded = common;
    coded.insert(coded.end(), {"measure pressure upper bound (Markov)", "iterated measure pressure", "constant shift",
                               "submultiplicativity"});
    auto non_compact = common;
    non_compact.insert(non_compact.end(),
                       {"compactified bound", "restriction commutes", "constant shift", "submultiplicativity"});
    EXPECT_EQ(names_of("full-2-shift"), coded);
    EXPECT_EQ(names_of("fiber-example"), non_compact);
}

TEST(Properties, SampleMeasureIsInvariant)
{
    for (const auto& name : zoo_names()) {
        auto sys = zoo_entry(name, property_zoo_params()).scaffold(3, 0.3);
        EXPECT_LE(invariant_sample_measure(sys).invariance_defect(sys), 1e-12) << name;
        EXPECT_TRUE(natural_partition(sys).admissible(sys)) << name;
    }
}

TEST(Properties, ConstantShiftAndSubmultiplicativity)
{
    auto e = zoo_entry("full-3-shift", property_zoo_params());
    PropertyOptions o;
    o.n_max = 4;
    auto f = sample_potential(e);
    auto shift = constant_shift_check(e, f, o);
    EXPECT_TRUE(shift.passed);
    EXPECT_GE(shift.slack, -1e-9);
    o.submult_max = 8;
    EXPECT_TRUE(submultiplicativity_check(e, f, o).passed);
}

TEST(Properties, EntropyIdentitySweep)
{
    auto e = zoo_entry("golden-mean");
    auto r = entropy_identity_sweep(e, Potential::indicator(2, {0}), 0.3, 10);
    EXPECT_TRUE(r.passed);
    EXPECT_GE(r.slack, -1e-9);
}
