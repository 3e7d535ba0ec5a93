#pragma once

#include <string>
#include <vector>

#include "thermo/report.hpp"
#include "thermo/zoo.hpp"

namespace thermo {

struct PropertyOptions {
    int n_max = 6;
    double eps = 0.3;
    std::vector<int> q_grid{2, 3};
    int k_max = 3;
    /// Submultiplicativity runs over m + n <= submult_max.
    int submult_max = 10;
    /// Skip the submultiplicativity sweep on scaffolds larger than this.
    std::size_t submult_max_points = 1U << 13;
    double shift = 1.5;
    double shift_tolerance = 1e-9;
    SolverMode mode = SolverMode::exact;
};

/// Zoo parameters for the suites: the doubling map drops to 6 binary digits
/// so circle-arc covers stay within the exact solver's budget.
ZooParams property_zoo_params();

/// Potential used by the suites: the [0] indicator on coded entries, a
/// bump around 0 otherwise.
Potential sample_potential(const ZooEntry& entry);

/// Uniform measure when T permutes the scaffold, else uniform on the cycle
/// reached from point 0. Always T-invariant.
FiniteMeasure invariant_sample_measure(const System& sys);

/// Depth-1 cylinders on coded systems; on the others K_0 = {infinity_distance
/// < 0.2} (empty when compact) and the rest split by the sign of the first
/// coordinate.
Partition natural_partition(const System& sys);

/// value(f + c) = value(f) + c for every pressure kind: raw levels in log
/// (difference c n), extrapolations and consolidated value (difference c),
/// measure pressures of the sample measures.
CheckReport constant_shift_check(const ZooEntry& entry, const Potential& f, const PropertyOptions& options);

/// P_{m+n} <= P_m P_n for m + n <= submult_max, and the Fekete consequences:
/// (1/kn) log P_kn <= (1/n) log P_n and the running minimum never below the
/// last value's limit estimate.
CheckReport submultiplicativity_check(const ZooEntry& entry, const Potential& f, const PropertyOptions& options);

/// H + n int g = log A_n for the Misiurewicz bundles at levels 1..n_max
/// (exact mode only).
CheckReport entropy_identity_sweep(const ZooEntry& entry, const Potential& f, double eps, int n_max,
                                   double tolerance = 1e-9);

/// Every check of the suite for one entry, named by lemma.
std::vector<CheckReport> property_suite(const ZooEntry& entry, const Potential& f,
                                        const PropertyOptions& options = {});

} // namespace thermo
