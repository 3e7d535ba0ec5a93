#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "thermo/compactification.hpp"
#include "thermo/measure_pressure.hpp"
#include "thermo/misiurewicz.hpp"
#include "thermo/topo_pressure.hpp"

namespace thermo {

struct ZooParams {
    int translation_m = 64; // translation scaffold is -M..M
    int fiber_m = 8;        // base of the fiber example
    int doubling_margin = 2; // doubling scaffold has n + k + margin binary digits
    int doubling_max_digits = 12; // caps the dense Bowen matrix at 4095^2 entries
};

struct ZooEntry {
    std::string name;
    std::string notes;
    ScaffoldFactory scaffold;
    /// Extension of a scaffold to (Z, S); empty for compact systems.
    std::function<std::optional<ExtensionRecipe>(const System&)> extension;
    /// Subshift data when the entry is an SFT or is coded by one (oracles apply).
    std::optional<std::pair<int, TransitionMatrix>> sft;
    /// False when X carries no T-invariant probability (the pressure is f(inf)).
    bool invariant_probability = true;
    /// Defaults for runs that do not set them.
    int default_n_max = 10;
    std::vector<double> default_eps{0.3, 0.15, 0.075};
};

std::vector<std::string> zoo_names();

/// Throws DomainError for unknown names.
ZooEntry zoo_entry(const std::string& name, const ZooParams& params = {});

/// Entry for a user-supplied subshift of finite type.
ZooEntry custom_sft_entry(std::string name, int alphabet, TransitionMatrix transitions);

/// Entry for a fixed sampled scaffold. Non-compact scaffolds need a recipe
/// for the Misiurewicz construction.
ZooEntry custom_sampled_entry(System sys, std::optional<ExtensionRecipe> recipe = std::nullopt);

/// Human-readable summary of an entry.
std::string describe(const ZooEntry& entry);

ExtensionFactory extension_factory(const ZooEntry& entry);

/// Translation m -> m + 1 on -M..M with the one-point metric of Z u {inf}:
/// g(m) = sign(m) (1 - 1/(1+|m|)) placed on a circle of circumference 2.
System translation_on_z(int m);

/// x -> 2x mod 1 on the points k / (2^L - 1), coded by their L binary digits.
System doubling_map(int digits);

/// f0(m) = height * max(0, 1 - |m| / width) on the first coordinate.
Potential bump_potential(double height, double width, double c = 0.0);

/// log of the spectral radius of L[u][v] = e^{f(uv)} over blocks of the SFT.
double transfer_matrix_pressure(int alphabet, const TransitionMatrix& transitions, const Potential& f);

/// -sum pi_i P_ij log P_ij.
double markov_entropy(const MarkovMeasure& m);

/// Equilibrium Markov measure from the Perron vectors of the transfer matrix.
MarkovMeasure gibbs_markov_measure(int alphabet, const TransitionMatrix& transitions, const Potential& f);

/// Weighted transfer matrix and its block states (exposed for cross-checks).
struct TransferMatrix {
    std::vector<Word> states;
    std::vector<std::vector<double>> entries;
};
TransferMatrix transfer_matrix(int alphabet, const TransitionMatrix& transitions, const Potential& f);

} // namespace thermo
