#pragma once

#include <utility>
#include <vector>

#include "thermo/cover_algebra.hpp"
#include "thermo/report.hpp"
#include "thermo/systems.hpp"

namespace thermo {

/// Default tolerance on the invariance defect for calling a measure invariant.
inline constexpr double invariance_tolerance = 1e-9;

/// Finitely supported measure on a scaffold, stored densely.
class FiniteMeasure {
public:
    FiniteMeasure() = default;
    /// Weights must be nonnegative with total mass at most 1 + 1e-12.
    explicit FiniteMeasure(std::vector<double> weights);

    static FiniteMeasure zero(std::size_t size);
    static FiniteMeasure point_mass(std::size_t size, PointId x, double mass = 1.0);
    static FiniteMeasure uniform(std::size_t size);

    std::size_t size() const noexcept { return weights_.size(); }
    double weight(PointId x) const { return weights_.at(x); }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double total_mass() const noexcept { return total_; }
    double mass(const PointSet& s) const;

    FiniteMeasure scaled(double alpha) const;

    /// mu o T^{-1}.
    FiniteMeasure pushforward(const System& sys) const;

    /// sum_x |mu(x) - mu(T^{-1} x)|.
    double invariance_defect(const System& sys) const;

private:
    std::vector<double> weights_;
    double total_ = 0.0;
};

/// Stationary Markov chain on blocks of `block` symbols. A transition u -> v
/// is only allowed when v continues u by one symbol.
class MarkovMeasure {
public:
    MarkovMeasure(int alphabet, std::vector<Word> states, std::vector<std::vector<double>> p,
                  std::vector<double> pi);

    /// Independent symbols with the given probabilities.
    static MarkovMeasure bernoulli(std::vector<double> p);

    /// Stationary vector computed from P (P must be irreducible).
    static MarkovMeasure from_chain(int alphabet, std::vector<Word> states, std::vector<std::vector<double>> p);

    int alphabet() const noexcept { return alphabet_; }
    int block() const noexcept { return static_cast<int>(states_.front().size()); }
    const std::vector<Word>& states() const noexcept { return states_; }
    const std::vector<std::vector<double>>& p() const noexcept { return p_; }
    const std::vector<double>& pi() const noexcept { return pi_; }

    /// Masses of all words of the given length with positive mass, in
    /// lexicographic order.
    std::vector<std::pair<Word, double>> cylinder_masses(int length) const;

    /// mu([w]).
    double cylinder_mass(const Word& w) const;

private:
    int alphabet_ = 0;
    std::vector<Word> states_;
    std::vector<std::vector<double>> p_;
    std::vector<double> pi_;
};

/// sum_x mu(x) f(x).
double integral(const System& sys, const Potential& f, const FiniteMeasure& mu);

/// Integral of a locally constant potential.
double integral(const Potential& f, const MarkovMeasure& mu);

/// sum_C mu(C) log(1/mu(C)), with 0 log(1/0) = 0.
double partition_entropy(const System& sys, const FiniteMeasure& mu, const Partition& c);

/// H_mu(C | D) = sum_D mu(D) H_{mu(.|D)}(C); cells with mu(D) = 0 contribute 0.
double conditional_entropy(const System& sys, const FiniteMeasure& mu, const Partition& c, const Partition& d);

struct EntropySequence {
    std::vector<double> entropies; // H(C^n)
    std::vector<double> values;    // H(C^n) / n
    /// min of the averages and of the increments H(C^n) - H(C^{n-1}); both
    /// are upper bounds of the limit for invariant measures.
    double extrapolated = 0.0;
};

/// (1/n) H_mu(C^n), n = 1..n_max. Throws ContractError if the invariance
/// defect of mu exceeds `defect_tolerance`.
EntropySequence dynamic_partition_entropy(const System& sys, const FiniteMeasure& mu, const Partition& c,
                                          int n_max, double defect_tolerance = invariance_tolerance);

/// Same for a Markov measure and the partition into cylinders of `depth`
/// symbols, iterated under T^step (so level n uses words of length
/// depth + step (n - 1)).
EntropySequence dynamic_partition_entropy(const MarkovMeasure& mu, int depth, int n_max, int step = 1);

/// Admissible partition K with K_j inside C_j obtained by moving a
/// neighbourhood of infinity into K_0.
struct AdmissibleRefinement {
    Partition partition;
    double radius = 0.0;       // points with infinity_distance < radius went to K_0
    double moved_mass = 0.0;   // mu(K_0) minus the mass of C's own member 0
    double per_member_budget = 0.0;
};

AdmissibleRefinement admissible_refinement(const System& sys, const FiniteMeasure& mu, const Partition& c,
                                           double delta);

struct KsOptions {
    int n_max = 6;
    double delta = 1e-3;
    double defect_tolerance = invariance_tolerance;
};

/// Max over the family of the dynamic entropy extrapolations, a lower bound
/// of h_mu(T). Non-admissible members are replaced by admissible refinements
/// on non-compact systems.
double ks_entropy(const System& sys, const FiniteMeasure& mu, const std::vector<Partition>& family,
                  const KsOptions& options = {});

/// Max over cylinder depths.
double ks_entropy(const MarkovMeasure& mu, const std::vector<int>& depths, int n_max = 8);

double measure_pressure(const System& sys, const FiniteMeasure& mu, const Potential& f,
                        const std::vector<Partition>& family, const KsOptions& options = {});

double measure_pressure(const MarkovMeasure& mu, const Potential& f, const std::vector<int>& depths,
                        int n_max = 8);

/// Depth 1..max_depth cylinder partitions on a coded system.
std::vector<Partition> cylinder_family(const System& sys, int max_depth);

/// P_mu(T^k, f_k) against k P_mu(T, f) using exact Markov entropies.
CheckReport iterated_measure_pressure_check(const MarkovMeasure& mu, const Potential& f, int k,
                                            int n_max = 8, double tolerance = 1e-6);

/// int f dmu + (1/n) H_mu(C^n) <= (1/n) log sum_{C in C^n} sup e^{f_n(C)}.
CheckReport upper_bound_inequality_check(const System& sys, const FiniteMeasure& mu, const Potential& f,
                                         const Partition& c, int n_max);

/// Markov version with C the depth-`depth` cylinders of the SFT; f must be
/// locally constant of depth at most `depth`.
CheckReport upper_bound_inequality_check(const MarkovMeasure& mu, const Potential& f, int depth, int n_max);

/// (1/n) H(C^n) <= (1/n) H(D^n) + H(C | D) for n = 1..n_max.
CheckReport conditional_entropy_bound_check(const System& sys, const FiniteMeasure& mu, const Partition& c,
                                            const Partition& d, int n_max);

/// For K with K_j inside C_j (j >= 1): H(C | K) = mu(K_0) H_{mu(.|K_0)}(C) <= mu(K_0) log n.
CheckReport inside_partition_bound_check(const System& sys, const FiniteMeasure& mu, const Partition& c,
                                         const Partition& k);

} // namespace thermo
