#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace thermo {

/// Index of a point in a finite scaffold.
using PointId = std::uint32_t;

/// A word over a finite alphabet; symbol values are in [0, alphabet).
using Word = std::vector<std::uint8_t>;

/// Finite subset of a scaffold.
using PointSet = boost::dynamic_bitset<std::uint64_t>;

/// Square 0/1 matrix of allowed symbol transitions.
using TransitionMatrix = std::vector<std::vector<int>>;

/// Invalid arguments: bad point ids, mismatched scaffolds, violated preconditions.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A hypothesis of a theorem-level operation is not met (e.g. no one-point metric).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// How much an exact search can be trusted.
enum class Bound { exact, upper, lower };

const char* to_string(Bound b);

enum class SolverMode { exact, greedy };

/// A finite scaffold of a dynamical system.
///
/// Points are indices 0..size()-1. The map is a table, the metric is either
/// the prefix ultrametric on a symbolic coding (d = 2^-k, k the first index
/// where the periodic continuations disagree) or an arbitrary function.
/// Instances are immutable; copies share their tables.
class System {
public:
    /// Cyclic words of length `depth` admissible for `transitions` (including
    /// the wrap-around transition). The map is the left rotation.
    static System symbolic(int alphabet, TransitionMatrix transitions, int depth,
                           std::string name = {});

    /// Full shift on `alphabet` symbols.
    static System full_shift(int alphabet, int depth);

    /// Points with coordinates and an explicit map table. `metric` receives
    /// coordinates. `projection_error[i]` records how far the true image of
    /// point i is from next[i].
    static System sampled(std::vector<std::vector<double>> coordinates,
                          std::vector<PointId> next,
                          std::function<double(std::span<const double>, std::span<const double>)> metric,
                          std::optional<std::vector<double>> infinity_distance = std::nullopt,
                          std::vector<double> projection_error = {},
                          std::string name = {});

    /// Arbitrary metric given on ids. Used for extensions whose metric is a
    /// pseudometric pulled back through a projection.
    static System from_metric(std::size_t size, std::vector<PointId> next,
                              std::function<double(PointId, PointId)> metric,
                              std::optional<std::vector<double>> infinity_distance = std::nullopt,
                              std::string name = {});

    /// Same points and metric with the map replaced by T^k.
    System power(int k) const;

    /// Attaches a symbolic coding to a non-symbolic system. The metric is
    /// unchanged, so prefix_metric() stays false.
    System with_coding(std::vector<Word> words, int alphabet) const;

    std::size_t size() const noexcept { return next_->size(); }
    const std::string& name() const noexcept { return name_; }

    PointId apply(PointId x) const;
    PointId iterate(PointId x, int steps) const;
    double metric(PointId x, PointId y) const;

    bool has_infinity() const noexcept { return static_cast<bool>(infinity_distance_); }
    double infinity_distance(PointId x) const;

    /// Points whose infinity_distance is below the finest grid radius that
    /// still contains a scaffold point. Empty for compact systems. Sets that
    /// miss this zone are treated as compact, sets containing it as
    /// neighbourhoods of infinity.
    const PointSet& infinity_zone() const noexcept { return *zone_; }

    /// Symbolic coding, when the system carries one.
    bool has_coding() const noexcept { return static_cast<bool>(words_); }
    const Word& word(PointId x) const;
    int alphabet() const noexcept { return alphabet_; }
    int depth() const noexcept { return depth_; }

    /// Symbol at coordinate `index` of the periodic continuation of x's word.
    std::uint8_t symbol(PointId x, std::size_t index) const;

    /// True when the metric is the prefix ultrametric of the coding, so that
    /// Bowen balls are cylinders.
    bool prefix_metric() const noexcept { return prefix_metric_; }

    std::span<const double> coordinates(PointId x) const;
    bool has_coordinates() const noexcept { return static_cast<bool>(coords_); }

    double projection_error(PointId x) const;
    double max_projection_error() const;

    /// Largest pairwise distance on the scaffold.
    double diameter() const;

    const std::vector<PointId>& map_table() const noexcept { return *next_; }

    void check_point(PointId x) const;

    PointSet empty_set() const { return PointSet(size()); }
    PointSet full_set() const { return PointSet(size()).set(); }

private:
    System() = default;
    void finish();

    std::string name_;
    std::shared_ptr<const std::vector<PointId>> next_;
    std::function<double(PointId, PointId)> metric_;
    std::shared_ptr<const std::vector<double>> infinity_distance_;
    std::shared_ptr<const PointSet> zone_;
    std::shared_ptr<const std::vector<Word>> words_;
    std::shared_ptr<const std::vector<std::vector<double>>> coords_;
    std::shared_ptr<const std::vector<double>> projection_error_;
    int alphabet_ = 0;
    int depth_ = 0;
    bool prefix_metric_ = false;
    mutable std::shared_ptr<double> diameter_cache_;
};

/// Depth-r locally constant part of a potential: values indexed by the
/// base-alphabet code of the first r symbols.
struct CylinderForm {
    int alphabet = 0;
    int depth = 0;
    std::vector<double> values;

    double at(const Word& w) const;
};

/// f = c + f0 with f0 vanishing at infinity.
class Potential {
public:
    using Core = std::function<double(const System&, PointId)>;

    static Potential constant(double c);
    /// Locally constant on cylinders of the coding; `values` has alphabet^depth entries.
    static Potential cylinder(int alphabet, int depth, std::vector<double> values, double c = 0.0);
    /// Indicator of the depth-|w| cylinder [w].
    static Potential indicator(int alphabet, const Word& w, double height = 1.0);
    /// f0 evaluated on the first coordinate of the point.
    static Potential on_coordinate(std::function<double(double)> core, double c = 0.0,
                                   std::string label = {});
    /// Explicit per-point values of f0.
    static Potential table(std::vector<double> values, double c = 0.0);
    static Potential from_core(Core core, double c = 0.0, std::string label = {});

    double operator()(const System& sys, PointId x) const;
    double core(const System& sys, PointId x) const;
    double at_infinity() const noexcept { return c_; }

    Potential plus_constant(double c) const;
    Potential scaled(double factor) const;

    const std::optional<CylinderForm>& cylinder_form() const noexcept { return cylinder_; }
    bool is_zero() const noexcept { return zero_core_ && c_ == 0.0; }
    bool core_is_zero() const noexcept { return zero_core_; }
    const std::string& label() const noexcept { return label_; }

    /// sup |f0(x)| over scaffold points with infinity_distance < delta.
    double tail_oscillation(const System& sys, double delta) const;

private:
    Core core_;
    double c_ = 0.0;
    std::optional<CylinderForm> cylinder_;
    bool zero_core_ = false;
    std::string label_;
};

/// max_{0 <= j < n} d(T^j x, T^j y).
double bowen_distance(const System& sys, PointId x, PointId y, int n);

/// f(x) + f(Tx) + ... + f(T^{n-1}x).
double birkhoff_sum(const System& sys, const Potential& f, PointId x, int n);

/// f_n at every scaffold point.
std::vector<double> birkhoff_sums(const System& sys, const Potential& f, int n);

class Cover;

/// One member per scaffold point x: the scaffold points y with d(x, y) < eps.
Cover ball_cover(const System& sys, double eps);

/// Open ball on the scaffold.
PointSet ball(const System& sys, PointId center, double eps);

/// Smallest k >= 0 with 2^-k < eps: prefix-metric balls of radius eps are
/// depth-k cylinders.
int cylinder_depth_for_radius(double eps);

} // namespace thermo
