#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "thermo/cover_algebra.hpp"
#include "thermo/measure_pressure.hpp"
#include "thermo/report.hpp"
#include "thermo/systems.hpp"

namespace thermo {

/// Stands for the point at infinity in projections. Never a scaffold index.
inline constexpr PointId infinity_token = std::numeric_limits<PointId>::max();

/// How S acts on Z \ X. Fiber point i has Z id |X| + i and is sent to the Z id
/// fiber_map[i] (a fiber point or a point of X).
struct ExtensionRecipe {
    std::vector<PointId> fiber_map;
};

/// (Z, S) extending (X, T). Z ids 0..|X|-1 are the points of X, the remaining
/// ids form the fiber Z \ X. Z carries the pseudometric d(pi z, pi w), with
/// d(x, inf) given by the infinity distance of x, and is compact.
class ExtendedSystem {
public:
    ExtendedSystem(System base, System total, std::size_t fiber_size);

    const System& base() const noexcept { return base_; }
    const System& total() const noexcept { return total_; }

    std::size_t fiber_size() const noexcept { return fiber_size_; }
    bool is_trivial() const noexcept { return fiber_size_ == 0; }

    /// pi(z): z itself on X, infinity_token on the fiber.
    PointId project(PointId z) const;
    bool in_base(PointId z) const;

    /// d~(z, w).
    double pseudometric(PointId z, PointId w) const { return total_.metric(z, w); }

    PointSet fiber() const;
    PointSet base_part() const;

    /// X n S for a subset S of Z, as a subset of X.
    PointSet restrict_set(const PointSet& s) const;
    /// Same set seen inside Z.
    PointSet extend_set(const PointSet& s) const;

    Cover restrict_cover(const Cover& c) const;
    /// Distinguished member becomes Z_0 n X.
    Partition restrict_partition(const Partition& p) const;

private:
    System base_;
    System total_;
    std::size_t fiber_size_ = 0;
};

/// Compact systems extend trivially (Z = X). Non-compact systems need a recipe;
/// without one a ContractError is thrown.
ExtendedSystem extend_system(const System& sys, const std::optional<ExtensionRecipe>& recipe = std::nullopt);

/// g = f o pi, with g = c on the fiber.
Potential lift_potential(const Potential& f, const ExtendedSystem& ext);

FiniteMeasure restrict_measure(const ExtendedSystem& ext, const FiniteMeasure& mu);
FiniteMeasure extend_measure(const ExtendedSystem& ext, const FiniteMeasure& mu);

/// (i) mu|_X is T-invariant, (ii) h_mu(S, Zpartition) <= h_{mu|_X}(T, induced
/// partition), (iii) the same with the integrals of f o pi and f added, and
/// int g dmu = int f dmu|_X. Throws DomainError when member 0 of the
/// partition misses part of the fiber.
CheckReport compactified_bound_check(const ExtendedSystem& ext, const FiniteMeasure& mu, const Partition& zpartition,
                                     const Potential& f, int n_max);

/// Restricting an iterated Z-cover to X equals iterating the restricted cover.
CheckReport restriction_commutes_check(const ExtendedSystem& ext, const Cover& zcover, int n_max);

} // namespace thermo
