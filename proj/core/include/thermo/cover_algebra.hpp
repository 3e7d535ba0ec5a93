#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "thermo/systems.hpp"

namespace thermo {

/// Finite cover of a scaffold by nonempty subsets.
///
/// Admissibility is evaluated against the system's infinity zone when the
/// cover is built: a member has compact complement iff it contains the zone,
/// a set is compact iff it misses the zone. On compact systems every cover is
/// strongly admissible.
class Cover {
public:
    Cover() = default;
    /// Drops empty members; throws if the members do not cover the scaffold.
    Cover(const System& sys, std::vector<PointSet> members);

    std::size_t universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return members_.size(); }
    const std::vector<PointSet>& members() const noexcept { return members_; }
    const PointSet& operator[](std::size_t i) const { return members_[i]; }

    bool admissible() const noexcept { return admissible_; }
    bool strongly_admissible() const noexcept { return strongly_admissible_; }

    /// Same members regardless of order and multiplicity.
    bool same_members(const Cover& other) const;

    /// Members sorted and deduplicated.
    Cover canonical() const;

    /// True when members are pairwise disjoint.
    bool is_partition() const;

private:
    friend Cover make_cover_unchecked(const System&, std::vector<PointSet>);
    std::vector<PointSet> members_;
    std::size_t universe_ = 0;
    bool admissible_ = false;
    bool strongly_admissible_ = false;
};

/// Finite partition stored as one label per scaffold point. Member 0 is the
/// distinguished, possibly non-compact member and may be empty.
class Partition {
public:
    Partition() = default;
    Partition(std::vector<std::uint32_t> labels, std::size_t count);

    /// Members must be pairwise disjoint and cover the scaffold; members[0]
    /// may be empty, the others must not be.
    static Partition from_members(const System& sys, const std::vector<PointSet>& members);

    /// Cylinders of the given depth on a coded system, member 0 empty.
    static Partition cylinders(const System& sys, int depth);

    std::size_t universe() const noexcept { return labels_.size(); }
    std::size_t size() const noexcept { return count_; }
    std::uint32_t label(PointId x) const { return labels_.at(x); }
    const std::vector<std::uint32_t>& labels() const noexcept { return labels_; }

    PointSet member(const System& sys, std::size_t index) const;
    std::vector<PointSet> members(const System& sys) const;

    /// Number of nonempty members.
    std::size_t nonempty_count() const;

    bool is_compact_member(const System& sys, std::size_t index) const;

    /// Every member but the distinguished one is compact.
    bool admissible(const System& sys) const;

    Cover as_cover(const System& sys) const;

private:
    std::vector<std::uint32_t> labels_;
    std::size_t count_ = 0;
};

/// All nonempty pairwise intersections, deduplicated.
Cover join(const System& sys, const Cover& a, const Cover& b);

/// T^{-steps}(S).
PointSet preimage(const System& sys, const PointSet& s, int steps = 1);

/// T^{-steps} applied to every member.
Cover preimage(const System& sys, const Cover& a, int steps);

/// A v T^{-1}A v ... v T^{-(n-1)}A.
Cover iterate_cover(const System& sys, const Cover& a, int n);

/// Same construction for a partition; the distinguished member of the result
/// is the intersection of the distinguished members (label tuple all zero).
Partition iterate_partition(const System& sys, const Partition& p, int n);

/// Common refinement of two partitions.
Partition join(const Partition& a, const Partition& b);

/// True iff every member of `finer` lies inside some member of `coarser`.
bool refines(const Cover& finer, const Cover& coarser);

/// {K0 u K1, ..., K0 u Kn}. Requires K admissible with at least one
/// non-distinguished member.
Cover cover_from_admissible_partition(const System& sys, const Partition& k);

/// Largest eps on the grid diameter * 2^-j (j = 1..max_halvings) with every
/// eps-ball inside a member of `a`; nullopt when the scaffold is too coarse.
std::optional<double> lebesgue_number(const System& sys, const Cover& a, int max_halvings = 30);

/// max over members b of B^k of the number of members of K^k meeting b.
std::size_t intersection_count(const System& sys, const Partition& k, const Cover& b, int steps);

struct SubcoverCount {
    std::size_t value = 0;
    Bound bound = Bound::exact;
};

/// N(A): cardinality of a minimum subcover.
SubcoverCount min_subcover_cardinality(const Cover& a, SolverMode mode = SolverMode::exact);

} // namespace thermo
