#include "thermo/cover_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "thermo/set_cover.hpp"

namespace thermo {

namespace {

std::vector<PointSet> sorted_unique(std::vector<PointSet> sets)
{
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    return sets;
}

void require_same_universe(std::size_t a, std::size_t b, const char* what)
{
    if (a != b)
        throw DomainError(std::string(what) + ": operands live on different scaffolds");
}

} // namespace

Cover make_cover_unchecked(const System& sys, std::vector<PointSet> members)
{
    Cover c;
    c.universe_ = sys.size();
    c.members_ = std::move(members);
    const PointSet& zone = sys.infinity_zone();
    c.admissible_ = false;
    c.strongly_admissible_ = true;
    for (const auto& m : c.members_) {
        bool co_compact = zone.is_subset_of(m);
        c.admissible_ = c.admissible_ || co_compact;
        c.strongly_admissible_ = c.strongly_admissible_ && co_compact;
    }
    return c;
}

Cover::Cover(const System& sys, std::vector<PointSet> members)
{
    PointSet all(sys.size());
    std::vector<PointSet> kept;
    for (auto& m : members) {
        require_same_universe(m.size(), sys.size(), "cover");
        if (m.none())
            continue;
        all |= m;
        kept.push_back(std::move(m));
    }
    if (kept.empty() || !all.all())
        throw DomainError("cover: members do not cover the scaffold");
    *this = make_cover_unchecked(sys, std::move(kept));
}

bool Cover::same_members(const Cover& other) const
{
    return universe_ == other.universe_ && sorted_unique(members_) == sorted_unique(other.members_);
}

Cover Cover::canonical() const
{
    Cover c = *this;
    c.members_ = sorted_unique(members_);
    return c;
}

bool Cover::is_partition() const
{
    std::size_t total = 0;
    for (const auto& m : members_)
        total += m.count();
    return total == universe_;
}

Partition::Partition(std::vector<std::uint32_t> labels, std::size_t count)
    : labels_(std::move(labels)), count_(count)
{
    if (count_ == 0)
        throw DomainError("partition: needs at least the distinguished member");
    for (auto l : labels_)
        if (l >= count_)
            throw DomainError("partition: label out of range");
}

Partition Partition::from_members(const System& sys, const std::vector<PointSet>& members)
{
    if (members.empty())
        throw DomainError("partition: no members");
    std::vector<std::uint32_t> labels(sys.size(), 0);
    PointSet seen(sys.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto& m = members[i];
        require_same_universe(m.size(), sys.size(), "partition");
        if (i > 0 && m.none())
            throw DomainError("partition: only the distinguished member may be empty");
        if (m.intersects(seen))
            throw DomainError("partition: members overlap");
        seen |= m;
        for (auto x = m.find_first(); x != PointSet::npos; x = m.find_next(x))
            labels[x] = static_cast<std::uint32_t>(i);
    }
    if (!seen.all())
        throw DomainError("partition: members do not cover the scaffold");
    return Partition(std::move(labels), members.size());
}

Partition Partition::cylinders(const System& sys, int depth)
{
    if (depth < 1)
        throw DomainError("cylinder partition: depth must be positive");
    std::map<Word, std::uint32_t> index;
    std::vector<Word> prefix(sys.size());
    for (PointId x = 0; x < sys.size(); ++x) {
        Word w(static_cast<std::size_t>(depth));
        for (int i = 0; i < depth; ++i)
            w[static_cast<std::size_t>(i)] = sys.symbol(x, static_cast<std::size_t>(i));
        index.emplace(w, 0);
        prefix[x] = std::move(w);
    }
    std::uint32_t next = 1;
    for (auto& [w, label] : index)
        label = next++;
    std::vector<std::uint32_t> labels(sys.size());
    for (PointId x = 0; x < sys.size(); ++x)
        labels[x] = index.at(prefix[x]);
    return Partition(std::move(labels), next);
}

PointSet Partition::member(const System& sys, std::size_t index) const
{
    require_same_universe(universe(), sys.size(), "partition");
    PointSet m(sys.size());
    for (PointId x = 0; x < labels_.size(); ++x)
        if (labels_[x] == index)
            m.set(x);
    return m;
}

std::vector<PointSet> Partition::members(const System& sys) const
{
    require_same_universe(universe(), sys.size(), "partition");
    std::vector<PointSet> out(count_, PointSet(sys.size()));
    for (PointId x = 0; x < labels_.size(); ++x)
        out[labels_[x]].set(x);
    return out;
}

std::size_t Partition::nonempty_count() const
{
    std::vector<bool> used(count_, false);
    for (auto l : labels_)
        used[l] = true;
    return static_cast<std::size_t>(std::count(used.begin(), used.end(), true));
}

bool Partition::is_compact_member(const System& sys, std::size_t index) const
{
    return !member(sys, index).intersects(sys.infinity_zone());
}

bool Partition::admissible(const System& sys) const
{
    require_same_universe(universe(), sys.size(), "partition");
    const PointSet& zone = sys.infinity_zone();
    for (auto x = zone.find_first(); x != PointSet::npos; x = zone.find_next(x))
        if (labels_[x] != 0)
            return false;
    return true;
}

Cover Partition::as_cover(const System& sys) const
{
    return Cover(sys, members(sys));
}

Cover join(const System& sys, const Cover& a, const Cover& b)
{
    require_same_universe(a.universe(), b.universe(), "join");
    require_same_universe(a.universe(), sys.size(), "join");
    std::vector<PointSet> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a.members())
        for (const auto& y : b.members()) {
            PointSet c = x & y;
            if (c.any())
                out.push_back(std::move(c));
        }
    return make_cover_unchecked(sys, sorted_unique(std::move(out)));
}

PointSet preimage(const System& sys, const PointSet& s, int steps)
{
    require_same_universe(s.size(), sys.size(), "preimage");
    if (steps < 0)
        throw DomainError("preimage: negative number of steps");
    PointSet out(sys.size());
    for (PointId x = 0; x < sys.size(); ++x)
        if (s.test(sys.iterate(x, steps)))
            out.set(x);
    return out;
}

Cover preimage(const System& sys, const Cover& a, int steps)
{
    std::vector<PointSet> out;
    for (const auto& m : a.members()) {
        PointSet p = preimage(sys, m, steps);
        if (p.any())
            out.push_back(std::move(p));
    }
    return make_cover_unchecked(sys, std::move(out));
}

Cover iterate_cover(const System& sys, const Cover& a, int n)
{
    if (n < 1)
        throw DomainError("iterate_cover: n must be positive");
    require_same_universe(a.universe(), sys.size(), "iterate_cover");
    // A^{k+1} = A v T^{-1}(A^k)
    Cover acc = a;
    for (int k = 1; k < n; ++k)
        acc = join(sys, a, preimage(sys, acc, 1));
    if (n == 1)
        return a;
    return acc;
}

Partition iterate_partition(const System& sys, const Partition& p, int n)
{
    if (n < 1)
        throw DomainError("iterate_partition: n must be positive");
    require_same_universe(p.universe(), sys.size(), "iterate_partition");
    std::vector<std::vector<std::uint32_t>> tuples(sys.size());
    for (PointId x = 0; x < sys.size(); ++x) {
        auto& t = tuples[x];
        t.reserve(static_cast<std::size_t>(n));
        PointId y = x;
        for (int j = 0; j < n; ++j) {
            t.push_back(p.label(y));
            y = sys.apply(y);
        }
    }
    std::map<std::vector<std::uint32_t>, std::uint32_t> index;
    for (const auto& t : tuples)
        index.emplace(t, 0);
    std::uint32_t next = 1;
    for (auto& [t, label] : index) {
        bool distinguished = std::all_of(t.begin(), t.end(), [](std::uint32_t l) { return l == 0; });
        label = distinguished ? 0 : next++;
    }
    std::vector<std::uint32_t> labels(sys.size());
    for (PointId x = 0; x < sys.size(); ++x)
        labels[x] = index.at(tuples[x]);
    return Partition(std::move(labels), next);
}

Partition join(const Partition& a, const Partition& b)
{
    require_same_universe(a.universe(), b.universe(), "join");
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;
    for (std::size_t x = 0; x < a.universe(); ++x)
        index.emplace(std::make_pair(a.labels()[x], b.labels()[x]), 0);
    std::uint32_t next = 1;
    for (auto& [key, label] : index)
        label = (key.first == 0 && key.second == 0) ? 0 : next++;
    std::vector<std::uint32_t> labels(a.universe());
    for (std::size_t x = 0; x < a.universe(); ++x)
        labels[x] = index.at(std::make_pair(a.labels()[x], b.labels()[x]));
    return Partition(std::move(labels), next);
}

bool refines(const Cover& finer, const Cover& coarser)
{
    require_same_universe(finer.universe(), coarser.universe(), "refines");
    for (const auto& b : finer.members()) {
        bool inside = std::any_of(coarser.members().begin(), coarser.members().end(),
                                  [&](const PointSet& a) { return b.is_subset_of(a); });
        if (!inside)
            return false;
    }
    return true;
}

Cover cover_from_admissible_partition(const System& sys, const Partition& k)
{
    if (!k.admissible(sys))
        throw DomainError("cover_from_admissible_partition: partition is not admissible");
    auto members = k.members(sys);
    std::vector<PointSet> out;
    for (std::size_t j = 1; j < members.size(); ++j)
        if (members[j].any())
            out.push_back(members[0] | members[j]);
    if (out.empty())
        throw DomainError("cover_from_admissible_partition: no member besides the distinguished one");
    return Cover(sys, std::move(out));
}

std::optional<double> lebesgue_number(const System& sys, const Cover& a, int max_halvings)
{
    require_same_universe(a.universe(), sys.size(), "lebesgue_number");
    double diam = sys.diameter();
    if (diam <= 0)
        diam = 1.0;
    for (int j = 1; j <= max_halvings; ++j) {
        double eps = std::ldexp(diam, -j);
        bool ok = true;
        for (PointId x = 0; x < sys.size() && ok; ++x) {
            PointSet b = ball(sys, x, eps);
            ok = std::any_of(a.members().begin(), a.members().end(),
                             [&](const PointSet& m) { return b.is_subset_of(m); });
        }
        if (ok)
            return eps;
    }
    return std::nullopt;
}

std::size_t intersection_count(const System& sys, const Partition& k, const Cover& b, int steps)
{
    if (steps < 1)
        throw DomainError("intersection_count: steps must be positive");
    if (!refines(b, cover_from_admissible_partition(sys, k)))
        throw DomainError("intersection_count: the cover does not refine the cover built from the partition");
    Cover bk = iterate_cover(sys, b, steps);
    Partition kk = iterate_partition(sys, k, steps);
    std::size_t worst = 0;
    std::vector<char> hit(kk.size());
    for (const auto& m : bk.members()) {
        std::fill(hit.begin(), hit.end(), 0);
        std::size_t count = 0;
        for (auto x = m.find_first(); x != PointSet::npos; x = m.find_next(x)) {
            auto l = kk.label(static_cast<PointId>(x));
            if (!hit[l]) {
                hit[l] = 1;
                ++count;
            }
        }
        worst = std::max(worst, count);
    }
    return worst;
}

SubcoverCount min_subcover_cardinality(const Cover& a, SolverMode mode)
{
    if (a.size() == 0)
        throw DomainError("min_subcover_cardinality: empty cover");
    std::vector<double> ones(a.size(), 1.0);
    auto sol = min_weight_set_cover(a.members(), ones, mode);
    if (mode == SolverMode::exact && sol.bound != Bound::exact)
        throw DomainError("min_subcover_cardinality: exact search exceeded its node budget; rerun in greedy mode");
    return {static_cast<std::size_t>(std::llround(sol.value)), sol.bound};
}

} // namespace thermo
