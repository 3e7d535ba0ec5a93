#include "thermo/compactification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thermo/topo_pressure.hpp"

namespace thermo {

ExtendedSystem::ExtendedSystem(System base, System total, std::size_t fiber_size)
    : base_(std::move(base)), total_(std::move(total)), fiber_size_(fiber_size)
{
    if (total_.size() != base_.size() + fiber_size_)
        throw DomainError("extended system: Z must be X plus the fiber");
    for (PointId x = 0; x < base_.size(); ++x)
        if (total_.apply(x) != base_.apply(x))
            throw DomainError("extended system: S does not extend T");
}

PointId ExtendedSystem::project(PointId z) const
{
    total_.check_point(z);
    return z < base_.size() ? z : infinity_token;
}

bool ExtendedSystem::in_base(PointId z) const
{
    total_.check_point(z);
    return z < base_.size();
}

PointSet ExtendedSystem::fiber() const
{
    PointSet s(total_.size());
    for (std::size_t z = base_.size(); z < total_.size(); ++z)
        s.set(z);
    return s;
}

PointSet ExtendedSystem::base_part() const
{
    PointSet s(total_.size());
    for (std::size_t z = 0; z < base_.size(); ++z)
        s.set(z);
    return s;
}

PointSet ExtendedSystem::restrict_set(const PointSet& s) const
{
    if (s.size() != total_.size())
        throw DomainError("restrict_set: set does not live on Z");
    PointSet out(base_.size());
    for (std::size_t x = 0; x < base_.size(); ++x)
        out[x] = s[x];
    return out;
}

PointSet ExtendedSystem::extend_set(const PointSet& s) const
{
    if (s.size() != base_.size())
        throw DomainError("extend_set: set does not live on X");
    PointSet out(total_.size());
    for (std::size_t x = 0; x < base_.size(); ++x)
        out[x] = s[x];
    return out;
}

Cover ExtendedSystem::restrict_cover(const Cover& c) const
{
    std::vector<PointSet> members;
    for (const auto& m : c.members())
        members.push_back(restrict_set(m));
    return Cover(base_, std::move(members));
}

Partition ExtendedSystem::restrict_partition(const Partition& p) const
{
    if (p.universe() != total_.size())
        throw DomainError("restrict_partition: partition does not live on Z");
    std::vector<std::uint32_t> raw(p.labels().begin(), p.labels().begin() + static_cast<std::ptrdiff_t>(base_.size()));
    std::vector<std::uint32_t> remap(p.size(), 0);
    std::vector<bool> used(p.size(), false);
    for (auto l : raw)
        used[l] = true;
    std::uint32_t next = 1;
    for (std::size_t l = 1; l < p.size(); ++l)
        if (used[l])
            remap[l] = next++;
    for (auto& l : raw)
        l = remap[l];
    return Partition(std::move(raw), next);
}

ExtendedSystem extend_system(const System& sys, const std::optional<ExtensionRecipe>& recipe)
{
    if (!sys.has_infinity()) {
        if (recipe && !recipe->fiber_map.empty())
            throw DomainError("extend_system: compact systems extend trivially");
        return ExtendedSystem(sys, sys, 0);
    }
    if (!recipe || recipe->fiber_map.empty())
        throw ContractError("extend_system: no registered extension for the non-compact system " + sys.name());

    const std::size_t nx = sys.size();
    const std::size_t nf = recipe->fiber_map.size();
    std::vector<PointId> next(sys.map_table());
    for (auto t : recipe->fiber_map) {
        if (t >= nx + nf)
            throw DomainError("extend_system: fiber map leaves Z");
        next.push_back(t);
    }
    auto metric = [sys, nx](PointId z, PointId w) {
        bool zx = z < nx;
        bool wx = w < nx;
        if (zx && wx)
            return sys.metric(z, w);
        if (zx)
            return sys.infinity_distance(z);
        if (wx)
            return sys.infinity_distance(w);
        return 0.0;
    };
    System total = System::from_metric(nx + nf, std::move(next), metric, std::nullopt, sys.name() + "+");
    return ExtendedSystem(sys, std::move(total), nf);
}

Potential lift_potential(const Potential& f, const ExtendedSystem& ext)
{
    require_one_point_potential(ext.base(), f);
    System base = ext.base();
    const std::size_t nx = base.size();
    return Potential::from_core(
        [f, base, nx](const System&, PointId z) { return z < nx ? f.core(base, z) : 0.0; }, f.at_infinity(),
        f.label() + " o pi");
}

FiniteMeasure restrict_measure(const ExtendedSystem& ext, const FiniteMeasure& mu)
{
    if (mu.size() != ext.total().size())
        throw DomainError("restrict_measure: measure does not live on Z");
    std::vector<double> w(mu.weights().begin(), mu.weights().begin() + static_cast<std::ptrdiff_t>(ext.base().size()));
    return FiniteMeasure(std::move(w));
}

FiniteMeasure extend_measure(const ExtendedSystem& ext, const FiniteMeasure& mu)
{
    if (mu.size() != ext.base().size())
        throw DomainError("extend_measure: measure does not live on X");
    std::vector<double> w = mu.weights();
    w.resize(ext.total().size(), 0.0);
    return FiniteMeasure(std::move(w));
}

CheckReport compactified_bound_check(const ExtendedSystem& ext, const FiniteMeasure& mu, const Partition& zpartition,
                                     const Potential& f, int n_max)
{
    const System& z = ext.total();
    const System& x = ext.base();
    if (zpartition.universe() != z.size())
        throw DomainError("compactified_bound_check: partition does not live on Z");
    if (!ext.fiber().is_subset_of(zpartition.member(z, 0)))
        throw DomainError("compactified_bound_check: member 0 must contain Z \\ X");

    CheckReport rep;
    rep.name = "entropy in the compactification";
    const double tol = invariance_tolerance;

    FiniteMeasure mux = restrict_measure(ext, mu);
    double defect = mux.invariance_defect(x);
    std::ostringstream inv;
    inv << "defect of mu|_X = " << defect;
    rep.record(defect <= tol, tol - defect, inv.str());

    double hz = dynamic_partition_entropy(z, mu, zpartition, n_max).extrapolated;
    Partition k = ext.restrict_partition(zpartition);
    KsOptions opts;
    opts.n_max = n_max;
    opts.defect_tolerance = std::max(tol, defect);
    double hx = ks_entropy(x, mux, {k}, opts);
    std::ostringstream ent;
    ent << "h(S, Z-partition) = " << hz << ", h(T, induced) = " << hx;
    rep.record(hz <= hx + 1e-12, hx - hz, ent.str());

    Potential g = lift_potential(f, ext);
    double gz = integral(z, g, mu);
    double fx = integral(x, f, mux);
    double fiber_mass = mu.mass(ext.fiber());
    double expected = fx + fiber_mass * f.at_infinity();
    std::ostringstream integ;
    integ << "int g dmu = " << gz << ", int f dmu|_X + mu(Z\\X) f(inf) = " << expected;
    rep.record(std::abs(gz - expected) <= 1e-12, -std::abs(gz - expected), integ.str());

    std::ostringstream pr;
    pr << "pressure form: " << hz + gz << " <= " << hx + expected;
    rep.record(hz + gz <= hx + expected + 1e-12, hx + expected - hz - gz, pr.str());
    return rep;
}

CheckReport restriction_commutes_check(const ExtendedSystem& ext, const Cover& zcover, int n_max)
{
    CheckReport rep;
    rep.name = "covering restriction";
    Cover xcover = ext.restrict_cover(zcover);
    for (int n = 1; n <= n_max; ++n) {
        Cover lhs = ext.restrict_cover(iterate_cover(ext.total(), zcover, n));
        Cover rhs = iterate_cover(ext.base(), xcover, n);
        bool same = lhs.same_members(rhs);
        std::ostringstream line;
        line << "n=" << n << (same ? " equal" : " differ") << " (" << lhs.canonical().size() << " vs "
             << rhs.canonical().size() << " members)";
        rep.record(same, same ? 0.0 : -1.0, line.str());
    }
    return rep;
}

} // namespace thermo
