#include "thermo/misiurewicz.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "thermo/topo_pressure.hpp"

namespace thermo {

namespace {

double entropy_of(const std::vector<double>& masses)
{
    double h = 0.0;
    for (double m : masses)
        if (m > 0)
            h -= m * std::log(m);
    return h;
}

std::vector<double> cell_masses(const FiniteMeasure& mu, const Partition& p)
{
    std::vector<double> m(p.size(), 0.0);
    for (PointId z = 0; z < mu.size(); ++z)
        m[p.label(z)] += mu.weight(z);
    return m;
}

void check_partition(const ExtendedSystem& ext, const Partition& p, double eps)
{
    const System& z = ext.total();
    if (p.universe() != z.size())
        throw DomainError("partition does not live on Z");
    if (!ext.fiber().is_subset_of(p.member(z, 0)))
        throw DomainError("member 0 of the partition must contain Z \\ X");
    auto members = p.members(z);
    for (std::size_t j = 0; j < members.size(); ++j) {
        std::vector<PointId> pts;
        for (auto x = members[j].find_first(); x != PointSet::npos; x = members[j].find_next(x))
            pts.push_back(static_cast<PointId>(x));
        // Ultrametric: d(x, y) <= max(d(x, p), d(p, y)), so one anchor is enough.
        const std::size_t anchors = z.prefix_metric() ? std::min<std::size_t>(1, pts.size()) : pts.size();
        for (std::size_t a = 0; a < anchors; ++a)
            for (std::size_t b = a + 1; b < pts.size(); ++b)
                if (!(z.metric(pts[a], pts[b]) < eps))
                    throw DomainError("partition member " + std::to_string(j) + " has diameter >= eps");
    }
}

} // namespace

EmpiricalBundle empirical_construction(const ExtendedSystem& ext, const Potential& f, double eps, int n,
                                       SolverMode mode)
{
    if (!(eps > 0) || n < 1)
        throw DomainError("empirical_construction: eps and n must be positive");
    const System& x = ext.base();
    const System& z = ext.total();
    auto choice = separated_set(x, f, eps, n, mode);
    auto fn = birkhoff_sums(x, f, n);

    EmpiricalBundle b;
    b.n = n;
    b.eps = eps;
    b.points = choice.points;
    b.bound = choice.bound;
    double a = 0.0;
    for (auto p : b.points)
        a += std::exp(fn[p]);
    b.a_n = a;

    std::vector<double> sigma(z.size(), 0.0);
    for (auto p : b.points)
        sigma[p] = std::exp(fn[p]) / a;
    std::vector<double> mu(z.size(), 0.0);
    std::vector<double> cur = sigma;
    for (int j = 0; j < n; ++j) {
        for (PointId p = 0; p < z.size(); ++p)
            mu[p] += cur[p] / n;
        std::vector<double> next(z.size(), 0.0);
        for (PointId p = 0; p < z.size(); ++p)
            next[z.apply(p)] += cur[p];
        cur.swap(next);
    }
    // Guard the mass check against rounding in the sums above.
    auto normalize = [](std::vector<double>& w) {
        double t = 0.0;
        for (double v : w)
            t += v;
        if (t > 1.0)
            for (auto& v : w)
                v /= t;
    };
    normalize(sigma);
    normalize(mu);
    b.sigma = FiniteMeasure(std::move(sigma));
    b.mu = FiniteMeasure(std::move(mu));
    return b;
}

IdentityResidual entropy_identity_check(const ExtendedSystem& ext, const EmpiricalBundle& bundle,
                                        const Partition& zpartition, const Potential& f)
{
    check_partition(ext, zpartition, bundle.eps);
    const System& z = ext.total();
    Potential g = lift_potential(f, ext);
    Partition zn = iterate_partition(z, zpartition, bundle.n);

    IdentityResidual r;
    std::vector<std::size_t> count(zn.size(), 0);
    for (auto p : bundle.points)
        r.max_points_per_cell = std::max(r.max_points_per_cell, ++count[zn.label(p)]);

    double h = entropy_of(cell_masses(bundle.sigma, zn));
    double g_mu = integral(z, g, bundle.mu);
    auto gn = birkhoff_sums(z, g, bundle.n);
    double gn_sigma = 0.0;
    for (PointId p = 0; p < z.size(); ++p)
        gn_sigma += bundle.sigma.weight(p) * gn[p];
    r.entropy_identity = h + bundle.n * g_mu - std::log(bundle.a_n);
    r.birkhoff_identity = gn_sigma - bundle.n * g_mu;
    return r;
}

ChunkedBound chunked_entropy_bound(const ExtendedSystem& ext, const EmpiricalBundle& bundle,
                                   const Partition& zpartition, int q)
{
    if (q <= 1 || q >= bundle.n)
        throw DomainError("chunked_entropy_bound: requires 1 < q < n");
    const System& z = ext.total();
    if (zpartition.universe() != z.size())
        throw DomainError("chunked_entropy_bound: partition does not live on Z");
    Partition zn = iterate_partition(z, zpartition, bundle.n);
    Partition zq = iterate_partition(z, zpartition, q);
    ChunkedBound c;
    c.cells = zq.nonempty_count();
    c.lhs = q * entropy_of(cell_masses(bundle.sigma, zn));
    c.rhs = 2.0 * q * std::log(static_cast<double>(c.cells)) + bundle.n * entropy_of(cell_masses(bundle.mu, zq));
    c.slack = c.rhs - c.lhs;
    return c;
}

DefectReport invariance_defect(const ExtendedSystem& ext, const EmpiricalBundle& bundle,
                               const Partition& zpartition, const Potential& f)
{
    const System& z = ext.total();
    if (zpartition.universe() != z.size())
        throw DomainError("invariance_defect: partition does not live on Z");
    DefectReport d;
    d.bound = 2.0 / bundle.n;
    const auto& w = bundle.mu.weights();

    // Indicators: mu(Z_j) - mu(S^{-1} Z_j).
    std::vector<double> diff(zpartition.size(), 0.0);
    for (PointId p = 0; p < z.size(); ++p) {
        diff[zpartition.label(p)] += w[p];
        diff[zpartition.label(z.apply(p))] -= w[p];
    }
    for (double v : diff)
        d.defect = std::max(d.defect, std::abs(v));

    Potential g = lift_potential(f, ext);
    double norm = 0.0;
    std::vector<double> gv(z.size());
    for (PointId p = 0; p < z.size(); ++p) {
        gv[p] = g(z, p);
        norm = std::max(norm, std::abs(gv[p]));
    }
    if (norm > 0) {
        double s = 0.0;
        for (PointId p = 0; p < z.size(); ++p)
            s += w[p] * (gv[p] - gv[z.apply(p)]);
        d.defect = std::max(d.defect, std::abs(s) / norm);
    }
    return d;
}

Partition boundary_safe_partition(const ExtendedSystem& ext, const FiniteMeasure& mu, double eps)
{
    if (!(eps > 0))
        throw DomainError("boundary_safe_partition: eps must be positive");
    const System& z = ext.total();
    if (mu.size() != z.size())
        throw DomainError("boundary_safe_partition: measure does not live on Z");
    const std::size_t size = z.size();

    // Realized distances below eps/2.
    const double half = eps / 2;
    double below = 0.0;
    if (z.prefix_metric()) {
        for (int k = 0; k <= z.depth(); ++k)
            if (std::ldexp(1.0, -k) < half) {
                below = std::ldexp(1.0, -k);
                break;
            }
    } else {
        for (PointId a = 0; a < size; ++a)
            for (PointId b = a + 1; b < size; ++b) {
                double d = z.metric(a, b);
                if (d < half)
                    below = std::max(below, d);
            }
    }
    // No realized distance lies in (below, half), so no point sits on the sphere.
    const double r = (below + half) / 2;

    std::vector<std::uint32_t> labels(size, 0);
    PointSet covered(size);
    std::uint32_t next = 1;
    if (ext.fiber_size() > 0) {
        PointSet fiber = ext.fiber();
        for (PointId p = 0; p < size; ++p) {
            bool near = fiber.test(p);
            for (auto c = fiber.find_first(); c != PointSet::npos && !near; c = fiber.find_next(c))
                near = z.metric(static_cast<PointId>(c), p) < r;
            if (near)
                covered.set(p);
        }
    } else {
        covered = ball(z, 0, r);
    }
    for (PointId p = 0; p < size; ++p) {
        if (covered.test(p))
            continue;
        PointSet b = ball(z, p, r) - covered;
        for (auto x = b.find_first(); x != PointSet::npos; x = b.find_next(x))
            labels[x] = next;
        covered |= b;
        ++next;
    }
    return Partition(std::move(labels), next);
}

std::pair<FiniteMeasure, PipelineReport> lower_bound_pipeline(const ExtensionFactory& factory, const Potential& f,
                                                              double eps, const std::vector<int>& n_grid,
                                                              const std::vector<int>& q_grid, SolverMode mode)
{
    if (n_grid.empty())
        throw DomainError("lower_bound_pipeline: empty n grid");
    std::vector<int> grid = n_grid;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.front() < 1)
        throw DomainError("lower_bound_pipeline: levels must be positive");

    PipelineReport rep;
    rep.eps = eps;
    std::vector<double> log_a;
    double best_rate = -HUGE_VAL;
    for (int n : grid) {
        auto ext = factory(n, eps);
        auto b = empirical_construction(ext, f, eps, n, mode);
        double rate = std::log(b.a_n) / n;
        rep.rates.emplace_back(n, rate);
        log_a.push_back(std::log(b.a_n));
        if (b.bound != Bound::exact)
            rep.bound = b.bound;
        if (rate > best_rate) {
            best_rate = rate;
            rep.n_argmax = n;
        }
    }

    // Growth rate: largest slope between consecutive levels in the last third.
    if (grid.size() == 1) {
        rep.separated_pressure = log_a.front() / grid.front();
    } else {
        std::size_t tail = (grid.size() + 2) / 3;
        std::size_t start = std::max<std::size_t>(1, grid.size() - tail);
        double best = -HUGE_VAL;
        for (std::size_t i = start; i < grid.size(); ++i)
            best = std::max(best, (log_a[i] - log_a[i - 1]) / (grid[i] - grid[i - 1]));
        rep.separated_pressure = best;
    }

    const int n = grid.back();
    rep.n = n;
    auto ext = factory(n, eps);
    auto bundle = empirical_construction(ext, f, eps, n, mode);
    rep.a_n = bundle.a_n;
    Partition zp = boundary_safe_partition(ext, bundle.mu, eps);

    auto id = entropy_identity_check(ext, bundle, zp, f);
    rep.entropy_identity_residual = std::max(std::abs(id.entropy_identity), std::abs(id.birkhoff_identity));

    rep.chunk_slack = HUGE_VAL;
    rep.tol_chunk = HUGE_VAL;
    int q_max = 2;
    for (int q : q_grid) {
        if (q <= 1 || q >= n)
            continue;
        q_max = std::max(q_max, q);
        auto c = chunked_entropy_bound(ext, bundle, zp, q);
        rep.chunk_slack = std::min(rep.chunk_slack, c.slack);
        rep.tol_chunk = std::min(rep.tol_chunk, 2.0 / n * std::log(static_cast<double>(c.cells)));
    }
    if (rep.chunk_slack == HUGE_VAL) {
        rep.chunk_slack = 0.0;
        rep.tol_chunk = 0.0;
    }

    auto defect = invariance_defect(ext, bundle, zp, f);
    rep.defect = defect.defect;
    rep.defect_bound = defect.bound;

    const System& x = ext.base();
    FiniteMeasure mu_star = restrict_measure(ext, bundle.mu);
    rep.total_mass = mu_star.total_mass();
    rep.mass_near_infinity = bundle.mu.mass(ext.fiber()) + mu_star.mass(x.infinity_zone());

    std::vector<Partition> family{ext.restrict_partition(zp)};
    if (x.has_coding())
        for (int d = 1; d <= std::min(q_max, x.depth()); ++d)
            family.push_back(Partition::cylinders(x, d));
    KsOptions opts;
    opts.n_max = std::max(q_max, std::min(n, 8));
    opts.defect_tolerance = mu_star.invariance_defect(x) + 1e-12;
    double entropy = 0.0;
    double truncation = 0.0;
    for (const auto& p : family) {
        const Partition* use = &p;
        Partition refined;
        if (x.has_infinity() && !p.admissible(x)) {
            refined = admissible_refinement(x, mu_star, p, opts.delta).partition;
            use = &refined;
        }
        auto seq = dynamic_partition_entropy(x, mu_star, *use, opts.n_max, opts.defect_tolerance);
        if (seq.extrapolated > entropy) {
            entropy = seq.extrapolated;
            truncation = seq.values.back() - seq.extrapolated;
        }
    }
    rep.entropy = entropy;
    rep.integral = integral(x, f, mu_star);
    rep.measure_pressure = rep.entropy + rep.integral;

    double sup_g = 0.0;
    Potential g = lift_potential(f, ext);
    for (PointId p = 0; p < ext.total().size(); ++p)
        sup_g = std::max(sup_g, std::abs(g(ext.total(), p)));
    rep.tol_defect = 2.0 * sup_g / n;
    rep.tol_truncation = std::max(0.0, truncation);
    rep.tolerance = rep.tol_defect + rep.tol_chunk + rep.tol_truncation;
    rep.gap = rep.separated_pressure - rep.measure_pressure;
    rep.passed = rep.separated_pressure <= rep.measure_pressure + rep.tolerance;
    return {std::move(mu_star), rep};
}

} // namespace thermo
