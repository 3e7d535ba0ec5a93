#include "thermo/properties.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace thermo {

namespace {

constexpr double float_slack = 1e-12;

bool is_permutation(const System& sys)
{
    std::vector<bool> hit(sys.size(), false);
    for (PointId x = 0; x < sys.size(); ++x) {
        PointId y = sys.apply(x);
        if (hit[y])
            return false;
        hit[y] = true;
    }
    return true;
}

// Log-space comparison helper: "a <= b" with relative float slack.
bool log_le(double a, double b)
{
    return std::log(a) <= std::log(b) + float_slack;
}

Cover coarse_cover(const System& sys)
{
    if (sys.has_coding())
        return Partition::cylinders(sys, 1).as_cover(sys);
    return cover_from_admissible_partition(sys, natural_partition(sys));
}

// Strictly finer than the coarse cover.
Cover fine_cover(const System& sys)
{
    if (sys.has_coding() && sys.depth() >= 2)
        return Partition::cylinders(sys, 2).as_cover(sys);
    return join(sys, coarse_cover(sys), ball_cover(sys, sys.diameter() / 4).canonical()).canonical();
}

// Every third point moved into K_0; K_j stays inside C_j.
Partition thinned(const Partition& c)
{
    auto labels = c.labels();
    for (std::size_t x = 0; x < labels.size(); x += 3)
        labels[x] = 0;
    std::vector<std::uint32_t> remap(c.size(), 0);
    std::uint32_t next = 1;
    for (auto l : labels)
        if (l != 0 && remap[l] == 0)
            remap[l] = next++;
    for (auto& l : labels)
        l = remap[l];
    return Partition(std::move(labels), next);
}

std::string fmt_level(int n, const char* what, double lhs, double rhs)
{
    std::ostringstream out;
    out.precision(17);
    out << "n=" << n << " " << what << ": " << lhs << " vs " << rhs;
    return out.str();
}

CheckReport refinement_monotonicity(const System& sys, const Potential& f, const PropertyOptions& o)
{
    CheckReport rep;
    rep.name = "refinement monotonicity";
    Cover a = coarse_cover(sys);
    Cover b = fine_cover(sys);
    rep.record(refines(b, a), 0.0, "fine cover refines coarse cover");
    for (int n = 1; n <= o.n_max; ++n) {
        auto qa = q_value(sys, f, a, n, o.mode);
        auto qb = q_value(sys, f, b, n, o.mode);
        rep.record(log_le(qa.value, qb.value), std::log(qb.value) - std::log(qa.value),
                   fmt_level(n, "Q(A) <= Q(B)", qa.value, qb.value));
    }
    return rep;
}

CheckReport zero_potential_counts(const System& sys, const PropertyOptions& o)
{
    CheckReport rep;
    rep.name = "zero potential counts";
    Cover a = coarse_cover(sys);
    auto zero = Potential::constant(0.0);
    for (int n = 1; n <= o.n_max; ++n) {
        auto q = q_value(sys, zero, a, n, o.mode);
        auto p = p_value(sys, zero, a, n, o.mode);
        auto count = min_subcover_cardinality(iterate_cover(sys, a, n), o.mode);
        double c = static_cast<double>(count.value);
        double r = std::max(std::abs(q.value - c), std::abs(p.value - c));
        std::ostringstream line;
        line << "n=" << n << " Q=" << q.value << " P=" << p.value << " N=" << count.value;
        rep.record(r <= float_slack * c, -r, line.str());
    }
    return rep;
}

CheckReport separated_vs_ball_cover(const System& sys, const Potential& f, const PropertyOptions& o)
{
    CheckReport rep;
    rep.name = "separated below half-radius cover";
    Cover half = ball_cover(sys, o.eps / 2).canonical();
    for (int n = 1; n <= o.n_max; ++n) {
        auto s = s_value(sys, f, o.eps, n, o.mode);
        auto p = p_value(sys, f, half, n, o.mode);
        rep.record(log_le(s.value, p.value), std::log(p.value) - std::log(s.value),
                   fmt_level(n, "s(eps) <= P(ball eps/2)", s.value, p.value));
    }
    return rep;
}

CheckReport cover_vs_generating(const System& sys, const Potential& f, const PropertyOptions& o)
{
    CheckReport rep;
    rep.name = "admissible cover below generating";
    Cover a = coarse_cover(sys);
    if (!refines(ball_cover(sys, o.eps), a)) {
        rep.details.push_back("ball cover does not refine the coarse cover; nothing to check");
        return rep;
    }
    for (int n = 1; n <= o.n_max; ++n) {
        auto q = q_value(sys, f, a, n, o.mode);
        auto g = g_value(sys, f, o.eps, n, o.mode);
        rep.record(log_le(q.value, g.value), std::log(g.value) - std::log(q.value),
                   fmt_level(n, "Q(A) <= g(eps)", q.value, g.value));
    }
    return rep;
}

CheckReport maximal_separated_generates(const System& sys, const Potential& f, const PropertyOptions& o)
{
    CheckReport rep;
    rep.name = "maximal separated is generating";
    for (int n = 1; n <= o.n_max; ++n) {
        auto e = separated_set(sys, f, o.eps, n, o.mode);
        bool sep = is_separated(sys, o.eps, n, e.points);
        bool gen = is_generating(sys, o.eps, n, e.points);
        std::ostringstream line;
        line << "n=" << n << " |E|=" << e.points.size() << " separated=" << sep << " generating=" << gen;
        rep.record(sep && gen, sep && gen ? 0.0 : -1.0, line.str());
    }
    return rep;
}

CheckReport intersection_counting(const System& sys, const PropertyOptions& o)
{
    CheckReport rep;
    rep.name = "intersection counting";
    Partition k = natural_partition(sys);
    Cover kc = cover_from_admissible_partition(sys, k);
    Cover b;
    if (sys.has_coding() && sys.depth() >= 2) {
        b = Partition::cylinders(sys, 2).as_cover(sys);
    } else {
        auto r = lebesgue_number(sys, kc);
        if (!r) {
            rep.record(false, -1.0, "no Lebesgue number on this scaffold");
            return rep;
        }
        b = ball_cover(sys, *r).canonical();
    }
    for (int steps = 1; steps <= std::min(o.n_max, 8); ++steps) {
        auto count = intersection_count(sys, k, b, steps);
        double bound = std::ldexp(1.0, steps);
        std::ostringstream line;
        line << "k=" << steps << " count=" << count << " bound=" << bound;
        rep.record(static_cast<double>(count) <= bound, bound - static_cast<double>(count), line.str());
    }
    return rep;
}

CheckReport entropy_scaling(const System& sys, const FiniteMeasure& mu, const Partition& c, int n_max)
{
    CheckReport rep;
    rep.name = "entropy scaling";
    for (double alpha : {0.25, 0.5, 0.75}) {
        auto base = dynamic_partition_entropy(sys, mu, c, n_max);
        auto scaled = dynamic_partition_entropy(sys, mu.scaled(alpha), c, n_max);
        // H_{a mu}(C) = a H_mu(C) - a log a, so increments scale exactly.
        for (int n = 1; n <= n_max; ++n) {
            auto i = static_cast<std::size_t>(n - 1);
            double lhs = scaled.entropies[i] - (n > 1 ? scaled.entropies[i - 1] : -alpha * std::log(alpha));
            double rhs = alpha * (base.entropies[i] - (n > 1 ? base.entropies[i - 1] : 0.0));
            double r = std::abs(lhs - rhs);
            std::ostringstream line;
            line << "alpha=" << alpha << " n=" << n << " increment " << lhs << " vs " << rhs;
            rep.record(r <= float_slack, -r, line.str());
        }
        double r = std::abs(scaled.extrapolated - alpha * base.extrapolated);
        std::ostringstream line;
        line << "alpha=" << alpha << " h(alpha mu)=" << scaled.extrapolated << " alpha h(mu)=" << alpha * base.extrapolated;
        rep.record(r <= float_slack, -r, line.str());
    }
    return rep;
}

struct BundleChecks {
    CheckReport identity;
    CheckReport chunked;
    CheckReport defect;
};

BundleChecks misiurewicz_checks(const ZooEntry& entry, const Potential& f, const PropertyOptions& o)
{
    BundleChecks out;
    out.identity.name = "entropy identity";
    out.chunked.name = "chunked entropy bound";
    out.defect.name = "invariance defect";
    auto factory = extension_factory(entry);
    for (int n = 1; n <= o.n_max; ++n) {
        auto ext = factory(n, o.eps);
        auto b = empirical_construction(ext, f, o.eps, n, o.mode);
        Partition zp = boundary_safe_partition(ext, b.mu, o.eps);
        auto id = entropy_identity_check(ext, b, zp, f);
        double r = std::max(std::abs(id.entropy_identity), std::abs(id.birkhoff_identity));
        std::ostringstream line;
        line.precision(17);
        line << "n=" << n << " residual=" << r << " max points per cell=" << id.max_points_per_cell;
        out.identity.record(r <= 1e-9 && id.max_points_per_cell <= 1, -r, line.str());

        for (int q : o.q_grid) {
            if (q <= 1 || q >= n)
                continue;
            auto c = chunked_entropy_bound(ext, b, zp, q);
            std::ostringstream l;
            l << "n=" << n << " q=" << q << " " << c.lhs << " <= " << c.rhs;
            out.chunked.record(c.slack >= -float_slack, c.slack, l.str());
        }

        auto d = invariance_defect(ext, b, zp, f);
        std::ostringstream l;
        l << "n=" << n << " defect=" << d.defect << " bound=" << d.bound;
        out.defect.record(d.defect <= d.bound + float_slack, d.bound - d.defect, l.str());
    }
    if (out.chunked.details.empty())
        out.chunked.details.push_back("no q with 1 < q < n in range");
    return out;
}

} // namespace

ZooParams property_zoo_params()
{
    ZooParams p;
    p.doubling_max_digits = 6;
    return p;
}

Potential sample_potential(const ZooEntry& entry)
{
    if (entry.sft)
        return Potential::indicator(entry.sft->first, Word{0});
    return bump_potential(1.0, 4.0);
}

FiniteMeasure invariant_sample_measure(const System& sys)
{
    if (is_permutation(sys))
        return FiniteMeasure::uniform(sys.size());
    std::vector<int> seen(sys.size(), -1);
    PointId x = 0;
    for (int step = 0; seen[x] < 0; ++step) {
        seen[x] = step;
        x = sys.apply(x);
    }
    std::vector<PointId> cycle{x};
    for (PointId y = sys.apply(x); y != x; y = sys.apply(y))
        cycle.push_back(y);
    std::vector<double> w(sys.size(), 0.0);
    for (auto y : cycle)
        w[y] = 1.0 / static_cast<double>(cycle.size());
    return FiniteMeasure(std::move(w));
}

Partition natural_partition(const System& sys)
{
    if (sys.has_coding())
        return Partition::cylinders(sys, 1);
    std::vector<std::uint32_t> labels(sys.size());
    for (PointId x = 0; x < sys.size(); ++x) {
        if (sys.has_infinity() && sys.infinity_distance(x) < 0.2)
            labels[x] = 0;
        else if (sys.has_coordinates() && sys.coordinates(x)[0] < 0)
            labels[x] = 1;
        else
            labels[x] = 2;
    }
    return Partition(std::move(labels), 3);
}

CheckReport constant_shift_check(const ZooEntry& entry, const Potential& f, const PropertyOptions& o)
{
    CheckReport rep;
    rep.name = "constant shift";
    const double c = o.shift;
    Potential g = f.plus_constant(c);
    auto record_level = [&](const char* kind, int n, double a, double b) {
        double r = std::abs(std::log(b) - std::log(a) - c * n);
        std::ostringstream line;
        line.precision(17);
        line << kind << " n=" << n << " log ratio - c n = " << r;
        rep.record(r <= o.shift_tolerance, -r, line.str());
    };
    auto record_value = [&](const std::string& what, double a, double b) {
        double r = std::abs(b - a - c);
        std::ostringstream line;
        line.precision(17);
        line << what << ": " << a << " -> " << b;
        rep.record(r <= o.shift_tolerance, -r, line.str());
    };

    System sys = entry.scaffold(o.n_max, o.eps);
    Cover a = coarse_cover(sys);
    for (int n = 1; n <= o.n_max; ++n) {
        record_level("Q", n, q_value(sys, f, a, n, o.mode).value, q_value(sys, g, a, n, o.mode).value);
        record_level("P", n, p_value(sys, f, a, n, o.mode).value, p_value(sys, g, a, n, o.mode).value);
        record_level("s", n, s_value(sys, f, o.eps, n, o.mode).value, s_value(sys, g, o.eps, n, o.mode).value);
        record_level("g", n, g_value(sys, f, o.eps, n, o.mode).value, g_value(sys, g, o.eps, n, o.mode).value);
    }

    TopologicalOptions topts;
    topts.mode = o.mode;
    // Large overlapping ball covers exhaust the exact budget beyond n = 3.
    topts.cover_n_max = std::min(o.n_max, 3);
    auto grid = std::vector<double>{o.eps, o.eps / 2};
    auto tf = topological_pressure(entry.scaffold, f, grid, o.n_max, topts);
    auto tg = topological_pressure(entry.scaffold, g, grid, o.n_max, topts);
    auto ef = tf.all();
    auto eg = tg.all();
    for (std::size_t i = 0; i < ef.size() && i < eg.size(); ++i)
        record_value(std::string(to_string(ef[i].kind)) + " extrapolation", ef[i].extrapolated, eg[i].extrapolated);
    record_value("consolidated", tf.consolidated.extrapolated, tg.consolidated.extrapolated);

    FiniteMeasure mu = invariant_sample_measure(sys);
    std::vector<Partition> family{natural_partition(sys)};
    record_value("measure pressure (finite)", measure_pressure(sys, mu, f, family),
                 measure_pressure(sys, mu, g, family));
    if (entry.sft && f.cylinder_form()) {
        auto gibbs = gibbs_markov_measure(entry.sft->first, entry.sft->second, f);
        record_value("measure pressure (Markov)", measure_pressure(gibbs, f, {1, 2}),
                     measure_pressure(gibbs, g, {1, 2}));
        record_value("transfer-matrix pressure", transfer_matrix_pressure(entry.sft->first, entry.sft->second, f),
                     transfer_matrix_pressure(entry.sft->first, entry.sft->second, g));
    }
    return rep;
}

CheckReport submultiplicativity_check(const ZooEntry& entry, const Potential& f, const PropertyOptions& o)
{
    CheckReport rep;
    rep.name = "submultiplicativity";
    const int top = o.submult_max;
    System sys = entry.scaffold(top, o.eps);
    if (sys.size() > o.submult_max_points) {
        // Shallower cyclic words keep the cover iterates exact for n <= top.
        if (entry.sft)
            sys = System::symbolic(entry.sft->first, entry.sft->second, top, entry.name);
        if (sys.size() > o.submult_max_points) {
            rep.details.push_back("scaffold too large (" + std::to_string(sys.size()) + " points); skipped");
            return rep;
        }
    }
    Cover a = coarse_cover(sys);
    std::vector<double> logp(static_cast<std::size_t>(top) + 1, 0.0);
    for (int n = 1; n <= top; ++n) {
        auto p = p_value(sys, f, a, n, o.mode);
        logp[static_cast<std::size_t>(n)] = std::log(p.value);
    }
    for (int m = 1; m < top; ++m)
        for (int n = 1; m + n <= top; ++n) {
            double lhs = logp[static_cast<std::size_t>(m + n)];
            double rhs = logp[static_cast<std::size_t>(m)] + logp[static_cast<std::size_t>(n)];
            std::ostringstream line;
            line.precision(17);
            line << "m=" << m << " n=" << n << " log P_{m+n}=" << lhs << " log P_m + log P_n=" << rhs;
            rep.record(lhs <= rhs + float_slack, rhs - lhs, line.str());
        }
    // Fekete: (1/kn) log P_kn <= (1/n) log P_n, so the running minimum is an upper bound.
    double running = HUGE_VAL;
    for (int n = 1; n <= top; ++n) {
        double v = logp[static_cast<std::size_t>(n)] / n;
        for (int k = 2; k * n <= top; ++k) {
            double vk = logp[static_cast<std::size_t>(k * n)] / (k * n);
            std::ostringstream line;
            line.precision(17);
            line << "n=" << n << " k=" << k << " (1/kn) log P_kn=" << vk << " (1/n) log P_n=" << v;
            rep.record(vk <= v + float_slack, v - vk, line.str());
        }
        running = std::min(running, v);
    }
    double last = logp[static_cast<std::size_t>(top)] / top;
    std::ostringstream line;
    line.precision(17);
    line << "running min " << running << " <= last value " << last;
    rep.record(running <= last + float_slack, last - running, line.str());
    return rep;
}

CheckReport entropy_identity_sweep(const ZooEntry& entry, const Potential& f, double eps, int n_max,
                                   double tolerance)
{
    CheckReport rep;
    rep.name = "entropy identity";
    auto factory = extension_factory(entry);
    for (int n = 1; n <= n_max; ++n) {
        auto ext = factory(n, eps);
        auto b = empirical_construction(ext, f, eps, n, SolverMode::exact);
        if (b.bound != Bound::exact) {
            rep.details.push_back("n=" + std::to_string(n) + " bundle not exact; skipped");
            continue;
        }
        Partition zp = boundary_safe_partition(ext, b.mu, eps);
        auto id = entropy_identity_check(ext, b, zp, f);
        double r = std::max(std::abs(id.entropy_identity), std::abs(id.birkhoff_identity));
        std::ostringstream line;
        line.precision(17);
        line << "n=" << n << " |E_n|=" << b.points.size() << " residual=" << r;
        rep.record(r <= tolerance, -r, line.str());
    }
    return rep;
}

std::vector<CheckReport> property_suite(const ZooEntry& entry, const Potential& f, const PropertyOptions& o)
{
    std::vector<CheckReport> out;
    System sys = entry.scaffold(o.n_max, o.eps);

    out.push_back(refinement_monotonicity(sys, f, o));
    out.push_back(zero_potential_counts(sys, o));
    out.push_back(separated_vs_ball_cover(sys, f, o));
    out.push_back(cover_vs_generating(sys, f, o));
    out.push_back(maximal_separated_generates(sys, f, o));
    out.push_back(intersection_counting(sys, o));

    FiniteMeasure mu = invariant_sample_measure(sys);
    Partition c = natural_partition(sys);
    Partition k = thinned(c);
    {
        auto r = inside_partition_bound_check(sys, mu, c, k);
        r.name = "inside partition bound";
        out.push_back(std::move(r));
    }
    {
        auto r = conditional_entropy_bound_check(sys, mu, c, k, o.n_max);
        r.name = "conditional entropy bound";
        out.push_back(std::move(r));
    }
    {
        auto r = upper_bound_inequality_check(sys, mu, f, c, o.n_max);
        r.name = "measure pressure upper bound";
        out.push_back(std::move(r));
    }
    out.push_back(entropy_scaling(sys, mu, c, o.n_max));

    auto bundle = misiurewicz_checks(entry, f, o);
    out.push_back(std::move(bundle.identity));
    out.push_back(std::move(bundle.chunked));
    out.push_back(std::move(bundle.defect));

    {
        auto r = iterated_system_inequality_check(sys, f, coarse_cover(sys), 2, o.n_max, o.mode);
        r.name = "iterated system";
        out.push_back(std::move(r));
    }

    if (entry.sft && f.cylinder_form()) {
        auto gibbs = gibbs_markov_measure(entry.sft->first, entry.sft->second, f);
        auto r = upper_bound_inequality_check(gibbs, f, std::max(1, f.cylinder_form()->depth), o.n_max);
        r.name = "measure pressure upper bound (Markov)";
        out.push_back(std::move(r));
        CheckReport it;
        it.name = "iterated measure pressure";
        for (int step = 1; step <= o.k_max; ++step) {
            // Markov increments are exact past the block length; short words suffice.
            auto one = iterated_measure_pressure_check(gibbs, f, step, 4);
            for (auto& d : one.details)
                it.record(one.passed, one.slack, "k=" + std::to_string(step) + " " + d);
        }
        out.push_back(std::move(it));
    }

    auto ext = extend_system(sys, entry.extension(sys));
    if (!ext.is_trivial()) {
        FiniteMeasure zmu = extend_measure(ext, mu);
        Partition zp = boundary_safe_partition(ext, zmu, o.eps);
        auto r = compactified_bound_check(ext, zmu, zp, f, o.n_max);
        r.name = "compactified bound";
        out.push_back(std::move(r));
        auto rc = restriction_commutes_check(ext, zp.as_cover(ext.total()), o.n_max);
        rc.name = "restriction commutes";
        out.push_back(std::move(rc));
    }

    out.push_back(constant_shift_check(entry, f, o));
    out.push_back(submultiplicativity_check(entry, f, o));
    return out;
}

} // namespace thermo
