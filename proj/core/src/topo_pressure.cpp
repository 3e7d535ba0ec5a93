#include "thermo/topo_pressure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "thermo/set_cover.hpp"

namespace thermo {

const char* to_string(PressureKind k)
{
    switch (k) {
    case PressureKind::qminus: return "Qminus";
    case PressureKind::qplus: return "Qplus";
    case PressureKind::pcover: return "Pcover";
    case PressureKind::generating: return "Generating";
    case PressureKind::separated: return "Separated";
    case PressureKind::consolidated: return "Consolidated";
    }
    return "?";
}

ScaffoldFactory fixed_scaffold(System sys)
{
    return [sys = std::move(sys)](int, double) { return sys; };
}

int scaffold_depth(int n, double eps)
{
    if (n < 1)
        throw DomainError("scaffold_depth: n must be positive");
    return n + cylinder_depth_for_radius(eps);
}

ScaffoldFactory symbolic_scaffold(int alphabet, TransitionMatrix transitions, std::string name)
{
    return [=](int n, double eps) { return System::symbolic(alphabet, transitions, scaffold_depth(n, eps), name); };
}

namespace {

std::size_t tail_length(std::size_t count)
{
    return (count + 2) / 3;
}

std::vector<double> exp_birkhoff(const System& sys, const Potential& f, int n)
{
    auto sums = birkhoff_sums(sys, f, n);
    for (auto& s : sums)
        s = std::exp(s);
    return sums;
}

LevelValue cover_value(const System& sys, const Potential& f, const Cover& a, int n, SolverMode mode,
                       bool use_sup)
{
    if (n < 1)
        throw DomainError("cover value: n must be positive");
    if (a.universe() != sys.size())
        throw DomainError("cover value: cover lives on another scaffold");
    Cover an = iterate_cover(sys, a.canonical(), n);
    auto fn = birkhoff_sums(sys, f, n);
    std::vector<double> weights;
    weights.reserve(an.size());
    for (const auto& m : an.members()) {
        double best = use_sup ? -HUGE_VAL : HUGE_VAL;
        for (auto x = m.find_first(); x != PointSet::npos; x = m.find_next(x))
            best = use_sup ? std::max(best, fn[x]) : std::min(best, fn[x]);
        weights.push_back(std::exp(best));
    }
    auto sol = min_weight_set_cover(an.members(), weights, mode);
    return {sol.value, sol.bound};
}

// Row-major matrix of d_n(x, y).
std::vector<double> bowen_matrix(const System& sys, int n)
{
    const std::size_t size = sys.size();
    std::vector<double> d(size * size);
    for (PointId x = 0; x < size; ++x)
        for (PointId y = x; y < size; ++y)
            d[x * size + y] = d[y * size + x] = sys.metric(x, y);
    std::vector<double> b = d;
    std::vector<PointId> pos(size);
    for (PointId x = 0; x < size; ++x)
        pos[x] = x;
    const auto& next = sys.map_table();
    for (int j = 1; j < n; ++j) {
        for (auto& p : pos)
            p = next[p];
        for (PointId x = 0; x < size; ++x)
            for (PointId y = x + 1; y < size; ++y) {
                double v = d[pos[x] * size + pos[y]];
                if (v > b[x * size + y])
                    b[x * size + y] = b[y * size + x] = v;
            }
    }
    return b;
}

// On prefix-metric scaffolds d_n(x, y) < eps iff the periodic words agree on
// the first n - 1 + k symbols; returns one class label per point.
std::vector<std::uint32_t> bowen_classes(const System& sys, double eps, int n)
{
    const std::size_t len =
        std::min<std::size_t>(static_cast<std::size_t>(n - 1 + cylinder_depth_for_radius(eps)),
                              static_cast<std::size_t>(sys.depth()));
    std::map<Word, std::uint32_t> index;
    std::vector<std::uint32_t> labels(sys.size());
    for (PointId x = 0; x < sys.size(); ++x) {
        const Word& w = sys.word(x);
        Word key(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len));
        auto [it, inserted] = index.emplace(std::move(key), static_cast<std::uint32_t>(index.size()));
        labels[x] = it->second;
    }
    return labels;
}

void check_level(const System& sys, double eps, int n)
{
    if (!(eps > 0))
        throw DomainError("eps must be positive");
    if (n < 1)
        throw DomainError("n must be positive");
    if (sys.size() == 0)
        throw DomainError("empty scaffold");
}

PointChoice class_choice(const System& sys, const std::vector<double>& w, double eps, int n, bool maximize)
{
    auto labels = bowen_classes(sys, eps, n);
    std::uint32_t count = 0;
    for (auto l : labels)
        count = std::max(count, l + 1);
    std::vector<PointId> pick(count, static_cast<PointId>(-1));
    for (PointId x = 0; x < sys.size(); ++x) {
        auto& p = pick[labels[x]];
        if (p == static_cast<PointId>(-1) || (maximize ? w[x] > w[p] : w[x] < w[p]))
            p = x;
    }
    PointChoice out;
    out.points = pick;
    std::sort(out.points.begin(), out.points.end());
    for (auto p : out.points)
        out.value += w[p];
    return out;
}

PressureEstimate sequence(PressureKind kind, double eps, int n_max,
                          const std::function<LevelValue(const System&, int)>& level,
                          const ScaffoldFactory& scaffold)
{
    if (n_max < 1)
        throw DomainError("n_max must be positive");
    PressureEstimate e;
    e.kind = kind;
    e.epsilon = eps;
    for (int n = 1; n <= n_max; ++n) {
        System sys = scaffold(n, eps);
        auto v = level(sys, n);
        e.n_values.push_back(n);
        e.raw.push_back(v.value);
        e.values.push_back(std::log(v.value) / n);
        e.bounds.push_back(v.bound);
    }
    if (n_max == 1) {
        e.extrapolated = e.values.front();
        return e;
    }
    std::size_t start = std::max<std::size_t>(1, e.values.size() - tail_length(e.values.size()));
    double best = -HUGE_VAL;
    for (std::size_t i = start; i < e.values.size(); ++i)
        best = std::max(best, std::log(e.raw[i]) - std::log(e.raw[i - 1]));
    e.extrapolated = best;
    return e;
}

} // namespace

LevelValue q_value(const System& sys, const Potential& f, const Cover& a, int n, SolverMode mode)
{
    return cover_value(sys, f, a, n, mode, false);
}

LevelValue p_value(const System& sys, const Potential& f, const Cover& a, int n, SolverMode mode)
{
    return cover_value(sys, f, a, n, mode, true);
}

CoverPressure cover_pressure(const System& sys, const Potential& f, const Cover& a, int n_max, SolverMode mode)
{
    if (n_max < 2)
        throw DomainError("cover_pressure: n_max must be at least 2");
    CoverPressure out;
    out.qminus.kind = PressureKind::qminus;
    out.qplus.kind = PressureKind::qplus;
    out.pcover.kind = PressureKind::pcover;
    Cover canon = a.canonical();
    for (int n = 1; n <= n_max; ++n) {
        auto q = q_value(sys, f, canon, n, mode);
        auto p = p_value(sys, f, canon, n, mode);
        for (auto* e : {&out.qminus, &out.qplus}) {
            e->n_values.push_back(n);
            e->raw.push_back(q.value);
            e->values.push_back(std::log(q.value) / n);
            e->bounds.push_back(q.bound);
        }
        out.pcover.n_values.push_back(n);
        out.pcover.raw.push_back(p.value);
        out.pcover.values.push_back(std::log(p.value) / n);
        out.pcover.bounds.push_back(p.bound);
    }
    const auto& qv = out.qminus.values;
    std::size_t start = qv.size() - tail_length(qv.size());
    out.qminus.extrapolated = *std::min_element(qv.begin() + static_cast<std::ptrdiff_t>(start), qv.end());
    out.qplus.extrapolated = *std::max_element(qv.begin() + static_cast<std::ptrdiff_t>(start), qv.end());
    out.pcover.extrapolated = *std::min_element(out.pcover.values.begin(), out.pcover.values.end());
    return out;
}

PointChoice separated_set(const System& sys, const Potential& f, double eps, int n, SolverMode mode)
{
    check_level(sys, eps, n);
    auto w = exp_birkhoff(sys, f, n);
    if (sys.prefix_metric())
        return class_choice(sys, w, eps, n, true);
    const std::size_t size = sys.size();
    auto b = bowen_matrix(sys, n);
    std::vector<PointSet> adj(size, PointSet(size));
    for (PointId x = 0; x < size; ++x)
        for (PointId y = 0; y < size; ++y)
            if (x != y && b[x * size + y] < eps)
                adj[x].set(y);
    auto sol = max_weight_independent_set(adj, w, mode);
    PointChoice out;
    for (auto v : sol.chosen)
        out.points.push_back(static_cast<PointId>(v));
    out.value = sol.value;
    out.bound = sol.bound;
    return out;
}

PointChoice generating_set(const System& sys, const Potential& f, double eps, int n, SolverMode mode)
{
    check_level(sys, eps, n);
    auto w = exp_birkhoff(sys, f, n);
    if (sys.prefix_metric())
        return class_choice(sys, w, eps, n, false);
    const std::size_t size = sys.size();
    auto b = bowen_matrix(sys, n);
    std::vector<PointSet> balls(size, PointSet(size));
    for (PointId y = 0; y < size; ++y)
        for (PointId x = 0; x < size; ++x)
            if (b[x * size + y] < eps)
                balls[y].set(x);
    auto sol = min_weight_set_cover(balls, w, mode);
    PointChoice out;
    for (auto v : sol.chosen)
        out.points.push_back(static_cast<PointId>(v));
    out.value = sol.value;
    out.bound = sol.bound;
    return out;
}

LevelValue s_value(const System& sys, const Potential& f, double eps, int n, SolverMode mode)
{
    auto c = separated_set(sys, f, eps, n, mode);
    return {c.value, c.bound};
}

LevelValue g_value(const System& sys, const Potential& f, double eps, int n, SolverMode mode)
{
    auto c = generating_set(sys, f, eps, n, mode);
    return {c.value, c.bound};
}

bool is_separated(const System& sys, double eps, int n, const std::vector<PointId>& points)
{
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] != points[j] && bowen_distance(sys, points[i], points[j], n) < eps)
                return false;
    return true;
}

bool is_generating(const System& sys, double eps, int n, const std::vector<PointId>& points)
{
    for (PointId x = 0; x < sys.size(); ++x) {
        bool near = std::any_of(points.begin(), points.end(),
                                [&](PointId y) { return bowen_distance(sys, x, y, n) < eps; });
        if (!near)
            return false;
    }
    return true;
}

PressureEstimate separated_pressure(const ScaffoldFactory& scaffold, const Potential& f, double eps, int n_max,
                                    SolverMode mode)
{
    return sequence(
        PressureKind::separated, eps, n_max,
        [&](const System& sys, int n) { return s_value(sys, f, eps, n, mode); }, scaffold);
}

PressureEstimate generating_pressure(const ScaffoldFactory& scaffold, const Potential& f, double eps, int n_max,
                                     SolverMode mode)
{
    return sequence(
        PressureKind::generating, eps, n_max,
        [&](const System& sys, int n) { return g_value(sys, f, eps, n, mode); }, scaffold);
}

std::vector<PressureEstimate> TopologicalReport::all() const
{
    std::vector<PressureEstimate> out;
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        if (i < ball_cover.size()) {
            out.push_back(ball_cover[i].qminus);
            out.push_back(ball_cover[i].qplus);
            out.push_back(ball_cover[i].pcover);
        }
        out.push_back(generating[i]);
        out.push_back(separated[i]);
    }
    out.push_back(consolidated);
    return out;
}

std::vector<double> default_eps_grid(const System& sys, int levels)
{
    double d = sys.diameter();
    if (d <= 0)
        d = 1.0;
    std::vector<double> grid;
    for (int k = 0; k < levels; ++k)
        grid.push_back(std::ldexp(d / 4, -k));
    return grid;
}

void require_one_point_potential(const System& sys, const Potential& f)
{
    if (!sys.has_infinity())
        return;
    double sup = 0.0;
    double tail = 0.0;
    const PointSet& zone = sys.infinity_zone();
    for (PointId x = 0; x < sys.size(); ++x) {
        double v = std::abs(f.core(sys, x));
        sup = std::max(sup, v);
        if (zone.test(x))
            tail = std::max(tail, v);
    }
    if (sup > 0 && tail > 0.5 * sup) {
        std::ostringstream msg;
        msg << "potential is not one-point uniformly continuous: its core reaches " << tail
            << " next to infinity (sup " << sup << "); write it as c + f0 with f0 vanishing at infinity";
        throw ContractError(msg.str());
    }
}

TopologicalReport topological_pressure(const ScaffoldFactory& scaffold, const Potential& f,
                                       std::vector<double> eps_grid, int n_max, const TopologicalOptions& options)
{
    if (eps_grid.empty())
        throw DomainError("topological_pressure: empty radius grid");
    for (double e : eps_grid)
        if (!(e > 0))
            throw DomainError("topological_pressure: radii must be positive");
    std::sort(eps_grid.begin(), eps_grid.end(), std::greater<>());
    eps_grid.erase(std::unique(eps_grid.begin(), eps_grid.end()), eps_grid.end());
    require_one_point_potential(scaffold(1, eps_grid.front()), f);

    TopologicalReport r;
    r.eps_grid = eps_grid;
    const int cover_levels = std::min(options.cover_n_max, n_max);
    bool covers = cover_levels >= 2;
    for (double eps : eps_grid) {
        r.separated.push_back(separated_pressure(scaffold, f, eps, n_max, options.mode));
        r.generating.push_back(generating_pressure(scaffold, f, eps, n_max, options.mode));
        if (covers) {
            System sys = scaffold(cover_levels, eps);
            if (sys.size() > options.cover_max_points) {
                covers = false;
                continue;
            }
            Cover balls = ball_cover(sys, eps).canonical();
            int levels = 1;
            for (Cover acc = balls; levels < cover_levels; ++levels) {
                if (balls.size() * acc.size() > options.cover_max_pairs)
                    break;
                acc = join(sys, balls, preimage(sys, acc, 1)).canonical();
            }
            if (levels < 2)
                continue;
            auto cp = cover_pressure(sys, f, balls, levels, options.mode);
            for (auto* e : {&cp.qminus, &cp.qplus, &cp.pcover})
                e->epsilon = eps;
            r.ball_cover.push_back(std::move(cp));
        }
    }

    std::size_t pick = eps_grid.size() - 1;
    for (std::size_t i = 1; i < eps_grid.size(); ++i) {
        if (std::abs(r.separated[i].extrapolated - r.separated[i - 1].extrapolated) < options.tolerance) {
            pick = i;
            r.converged = true;
            break;
        }
    }
    r.consolidated = r.separated[pick];
    r.consolidated.kind = PressureKind::consolidated;
    r.consolidated_eps = eps_grid[pick];
    return r;
}

Potential iterated_potential(const System& sys, const Potential& f, int k)
{
    if (k < 1)
        throw DomainError("iterated_potential: k must be positive");
    auto sums = birkhoff_sums(sys, f, k);
    const double c = k * f.at_infinity();
    for (auto& s : sums)
        s -= c;
    return Potential::table(std::move(sums), c);
}

CheckReport iterated_system_inequality_check(const System& sys, const Potential& f, const Cover& a, int k,
                                             int n_max, SolverMode mode)
{
    if (k < 1)
        throw DomainError("iterated_system_inequality_check: k must be positive");
    CheckReport rep;
    rep.name = "iterated system";
    System sk = sys.power(k);
    Potential fk = iterated_potential(sys, f, k);
    Cover ak = iterate_cover(sys, a.canonical(), k);
    for (int n = 1; k * n <= n_max; ++n) {
        auto q_base = q_value(sys, f, a, k * n, mode);
        auto p_base = p_value(sys, f, a, k * n, mode);
        auto q_iter = q_value(sk, fk, ak, n, mode);
        auto p_iter = p_value(sk, fk, ak, n, mode);
        auto q_plain = q_value(sk, fk, a, n, mode);
        auto p_plain = p_value(sk, fk, a, n, mode);
        auto rel = [](double x, double y) { return std::abs(std::log(x) - std::log(y)); };
        const double tol = 1e-12;
        double dq = rel(q_iter.value, q_base.value);
        double dp = rel(p_iter.value, p_base.value);
        std::ostringstream line;
        line << "n=" << n << " kn=" << k * n << " |log Q diff|=" << dq << " |log P diff|=" << dp;
        rep.record(dq <= tol && dp <= tol, -std::max(dq, dp), line.str());
        double sq = std::log(q_base.value) - std::log(q_plain.value);
        double sp = std::log(p_base.value) - std::log(p_plain.value);
        std::ostringstream ineq;
        ineq << "n=" << n << " log Q_kn(T) - log Q_n(T^k) = " << sq << ", same for P = " << sp;
        rep.record(sq >= -tol && sp >= -tol, std::min(sq, sp), ineq.str());
    }
    return rep;
}

} // namespace thermo
