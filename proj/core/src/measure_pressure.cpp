#include "thermo/measure_pressure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <Eigen/Dense>

namespace thermo {

namespace {

double plogp(double m)
{
    return m > 0 ? -m * std::log(m) : 0.0;
}

std::vector<double> cell_masses(const FiniteMeasure& mu, const Partition& c)
{
    if (mu.size() != c.universe())
        throw DomainError("measure and partition live on different scaffolds");
    std::vector<double> m(c.size(), 0.0);
    for (PointId x = 0; x < mu.size(); ++x)
        m[c.label(x)] += mu.weight(x);
    return m;
}

double entropy_of(const std::vector<double>& masses)
{
    double h = 0.0;
    for (double m : masses)
        h += plogp(m);
    return h;
}

EntropySequence finish_sequence(std::vector<double> entropies)
{
    EntropySequence s;
    s.entropies = std::move(entropies);
    double best = HUGE_VAL;
    for (std::size_t i = 0; i < s.entropies.size(); ++i) {
        double avg = s.entropies[i] / static_cast<double>(i + 1);
        s.values.push_back(avg);
        best = std::min(best, avg);
        if (i > 0)
            best = std::min(best, s.entropies[i] - s.entropies[i - 1]);
    }
    s.extrapolated = s.entropies.empty() ? 0.0 : best;
    return s;
}

double form_sum(const CylinderForm& form, const Word& w, std::size_t start, int n)
{
    double s = 0.0;
    Word window(static_cast<std::size_t>(form.depth));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < form.depth; ++i)
            window[static_cast<std::size_t>(i)] = w[start + static_cast<std::size_t>(j + i)];
        s += form.at(window);
    }
    return s;
}

} // namespace

FiniteMeasure::FiniteMeasure(std::vector<double> weights) : weights_(std::move(weights))
{
    total_ = 0.0;
    for (double w : weights_) {
        if (!(w >= 0) || !std::isfinite(w))
            throw DomainError("measure weights must be finite and nonnegative");
        total_ += w;
    }
    if (total_ > 1 + 1e-12)
        throw DomainError("measure has total mass above 1");
}

FiniteMeasure FiniteMeasure::zero(std::size_t size)
{
    return FiniteMeasure(std::vector<double>(size, 0.0));
}

FiniteMeasure FiniteMeasure::point_mass(std::size_t size, PointId x, double mass)
{
    if (x >= size)
        throw DomainError("point mass outside the scaffold");
    std::vector<double> w(size, 0.0);
    w[x] = mass;
    return FiniteMeasure(std::move(w));
}

FiniteMeasure FiniteMeasure::uniform(std::size_t size)
{
    if (size == 0)
        throw DomainError("uniform measure on an empty scaffold");
    return FiniteMeasure(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

double FiniteMeasure::mass(const PointSet& s) const
{
    if (s.size() != size())
        throw DomainError("set and measure live on different scaffolds");
    double m = 0.0;
    for (auto x = s.find_first(); x != PointSet::npos; x = s.find_next(x))
        m += weights_[x];
    return m;
}

FiniteMeasure FiniteMeasure::scaled(double alpha) const
{
    if (!(alpha >= 0))
        throw DomainError("scaling factor must be nonnegative");
    auto w = weights_;
    for (auto& v : w)
        v *= alpha;
    return FiniteMeasure(std::move(w));
}

FiniteMeasure FiniteMeasure::pushforward(const System& sys) const
{
    if (sys.size() != size())
        throw DomainError("measure and system live on different scaffolds");
    std::vector<double> w(size(), 0.0);
    for (PointId x = 0; x < size(); ++x)
        w[sys.apply(x)] += weights_[x];
    FiniteMeasure out;
    out.weights_ = std::move(w);
    out.total_ = total_;
    return out;
}

double FiniteMeasure::invariance_defect(const System& sys) const
{
    auto pushed = pushforward(sys);
    double d = 0.0;
    for (PointId x = 0; x < size(); ++x)
        d += std::abs(weights_[x] - pushed.weights_[x]);
    return d;
}

MarkovMeasure::MarkovMeasure(int alphabet, std::vector<Word> states, std::vector<std::vector<double>> p,
                             std::vector<double> pi)
    : alphabet_(alphabet), states_(std::move(states)), p_(std::move(p)), pi_(std::move(pi))
{
    const std::size_t k = states_.size();
    if (alphabet_ < 1 || k == 0)
        throw DomainError("Markov measure: empty state space");
    const std::size_t block = states_.front().size();
    if (block == 0)
        throw DomainError("Markov measure: empty state word");
    for (const auto& s : states_) {
        if (s.size() != block)
            throw DomainError("Markov measure: states must have equal length");
        for (auto c : s)
            if (c >= alphabet_)
                throw DomainError("Markov measure: state symbol outside the alphabet");
    }
    if (p_.size() != k || pi_.size() != k)
        throw DomainError("Markov measure: P and pi must match the number of states");
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        if (p_[i].size() != k)
            throw DomainError("Markov measure: P is not square");
        double row = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            double v = p_[i][j];
            if (!(v >= 0))
                throw DomainError("Markov measure: negative transition probability");
            bool overlap = std::equal(states_[i].begin() + 1, states_[i].end(), states_[j].begin());
            if (v > 0 && !overlap)
                throw DomainError("Markov measure: transition between non-overlapping blocks");
            row += v;
        }
        if (std::abs(row - 1.0) > 1e-12)
            throw DomainError("Markov measure: row " + std::to_string(i) + " does not sum to 1");
        if (!(pi_[i] >= 0))
            throw DomainError("Markov measure: negative stationary entry");
        total += pi_[i];
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw DomainError("Markov measure: pi does not sum to 1");
    for (std::size_t j = 0; j < k; ++j) {
        double v = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            v += pi_[i] * p_[i][j];
        if (std::abs(v - pi_[j]) > 1e-12)
            throw DomainError("Markov measure: pi is not stationary");
    }
}

MarkovMeasure MarkovMeasure::bernoulli(std::vector<double> p)
{
    const std::size_t k = p.size();
    std::vector<Word> states;
    for (std::size_t i = 0; i < k; ++i)
        states.push_back(Word{static_cast<std::uint8_t>(i)});
    std::vector<std::vector<double>> rows(k, p);
    return MarkovMeasure(static_cast<int>(k), std::move(states), std::move(rows), std::move(p));
}

MarkovMeasure MarkovMeasure::from_chain(int alphabet, std::vector<Word> states, std::vector<std::vector<double>> p)
{
    const auto k = static_cast<Eigen::Index>(p.size());
    if (k == 0)
        throw DomainError("Markov measure: empty chain");
    // Solve pi (P - I) = 0 with sum(pi) = 1 as a least-squares system.
    Eigen::MatrixXd a(k + 1, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) {
            if (static_cast<Eigen::Index>(p[static_cast<std::size_t>(j)].size()) != k)
                throw DomainError("Markov measure: P is not square");
            a(i, j) = p[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] - (i == j ? 1.0 : 0.0);
        }
    a.row(k).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(k + 1);
    b(k) = 1.0;
    Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
    std::vector<double> pi(static_cast<std::size_t>(k));
    double total = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
        pi[static_cast<std::size_t>(i)] = std::max(0.0, x(i));
        total += pi[static_cast<std::size_t>(i)];
    }
    for (auto& v : pi)
        v /= total;
    return MarkovMeasure(alphabet, std::move(states), std::move(p), std::move(pi));
}

std::vector<std::pair<Word, double>> MarkovMeasure::cylinder_masses(int length) const
{
    if (length < 1)
        throw DomainError("cylinder_masses: length must be positive");
    const std::size_t block = states_.front().size();
    const std::size_t full = std::max<std::size_t>(block, static_cast<std::size_t>(length));
    std::map<Word, std::size_t> index;
    for (std::size_t i = 0; i < states_.size(); ++i)
        index.emplace(states_[i], i);

    std::map<Word, double> out;
    struct Frame {
        Word word;
        std::size_t state;
        double mass;
    };
    std::vector<Frame> stack;
    for (std::size_t i = 0; i < states_.size(); ++i)
        if (pi_[i] > 0)
            stack.push_back({states_[i], i, pi_[i]});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (f.word.size() == full) {
            Word key(f.word.begin(), f.word.begin() + length);
            out[key] += f.mass;
            continue;
        }
        for (std::size_t j = 0; j < states_.size(); ++j) {
            double pr = p_[f.state][j];
            if (pr <= 0)
                continue;
            Word w = f.word;
            w.push_back(states_[j].back());
            stack.push_back({std::move(w), j, f.mass * pr});
        }
    }
    return {out.begin(), out.end()};
}

double MarkovMeasure::cylinder_mass(const Word& w) const
{
    if (w.empty())
        return 1.0;
    double m = 0.0;
    for (const auto& [word, mass] : cylinder_masses(static_cast<int>(w.size())))
        if (word == w)
            m += mass;
    return m;
}

double integral(const System& sys, const Potential& f, const FiniteMeasure& mu)
{
    if (mu.size() != sys.size())
        throw DomainError("integral: measure lives on another scaffold");
    double s = 0.0;
    for (PointId x = 0; x < mu.size(); ++x)
        if (mu.weight(x) != 0)
            s += mu.weight(x) * f(sys, x);
    return s;
}

double integral(const Potential& f, const MarkovMeasure& mu)
{
    if (!f.cylinder_form())
        return f.at_infinity();
    const auto& form = *f.cylinder_form();
    if (form.alphabet != mu.alphabet())
        throw DomainError("integral: potential and measure use different alphabets");
    double s = 0.0;
    for (const auto& [w, m] : mu.cylinder_masses(form.depth))
        s += m * form.at(w);
    return s + f.at_infinity();
}

double partition_entropy(const System& sys, const FiniteMeasure& mu, const Partition& c)
{
    if (c.universe() != sys.size())
        throw DomainError("partition_entropy: partition lives on another scaffold");
    return entropy_of(cell_masses(mu, c));
}

double conditional_entropy(const System& sys, const FiniteMeasure& mu, const Partition& c, const Partition& d)
{
    if (c.universe() != sys.size() || d.universe() != sys.size())
        throw DomainError("conditional_entropy: partitions live on another scaffold");
    auto dm = cell_masses(mu, d);
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> joint;
    for (PointId x = 0; x < mu.size(); ++x)
        if (mu.weight(x) > 0)
            joint[{c.label(x), d.label(x)}] += mu.weight(x);
    double h = 0.0;
    for (const auto& [key, m] : joint)
        if (m > 0 && dm[key.second] > 0)
            h += m * std::log(dm[key.second] / m);
    return h;
}

EntropySequence dynamic_partition_entropy(const System& sys, const FiniteMeasure& mu, const Partition& c,
                                          int n_max, double defect_tolerance)
{
    if (n_max < 1)
        throw DomainError("dynamic_partition_entropy: n_max must be positive");
    double defect = mu.invariance_defect(sys);
    if (defect > defect_tolerance) {
        std::ostringstream msg;
        msg << "measure is not invariant: defect " << defect << " exceeds " << defect_tolerance;
        throw ContractError(msg.str());
    }
    std::vector<double> h;
    for (int n = 1; n <= n_max; ++n)
        h.push_back(partition_entropy(sys, mu, iterate_partition(sys, c, n)));
    return finish_sequence(std::move(h));
}

EntropySequence dynamic_partition_entropy(const MarkovMeasure& mu, int depth, int n_max, int step)
{
    if (depth < 1 || n_max < 1 || step < 1)
        throw DomainError("dynamic_partition_entropy: depth, n_max and step must be positive");
    std::vector<double> h;
    for (int n = 1; n <= n_max; ++n) {
        double e = 0.0;
        for (const auto& [w, m] : mu.cylinder_masses(depth + step * (n - 1)))
            e += plogp(m);
        h.push_back(e);
    }
    return finish_sequence(std::move(h));
}

AdmissibleRefinement admissible_refinement(const System& sys, const FiniteMeasure& mu, const Partition& c,
                                           double delta)
{
    if (!(delta > 0))
        throw DomainError("admissible_refinement: delta must be positive");
    if (c.universe() != sys.size() || mu.size() != sys.size())
        throw DomainError("admissible_refinement: scaffold mismatch");
    AdmissibleRefinement out;
    const auto n = static_cast<double>(std::max<std::size_t>(c.nonempty_count(), 2));
    out.per_member_budget = delta / (n * std::log(n));
    const PointSet& zone = sys.infinity_zone();

    // K_0 = C_0 u zone; K_j = C_j \ zone, empty cells dropped.
    std::vector<std::uint32_t> raw(sys.size());
    for (PointId x = 0; x < sys.size(); ++x) {
        raw[x] = zone.test(x) ? 0 : c.label(x);
        if (zone.test(x) && c.label(x) != 0) {
            out.moved_mass += mu.weight(x);
            out.radius = std::max(out.radius, sys.infinity_distance(x));
        }
    }
    std::vector<std::uint32_t> remap(c.size(), 0);
    std::vector<bool> used(c.size(), false);
    for (auto l : raw)
        used[l] = true;
    std::uint32_t next = 1;
    for (std::size_t l = 1; l < c.size(); ++l)
        if (used[l])
            remap[l] = next++;
    for (auto& l : raw)
        l = remap[l];
    out.partition = Partition(std::move(raw), next);
    return out;
}

double ks_entropy(const System& sys, const FiniteMeasure& mu, const std::vector<Partition>& family,
                  const KsOptions& options)
{
    if (family.empty())
        throw DomainError("ks_entropy: empty partition family");
    double best = 0.0;
    for (const auto& p : family) {
        const Partition* use = &p;
        Partition refined;
        if (sys.has_infinity() && !p.admissible(sys)) {
            refined = admissible_refinement(sys, mu, p, options.delta).partition;
            use = &refined;
        }
        auto seq = dynamic_partition_entropy(sys, mu, *use, options.n_max, options.defect_tolerance);
        best = std::max(best, seq.extrapolated);
    }
    return best;
}

double ks_entropy(const MarkovMeasure& mu, const std::vector<int>& depths, int n_max)
{
    if (depths.empty())
        throw DomainError("ks_entropy: empty depth list");
    double best = 0.0;
    for (int d : depths)
        best = std::max(best, dynamic_partition_entropy(mu, d, n_max).extrapolated);
    return best;
}

double measure_pressure(const System& sys, const FiniteMeasure& mu, const Potential& f,
                        const std::vector<Partition>& family, const KsOptions& options)
{
    return ks_entropy(sys, mu, family, options) + integral(sys, f, mu);
}

double measure_pressure(const MarkovMeasure& mu, const Potential& f, const std::vector<int>& depths, int n_max)
{
    return ks_entropy(mu, depths, n_max) + integral(f, mu);
}

std::vector<Partition> cylinder_family(const System& sys, int max_depth)
{
    std::vector<Partition> out;
    for (int d = 1; d <= max_depth; ++d)
        out.push_back(Partition::cylinders(sys, d));
    return out;
}

CheckReport iterated_measure_pressure_check(const MarkovMeasure& mu, const Potential& f, int k, int n_max,
                                            double tolerance)
{
    if (k < 1)
        throw DomainError("iterated_measure_pressure_check: k must be positive");
    CheckReport rep;
    rep.name = "iterated measure pressure";
    const int depth = mu.block();
    double base = dynamic_partition_entropy(mu, depth, n_max).extrapolated + integral(f, mu);
    double iterated = dynamic_partition_entropy(mu, std::max(k, depth), n_max, k).extrapolated + k * integral(f, mu);
    double diff = std::abs(iterated - k * base);
    std::ostringstream line;
    line << "k=" << k << " P(T^k,f_k)=" << iterated << " k P(T,f)=" << k * base;
    rep.record(diff <= tolerance, -diff, line.str());
    return rep;
}

CheckReport upper_bound_inequality_check(const System& sys, const FiniteMeasure& mu, const Potential& f,
                                         const Partition& c, int n_max)
{
    CheckReport rep;
    rep.name = "measure pressure upper bound";
    const double f_int = integral(sys, f, mu);
    for (int n = 1; n <= n_max; ++n) {
        Partition cn = iterate_partition(sys, c, n);
        auto fn = birkhoff_sums(sys, f, n);
        std::vector<double> sup(cn.size(), -HUGE_VAL);
        for (PointId x = 0; x < sys.size(); ++x)
            sup[cn.label(x)] = std::max(sup[cn.label(x)], fn[x]);
        double total = 0.0;
        for (double s : sup)
            if (s > -HUGE_VAL)
                total += std::exp(s);
        double lhs = f_int + partition_entropy(sys, mu, cn) / n;
        double rhs = std::log(total) / n;
        std::ostringstream line;
        line << "n=" << n << " lhs=" << lhs << " rhs=" << rhs;
        rep.record(lhs <= rhs + 1e-12, rhs - lhs, line.str());
    }
    return rep;
}

CheckReport upper_bound_inequality_check(const MarkovMeasure& mu, const Potential& f, int depth, int n_max)
{
    CheckReport rep;
    rep.name = "measure pressure upper bound";
    std::optional<CylinderForm> form = f.cylinder_form();
    if (form && form->depth > depth)
        throw DomainError("upper_bound_inequality_check: potential depends on more symbols than the partition");
    const double f_int = integral(f, mu);
    for (int n = 1; n <= n_max; ++n) {
        // Cells of C^n are words of length depth + n - 1; only cells carrying
        // mass enter, which can only shrink the right-hand side.
        double total = 0.0;
        double h = 0.0;
        for (const auto& [w, m] : mu.cylinder_masses(depth + n - 1)) {
            double fn = n * f.at_infinity() + (form ? form_sum(*form, w, 0, n) : 0.0);
            total += std::exp(fn);
            h += plogp(m);
        }
        double lhs = f_int + h / n;
        double rhs = std::log(total) / n;
        std::ostringstream line;
        line << "n=" << n << " lhs=" << lhs << " rhs=" << rhs;
        rep.record(lhs <= rhs + 1e-12, rhs - lhs, line.str());
    }
    return rep;
}

CheckReport conditional_entropy_bound_check(const System& sys, const FiniteMeasure& mu, const Partition& c,
                                            const Partition& d, int n_max)
{
    CheckReport rep;
    rep.name = "conditional entropy estimate";
    const double hcd = conditional_entropy(sys, mu, c, d);
    for (int n = 1; n <= n_max; ++n) {
        double lhs = partition_entropy(sys, mu, iterate_partition(sys, c, n)) / n;
        double rhs = partition_entropy(sys, mu, iterate_partition(sys, d, n)) / n + hcd;
        std::ostringstream line;
        line << "n=" << n << " (1/n)H(C^n)=" << lhs << " (1/n)H(D^n)+H(C|D)=" << rhs;
        rep.record(lhs <= rhs + 1e-12, rhs - lhs, line.str());
    }
    return rep;
}

CheckReport inside_partition_bound_check(const System& sys, const FiniteMeasure& mu, const Partition& c,
                                         const Partition& k)
{
    CheckReport rep;
    rep.name = "conditional entropy from inside";
    // Every member K_j, j >= 1, must sit inside one member of C.
    std::vector<std::int64_t> host(k.size(), -1);
    for (PointId x = 0; x < sys.size(); ++x) {
        auto l = k.label(x);
        if (l == 0)
            continue;
        if (host[l] == -1)
            host[l] = c.label(x);
        else if (host[l] != static_cast<std::int64_t>(c.label(x)))
            throw DomainError("inside_partition_bound_check: a member of K straddles two members of C");
    }
    PointSet k0 = k.member(sys, 0);
    double m0 = mu.mass(k0);
    double h = conditional_entropy(sys, mu, c, k);
    double inner = 0.0;
    if (m0 > 0) {
        std::vector<double> masses(c.size(), 0.0);
        for (auto x = k0.find_first(); x != PointSet::npos; x = k0.find_next(x))
            masses[c.label(static_cast<PointId>(x))] += mu.weight(static_cast<PointId>(x)) / m0;
        inner = m0 * entropy_of(masses);
    }
    const auto n = static_cast<double>(c.nonempty_count());
    double bound = m0 * std::log(n);
    std::ostringstream eq;
    eq << "H(C|K)=" << h << " mu(K0) H(C|K0)=" << inner;
    rep.record(std::abs(h - inner) <= 1e-12, -std::abs(h - inner), eq.str());
    std::ostringstream le;
    le << "H(C|K)=" << h << " mu(K0) log n=" << bound;
    rep.record(h <= bound + 1e-12, bound - h, le.str());
    return rep;
}

} // namespace thermo
