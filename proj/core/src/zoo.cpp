#include "thermo/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <Eigen/Dense>

namespace thermo {

namespace {

TransitionMatrix all_ones(int k)
{
    return TransitionMatrix(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), 1));
}

ZooEntry sft_entry(std::string name, int alphabet, TransitionMatrix m, std::string notes)
{
    ZooEntry e;
    e.name = name;
    e.notes = std::move(notes);
    e.scaffold = symbolic_scaffold(alphabet, m, name);
    e.extension = [](const System&) { return std::optional<ExtensionRecipe>{}; };
    e.sft = std::make_pair(alphabet, std::move(m));
    return e;
}

struct Perron {
    double lambda = 0.0;
    Eigen::VectorXd right;
    Eigen::VectorXd left;
};

bool irreducible(const Eigen::MatrixXd& l)
{
    const auto k = l.rows();
    for (Eigen::Index s = 0; s < k; ++s) {
        std::vector<bool> seen(static_cast<std::size_t>(k), false);
        std::vector<Eigen::Index> stack{s};
        seen[static_cast<std::size_t>(s)] = true;
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            for (Eigen::Index v = 0; v < k; ++v)
                if (l(u, v) > 0 && !seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = true;
                    stack.push_back(v);
                }
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end())
            return false;
    }
    return true;
}

// Power iteration on L + I, which has the same Perron vectors and a strictly
// dominant eigenvalue even when L is periodic.
Eigen::VectorXd power_vector(const Eigen::MatrixXd& m, double& lambda)
{
    const auto k = m.rows();
    Eigen::VectorXd v = Eigen::VectorXd::Ones(k) / std::sqrt(static_cast<double>(k));
    double prev = 0.0;
    for (int it = 0; it < 1000000; ++it) {
        Eigen::VectorXd w = m * v;
        double rq = v.dot(w);
        w.normalize();
        double change = (w - v).lpNorm<Eigen::Infinity>();
        v = w;
        if (it > 0 && std::abs(rq - prev) < 1e-12 && change < 1e-14) {
            lambda = rq;
            return v;
        }
        prev = rq;
    }
    throw DomainError("power iteration did not converge");
}

Perron perron(const Eigen::MatrixXd& l)
{
    if (!irreducible(l))
        throw DomainError("transfer matrix is reducible; the oracle is undefined");
    Eigen::MatrixXd shifted = l + Eigen::MatrixXd::Identity(l.rows(), l.cols());
    Perron p;
    double mu = 0.0;
    p.right = power_vector(shifted, mu);
    p.lambda = mu - 1.0;
    double mu_left = 0.0;
    p.left = power_vector(shifted.transpose(), mu_left);
    return p;
}

Eigen::MatrixXd to_eigen(const TransferMatrix& t)
{
    const auto k = static_cast<Eigen::Index>(t.states.size());
    Eigen::MatrixXd l(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            l(i, j) = t.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return l;
}

} // namespace

System translation_on_z(int m)
{
    if (m < 1)
        throw DomainError("translation_on_z: M must be positive");
    std::vector<std::vector<double>> coords;
    std::vector<PointId> next;
    std::vector<double> inf_dist;
    std::vector<double> proj(static_cast<std::size_t>(2 * m + 1), 0.0);
    for (int v = -m; v <= m; ++v) {
        coords.push_back({static_cast<double>(v)});
        next.push_back(static_cast<PointId>(v < m ? v + 1 + m : 2 * m));
        inf_dist.push_back(1.0 / (1.0 + std::abs(v)));
    }
    proj.back() = 1.0 / ((m + 1.0) * (m + 2.0));
    auto metric = [](std::span<const double> a, std::span<const double> b) {
        auto g = [](double v) { return v == 0 ? 0.0 : std::copysign(1.0 - 1.0 / (1.0 + std::abs(v)), v); };
        double d = std::abs(g(a[0]) - g(b[0]));
        return std::min(d, 2.0 - d);
    };
    return System::sampled(std::move(coords), std::move(next), metric, std::move(inf_dist), std::move(proj),
                           "translation-Z");
}

System doubling_map(int digits)
{
    if (digits < 2 || digits > 20)
        throw DomainError("doubling_map: digits must be in 2..20");
    const std::uint64_t period = (std::uint64_t{1} << digits) - 1;
    std::vector<std::vector<double>> coords;
    std::vector<PointId> next;
    std::vector<Word> words;
    for (std::uint64_t k = 0; k < period; ++k) {
        coords.push_back({static_cast<double>(k) / static_cast<double>(period)});
        next.push_back(static_cast<PointId>((2 * k) % period));
        Word w(static_cast<std::size_t>(digits));
        for (int i = 0; i < digits; ++i)
            w[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((k >> (digits - 1 - i)) & 1U);
        words.push_back(std::move(w));
    }
    auto metric = [](std::span<const double> a, std::span<const double> b) {
        double d = std::abs(a[0] - b[0]);
        return std::min(d, 1.0 - d);
    };
    auto sys = System::sampled(std::move(coords), std::move(next), metric, std::nullopt, {}, "doubling-map");
    return sys.with_coding(std::move(words), 2);
}

Potential bump_potential(double height, double width, double c)
{
    if (!(width > 0))
        throw DomainError("bump_potential: width must be positive");
    std::ostringstream label;
    label << "bump(" << height << "," << width << ")";
    return Potential::on_coordinate(
        [height, width](double m) { return height * std::max(0.0, 1.0 - std::abs(m) / width); }, c, label.str());
}

std::vector<std::string> zoo_names()
{
    return {"full-2-shift", "full-3-shift", "golden-mean", "doubling-map", "translation-Z", "fiber-example"};
}

ZooEntry zoo_entry(const std::string& name, const ZooParams& params)
{
    if (name == "full-2-shift")
        return sft_entry(name, 2, all_ones(2), "Full shift on {0,1}; cyclic words of depth n + k.");
    if (name == "full-3-shift") {
        auto e = sft_entry(name, 3, all_ones(3), "Full shift on {0,1,2}; cyclic words of depth n + k.");
        e.default_eps = {0.3};
        return e;
    }
    if (name == "golden-mean")
        return sft_entry(name, 2, {{1, 1}, {1, 0}}, "SFT forbidding 11; entropy log of the golden ratio.");
    if (name == "doubling-map") {
        ZooEntry e;
        e.name = name;
        e.notes = "x -> 2x mod 1 on the periodic points k/(2^L - 1) with the circle metric; "
                  "each point carries its L binary digits. L is capped, so large n saturates.";
        const int margin = params.doubling_margin;
        const int cap = params.doubling_max_digits;
        e.scaffold = [margin, cap](int n, double eps) {
            return doubling_map(std::min(scaffold_depth(n, eps) + margin, cap));
        };
        e.extension = [](const System&) { return std::optional<ExtensionRecipe>{}; };
        e.sft = std::make_pair(2, all_ones(2));
        return e;
    }
    if (name == "translation-Z") {
        ZooEntry e;
        e.name = name;
        std::ostringstream notes;
        notes << "m -> m + 1 on -" << params.translation_m << ".." << params.translation_m
              << "; both tails meet at infinity; the right end is absorbing (projection error logged). "
                 "No invariant probability on Z.";
        e.notes = notes.str();
        e.scaffold = fixed_scaffold(translation_on_z(params.translation_m));
        e.default_n_max = params.translation_m;
        e.default_eps = default_eps_grid(e.scaffold(1, 0.3), 3);
        e.extension = [](const System& sys) {
            return std::optional<ExtensionRecipe>(ExtensionRecipe{{static_cast<PointId>(sys.size())}});
        };
        e.invariant_probability = false;
        return e;
    }
    if (name == "fiber-example") {
        ZooEntry e;
        e.name = name;
        std::ostringstream notes;
        notes << "translation on -" << params.fiber_m << ".." << params.fiber_m
              << " extended by two points over infinity that S swaps.";
        e.notes = notes.str();
        e.scaffold = fixed_scaffold(translation_on_z(params.fiber_m));
        e.default_n_max = 2 * params.fiber_m;
        e.default_eps = default_eps_grid(e.scaffold(1, 0.3), 3);
        e.extension = [](const System& sys) {
            auto n = static_cast<PointId>(sys.size());
            return std::optional<ExtensionRecipe>(ExtensionRecipe{{n + 1, n}});
        };
        e.invariant_probability = false;
        return e;
    }
    throw DomainError("unknown zoo system '" + name + "'");
}

ZooEntry custom_sft_entry(std::string name, int alphabet, TransitionMatrix transitions)
{
    if (alphabet < 1 || alphabet > 255 || transitions.size() != static_cast<std::size_t>(alphabet))
        throw DomainError("custom SFT: the transition matrix must be k x k with 1 <= k <= 255");
    for (const auto& row : transitions) {
        if (row.size() != transitions.size())
            throw DomainError("custom SFT: the transition matrix must be square");
        for (int v : row)
            if (v != 0 && v != 1)
                throw DomainError("custom SFT: transition entries must be 0 or 1");
    }
    std::string notes = "user-supplied SFT on " + std::to_string(alphabet) + " symbols";
    return sft_entry(std::move(name), alphabet, std::move(transitions), std::move(notes));
}

ZooEntry custom_sampled_entry(System sys, std::optional<ExtensionRecipe> recipe)
{
    ZooEntry e;
    e.name = sys.name();
    e.notes = "user-supplied sampled scaffold with " + std::to_string(sys.size()) + " points";
    e.default_eps = default_eps_grid(sys, 3);
    e.scaffold = fixed_scaffold(sys);
    e.extension = [recipe](const System&) { return recipe; };
    return e;
}

std::string describe(const ZooEntry& entry)
{
    std::ostringstream out;
    out << "name: " << entry.name << "\n";
    out << "notes: " << entry.notes << "\n";
    if (entry.sft) {
        out << "alphabet: " << entry.sft->first << "\n";
        out << "transitions:";
        for (const auto& row : entry.sft->second) {
            out << " [";
            for (std::size_t j = 0; j < row.size(); ++j)
                out << (j ? " " : "") << row[j];
            out << "]";
        }
        out << "\n";
        out << "oracle: transfer-matrix pressure, Gibbs-Markov measure\n";
    } else {
        out << "oracle: none\n";
    }
    System probe = entry.scaffold(1, 0.3);
    out << "compact: " << (probe.has_infinity() ? "no" : "yes") << "\n";
    out << "invariant probability: " << (entry.invariant_probability ? "yes" : "none") << "\n";
    out << "scaffold points (n=1, eps=0.3): " << probe.size() << "\n";
    return out.str();
}

ExtensionFactory extension_factory(const ZooEntry& entry)
{
    return [entry](int n, double eps) {
        System sys = entry.scaffold(n, eps);
        return extend_system(sys, entry.extension(sys));
    };
}

TransferMatrix transfer_matrix(int alphabet, const TransitionMatrix& transitions, const Potential& f)
{
    if (alphabet < 1 || transitions.size() != static_cast<std::size_t>(alphabet))
        throw DomainError("transfer_matrix: transition matrix does not match the alphabet");
    CylinderForm form;
    if (f.cylinder_form()) {
        form = *f.cylinder_form();
        if (form.alphabet != alphabet)
            throw DomainError("transfer_matrix: potential alphabet differs");
    } else if (f.core_is_zero()) {
        form = CylinderForm{alphabet, 1, std::vector<double>(static_cast<std::size_t>(alphabet), 0.0)};
    } else {
        throw DomainError("transfer_matrix: potential is not locally constant");
    }
    const double c = f.at_infinity();
    const int s = std::max(1, form.depth - 1);

    // Admissible words of length s.
    TransferMatrix t;
    std::vector<Word> frontier;
    for (int a = 0; a < alphabet; ++a)
        frontier.push_back(Word{static_cast<std::uint8_t>(a)});
    for (int len = 1; len < s; ++len) {
        std::vector<Word> grown;
        for (const auto& w : frontier)
            for (int a = 0; a < alphabet; ++a)
                if (transitions[w.back()][static_cast<std::size_t>(a)]) {
                    Word x = w;
                    x.push_back(static_cast<std::uint8_t>(a));
                    grown.push_back(std::move(x));
                }
        frontier.swap(grown);
    }
    std::sort(frontier.begin(), frontier.end());
    t.states = frontier;
    const std::size_t k = t.states.size();
    t.entries.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const Word& u = t.states[i];
            const Word& v = t.states[j];
            if (!std::equal(u.begin() + 1, u.end(), v.begin()))
                continue;
            if (!transitions[u.back()][v.back()])
                continue;
            Word w = u;
            w.push_back(v.back());
            t.entries[i][j] = std::exp(form.at(w) + c);
        }
    return t;
}

double transfer_matrix_pressure(int alphabet, const TransitionMatrix& transitions, const Potential& f)
{
    return std::log(perron(to_eigen(transfer_matrix(alphabet, transitions, f))).lambda);
}

double markov_entropy(const MarkovMeasure& m)
{
    double h = 0.0;
    const auto& p = m.p();
    for (std::size_t i = 0; i < p.size(); ++i)
        for (double v : p[i])
            if (v > 0)
                h -= m.pi()[i] * v * std::log(v);
    return h;
}

MarkovMeasure gibbs_markov_measure(int alphabet, const TransitionMatrix& transitions, const Potential& f)
{
    auto t = transfer_matrix(alphabet, transitions, f);
    auto l = to_eigen(t);
    auto pf = perron(l);
    const std::size_t k = t.states.size();
    std::vector<std::vector<double>> p(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            p[i][j] = t.entries[i][j] * pf.right(static_cast<Eigen::Index>(j)) /
                      (pf.lambda * pf.right(static_cast<Eigen::Index>(i)));
            row += p[i][j];
        }
        for (auto& v : p[i])
            v /= row;
    }
    return MarkovMeasure::from_chain(alphabet, t.states, std::move(p));
}

} // namespace thermo
