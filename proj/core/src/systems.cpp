#include "thermo/systems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermo/cover_algebra.hpp"

namespace thermo {

const char* to_string(Bound b)
{
    switch (b) {
    case Bound::exact: return "exact";
    case Bound::upper: return "upper";
    case Bound::lower: return "lower";
    }
    return "?";
}

namespace {

// Enumerates words of length `depth` whose cyclic closure is admissible.
std::vector<Word> cyclic_words(int alphabet, const TransitionMatrix& m, int depth)
{
    std::vector<Word> out;
    Word w(static_cast<std::size_t>(depth), 0);
    auto allowed = [&](int a, int b) { return m[a][b] != 0; };

    // Depth-first extension, lexicographic order.
    std::function<void(int)> extend = [&](int pos) {
        if (pos == depth) {
            if (depth == 1 ? allowed(w[0], w[0]) : allowed(w[depth - 1], w[0]))
                out.push_back(w);
            return;
        }
        for (int a = 0; a < alphabet; ++a) {
            if (pos > 0 && !allowed(w[pos - 1], a))
                continue;
            w[pos] = static_cast<std::uint8_t>(a);
            extend(pos + 1);
        }
    };
    extend(0);
    return out;
}

int bits_per_symbol(int alphabet)
{
    int bits = 1;
    while ((1 << bits) < alphabet)
        ++bits;
    return bits;
}

std::uint64_t encode(const Word& w, int bits)
{
    std::uint64_t code = 0;
    for (auto s : w)
        code = (code << bits) | s;
    return code;
}

constexpr std::size_t max_scaffold_points = std::size_t{1} << 22;

} // namespace

System System::symbolic(int alphabet, TransitionMatrix transitions, int depth, std::string name)
{
    if (alphabet < 1 || alphabet > 15)
        throw DomainError("symbolic: alphabet must be in 1..15");
    const int bits = bits_per_symbol(alphabet);
    if (depth < 1 || depth * bits > 62)
        throw DomainError("symbolic: depth out of range");
    double estimate = std::pow(static_cast<double>(alphabet), depth);
    if (estimate > 4.0 * static_cast<double>(max_scaffold_points))
        throw DomainError("symbolic: scaffold of depth " + std::to_string(depth) + " is too large");
    if (transitions.size() != static_cast<std::size_t>(alphabet))
        throw DomainError("symbolic: transition matrix has wrong number of rows");
    for (const auto& row : transitions)
        if (row.size() != static_cast<std::size_t>(alphabet))
            throw DomainError("symbolic: transition matrix is not square");

    auto words = cyclic_words(alphabet, transitions, depth);
    if (words.size() > max_scaffold_points)
        throw DomainError("symbolic: scaffold too large");
    if (words.empty())
        throw DomainError("symbolic: no admissible cyclic word of the requested depth");

    std::vector<std::pair<std::uint64_t, PointId>> index;
    index.reserve(words.size());
    for (PointId i = 0; i < words.size(); ++i)
        index.emplace_back(encode(words[i], bits), i);
    std::sort(index.begin(), index.end());

    std::vector<PointId> next(words.size());
    for (PointId i = 0; i < words.size(); ++i) {
        Word r(words[i].begin() + 1, words[i].end());
        r.push_back(words[i][0]);
        auto key = encode(r, bits);
        auto it = std::lower_bound(index.begin(), index.end(), std::make_pair(key, PointId{0}));
        next[i] = it->second;
    }

    System s;
    s.name_ = name.empty() ? "symbolic" : std::move(name);
    s.alphabet_ = alphabet;
    s.depth_ = depth;
    s.prefix_metric_ = true;
    s.next_ = std::make_shared<const std::vector<PointId>>(std::move(next));
    auto shared_words = std::make_shared<const std::vector<Word>>(std::move(words));
    s.words_ = shared_words;
    s.metric_ = [shared_words](PointId x, PointId y) {
        const Word& a = (*shared_words)[x];
        const Word& b = (*shared_words)[y];
        for (std::size_t k = 0; k < a.size(); ++k)
            if (a[k] != b[k])
                return std::ldexp(1.0, -static_cast<int>(k));
        return 0.0;
    };
    s.finish();
    return s;
}

System System::full_shift(int alphabet, int depth)
{
    TransitionMatrix m(alphabet, std::vector<int>(alphabet, 1));
    return symbolic(alphabet, std::move(m), depth, "full-" + std::to_string(alphabet) + "-shift");
}

System System::sampled(std::vector<std::vector<double>> coordinates, std::vector<PointId> next,
                       std::function<double(std::span<const double>, std::span<const double>)> metric,
                       std::optional<std::vector<double>> infinity_distance,
                       std::vector<double> projection_error, std::string name)
{
    if (coordinates.empty())
        throw DomainError("sampled: empty point table");
    if (coordinates.size() != next.size())
        throw DomainError("sampled: point table and map table differ in length");
    for (auto t : next)
        if (t >= next.size())
            throw DomainError("sampled: map table leaves the scaffold");
    if (infinity_distance && infinity_distance->size() != next.size())
        throw DomainError("sampled: infinity_distance has wrong length");
    if (!projection_error.empty() && projection_error.size() != next.size())
        throw DomainError("sampled: projection_error has wrong length");

    System s;
    s.name_ = name.empty() ? "sampled" : std::move(name);
    s.next_ = std::make_shared<const std::vector<PointId>>(std::move(next));
    auto coords = std::make_shared<const std::vector<std::vector<double>>>(std::move(coordinates));
    s.coords_ = coords;
    s.metric_ = [coords, metric = std::move(metric)](PointId x, PointId y) {
        return metric((*coords)[x], (*coords)[y]);
    };
    if (infinity_distance)
        s.infinity_distance_ = std::make_shared<const std::vector<double>>(std::move(*infinity_distance));
    if (!projection_error.empty())
        s.projection_error_ = std::make_shared<const std::vector<double>>(std::move(projection_error));
    s.finish();
    return s;
}

System System::from_metric(std::size_t size, std::vector<PointId> next,
                           std::function<double(PointId, PointId)> metric,
                           std::optional<std::vector<double>> infinity_distance, std::string name)
{
    if (size == 0 || next.size() != size)
        throw DomainError("from_metric: map table must have one entry per point");
    for (auto t : next)
        if (t >= size)
            throw DomainError("from_metric: map table leaves the scaffold");
    System s;
    s.name_ = name.empty() ? "system" : std::move(name);
    s.next_ = std::make_shared<const std::vector<PointId>>(std::move(next));
    s.metric_ = std::move(metric);
    if (infinity_distance) {
        if (infinity_distance->size() != size)
            throw DomainError("from_metric: infinity_distance has wrong length");
        s.infinity_distance_ = std::make_shared<const std::vector<double>>(std::move(*infinity_distance));
    }
    s.finish();
    return s;
}

void System::finish()
{
    PointSet zone(size());
    if (infinity_distance_) {
        const auto& dist = *infinity_distance_;
        double closest = *std::min_element(dist.begin(), dist.end());
        // Finest dyadic radius whose zone is nonempty.
        double delta = 1.0;
        while (delta / 2 > closest && delta > 1e-300)
            delta /= 2;
        while (delta <= closest)
            delta *= 2;
        for (PointId i = 0; i < dist.size(); ++i)
            if (dist[i] < delta)
                zone.set(i);
    }
    zone_ = std::make_shared<const PointSet>(std::move(zone));
    diameter_cache_ = std::make_shared<double>(-1.0);
}

System System::power(int k) const
{
    if (k < 1)
        throw DomainError("power: k must be positive");
    System s = *this;
    std::vector<PointId> next(size());
    for (PointId x = 0; x < size(); ++x)
        next[x] = iterate(x, k);
    s.next_ = std::make_shared<const std::vector<PointId>>(std::move(next));
    if (k > 1) {
        s.name_ = name_ + "^" + std::to_string(k);
        s.prefix_metric_ = false;
    }
    return s;
}

System System::with_coding(std::vector<Word> words, int alphabet) const
{
    if (words.size() != size())
        throw DomainError("with_coding: one word per point is required");
    for (const auto& w : words) {
        if (w.empty())
            throw DomainError("with_coding: empty word");
        for (auto c : w)
            if (c >= alphabet)
                throw DomainError("with_coding: symbol outside the alphabet");
    }
    System s = *this;
    s.alphabet_ = alphabet;
    s.depth_ = static_cast<int>(words.front().size());
    s.words_ = std::make_shared<const std::vector<Word>>(std::move(words));
    s.prefix_metric_ = false;
    return s;
}

void System::check_point(PointId x) const
{
    if (x >= size())
        throw DomainError("point id " + std::to_string(x) + " is not in the scaffold of " + name_);
}

PointId System::apply(PointId x) const
{
    check_point(x);
    return (*next_)[x];
}

PointId System::iterate(PointId x, int steps) const
{
    check_point(x);
    for (int j = 0; j < steps; ++j)
        x = (*next_)[x];
    return x;
}

double System::metric(PointId x, PointId y) const
{
    check_point(x);
    check_point(y);
    return metric_(x, y);
}

double System::infinity_distance(PointId x) const
{
    check_point(x);
    if (!infinity_distance_)
        throw DomainError(name_ + " has no point at infinity");
    return (*infinity_distance_)[x];
}

const Word& System::word(PointId x) const
{
    check_point(x);
    if (!words_)
        throw DomainError(name_ + " carries no symbolic coding");
    return (*words_)[x];
}

std::uint8_t System::symbol(PointId x, std::size_t index) const
{
    const Word& w = word(x);
    return w[index % w.size()];
}

std::span<const double> System::coordinates(PointId x) const
{
    check_point(x);
    if (!coords_)
        throw DomainError(name_ + " has no coordinates");
    return (*coords_)[x];
}

double System::projection_error(PointId x) const
{
    check_point(x);
    return projection_error_ ? (*projection_error_)[x] : 0.0;
}

double System::max_projection_error() const
{
    if (!projection_error_)
        return 0.0;
    return *std::max_element(projection_error_->begin(), projection_error_->end());
}

double System::diameter() const
{
    if (*diameter_cache_ >= 0)
        return *diameter_cache_;
    double d = 0;
    if (prefix_metric_) {
        // Two distinct words disagree first at index 0 iff d = 1.
        d = 0;
        for (PointId x = 1; x < size() && d < 1.0; ++x)
            d = std::max(d, metric_(0, x));
        if (d < 1.0) {
            for (PointId x = 0; x < size(); ++x)
                for (PointId y = x + 1; y < size(); ++y)
                    d = std::max(d, metric_(x, y));
        }
    } else {
        for (PointId x = 0; x < size(); ++x)
            for (PointId y = x + 1; y < size(); ++y)
                d = std::max(d, metric_(x, y));
    }
    *diameter_cache_ = d;
    return d;
}

double CylinderForm::at(const Word& w) const
{
    std::size_t code = 0;
    for (int i = 0; i < depth; ++i)
        code = code * static_cast<std::size_t>(alphabet) + w[static_cast<std::size_t>(i) % w.size()];
    return values[code];
}

Potential Potential::constant(double c)
{
    Potential p;
    p.core_ = [](const System&, PointId) { return 0.0; };
    p.c_ = c;
    p.zero_core_ = true;
    p.label_ = "constant";
    return p;
}

Potential Potential::cylinder(int alphabet, int depth, std::vector<double> values, double c)
{
    std::size_t expected = 1;
    for (int i = 0; i < depth; ++i)
        expected *= static_cast<std::size_t>(alphabet);
    if (alphabet < 1 || depth < 1 || values.size() != expected)
        throw DomainError("cylinder potential needs alphabet^depth values");
    CylinderForm form{alphabet, depth, std::move(values)};
    Potential p;
    p.cylinder_ = form;
    p.core_ = [form](const System& sys, PointId x) {
        if (sys.alphabet() != 0 && sys.alphabet() != form.alphabet)
            throw DomainError("cylinder potential alphabet does not match the system");
        return form.at(sys.word(x));
    };
    p.c_ = c;
    p.zero_core_ = std::all_of(form.values.begin(), form.values.end(), [](double v) { return v == 0.0; });
    p.label_ = "cylinder";
    return p;
}

Potential Potential::indicator(int alphabet, const Word& w, double height)
{
    int depth = static_cast<int>(w.size());
    std::size_t count = 1;
    for (int i = 0; i < depth; ++i)
        count *= static_cast<std::size_t>(alphabet);
    std::vector<double> values(count, 0.0);
    std::size_t code = 0;
    for (auto s : w)
        code = code * static_cast<std::size_t>(alphabet) + s;
    values[code] = height;
    auto p = cylinder(alphabet, depth, std::move(values));
    p.label_ = "indicator";
    return p;
}

Potential Potential::on_coordinate(std::function<double(double)> core, double c, std::string label)
{
    Potential p;
    p.core_ = [core = std::move(core)](const System& sys, PointId x) { return core(sys.coordinates(x)[0]); };
    p.c_ = c;
    p.label_ = label.empty() ? "coordinate" : std::move(label);
    return p;
}

Potential Potential::table(std::vector<double> values, double c)
{
    auto shared = std::make_shared<const std::vector<double>>(std::move(values));
    Potential p;
    p.core_ = [shared](const System& sys, PointId x) {
        sys.check_point(x);
        if (shared->size() != sys.size())
            throw DomainError("table potential size does not match the scaffold");
        return (*shared)[x];
    };
    p.c_ = c;
    p.zero_core_ = std::all_of(shared->begin(), shared->end(), [](double v) { return v == 0.0; });
    p.label_ = "table";
    return p;
}

Potential Potential::from_core(Core core, double c, std::string label)
{
    Potential p;
    p.core_ = std::move(core);
    p.c_ = c;
    p.label_ = label.empty() ? "custom" : std::move(label);
    return p;
}

double Potential::operator()(const System& sys, PointId x) const
{
    return c_ + core_(sys, x);
}

double Potential::core(const System& sys, PointId x) const
{
    return core_(sys, x);
}

Potential Potential::plus_constant(double c) const
{
    Potential p = *this;
    p.c_ += c;
    return p;
}

Potential Potential::scaled(double factor) const
{
    Potential p = *this;
    p.core_ = [core = core_, factor](const System& sys, PointId x) { return factor * core(sys, x); };
    p.c_ *= factor;
    if (p.cylinder_)
        for (auto& v : p.cylinder_->values)
            v *= factor;
    return p;
}

double Potential::tail_oscillation(const System& sys, double delta) const
{
    if (!sys.has_infinity())
        return 0.0;
    double sup = 0.0;
    for (PointId x = 0; x < sys.size(); ++x)
        if (sys.infinity_distance(x) < delta)
            sup = std::max(sup, std::abs(core(sys, x)));
    return sup;
}

double bowen_distance(const System& sys, PointId x, PointId y, int n)
{
    if (n < 1)
        throw DomainError("bowen_distance: n must be positive");
    sys.check_point(x);
    sys.check_point(y);
    double d = 0.0;
    for (int j = 0; j < n; ++j) {
        d = std::max(d, sys.metric(x, y));
        x = sys.apply(x);
        y = sys.apply(y);
    }
    return d;
}

double birkhoff_sum(const System& sys, const Potential& f, PointId x, int n)
{
    if (n < 1)
        throw DomainError("birkhoff_sum: n must be positive");
    sys.check_point(x);
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
        s += f(sys, x);
        x = sys.apply(x);
    }
    return s;
}

std::vector<double> birkhoff_sums(const System& sys, const Potential& f, int n)
{
    if (n < 1)
        throw DomainError("birkhoff_sums: n must be positive");
    std::vector<double> values(sys.size());
    for (PointId x = 0; x < sys.size(); ++x)
        values[x] = f(sys, x);
    // f_n(x) = f(x) + f_{n-1}(Tx), evaluated by repeated composition.
    std::vector<double> sums = values;
    const auto& next = sys.map_table();
    for (int j = 1; j < n; ++j) {
        std::vector<double> shifted(sys.size());
        for (PointId x = 0; x < sys.size(); ++x)
            shifted[x] = values[x] + sums[next[x]];
        sums.swap(shifted);
    }
    return sums;
}

int cylinder_depth_for_radius(double eps)
{
    if (!(eps > 0))
        throw DomainError("radius must be positive");
    int k = 0;
    while (!(std::ldexp(1.0, -k) < eps))
        ++k;
    return k;
}

PointSet ball(const System& sys, PointId center, double eps)
{
    sys.check_point(center);
    PointSet b(sys.size());
    if (sys.prefix_metric()) {
        int k = cylinder_depth_for_radius(eps);
        const Word& c = sys.word(center);
        for (PointId y = 0; y < sys.size(); ++y) {
            const Word& w = sys.word(y);
            bool same = true;
            for (int i = 0; i < k && same; ++i)
                same = w[static_cast<std::size_t>(i) % w.size()] == c[static_cast<std::size_t>(i) % c.size()];
            if (same)
                b.set(y);
        }
        return b;
    }
    for (PointId y = 0; y < sys.size(); ++y)
        if (sys.metric(center, y) < eps)
            b.set(y);
    return b;
}

Cover ball_cover(const System& sys, double eps)
{
    if (!(eps > 0))
        throw DomainError("ball_cover: eps must be positive");
    std::vector<PointSet> members;
    members.reserve(sys.size());
    for (PointId x = 0; x < sys.size(); ++x)
        members.push_back(ball(sys, x, eps));
    return Cover(sys, std::move(members));
}

} // namespace thermo
