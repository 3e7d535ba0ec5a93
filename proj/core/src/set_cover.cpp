#include "thermo/set_cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <tuple>

namespace thermo {

namespace {

constexpr double rel_tol = 1e-12;

bool improves(double candidate, double incumbent)
{
    return candidate < incumbent - rel_tol * std::max(1.0, std::abs(incumbent));
}

struct BudgetExhausted {};

class CoverSearch {
public:
    CoverSearch(std::vector<PointSet> sets, std::vector<double> weights, std::vector<std::size_t> origin,
                std::uint64_t budget)
        : sets_(std::move(sets)), weights_(std::move(weights)), origin_(std::move(origin)), budget_(budget)
    {
        universe_ = sets_.empty() ? 0 : sets_.front().size();
        covering_.assign(universe_, {});
        for (std::size_t s = 0; s < sets_.size(); ++s)
            for (auto e = sets_[s].find_first(); e != PointSet::npos; e = sets_[s].find_next(e))
                covering_[e].push_back(s);
        min_weight_.assign(universe_, 0.0);
        for (std::size_t e = 0; e < universe_; ++e) {
            auto& c = covering_[e];
            std::sort(c.begin(), c.end(), [&](std::size_t a, std::size_t b) {
                return weights_[a] != weights_[b] ? weights_[a] < weights_[b] : a < b;
            });
            min_weight_[e] = weights_[c.front()];
        }
        if (universe_ <= 4096) {
            reach_.assign(universe_, PointSet(universe_));
            for (std::size_t e = 0; e < universe_; ++e)
                for (auto s : covering_[e])
                    reach_[e] |= sets_[s];
        }
    }

    void seed(double value, std::vector<std::size_t> chosen)
    {
        best_ = value;
        best_chosen_ = std::move(chosen);
    }

    // Returns false when the budget ran out.
    bool run()
    {
        PointSet uncovered(universe_);
        uncovered.set();
        std::vector<std::size_t> stack;
        excluded_.assign(sets_.size(), 0);
        try {
            search(uncovered, 0.0, stack);
        } catch (const BudgetExhausted&) {
            return false;
        }
        return true;
    }

    double best() const { return best_; }
    std::vector<std::size_t> best_chosen() const
    {
        std::vector<std::size_t> out;
        for (auto s : best_chosen_)
            out.push_back(origin_[s]);
        std::sort(out.begin(), out.end());
        return out;
    }
    std::uint64_t nodes() const { return nodes_; }

private:
    double lower_bound(const PointSet& uncovered) const
    {
        if (reach_.empty()) {
            double lb = 0.0;
            for (auto e = uncovered.find_first(); e != PointSet::npos; e = uncovered.find_next(e))
                lb = std::max(lb, min_weight_[e]);
            return lb;
        }
        // Elements no two of which share a covering set each need their own set.
        PointSet blocked(universe_);
        double lb = 0.0;
        for (auto e = uncovered.find_first(); e != PointSet::npos; e = uncovered.find_next(e)) {
            if (blocked.test(e))
                continue;
            lb += min_weight_[e];
            blocked |= reach_[e];
        }
        return lb;
    }

    void search(const PointSet& uncovered, double cost, std::vector<std::size_t>& stack)
    {
        if (++nodes_ > budget_)
            throw BudgetExhausted{};
        if (uncovered.none()) {
            if (improves(cost, best_)) {
                best_ = cost;
                best_chosen_ = stack;
            }
            return;
        }
        if (!improves(cost + lower_bound(uncovered), best_))
            return;

        // Branch on the uncovered element with the fewest allowed covering sets.
        std::size_t pick = PointSet::npos;
        std::size_t fewest = static_cast<std::size_t>(-1);
        for (auto e = uncovered.find_first(); e != PointSet::npos; e = uncovered.find_next(e)) {
            std::size_t allowed = 0;
            for (auto s : covering_[e])
                allowed += excluded_[s] ? 0 : 1;
            if (allowed < fewest) {
                fewest = allowed;
                pick = e;
                if (fewest <= 1)
                    break;
            }
        }
        if (fewest == 0)
            return;
        // Branch i takes the i-th set and rules out the earlier ones.
        std::vector<std::size_t> tried;
        for (auto s : covering_[pick]) {
            if (excluded_[s])
                continue;
            stack.push_back(s);
            search(uncovered - sets_[s], cost + weights_[s], stack);
            stack.pop_back();
            excluded_[s] = 1;
            tried.push_back(s);
        }
        for (auto s : tried)
            excluded_[s] = 0;
    }

    std::vector<PointSet> sets_;
    std::vector<double> weights_;
    std::vector<std::size_t> origin_;
    std::uint64_t budget_;
    std::size_t universe_ = 0;
    std::vector<std::vector<std::size_t>> covering_;
    std::vector<double> min_weight_;
    std::vector<PointSet> reach_;
    std::vector<char> excluded_;
    double best_ = 0.0;
    std::vector<std::size_t> best_chosen_;
    std::uint64_t nodes_ = 0;
};

// Exact cover when every set is a cyclic interval of the elements.
struct Arc {
    std::size_t start = 0;
    std::size_t length = 0;
};

std::optional<std::vector<Arc>> as_arcs(const std::vector<PointSet>& sets)
{
    std::vector<Arc> arcs;
    for (const auto& s : sets) {
        const std::size_t m = s.size();
        if (m < 2) {
            arcs.push_back({0, s.count()});
            continue;
        }
        PointSet rot = (s << 1) | (s >> (m - 1));
        if ((s ^ rot).count() > 2)
            return std::nullopt;
        Arc a{0, s.count()};
        if (a.length < m)
            for (std::size_t e = 0; e < m; ++e)
                if (s.test(e) && !s.test((e + m - 1) % m)) {
                    a.start = e;
                    break;
                }
        arcs.push_back(a);
    }
    return arcs;
}

struct Piece {
    std::size_t lo, hi; // window coordinates, half open
    std::size_t set;
};

// Cheapest cover of [0, len) by the pieces; empty when impossible.
std::optional<std::pair<double, std::vector<std::size_t>>> cover_segment(std::vector<Piece> pieces,
                                                                         std::span<const double> weights,
                                                                         std::size_t len)
{
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
        return a.lo != b.lo ? a.lo < b.lo : a.set < b.set;
    });
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> g(len + 1, inf);
    std::vector<std::size_t> via(len + 1, 0);
    g[0] = 0.0;
    using Entry = std::tuple<double, std::size_t, std::size_t>; // cost, piece index, reach
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    std::size_t next = 0;
    for (std::size_t p = 1; p <= len; ++p) {
        while (next < pieces.size() && pieces[next].lo < p) {
            const auto& pc = pieces[next];
            if (g[pc.lo] < inf)
                open.emplace(g[pc.lo] + weights[pc.set], next, pc.hi);
            ++next;
        }
        while (!open.empty() && std::get<2>(open.top()) < p)
            open.pop();
        if (open.empty())
            return std::nullopt;
        g[p] = std::get<0>(open.top());
        via[p] = std::get<1>(open.top());
    }
    std::vector<std::size_t> chosen;
    for (std::size_t p = len; p > 0; p = pieces[via[p]].lo)
        chosen.push_back(pieces[via[p]].set);
    return std::make_pair(g[len], std::move(chosen));
}

std::optional<std::pair<double, std::vector<std::size_t>>> arc_cover(const std::vector<PointSet>& sets,
                                                                     std::span<const double> weights)
{
    if (sets.empty() || sets.front().size() == 0)
        return std::nullopt;
    auto arcs = as_arcs(sets);
    if (!arcs)
        return std::nullopt;
    const std::size_t m = sets.front().size();
    std::optional<std::pair<double, std::vector<std::size_t>>> best;
    auto offer = [&](double value, std::vector<std::size_t> chosen) {
        if (!best || improves(value, best->first))
            best = std::make_pair(value, std::move(chosen));
    };
    // Some set of an optimal cover holds element 0; fix it and cover the rest.
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (!sets[i].test(0))
            continue;
        const Arc& fixed = (*arcs)[i];
        if (fixed.length == m) {
            offer(weights[i], {i});
            continue;
        }
        const std::size_t ws = (fixed.start + fixed.length) % m;
        const std::size_t len = m - fixed.length;
        std::vector<Piece> pieces;
        for (std::size_t j = 0; j < sets.size(); ++j) {
            const Arc& a = (*arcs)[j];
            if (j == i || a.length == m)
                continue;
            const std::size_t at = (a.start + m - ws) % m;
            if (at < len)
                pieces.push_back({at, std::min(at + a.length, len), j});
            // A set wrapping past the window end also covers its start.
            if (at + a.length > m)
                pieces.push_back({0, std::min(at + a.length - m, len), j});
        }
        auto rest = cover_segment(std::move(pieces), weights, len);
        if (!rest)
            continue;
        rest->second.push_back(i);
        offer(rest->first + weights[i], std::move(rest->second));
    }
    if (best) {
        std::sort(best->second.begin(), best->second.end());
        best->second.erase(std::unique(best->second.begin(), best->second.end()), best->second.end());
        double v = 0.0;
        for (auto s : best->second)
            v += weights[s];
        best->first = v;
    }
    return best;
}

void check_cover_input(std::span<const PointSet> sets, std::span<const double> weights)
{
    if (sets.empty())
        throw DomainError("set cover: no sets");
    if (sets.size() != weights.size())
        throw DomainError("set cover: one weight per set is required");
    PointSet all(sets.front().size());
    for (const auto& s : sets) {
        if (s.size() != all.size())
            throw DomainError("set cover: sets over different universes");
        all |= s;
    }
    if (!all.all())
        throw DomainError("set cover: the sets do not cover the universe");
    for (double w : weights)
        if (!(w >= 0) || !std::isfinite(w))
            throw DomainError("set cover: weights must be finite and nonnegative");
}

} // namespace

SetCoverSolution greedy_set_cover(std::span<const PointSet> sets, std::span<const double> weights)
{
    check_cover_input(sets, weights);
    SetCoverSolution out;
    out.bound = Bound::upper;
    PointSet uncovered(sets.front().size());
    uncovered.set();
    std::vector<bool> used(sets.size(), false);
    while (uncovered.any()) {
        std::size_t pick = sets.size();
        double best_ratio = 0.0;
        for (std::size_t s = 0; s < sets.size(); ++s) {
            if (used[s])
                continue;
            auto gain = (sets[s] & uncovered).count();
            if (gain == 0)
                continue;
            double ratio = weights[s] / static_cast<double>(gain);
            if (pick == sets.size() || ratio < best_ratio) {
                pick = s;
                best_ratio = ratio;
            }
        }
        used[pick] = true;
        out.chosen.push_back(pick);
        out.value += weights[pick];
        uncovered -= sets[pick];
    }
    std::sort(out.chosen.begin(), out.chosen.end());
    return out;
}

SetCoverSolution min_weight_set_cover(std::span<const PointSet> sets, std::span<const double> weights,
                                      SolverMode mode, std::uint64_t node_budget)
{
    check_cover_input(sets, weights);
    if (mode == SolverMode::greedy)
        return greedy_set_cover(sets, weights);

    // Deduplicate: identical sets keep the cheapest (then lowest index) copy.
    std::vector<std::size_t> order;
    for (std::size_t s = 0; s < sets.size(); ++s)
        if (sets[s].any())
            order.push_back(s);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (sets[a] != sets[b])
            return sets[a] < sets[b];
        if (weights[a] != weights[b])
            return weights[a] < weights[b];
        return a < b;
    });
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < order.size(); ++i)
        if (i == 0 || sets[order[i]] != sets[order[i - 1]])
            kept.push_back(order[i]);
    std::sort(kept.begin(), kept.end());

    // Pairwise disjoint family: every set is needed.
    std::size_t total = 0;
    for (auto s : kept)
        total += sets[s].count();
    if (total == sets.front().size()) {
        SetCoverSolution out;
        out.chosen = kept;
        for (auto s : kept)
            out.value += weights[s];
        return out;
    }

    // Alternate two reductions until neither applies:
    //  - drop S when some other T contains S (on the live elements) and costs no more;
    //  - drop element e' when some live e is covered only by sets that also cover e'.
    PointSet live(sets.front().size());
    live.set();
    for (int round = 0; round < 8; ++round) {
        bool changed = false;
        if (kept.size() <= 4096) {
            std::vector<PointSet> proj;
            for (auto s : kept)
                proj.push_back(sets[s] & live);
            std::vector<bool> dead(kept.size(), false);
            for (std::size_t i = 0; i < kept.size(); ++i) {
                for (std::size_t j = 0; j < kept.size() && !dead[i]; ++j) {
                    if (i == j || dead[j])
                        continue;
                    if (weights[kept[j]] <= weights[kept[i]] && proj[i].is_subset_of(proj[j]))
                        dead[i] = true;
                }
            }
            std::vector<std::size_t> alive;
            for (std::size_t i = 0; i < kept.size(); ++i)
                if (!dead[i])
                    alive.push_back(kept[i]);
            changed = alive.size() != kept.size();
            kept.swap(alive);
        }
        const double elems = static_cast<double>(live.count());
        if (elems * elems * static_cast<double>(kept.size()) / 64.0 > 2e8)
            break;
        std::vector<std::size_t> ids;
        for (auto e = live.find_first(); e != PointSet::npos; e = live.find_next(e))
            ids.push_back(e);
        std::vector<PointSet> incidence(ids.size(), PointSet(kept.size()));
        for (std::size_t k = 0; k < kept.size(); ++k)
            for (std::size_t i = 0; i < ids.size(); ++i)
                if (sets[kept[k]].test(ids[i]))
                    incidence[i].set(k);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (!live.test(ids[i]))
                continue;
            for (std::size_t j = 0; j < ids.size(); ++j) {
                if (i == j || !live.test(ids[j]) || !incidence[i].is_subset_of(incidence[j]))
                    continue;
                // Equal incidence keeps the lower id.
                if (incidence[i] == incidence[j] && ids[j] < ids[i])
                    continue;
                live.reset(ids[j]);
                changed = true;
            }
        }
        if (!changed)
            break;
    }

    std::vector<std::size_t> live_ids;
    for (auto e = live.find_first(); e != PointSet::npos; e = live.find_next(e))
        live_ids.push_back(e);
    std::vector<PointSet> reduced_sets;
    std::vector<double> reduced_weights;
    for (auto s : kept) {
        PointSet r(live_ids.size());
        for (std::size_t i = 0; i < live_ids.size(); ++i)
            if (sets[s].test(live_ids[i]))
                r.set(i);
        reduced_sets.push_back(std::move(r));
        reduced_weights.push_back(weights[s]);
    }

    if (auto arcs = arc_cover(reduced_sets, reduced_weights)) {
        SetCoverSolution out;
        out.value = arcs->first;
        for (auto s : arcs->second)
            out.chosen.push_back(kept[s]);
        std::sort(out.chosen.begin(), out.chosen.end());
        return out;
    }

    auto greedy = greedy_set_cover(reduced_sets, reduced_weights);
    CoverSearch search(std::move(reduced_sets), std::move(reduced_weights), kept, node_budget);
    // Seed with the greedy cover shifted by a hair so an equal-cost exact
    // cover found by the search replaces it.
    search.seed(greedy.value * (1 + 4 * rel_tol) + 4 * rel_tol, {});
    bool finished = search.run();

    SetCoverSolution out;
    out.nodes = search.nodes();
    auto found = search.best_chosen();
    if (found.empty() || !finished) {
        bool use_search = !found.empty() && search.best() < greedy.value;
        out.value = use_search ? search.best() : greedy.value;
        if (use_search) {
            out.chosen = found;
        } else {
            for (auto s : greedy.chosen)
                out.chosen.push_back(kept[s]);
            std::sort(out.chosen.begin(), out.chosen.end());
        }
        out.bound = finished ? Bound::exact : Bound::upper;
        return out;
    }
    out.value = search.best();
    out.chosen = found;
    return out;
}

namespace {

class IndependentSearch {
public:
    IndependentSearch(std::vector<PointSet> adjacency, std::vector<double> weights, std::uint64_t budget)
        : adj_(std::move(adjacency)), w_(std::move(weights)), budget_(budget)
    {
    }

    double clique_cover_bound(PointSet rest) const
    {
        double bound = 0.0;
        for (auto v = rest.find_first(); v != PointSet::npos; v = rest.find_first()) {
            bound += w_[v]; // vertices are sorted by weight, v is the heaviest left
            rest.reset(v);
            PointSet cand = rest & adj_[v];
            for (auto u = cand.find_first(); u != PointSet::npos; u = cand.find_first()) {
                rest.reset(u);
                cand &= adj_[u];
                cand.reset(u);
            }
        }
        return bound;
    }

    void seed(double value, std::vector<std::size_t> chosen)
    {
        best_ = value;
        best_chosen_ = std::move(chosen);
    }

    bool run()
    {
        PointSet all(w_.size());
        all.set();
        std::vector<std::size_t> stack;
        try {
            search(all, 0.0, stack);
        } catch (const BudgetExhausted&) {
            return false;
        }
        return true;
    }

    double best() const { return best_; }
    const std::vector<std::size_t>& best_chosen() const { return best_chosen_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    void search(const PointSet& cand, double cur, std::vector<std::size_t>& stack)
    {
        if (++nodes_ > budget_)
            throw BudgetExhausted{};
        if (cand.none()) {
            if (cur > best_ + rel_tol * std::max(1.0, std::abs(best_))) {
                best_ = cur;
                best_chosen_ = stack;
            }
            return;
        }
        if (cur + clique_cover_bound(cand) <= best_ + rel_tol * std::max(1.0, std::abs(best_)))
            return;
        auto v = cand.find_first();
        PointSet with = cand - adj_[v];
        with.reset(v);
        stack.push_back(v);
        search(with, cur + w_[v], stack);
        stack.pop_back();
        PointSet without = cand;
        without.reset(v);
        search(without, cur, stack);
    }

    std::vector<PointSet> adj_;
    std::vector<double> w_;
    std::uint64_t budget_;
    double best_ = 0.0;
    std::vector<std::size_t> best_chosen_;
    std::uint64_t nodes_ = 0;
};

// Exact when, in `seq`, the later neighbours of each vertex form the block
// right after it; otherwise empty.
std::optional<std::pair<double, std::vector<std::size_t>>> chain_mwis(std::span<const PointSet> adjacency,
                                                                      std::span<const double> weights,
                                                                      const std::vector<std::size_t>& seq,
                                                                      std::vector<std::size_t>& pos)
{
    constexpr std::size_t absent = std::numeric_limits<std::size_t>::max();
    const std::size_t k = seq.size();
    for (std::size_t i = 0; i < k; ++i)
        pos[seq[i]] = i;
    std::vector<std::size_t> reach(k);
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
        std::size_t later = 0, far = i;
        const auto& row = adjacency[seq[i]];
        for (auto u = row.find_first(); u != PointSet::npos; u = row.find_next(u))
            if (pos[u] != absent && pos[u] > i) {
                ++later;
                far = std::max(far, pos[u]);
            }
        ok = later == far - i;
        reach[i] = far;
    }
    for (auto v : seq)
        pos[v] = absent;
    if (!ok)
        return std::nullopt;
    std::vector<double> best(k + 1, 0.0);
    std::vector<char> take(k, 0);
    for (std::size_t i = k; i-- > 0;) {
        double with = weights[seq[i]] + best[reach[i] + 1];
        take[i] = with > best[i + 1];
        best[i] = take[i] ? with : best[i + 1];
    }
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < k;) {
        if (take[i]) {
            chosen.push_back(seq[i]);
            i = reach[i] + 1;
        } else {
            ++i;
        }
    }
    return std::make_pair(best[0], std::move(chosen));
}

// Chain or cycle structure in index order.
std::optional<std::pair<double, std::vector<std::size_t>>> band_mwis(std::span<const PointSet> adjacency,
                                                                     std::span<const double> weights,
                                                                     const std::vector<std::size_t>& verts)
{
    std::vector<std::size_t> pos(adjacency.size(), std::numeric_limits<std::size_t>::max());
    if (auto line = chain_mwis(adjacency, weights, verts, pos))
        return line;
    // Weights are nonnegative, so some optimum meets N[v0].
    const auto v0 = verts.front();
    std::vector<std::size_t> around{v0};
    const auto& row0 = adjacency[v0];
    for (auto u = row0.find_first(); u != PointSet::npos; u = row0.find_next(u))
        around.push_back(u);
    std::optional<std::pair<double, std::vector<std::size_t>>> best;
    for (auto u : around) {
        auto at = std::lower_bound(verts.begin(), verts.end(), u) - verts.begin();
        std::vector<std::size_t> seq;
        for (std::size_t step = 1; step < verts.size(); ++step) {
            auto v = verts[(static_cast<std::size_t>(at) + step) % verts.size()];
            if (!adjacency[u].test(v))
                seq.push_back(v);
        }
        auto rest = chain_mwis(adjacency, weights, seq, pos);
        if (!rest)
            return std::nullopt;
        double value = rest->first + weights[u];
        if (!best || value > best->first + rel_tol * std::max(1.0, std::abs(best->first))) {
            rest->second.push_back(u);
            best = std::make_pair(value, std::move(rest->second));
        }
    }
    return best;
}

void check_graph_input(std::span<const PointSet> adjacency, std::span<const double> weights)
{
    if (adjacency.size() != weights.size())
        throw DomainError("independent set: one weight per vertex is required");
    for (std::size_t v = 0; v < adjacency.size(); ++v) {
        if (adjacency[v].size() != adjacency.size())
            throw DomainError("independent set: adjacency rows have the wrong size");
        if (adjacency[v].test(v))
            throw DomainError("independent set: self loop");
        if (!(weights[v] >= 0) || !std::isfinite(weights[v]))
            throw DomainError("independent set: weights must be finite and nonnegative");
    }
}

std::vector<std::size_t> by_weight(std::span<const double> weights, const std::vector<std::size_t>& verts)
{
    auto order = verts;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return weights[a] != weights[b] ? weights[a] > weights[b] : a < b;
    });
    return order;
}

} // namespace

IndependentSetSolution greedy_independent_set(std::span<const PointSet> adjacency,
                                              std::span<const double> weights)
{
    check_graph_input(adjacency, weights);
    std::vector<std::size_t> all(adjacency.size());
    std::iota(all.begin(), all.end(), 0);
    IndependentSetSolution out;
    out.bound = Bound::lower;
    PointSet blocked(adjacency.size());
    for (auto v : by_weight(weights, all)) {
        if (blocked.test(v))
            continue;
        out.chosen.push_back(v);
        out.value += weights[v];
        blocked |= adjacency[v];
        blocked.set(v);
    }
    std::sort(out.chosen.begin(), out.chosen.end());
    return out;
}

IndependentSetSolution max_weight_independent_set(std::span<const PointSet> adjacency,
                                                  std::span<const double> weights, SolverMode mode,
                                                  std::uint64_t node_budget)
{
    check_graph_input(adjacency, weights);
    if (mode == SolverMode::greedy)
        return greedy_independent_set(adjacency, weights);

    const std::size_t n = adjacency.size();
    IndependentSetSolution out;
    PointSet seen(n);
    for (std::size_t root = 0; root < n; ++root) {
        if (seen.test(root))
            continue;
        // Connected component of root.
        PointSet comp(n);
        comp.set(root);
        PointSet frontier = comp;
        while (frontier.any()) {
            PointSet next(n);
            for (auto v = frontier.find_first(); v != PointSet::npos; v = frontier.find_next(v))
                next |= adjacency[v];
            next -= comp;
            comp |= next;
            frontier = next;
        }
        seen |= comp;

        std::vector<std::size_t> verts;
        for (auto v = comp.find_first(); v != PointSet::npos; v = comp.find_next(v))
            verts.push_back(v);

        bool clique = true;
        for (auto v : verts)
            if ((adjacency[v] & comp).count() + 1 != verts.size()) {
                clique = false;
                break;
            }
        if (clique) {
            auto best = by_weight(weights, verts).front();
            out.chosen.push_back(best);
            out.value += weights[best];
            continue;
        }

        if (auto band = band_mwis(adjacency, weights, verts)) {
            out.chosen.insert(out.chosen.end(), band->second.begin(), band->second.end());
            out.value += band->first;
            continue;
        }

        auto order = by_weight(weights, verts);
        std::vector<PointSet> local_adj(order.size(), PointSet(order.size()));
        std::vector<std::size_t> local_of(n, 0);
        for (std::size_t i = 0; i < order.size(); ++i)
            local_of[order[i]] = i;
        std::vector<double> local_w(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            local_w[i] = weights[order[i]];
            const auto& row = adjacency[order[i]];
            for (auto u = row.find_first(); u != PointSet::npos; u = row.find_next(u))
                local_adj[i].set(local_of[u]);
        }

        // Greedy incumbent.
        double greedy_value = 0.0;
        std::vector<std::size_t> greedy_pick;
        PointSet blocked(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (blocked.test(i))
                continue;
            greedy_pick.push_back(i);
            greedy_value += local_w[i];
            blocked |= local_adj[i];
        }

        IndependentSearch search(std::move(local_adj), std::move(local_w),
                                 node_budget > out.nodes ? node_budget - out.nodes : 0);
        search.seed(greedy_value, greedy_pick);
        bool finished = search.run();
        out.nodes += search.nodes();
        if (!finished)
            out.bound = Bound::lower;
        for (auto i : search.best_chosen())
            out.chosen.push_back(order[i]);
        out.value += search.best();
    }
    std::sort(out.chosen.begin(), out.chosen.end());
    return out;
}

} // namespace thermo
