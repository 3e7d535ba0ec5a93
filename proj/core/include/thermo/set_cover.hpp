#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "thermo/systems.hpp"

namespace thermo {

inline constexpr std::uint64_t default_node_budget = std::uint64_t{1} << 24;

struct SetCoverSolution {
    double value = 0.0;
    std::vector<std::size_t> chosen; // indices into the input sets
    Bound bound = Bound::exact;
    std::uint64_t nodes = 0;
};

/// Minimum-weight subfamily of `sets` covering every element of [0, universe).
///
/// Exact mode runs branch-and-bound (duplicate and dominance pruning, branching
/// on the element with fewest covering sets, disjoint-element lower bound).
/// When the node budget runs out, or in greedy mode, the greedy cover is
/// returned and flagged as an upper bound. Ties are broken by set index, so the
/// result is a deterministic function of the input.
SetCoverSolution min_weight_set_cover(std::span<const PointSet> sets, std::span<const double> weights,
                                      SolverMode mode = SolverMode::exact,
                                      std::uint64_t node_budget = default_node_budget);

/// Greedy cost-per-new-element rule; always an upper bound.
SetCoverSolution greedy_set_cover(std::span<const PointSet> sets, std::span<const double> weights);

struct IndependentSetSolution {
    double value = 0.0;
    std::vector<std::size_t> chosen; // vertex indices, ascending
    Bound bound = Bound::exact;
    std::uint64_t nodes = 0;
};

/// Maximum-weight independent set of the graph with adjacency rows
/// `adjacency` (symmetric, no self loops).
///
/// Connected components are solved separately; cliques directly, other
/// components by branch-and-bound with a greedy clique-cover upper bound.
/// Vertices are explored by descending weight, ties by index. Budget
/// exhaustion or greedy mode yields a lower bound.
IndependentSetSolution max_weight_independent_set(std::span<const PointSet> adjacency,
                                                  std::span<const double> weights,
                                                  SolverMode mode = SolverMode::exact,
                                                  std::uint64_t node_budget = default_node_budget);

IndependentSetSolution greedy_independent_set(std::span<const PointSet> adjacency,
                                              std::span<const double> weights);

} // namespace thermo
