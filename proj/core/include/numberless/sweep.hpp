#pragma once

#include <vector>

#include "numberless/automaton.hpp"
#include "numberless/search.hpp"

namespace numberless {

struct SweepPoint {
  DeltaSpec spec;
  std::vector<Rational> offsets;  // one per perturbed transition
  Rational distance;              // sup-norm distance to the center
  SearchResult bound;
};

// Enumerates a grid of instantiations of `npa` around `center`. Every
// transition with two or more successors is an axis; along an axis, mass
// delta is moved from the last support state to the first, with delta taking
// `grid` evenly spaced values in [-eps, eps] (only 0 when grid == 1). Points
// leaving the open simplex are skipped, so every point keeps the support.
// Each point is scored by value_lower_bound under `budget`.
// Throws InconsistentSupport for a bad center and BudgetExceeded when the
// grid has more than `max_points` points.
std::vector<SweepPoint> noisy_sweep(const NumberlessAutomaton& npa, const DeltaSpec& center,
                                    const Rational& eps, std::size_t grid,
                                    const SearchBudget& budget,
                                    std::size_t max_points = 100'000);

// Max over (state, letter, target) of |a - b|.
Rational sup_distance(const DeltaSpec& a, const DeltaSpec& b);

}  // namespace numberless
