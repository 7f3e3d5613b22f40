#include "numberless/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "numberless/errors.hpp"
#include "numberless/semantics.hpp"

namespace numberless {

Rational sup_distance(const DeltaSpec& a, const DeltaSpec& b) {
  if (a.size() != b.size()) throw ValidationError("transition tables differ in size");
  Rational best = 0;
  for (std::size_t row = 0; row < a.size(); ++row) {
    std::vector<StateId> keys = a[row].support();
    for (StateId s : b[row].support()) keys.push_back(s);
    for (StateId s : keys) best = std::max(best, Rational(abs(a[row][s] - b[row][s])));
  }
  return best;
}

std::vector<SweepPoint> noisy_sweep(const NumberlessAutomaton& npa, const DeltaSpec& center,
                                    const Rational& eps, std::size_t grid,
                                    const SearchBudget& budget, std::size_t max_points) {
  if (sgn(eps) <= 0) throw DomainError("eps must be positive");
  if (grid == 0) throw DomainError("grid must be at least 1");
  instantiate(npa, center);  // validates consistency

  std::vector<std::size_t> axes;
  for (std::size_t row = 0; row < center.size(); ++row)
    if (center[row].size() >= 2) axes.push_back(row);

  std::vector<Rational> offsets;
  if (grid == 1) {
    offsets.push_back(0);
  } else {
    for (std::size_t j = 0; j < grid; ++j) {
      Rational t(j, grid - 1);
      t.canonicalize();  // mpq arithmetic requires lowest terms
      offsets.push_back(-eps + 2 * eps * t);
    }
  }

  const double total = std::pow(static_cast<double>(offsets.size()), static_cast<double>(axes.size()));
  if (total > static_cast<double>(max_points))
    throw BudgetExceeded("sweep grid has " + std::to_string(static_cast<long double>(total)) +
                         " points, limit " + std::to_string(max_points));

  std::vector<SweepPoint> points;
  std::vector<std::size_t> digit(axes.size(), 0);
  while (true) {
    DeltaSpec spec = center;
    std::vector<Rational> used;
    bool inside = true;
    for (std::size_t k = 0; k < axes.size() && inside; ++k) {
      const Rational& delta = offsets[digit[k]];
      used.push_back(delta);
      std::vector<Distribution::Entry> entries(center[axes[k]].entries().begin(),
                                               center[axes[k]].entries().end());
      entries.front().second += delta;
      entries.back().second -= delta;
      if (sgn(entries.front().second) <= 0 || sgn(entries.back().second) <= 0) {
        inside = false;
        break;
      }
      spec[axes[k]] = Distribution::make(std::move(entries));
    }
    if (inside) {
      ProbAutomaton pa = instantiate(npa, spec);
      SweepPoint point;
      point.distance = sup_distance(spec, center);
      point.bound = value_lower_bound(pa, budget);
      point.spec = std::move(spec);
      point.offsets = std::move(used);
      points.push_back(std::move(point));
    }
    // Odometer over the axes, last axis fastest.
    std::size_t k = axes.size();
    while (k > 0) {
      if (++digit[k - 1] < offsets.size()) break;
      digit[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return points;
}

}  // namespace numberless
