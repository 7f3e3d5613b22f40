#include "numberless/lasso.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "numberless/errors.hpp"
#include "numberless/semantics.hpp"

namespace numberless {

std::vector<Rational> solve_linear_system(std::vector<std::vector<Rational>> a,
                                          std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == n) throw ValidationError("singular linear system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || sgn(a[row][col]) == 0) continue;
      const Rational factor = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      b[row] -= factor * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

namespace {

// Per-source effect of one cycle traversal: where the run ends, and with
// which probability it passed through an accepting state on the way.
struct CycleStep {
  std::map<StateId, Rational> to;
  std::map<StateId, Rational> to_via_accepting;
};

CycleStep traverse(const BuchiAutomaton& ba, StateId source, const Word& cycle) {
  const auto& pa = ba.automaton;
  // Accepting-visit product: (state, visited) encoded as 2*state + visited.
  std::map<std::uint64_t, Rational> current{{2ull * source, Rational(1)}};
  for (LetterId a : cycle) {
    std::map<std::uint64_t, Rational> next;
    for (const auto& [key, p] : current) {
      const StateId s = static_cast<StateId>(key / 2);
      const bool visited = key % 2;
      for (const auto& [t, q] : pa.delta(s, a).entries()) {
        const bool v = visited || ba.is_accepting(t);
        next[2ull * t + (v ? 1 : 0)] += p * q;
      }
    }
    current = std::move(next);
  }
  CycleStep out;
  for (const auto& [key, p] : current) {
    const StateId t = static_cast<StateId>(key / 2);
    out.to[t] += p;
    if (key % 2) out.to_via_accepting[t] += p;
  }
  return out;
}

// Tarjan's algorithm over the states in `nodes` (indices into `succ`).
std::vector<int> strongly_connected(const std::vector<std::vector<std::size_t>>& succ,
                                    int& count) {
  const std::size_t n = succ.size();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  int counter = 0;
  count = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : succ[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = count;
      } while (w != v);
      ++count;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return comp;
}

}  // namespace

Rational lasso_prob(const BuchiAutomaton& ba, const LassoWord& w) {
  if (w.cycle.empty()) throw EmptyCycle("the cycle of a lasso word must be nonempty");
  const auto& pa = ba.automaton;
  for (LetterId a : w.cycle)
    if (a >= pa.num_letters()) throw UnknownLetter("letter id " + std::to_string(a));
  const Distribution start = run(pa, Distribution::point(pa.initial()), w.stem);

  // States of the cycle chain reachable from the stem distribution.
  std::vector<StateId> nodes;
  std::map<StateId, std::size_t> local;
  std::vector<CycleStep> steps;
  for (StateId s : start.support()) {
    local.emplace(s, nodes.size());
    nodes.push_back(s);
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    steps.push_back(traverse(ba, nodes[i], w.cycle));
    for (const auto& [t, p] : steps.back().to)
      if (local.emplace(t, nodes.size()).second) nodes.push_back(t);
  }

  const std::size_t n = nodes.size();
  std::vector<std::vector<std::size_t>> succ(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [t, p] : steps[i].to) succ[i].push_back(local.at(t));

  int count = 0;
  const std::vector<int> comp = strongly_connected(succ, count);
  std::vector<bool> bottom(count, true), accepting(count, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : succ[i])
      if (comp[j] != comp[i]) bottom[comp[i]] = false;
    for (const auto& [t, p] : steps[i].to_via_accepting)
      if (comp[local.at(t)] == comp[i]) accepting[comp[i]] = true;
  }

  // x_i = 1 in accepting bottom components, 0 in other bottom components,
  // and x_i = sum_j P(i, j) x_j on transient states.
  std::vector<std::size_t> transient;
  std::vector<long> position(n, -1);
  for (std::size_t i = 0; i < n; ++i)
    if (!bottom[comp[i]]) {
      position[i] = static_cast<long>(transient.size());
      transient.push_back(i);
    }
  std::vector<Rational> value(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (bottom[comp[i]] && accepting[comp[i]]) value[i] = 1;

  if (!transient.empty()) {
    const std::size_t m = transient.size();
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m, 0));
    std::vector<Rational> b(m, 0);
    for (std::size_t r = 0; r < m; ++r) {
      const std::size_t i = transient[r];
      a[r][r] = 1;
      for (const auto& [t, p] : steps[i].to) {
        const std::size_t j = local.at(t);
        if (position[j] >= 0)
          a[r][static_cast<std::size_t>(position[j])] -= p;
        else
          b[r] += p * value[j];
      }
    }
    const auto x = solve_linear_system(std::move(a), std::move(b));
    for (std::size_t r = 0; r < m; ++r) value[transient[r]] = x[r];
  }

  Rational total = 0;
  for (const auto& [s, p] : start.entries()) total += p * value[local.at(s)];
  return total;
}

}  // namespace numberless
