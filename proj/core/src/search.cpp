#include "numberless/search.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "numberless/errors.hpp"
#include "numberless/semantics.hpp"

namespace numberless {

std::vector<bool> coreachable_to_final(const ProbAutomaton& pa) {
  const std::size_t n = pa.num_states();
  std::vector<std::vector<StateId>> predecessors(n);
  for (StateId s = 0; s < n; ++s)
    for (LetterId a = 0; a < pa.num_letters(); ++a)
      for (const auto& [t, p] : pa.delta(s, a).entries()) predecessors[t].push_back(s);
  std::vector<bool> seen(n, false);
  std::deque<StateId> queue;
  for (StateId f : pa.final_states()) {
    seen[f] = true;
    queue.push_back(f);
  }
  while (!queue.empty()) {
    const StateId t = queue.front();
    queue.pop_front();
    for (StateId s : predecessors[t])
      if (!seen[s]) {
        seen[s] = true;
        queue.push_back(s);
      }
  }
  return seen;
}

namespace {

struct Node {
  Distribution dist;
  std::size_t parent;  // index into the node arena; npos for the root
  LetterId letter;
};

constexpr std::size_t kRoot = static_cast<std::size_t>(-1);

Word reconstruct(const std::vector<Node>& arena, std::size_t index) {
  Word w;
  while (index != kRoot && arena[index].parent != kRoot) {
    w.push_back(arena[index].letter);
    index = arena[index].parent;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

}  // namespace

SearchResult value_lower_bound(const ProbAutomaton& pa, const SearchBudget& budget) {
  const std::vector<bool> live = coreachable_to_final(pa);
  auto accepting_mass = [&](const Distribution& d) {
    return d.mass([&](StateId s) { return pa.is_final(s); });
  };
  auto live_mass = [&](const Distribution& d) {
    return d.mass([&](StateId s) { return live[s]; });
  };

  // The visited set stores arena indices so each distribution is held once.
  std::vector<Node> arena;
  arena.push_back({Distribution::point(pa.initial()), kRoot, 0});
  auto hash = [&](std::size_t i) { return hash_value(arena[i].dist); };
  auto equal = [&](std::size_t i, std::size_t j) { return arena[i].dist == arena[j].dist; };
  std::unordered_set<std::size_t, decltype(hash), decltype(equal)> visited(1024, hash, equal);
  visited.insert(0);

  std::size_t best = 0;
  Rational best_prob = accepting_mass(arena.front().dist);
  std::vector<std::size_t> frontier{0};

  for (std::size_t depth = 1; depth <= budget.max_word_length && !frontier.empty(); ++depth) {
    if (best_prob == 1) break;
    std::vector<std::size_t> next;
    std::vector<Rational> keys;
    for (std::size_t idx : frontier) {
      // Future acceptance never exceeds the mass that can still reach F.
      if (live_mass(arena[idx].dist) <= best_prob) continue;
      for (LetterId a = 0; a < pa.num_letters(); ++a) {
        arena.push_back({step(pa, arena[idx].dist, a), idx, a});
        if (!visited.insert(arena.size() - 1).second) {
          arena.pop_back();
          continue;
        }
        const Distribution& d = arena.back().dist;
        if (visited.size() > budget.max_distribution_states)
          throw BudgetExceeded("more than " + std::to_string(budget.max_distribution_states) +
                               " distinct distributions at word length " +
                               std::to_string(depth));
        Rational acc = accepting_mass(d);
        if (budget.beam_width > 0) keys.push_back(acc + live_mass(d));
        if (acc > best_prob) {
          best_prob = std::move(acc);
          best = arena.size() - 1;
        }
        next.push_back(arena.size() - 1);
      }
    }
    if (budget.beam_width > 0 && next.size() > budget.beam_width) {
      std::vector<std::size_t> order(next.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return keys[a] > keys[b]; });
      order.resize(budget.beam_width);
      std::sort(order.begin(), order.end());
      std::vector<std::size_t> kept;
      kept.reserve(order.size());
      for (std::size_t i : order) kept.push_back(next[i]);
      next = std::move(kept);
    }
    frontier = std::move(next);
  }
  return SearchResult{reconstruct(arena, best), best_prob, visited.size()};
}

}  // namespace numberless
