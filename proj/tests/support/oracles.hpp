#pragma once

// Reference computations used by the tests. They only read transition tables
// from the library and redo every computation densely, without sharing code
// with the engine under test.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "numberless/automaton.hpp"
#include "numberless/buchi.hpp"

namespace oracle {

using Q = mpq_class;
using numberless::LetterId;
using numberless::ProbAutomaton;
using numberless::StateId;
using numberless::Word;

using Matrix = std::vector<std::vector<Q>>;

inline Matrix letter_matrix(const ProbAutomaton& pa, LetterId a) {
  const std::size_t n = pa.num_states();
  Matrix m(n, std::vector<Q>(n, 0));
  for (StateId s = 0; s < n; ++s)
    for (const auto& [t, p] : pa.delta(s, a).entries()) m[s][t] += p;
  return m;
}

inline std::vector<Q> push(const std::vector<Q>& v, const Matrix& m) {
  std::vector<Q> out(v.size(), 0);
  for (std::size_t s = 0; s < v.size(); ++s) {
    if (v[s] == 0) continue;
    for (std::size_t t = 0; t < v.size(); ++t)
      if (m[s][t] != 0) out[t] += v[s] * m[s][t];
  }
  return out;
}

inline Q reach(const ProbAutomaton& pa, StateId source, const Word& w,
               const std::vector<StateId>& targets) {
  std::vector<Q> v(pa.num_states(), 0);
  v[source] = 1;
  for (LetterId a : w) v = push(v, letter_matrix(pa, a));
  std::vector<bool> in(pa.num_states(), false);
  for (StateId t : targets) in[t] = true;
  Q total = 0;
  for (std::size_t s = 0; s < v.size(); ++s)
    if (in[s]) total += v[s];
  return total;
}

inline Q accept(const ProbAutomaton& pa, const Word& w) {
  return reach(pa, pa.initial(), w, pa.final_states());
}

inline Q power(Q base, unsigned long e) {
  Q r = 1;
  for (unsigned long i = 0; i < e; ++i) r *= base;
  return r;
}

// Acceptance of (i a^n f)^m on the example automaton.
inline Q fig1_family(const Q& x, const Q& y, unsigned long n, unsigned long m) {
  const Q xn = power(x, n), yn = power(y, n);
  return xn / (xn + yn) * (1 - power(1 - (xn + yn) / 2, m));
}

// Maximum acceptance over all words of length <= max_len, by depth-first
// enumeration of the word tree.
inline Q brute_force_max(const ProbAutomaton& pa, std::size_t max_len) {
  std::vector<Matrix> mats;
  for (LetterId a = 0; a < pa.num_letters(); ++a) mats.push_back(letter_matrix(pa, a));
  auto mass = [&](const std::vector<Q>& v) {
    Q t = 0;
    for (StateId f : pa.final_states()) t += v[f];
    return t;
  };
  Q best = 0;
  std::function<void(const std::vector<Q>&, std::size_t)> dfs = [&](const std::vector<Q>& v,
                                                                     std::size_t depth) {
    Q here = mass(v);
    if (here > best) best = here;
    if (depth == max_len) return;
    for (const auto& m : mats) dfs(push(v, m), depth + 1);
  };
  std::vector<Q> start(pa.num_states(), 0);
  start[pa.initial()] = 1;
  dfs(start, 0);
  return best;
}

// Gaussian elimination with exact pivoting on the first non-zero entry.
inline std::vector<Q> gauss(Matrix a, std::vector<Q> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::runtime_error("singular system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Q f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

// Probability that stem . cycle^omega visits accepting states infinitely
// often, on the letter-level chain over (state, position in cycle). Bottom
// components come from a reachability closure; absorption into accepting
// ones is a linear solve.
inline Q lasso(const numberless::BuchiAutomaton& ba, const Word& stem, const Word& cycle) {
  const ProbAutomaton& pa = ba.automaton;
  const std::size_t n = pa.num_states(), len = cycle.size(), size = n * len;
  auto node = [&](std::size_t s, std::size_t pos) { return pos * n + s; };
  Matrix p(size, std::vector<Q>(size, 0));
  for (std::size_t pos = 0; pos < len; ++pos)
    for (StateId s = 0; s < n; ++s)
      for (const auto& [t, pr] : pa.delta(s, cycle[pos]).entries())
        p[node(s, pos)][node(t, (pos + 1) % len)] += pr;

  std::vector<std::vector<bool>> reach(size, std::vector<bool>(size, false));
  for (std::size_t u = 0; u < size; ++u) {
    reach[u][u] = true;
    for (std::size_t v = 0; v < size; ++v)
      if (p[u][v] != 0) reach[u][v] = true;
  }
  for (std::size_t k = 0; k < size; ++k)
    for (std::size_t u = 0; u < size; ++u)
      if (reach[u][k])
        for (std::size_t v = 0; v < size; ++v)
          if (reach[k][v]) reach[u][v] = true;

  std::vector<bool> bottom(size), good(size, false);
  for (std::size_t u = 0; u < size; ++u) {
    bottom[u] = true;
    for (std::size_t v = 0; v < size; ++v)
      if (reach[u][v] && !reach[v][u]) bottom[u] = false;
  }
  for (std::size_t u = 0; u < size; ++u) {
    if (!bottom[u]) continue;
    for (std::size_t v = 0; v < size; ++v)
      if (reach[u][v] && ba.is_accepting(static_cast<StateId>(v % n))) good[u] = true;
  }
  std::vector<bool> hopeful(size, false);
  for (std::size_t u = 0; u < size; ++u)
    for (std::size_t v = 0; v < size; ++v)
      if (good[v] && reach[u][v]) hopeful[u] = true;

  // x_u = 1 on good bottom nodes, 0 where no good node is reachable,
  // x_u = sum_v p(u, v) x_v otherwise.
  Matrix a(size, std::vector<Q>(size, 0));
  std::vector<Q> b(size, 0);
  for (std::size_t u = 0; u < size; ++u) {
    a[u][u] = 1;
    if (good[u]) {
      b[u] = 1;
    } else if (hopeful[u]) {
      for (std::size_t v = 0; v < size; ++v) a[u][v] -= p[u][v];
    }
  }
  const std::vector<Q> x = gauss(a, b);

  std::vector<Q> v(n, 0);
  v[pa.initial()] = 1;
  for (LetterId c : stem) v = push(v, letter_matrix(pa, c));
  Q total = 0;
  for (StateId s = 0; s < n; ++s) total += v[s] * x[node(s, 0)];
  return total;
}

// Membership in {hat(u) next_word}* decided on rendered letter names:
// every block is a sequence of chunks
//   check(b,q_0) $ apply(b,q_0) ... check(b,q_{n-1}) $ apply(b,q_{n-1}) next_transition
// with one base letter b per chunk.
inline bool block_pattern(const std::vector<std::string>& letters,
                          const std::vector<std::string>& order) {
  const std::size_t n = order.size(), stride = 3 * n + 1;
  std::vector<std::string> block;
  auto chunk_ok = [&](std::size_t at) {
    const std::string& first = block[at];
    const std::string prefix = "check(";
    const std::string suffix = "," + order[0] + ")";
    if (first.rfind(prefix, 0) != 0 || first.size() < prefix.size() + suffix.size() ||
        first.compare(first.size() - suffix.size(), suffix.size(), suffix) != 0)
      return false;
    const std::string b = first.substr(prefix.size(), first.size() - prefix.size() - suffix.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (block[at + 3 * i] != "check(" + b + "," + order[i] + ")") return false;
      if (block[at + 3 * i + 1] != "$") return false;
      if (block[at + 3 * i + 2] != "apply(" + b + "," + order[i] + ")") return false;
    }
    return block[at + 3 * n] == "next_transition";
  };
  for (const auto& l : letters) {
    if (l != "next_word") {
      block.push_back(l);
      continue;
    }
    if (block.size() % stride != 0) return false;
    for (std::size_t at = 0; at < block.size(); at += stride)
      if (!chunk_ok(at)) return false;
    block.clear();
  }
  return block.empty();
}

}  // namespace oracle
