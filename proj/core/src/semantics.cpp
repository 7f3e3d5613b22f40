#include "numberless/semantics.hpp"

#include <algorithm>
#include <random>

#include "numberless/errors.hpp"

namespace numberless {

Distribution step(const ProbAutomaton& pa, const Distribution& d,
                  LetterId letter) {
  if (letter >= pa.num_letters())
    throw UnknownLetter("letter id " + std::to_string(letter));
  DistributionAccumulator acc;
  for (const auto& [s, p] : d.entries()) {
    if (s >= pa.num_states()) throw UnknownState("state id " + std::to_string(s));
    acc.add(pa.delta(s, letter), p);
  }
  Distribution next = acc.finish();
  if (next.mass([](StateId) { return true; }) != 1)
    throw std::logic_error("step produced a non-stochastic vector");
  return next;
}

Distribution run(const ProbAutomaton& pa, Distribution d, const Word& word) {
  for (LetterId a : word) d = step(pa, d, a);
  return d;
}

Rational accept_prob(const ProbAutomaton& pa, const Word& word) {
  const Distribution end = run(pa, Distribution::point(pa.initial()), word);
  return end.mass([&](StateId s) { return pa.is_final(s); });
}

Rational reach_prob(const ProbAutomaton& pa, StateId source, const Word& word,
                    const std::vector<StateId>& targets) {
  if (source >= pa.num_states())
    throw UnknownState("state id " + std::to_string(source));
  std::vector<bool> in_target(pa.num_states(), false);
  for (StateId t : targets) {
    if (t >= pa.num_states()) throw UnknownState("state id " + std::to_string(t));
    in_target[t] = true;
  }
  const Distribution end = run(pa, Distribution::point(source), word);
  return end.mass([&](StateId s) { return in_target[s]; });
}

WordEvalTrace trace(const ProbAutomaton& pa, const Word& word) {
  WordEvalTrace t;
  t.word = word;
  t.prefixes.push_back(Distribution::point(pa.initial()));
  for (LetterId a : word) t.prefixes.push_back(step(pa, t.prefixes.back(), a));
  t.acceptance = t.prefixes.back().mass([&](StateId s) { return pa.is_final(s); });
  return t;
}

NumberlessAutomaton support_abstraction(const ProbAutomaton& pa) {
  std::vector<std::vector<StateId>> support;
  support.reserve(pa.transitions().size());
  for (const auto& d : pa.transitions()) support.push_back(d.support());
  return NumberlessAutomaton(pa.states(), pa.alphabet(), pa.initial(),
                             std::move(support), pa.final_states());
}

ProbAutomaton instantiate(const NumberlessAutomaton& npa, DeltaSpec spec) {
  const std::size_t n_letters = npa.num_letters();
  if (spec.size() != npa.support().size())
    throw IncompleteAutomaton("transition specification has " +
                              std::to_string(spec.size()) + " entries, expected " +
                              std::to_string(npa.support().size()));
  auto triple = [&](std::size_t row, StateId to) {
    return "(" + npa.states().name(row / n_letters) + ", " +
           npa.alphabet().name(row % n_letters) + ", " +
           (to < npa.num_states() ? npa.states().name(to) : std::to_string(to)) + ")";
  };
  for (std::size_t row = 0; row < spec.size(); ++row) {
    const auto& succ = npa.support()[row];
    const auto& d = spec[row];
    for (StateId t : succ)
      if (!d.contains(t))
        throw InconsistentSupport("missing: triple " + triple(row, t) +
                                  " is in the support but has probability 0");
    for (const auto& [t, p] : d.entries())
      if (!std::binary_search(succ.begin(), succ.end(), t))
        throw InconsistentSupport("extra: triple " + triple(row, t) +
                                  " has probability " + to_string(p) +
                                  " but is not in the support");
  }
  return ProbAutomaton(npa.states(), npa.alphabet(), npa.initial(),
                       std::move(spec), npa.final_states());
}

double monte_carlo_accept(const ProbAutomaton& pa, const Word& word,
                          std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw DomainError("samples must be at least 1");
  for (LetterId a : word)
    if (a >= pa.num_letters()) throw UnknownLetter("letter id " + std::to_string(a));

  // Cumulative double weights per transition row, built lazily.
  std::vector<std::vector<double>> cumulative(pa.transitions().size());
  auto row_cdf = [&](std::size_t row) -> const std::vector<double>& {
    auto& cdf = cumulative[row];
    if (cdf.empty()) {
      double acc = 0;
      for (const auto& [s, p] : pa.transitions()[row].entries()) {
        acc += to_double(p);
        cdf.push_back(acc);
      }
    }
    return cdf;
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uint64_t accepted = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    StateId state = pa.initial();
    for (LetterId a : word) {
      const std::size_t row = state * pa.num_letters() + a;
      const auto& d = pa.transitions()[row];
      if (d.size() == 1) {
        state = d.entries()[0].first;
        continue;
      }
      const auto& cdf = row_cdf(row);
      const double x = unit(rng) * cdf.back();
      auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
      if (it == cdf.end()) --it;
      state = d.entries()[static_cast<std::size_t>(it - cdf.begin())].first;
    }
    if (pa.is_final(state)) ++accepted;
  }
  return static_cast<double>(accepted) / static_cast<double>(samples);
}

}  // namespace numberless
