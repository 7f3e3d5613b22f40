#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "numberless/names.hpp"
#include "numberless/rational.hpp"

namespace numberless {

// Finitely supported probability distribution over state ids. Entries are
// strictly positive, sorted by state and sum to exactly one.
class Distribution {
 public:
  using Entry = std::pair<StateId, Rational>;

  // The trivial distribution on `state`.
  static Distribution point(StateId state);

  // Merges duplicate keys and drops zeros. Throws NotADistribution when an
  // entry is negative or the total differs from one.
  static Distribution make(std::vector<Entry> entries);
  static Distribution make(const std::map<StateId, Rational>& entries);
  static Distribution make(std::initializer_list<Entry> entries) {
    return make(std::vector<Entry>(entries));
  }

  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Probability of `state` (zero outside the support).
  Rational operator[](StateId state) const;
  bool contains(StateId state) const;
  std::vector<StateId> support() const;

  // Mass of the states accepted by `in_set`.
  template <class Pred>
  Rational mass(Pred in_set) const {
    Rational total = 0;
    for (const auto& [s, p] : entries_)
      if (in_set(s)) total += p;
    return total;
  }

  friend bool operator==(const Distribution& a, const Distribution& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Entry> entries_;

  friend class DistributionAccumulator;
};

std::size_t hash_value(const Distribution& d);

struct DistributionHash {
  std::size_t operator()(const Distribution& d) const { return hash_value(d); }
};

// Sums weighted point masses and finalizes into a Distribution without
// re-validating the total (callers guarantee it is a convex combination).
class DistributionAccumulator {
 public:
  void add(StateId state, const Rational& weight);
  void add(const Distribution& d, const Rational& weight);
  Distribution finish();

 private:
  std::vector<Distribution::Entry> pending_;
};

// Convex combination alpha * a + (1 - alpha) * b.
Distribution mix(const Rational& alpha, const Distribution& a,
                 const Distribution& b);

}  // namespace numberless
