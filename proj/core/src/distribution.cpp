#include "numberless/distribution.hpp"

#include <algorithm>

#include "numberless/errors.hpp"

namespace numberless {

namespace {

// Sorts by state, merges duplicates and drops zeros in place.
void normalize_entries(std::vector<Distribution::Entry>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i + 1;
    Rational sum = entries[i].second;
    while (j < entries.size() && entries[j].first == entries[i].first)
      sum += entries[j++].second;
    if (sgn(sum) != 0) {
      entries[out].first = entries[i].first;
      entries[out].second = std::move(sum);
      ++out;
    }
    i = j;
  }
  entries.resize(out);
}

}  // namespace

Distribution Distribution::point(StateId state) {
  Distribution d;
  d.entries_.emplace_back(state, Rational(1));
  return d;
}

Distribution Distribution::make(std::vector<Entry> entries) {
  Rational total = 0;
  for (const auto& [s, p] : entries) {
    if (sgn(p) < 0)
      throw NotADistribution("negative entry " + to_string(p) + " on state " +
                             std::to_string(s));
    total += p;
  }
  if (total != 1) throw NotADistribution("entries sum to " + to_string(total));
  Distribution d;
  normalize_entries(entries);
  d.entries_ = std::move(entries);
  return d;
}

Distribution Distribution::make(const std::map<StateId, Rational>& entries) {
  return make(std::vector<Entry>(entries.begin(), entries.end()));
}

Rational Distribution::operator[](StateId state) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), state,
      [](const Entry& e, StateId s) { return e.first < s; });
  if (it != entries_.end() && it->first == state) return it->second;
  return 0;
}

bool Distribution::contains(StateId state) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), state,
      [](const Entry& e, StateId s) { return e.first < s; });
  return it != entries_.end() && it->first == state;
}

std::vector<StateId> Distribution::support() const {
  std::vector<StateId> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.first);
  return out;
}

std::size_t hash_value(const Distribution& d) {
  std::size_t h = d.size();
  for (const auto& [s, p] : d.entries())
    h = (h * 0x9E3779B97F4A7C15ULL) ^ (s + 0x632BE59BD9B4E019ULL * hash_value(p));
  return h;
}

void DistributionAccumulator::add(StateId state, const Rational& weight) {
  pending_.emplace_back(state, weight);
}

void DistributionAccumulator::add(const Distribution& d, const Rational& weight) {
  for (const auto& [s, p] : d.entries()) pending_.emplace_back(s, p * weight);
}

Distribution DistributionAccumulator::finish() {
  normalize_entries(pending_);
  Distribution d;
  d.entries_ = std::move(pending_);
  pending_.clear();
  return d;
}

Distribution mix(const Rational& alpha, const Distribution& a,
                 const Distribution& b) {
  DistributionAccumulator acc;
  acc.add(a, alpha);
  acc.add(b, Rational(1 - alpha));
  return acc.finish();
}

}  // namespace numberless
