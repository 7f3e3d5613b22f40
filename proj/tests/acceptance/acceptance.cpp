// End-to-end acceptance checks. Prints one line per criterion and exits
// non-zero when any of them fails.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "numberless/buchi.hpp"
#include "numberless/document.hpp"
#include "numberless/lasso.hpp"
#include "numberless/search.hpp"
#include "numberless/semantics.hpp"
#include "numberless/simulation.hpp"
#include "numberless/verification.hpp"
#include "support/oracles.hpp"

using namespace numberless;

namespace {

const Rational kHalf(1, 2);

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates failures; the first one becomes the detail line.
struct Tally {
  bool pass = true;
  std::ostringstream note;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) note << "first failure: " << what;
    pass = pass && ok;
  }
  Outcome done(const std::string& summary) {
    return {pass, pass ? summary : note.str()};
  }
};

std::vector<Rational> grid_values() { return {Rational(1, 4), kHalf, Rational(3, 4)}; }

Outcome fig1_baseline() {
  Tally t;
  for (const auto& x : grid_values())
    for (const auto& y : grid_values()) {
      const auto pa = fig1_instance(x, y);
      const Word w = parse_word(pa.alphabet(), "i f");
      const Rational p = accept_prob(pa, w);
      t.require(p == kHalf && oracle::accept(pa, w) == kHalf,
                "x=" + to_string(x) + " y=" + to_string(y) + " gives " + to_string(p));
    }
  return t.done("9 instances, i f accepted with 1/2");
}

Outcome fig1_value_one() {
  Tally t;
  const Rational x(3, 4), y(1, 4);
  const auto cs = fig1_case_study(x, y, 20, 4096, Rational(1, 100));
  for (const auto& r : cs.rows)
    t.require(r.exact == oracle::fig1_family(x, y, r.n, r.m),
              "row n=" + std::to_string(r.n) + " m=" + std::to_string(r.m));
  t.require(cs.first_above.has_value(), "no row above 99/100");
  std::ostringstream s;
  if (cs.first_above)
    s << cs.rows.size() << " rows match the closed form; first above 99/100 at n="
      << cs.first_above->first << " m=" << cs.first_above->second;
  return t.done(s.str());
}

Outcome fig1_not_value_one() {
  Tally t;
  for (const auto& [x, y] : {std::pair{kHalf, kHalf}, std::pair{Rational(1, 4), Rational(3, 4)}}) {
    const auto pa = fig1_instance(x, y);
    const auto r = value_lower_bound(pa, SearchBudget{12, 0});
    t.require(r.probability == kHalf, "search gives " + to_string(r.probability));
    const Rational brute = oracle::brute_force_max(pa, 12);
    t.require(brute == kHalf, "enumeration gives " + to_string(brute));
  }
  return t.done("maximum over |w| <= 12 is 1/2 for x=y=1/2 and x=1/4,y=3/4");
}

Outcome fair_coin_props() {
  Tally t;
  Rng rng(2024);
  const std::vector<Rational> lambdas{Rational(1, 3), kHalf, Rational(2, 3)};
  std::size_t items12 = 0, item3 = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const auto a = random_simple_pa(rng(), 1 + uniform_index(rng, 4), 1 + uniform_index(rng, 3), 0.4);
    const Rational lambda = lambdas[uniform_index(rng, 3)];
    const auto b = fair_coin(a, lambda);
    const unsigned long k = 1 + uniform_index(rng, 3);
    const Word u = random_word(rng, a.num_letters(), 1 + uniform_index(rng, 3));
    const Word w = random_word(rng, b.automaton.num_letters(), uniform_index(rng, 7));
    const auto q = static_cast<StateId>(uniform_index(rng, a.num_states()));
    const auto r = static_cast<StateId>(uniform_index(rng, a.num_states()));
    const auto reports = check_fair_coin(a, b, lambda, k, u, q, r, w);
    bool tuple_ok = true;
    for (const auto& rep : reports) {
      t.require(!rep.violated(), rep.proposition + " " + rep.inputs);
      if (rep.proposition == "fair_coin.3") {
        ++item3;
      } else {
        tuple_ok = tuple_ok && rep.verdict == Verdict::Equal;
      }
    }
    // Item 2 once more against the dense oracle.
    t.require(oracle::reach(b.automaton, q, encode_word(u, k, b.structure.sharp()), {r}) ==
                  oracle::power(commit_probability(lambda, k), u.size()) * oracle::reach(a, q, u, {r}),
              "oracle disagrees on item 2");
    items12 += tuple_ok;
  }
  t.require(items12 >= 100 && item3 >= 100, "too few checks");
  return t.done(std::to_string(items12) + " tuples exact for items 1-2, " + std::to_string(item3) +
                " sharp-words bounded for item 3");
}

Outcome simulation_props() {
  Tally t;
  const auto reports = run_property_suite(99, 100);
  std::map<std::string, std::size_t> count;
  for (const auto& r : reports) {
    t.require(!r.violated(), r.proposition + " " + r.inputs);
    if (r.proposition == "theta") t.require(r.lhs == 0, "theta word accepted: " + r.inputs);
    if (r.verdict != Verdict::NotApplicable) ++count[r.proposition];
  }
  t.require(count["lower.1"] >= 20 && count["lower.2"] >= 20, "fewer than 20 lower tuples");
  t.require(count["theta"] >= 100, "fewer than 100 theta words");
  t.require(count["cheatonce"] >= 20, "fewer than 20 cheating words");
  t.require(count["upper"] >= 1, "no word above theta");
  std::ostringstream s;
  s << count["lower.1"] << " lower tuples, " << count["theta"] << " theta words, "
    << count["cheatonce"] << " cheating checks, " << count["upper"] << " witnesses";
  return t.done(s.str());
}

Outcome fairness_checker() {
  Tally t;
  const auto c = build_simulation(random_simple_pa(5, 2, 2, 0.5));
  const auto& alpha = c.alphabet();
  std::vector<std::string> order = c.order().names();
  auto names = [&](const Word& w) {
    std::vector<std::string> out;
    for (LetterId l : w) out.push_back(alpha.names().name(l));
    return out;
  };
  Rng rng(6);
  std::size_t accepted = 0, rejected = 0;
  while (accepted < 100 || rejected < 100) {
    Word w;
    for (std::size_t l = 1 + uniform_index(rng, 3); l > 0; --l) {
      const Word h = hat(alpha, random_word(rng, alpha.b_alphabet().size(), uniform_index(rng, 3)));
      w.insert(w.end(), h.begin(), h.end());
      w.push_back(alpha.next_word());
    }
    if (accepted < 100) {
      t.require(oracle::block_pattern(names(w), order), "oracle rejects a generated word");
      t.require(c.checker().accepts(w), "checker rejects a generated word");
      ++accepted;
    }
    if (rejected >= 100) continue;
    const std::size_t at = uniform_index(rng, w.size());
    switch (uniform_index(rng, 3)) {
      case 0: w[at] = static_cast<LetterId>(uniform_index(rng, alpha.size())); break;
      case 1: w.erase(w.begin() + static_cast<long>(at)); break;
      default: w.insert(w.begin() + static_cast<long>(at), static_cast<LetterId>(uniform_index(rng, alpha.size())));
    }
    if (oracle::block_pattern(names(w), order)) continue;  // the edit happened to stay valid
    t.require(!c.checker().accepts(w), "checker accepts a mutated word");
    ++rejected;
  }
  return t.done("100 encoded words accepted, 100 mutated words rejected");
}

Outcome buchi_props() {
  Tally t;
  Rng rng(13);
  for (int i = 0; i < 120; ++i) {
    const auto a = random_simple_pa(rng(), 1 + uniform_index(rng, 5), 1 + uniform_index(rng, 3), 0.4);
    const auto ba = buchi_reduction(a);
    Word u = random_word(rng, a.num_letters(), uniform_index(rng, 8));
    const Rational expected = accept_prob(a, u);
    u.push_back(*ba.sharp);
    t.require(reach_prob(ba.automaton, a.initial(), u, {a.initial()}) == expected, "reach identity");
  }
  const auto ba = buchi_reduction(fig1_instance(Rational(3, 4), Rational(1, 4)));
  const Word cycle = parse_word(ba.automaton.alphabet(), "i a f #");
  const Rational p = lasso_prob(ba, {{}, cycle});
  const Rational o = oracle::lasso(ba, {}, cycle);
  t.require(p == o, "lasso " + to_string(p) + " vs oracle " + to_string(o));
  return t.done("120 reach identities; lasso i a f # = " + to_string(p) + " (oracle " + to_string(o) + ")");
}

Outcome monte_carlo() {
  Tally t;
  const auto pa = fig1_instance(Rational(3, 4), Rational(1, 4));
  const Word w = parse_word(pa.alphabet(), "i f");
  const std::uint64_t samples = 10'000;
  const double band = std::sqrt(std::log(2.0 / 0.05) / (2.0 * samples));
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    inside += std::abs(monte_carlo_accept(pa, w, samples, seed) - 0.5) <= band;
  t.require(inside >= 95, std::to_string(inside) + " of 100 estimates inside the band");
  std::ostringstream s;
  s << inside << " of 100 estimates within " << std::setprecision(4) << band << " of 1/2";
  return t.done(s.str());
}

NumberlessAutomaton random_npa(Rng& rng) {
  const std::size_t n = 1 + uniform_index(rng, 5), k = 1 + uniform_index(rng, 3);
  std::vector<std::string> states, letters;
  for (std::size_t i = 0; i < n; ++i) states.push_back("s" + std::to_string(i));
  for (std::size_t i = 0; i < k; ++i) letters.push_back("l" + std::to_string(i));
  std::vector<std::vector<StateId>> support(n * k);
  for (auto& row : support) {
    for (StateId s = 0; s < n; ++s)
      if (uniform_index(rng, 3) == 0) row.push_back(s);
    if (row.empty()) row.push_back(static_cast<StateId>(uniform_index(rng, n)));
  }
  std::vector<StateId> finals;
  for (StateId s = 0; s < n; ++s)
    if (uniform_index(rng, 2)) finals.push_back(s);
  return NumberlessAutomaton(NameTable(states), NameTable(letters), 0, support, finals);
}

DeltaSpec random_spec(Rng& rng, const NumberlessAutomaton& npa) {
  DeltaSpec spec;
  for (const auto& row : npa.support()) {
    std::vector<unsigned long> w;
    unsigned long total = 0;
    for (std::size_t i = 0; i < row.size(); ++i) total += w.emplace_back(1 + uniform_index(rng, 9));
    std::vector<Distribution::Entry> entries;
    for (std::size_t i = 0; i < row.size(); ++i) {
      Rational p(w[i], total);
      p.canonicalize();
      entries.emplace_back(row[i], p);
    }
    spec.push_back(Distribution::make(std::move(entries)));
  }
  return spec;
}

Outcome round_trips() {
  Tally t;
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const auto npa = random_npa(rng);
    const auto pa = instantiate(npa, random_spec(rng, npa));
    t.require(support_abstraction(pa) == npa, "support round trip");

    std::vector<std::string> texts{serialize(to_document(pa)), serialize(to_document(npa)),
                                   serialize(to_document(buchi_reduction(pa)))};
    for (const auto& text : texts)
      t.require(serialize(parse_document(text)) == text, "document round trip");
    t.require(std::get<ProbAutomaton>(parse_automaton(texts[0])) == pa, "document changes the automaton");
  }
  std::ifstream in(std::string(NUMBERLESS_DATA_DIR) + "/fig1.json");
  std::stringstream fig1;
  fig1 << in.rdbuf();
  t.require(!fig1.str().empty() && serialize(parse_document(fig1.str())) == fig1.str(),
            "bundled document round trip");

  const auto c = build_simulation(random_simple_pa(3, 2, 2, 0.5));
  const std::vector<Rational> values{Rational(1, 6), Rational(1, 3), kHalf, Rational(2, 3), Rational(5, 6)};
  for (const auto& lambda : values)
    for (const auto& theta : values) {
      const auto [l, th] = recover_parameters(c, instantiate_simulation(c, lambda, theta));
      t.require(l == lambda && th == theta, "recovery at lambda=" + to_string(lambda));
    }
  return t.done("100 support round trips, 301 documents, 25 parameter recoveries");
}

struct Criterion {
  int id;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, 1, fig1_baseline},      {2, 10, fig1_value_one},    {3, 60, fig1_not_value_one},
      {4, 60, fair_coin_props},   {5, 120, simulation_props}, {6, 5, fairness_checker},
      {7, 30, buchi_props},       {8, 30, monte_carlo},       {9, 60, round_trips},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit)";
    }
    failures += !o.pass;
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail
              << " [" << std::fixed << std::setprecision(2) << secs << " s]\n"
              << std::defaultfloat;
  }
  return failures == 0 ? 0 : 1;
}
