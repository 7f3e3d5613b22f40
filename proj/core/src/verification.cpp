#include "numberless/verification.hpp"

#include <algorithm>
#include <sstream>

#include "numberless/errors.hpp"
#include "numberless/semantics.hpp"

namespace numberless {

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Equal: return "=";
    case Relation::AtMost: return "<=";
    case Relation::AtLeast: return ">=";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "equal";
    case Verdict::Bounded: return "bounded";
    case Verdict::Violated: return "violated";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "?";
}

Verdict judge(const Rational& lhs, const Rational& rhs, Relation relation) {
  if (lhs == rhs) return Verdict::Equal;
  switch (relation) {
    case Relation::Equal: return Verdict::Violated;
    case Relation::AtMost: return lhs < rhs ? Verdict::Bounded : Verdict::Violated;
    case Relation::AtLeast: return lhs > rhs ? Verdict::Bounded : Verdict::Violated;
  }
  return Verdict::Violated;
}

PropReport make_report(std::string proposition, std::string inputs, Rational lhs, Rational rhs,
                       Relation relation) {
  PropReport r;
  r.proposition = std::move(proposition);
  r.inputs = std::move(inputs);
  r.verdict = judge(lhs, rhs, relation);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.relation = relation;
  return r;
}

SimulationContext::SimulationContext(const ProbAutomaton& source, Rational lambda, Rational theta)
    : source_(source),
      lambda_(std::move(lambda)),
      theta_(std::move(theta)),
      simulation_(build_simulation(source)),
      fair_coin_(simulation_.source().instantiate(lambda_)),
      instance_(instantiate_simulation(simulation_, lambda_, theta_)) {}

bool SimulationContext::in_hat_image(const Word& block) const {
  const auto& dfa = simulation_.checker();
  const LetterId nw = alphabet().next_word();
  if (std::find(block.begin(), block.end(), nw) != block.end()) return false;
  return dfa.next(dfa.run(dfa.start(), block), nw) == dfa.start();
}

Word SimulationContext::unhat(const Word& block) const {
  if (!in_hat_image(block)) throw PreconditionFailed("block is not a hat image");
  const std::size_t stride = 3 * alphabet().order().size() + 1;
  Word u;
  for (std::size_t i = 0; i < block.size(); i += stride) u.push_back(alphabet().decode(block[i]).b);
  return u;
}

std::vector<Word> SimulationContext::split_blocks(const Word& w) const {
  const LetterId nw = alphabet().next_word();
  std::vector<Word> blocks(1);
  for (LetterId c : w) {
    if (c == nw)
      blocks.emplace_back();
    else
      blocks.back().push_back(c);
  }
  return blocks;
}

namespace {

std::string describe(const NameTable& alphabet, const Word& w) {
  return w.empty() ? std::string("eps") : format_word(alphabet, w);
}

Word repeat_with_next_word(const Word& block, LetterId nw, unsigned long times) {
  Word w;
  for (unsigned long i = 0; i < times; ++i) {
    w.insert(w.end(), block.begin(), block.end());
    w.push_back(nw);
  }
  return w;
}

}  // namespace

std::vector<PropReport> check_fair_coin(const ProbAutomaton& a, const FairCoinOutput& b,
                                        const Rational& lambda, unsigned long k, const Word& u,
                                        StateId q, StateId r, const std::optional<Word>& w) {
  const LetterId sharp = b.structure.sharp();
  const Rational coeff = commit_probability(lambda, k);
  std::ostringstream in;
  in << "lambda=" << to_string(lambda) << " k=" << k << " u=" << describe(a.alphabet(), u)
     << " q=" << a.states().name(q) << " r=" << a.states().name(r);

  std::vector<PropReport> out;
  if (!u.empty()) {
    const Word first{u.front()};
    out.push_back(make_report("fair_coin.1", in.str(),
                              reach_prob(b.automaton, q, encode_word(first, k, sharp), {r}),
                              coeff * reach_prob(a, q, first, {r}), Relation::Equal));
  }
  out.push_back(make_report("fair_coin.2", in.str(),
                            reach_prob(b.automaton, q, encode_word(u, k, sharp), {r}),
                            pow(coeff, u.size()) * reach_prob(a, q, u, {r}), Relation::Equal));
  const Word sharp_word = w.value_or(encode_word(u, k, sharp));
  out.push_back(make_report("fair_coin.3",
                            in.str() + " w=" + describe(b.automaton.alphabet(), sharp_word),
                            reach_prob(b.automaton, q, sharp_word, {r}),
                            reach_prob(a, q, erase_sharps(sharp_word, sharp), {r}),
                            Relation::AtMost));
  return out;
}

std::vector<PropReport> check_fair_coin(const ProbAutomaton& a, const Rational& lambda,
                                        unsigned long k, const Word& u, StateId q, StateId r,
                                        const std::optional<Word>& w) {
  return check_fair_coin(a, fair_coin(a, lambda), lambda, k, u, q, r, w);
}

std::vector<PropReport> check_lower(const SimulationContext& ctx, const Word& u, unsigned long l) {
  const Word block = hat(ctx.alphabet(), u);
  const LetterId nw = ctx.alphabet().next_word();
  const Rational pb = accept_prob(ctx.fair_coin(), u);
  const Rational theta_k = pow(ctx.theta(), u.size());
  std::ostringstream in;
  in << "lambda=" << to_string(ctx.lambda()) << " theta=" << to_string(ctx.theta())
     << " u=" << describe(ctx.fair_coin().alphabet(), u) << " l=" << l;

  std::vector<PropReport> out;
  out.push_back(make_report("lower.1", in.str(),
                            accept_prob(ctx.instance(), repeat_with_next_word(block, nw, 1)),
                            theta_k * pb, Relation::Equal));
  out.push_back(make_report("lower.2", in.str(),
                            accept_prob(ctx.instance(), repeat_with_next_word(block, nw, l)),
                            (1 - pow(Rational(1 - theta_k), l)) * pb, Relation::Equal));
  return out;
}

PropReport check_theta(const SimulationContext& ctx, const Word& u) {
  const LetterId nw = ctx.alphabet().next_word();
  if (std::find(u.begin(), u.end(), nw) != u.end())
    throw PreconditionFailed("word contains next_word");
  std::ostringstream in;
  in << "lambda=" << to_string(ctx.lambda()) << " theta=" << to_string(ctx.theta())
     << " |u|=" << u.size();
  return make_report("theta", in.str(), accept_prob(ctx.instance(), u), ctx.theta(),
                     Relation::AtMost);
}

std::vector<PropReport> check_cheat_once(const SimulationContext& ctx,
                                         const std::vector<Word>& blocks) {
  const LetterId nw = ctx.alphabet().next_word();
  for (const auto& b : blocks)
    if (std::find(b.begin(), b.end(), nw) != b.end())
      throw PreconditionFailed("block contains next_word");

  auto join_from = [&](std::size_t start) {
    Word w;
    for (std::size_t i = start; i < blocks.size(); ++i) {
      w.insert(w.end(), blocks[i].begin(), blocks[i].end());
      w.push_back(nw);
    }
    return w;
  };
  const Rational whole = accept_prob(ctx.instance(), join_from(0));
  std::vector<PropReport> out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (ctx.in_hat_image(blocks[i])) continue;
    std::ostringstream in;
    in << "lambda=" << to_string(ctx.lambda()) << " theta=" << to_string(ctx.theta())
       << " blocks=" << blocks.size() << " cheat=" << i + 1;
    out.push_back(make_report("cheatonce", in.str(), whole,
                              accept_prob(ctx.instance(), join_from(i)), Relation::AtMost));
  }
  if (out.empty()) {
    PropReport na;
    na.proposition = "cheatonce";
    na.inputs = "every block is a hat image";
    na.lhs = na.rhs = whole;
    na.relation = Relation::AtMost;
    na.verdict = Verdict::NotApplicable;
    out.push_back(std::move(na));
  }
  return out;
}

WitnessResult extract_witness(const SimulationContext& ctx, const Word& w) {
  const Rational pc = accept_prob(ctx.instance(), w);
  if (pc <= ctx.theta())
    throw PreconditionFailed("acceptance " + to_string(pc) + " does not exceed theta " +
                             to_string(ctx.theta()));
  auto blocks = ctx.split_blocks(w);
  blocks.pop_back();  // the remainder after the last next_word

  std::optional<Word> best;
  Rational best_prob = -1;
  for (const auto& block : blocks) {
    if (!ctx.in_hat_image(block)) continue;
    Word v = ctx.unhat(block);
    Rational p = accept_prob(ctx.fair_coin(), v);
    if (p > best_prob) {
      best_prob = std::move(p);
      best = std::move(v);
    }
  }
  if (!best) {
    best = Word{};
    best_prob = accept_prob(ctx.fair_coin(), *best);
  }
  std::ostringstream in;
  in << "lambda=" << to_string(ctx.lambda()) << " theta=" << to_string(ctx.theta())
     << " |w|=" << w.size() << " P_C(w)=" << to_string(pc);
  const Rational bound = (pc - ctx.theta()) / (1 - ctx.theta());
  return WitnessResult{*best, make_report("upper", in.str(), best_prob, bound, Relation::AtLeast)};
}

ChainReport equivalence_chain_report(const ProbAutomaton& a, const std::vector<Rational>& lambdas,
                                     const std::vector<Rational>& thetas,
                                     const SearchBudget& budget,
                                     const SearchBudget& simulation_budget,
                                     unsigned long lift_repetitions) {
  ChainReport report;
  report.rows.push_back({"A", std::nullopt, std::nullopt, value_lower_bound(a, budget), std::nullopt});
  if (!lambdas.empty()) {
    const SimulationNPA c = build_simulation(a);
    const LetterId nw = c.alphabet().next_word();
    for (const auto& lambda : lambdas) {
      const ProbAutomaton b = c.source().instantiate(lambda);
      SearchResult b_bound = value_lower_bound(b, budget);
      const Word lifted_word = repeat_with_next_word(hat(c.alphabet(), b_bound.word), nw,
                                                     lift_repetitions);
      report.rows.push_back({"B", lambda, std::nullopt, b_bound, std::nullopt});
      for (const auto& theta : thetas) {
        const ProbAutomaton inst = instantiate_simulation(c, lambda, theta);
        report.rows.push_back({"C", lambda, theta, value_lower_bound(inst, simulation_budget),
                               accept_prob(inst, lifted_word)});
      }
    }
  }
  report.min_bound = report.max_bound = report.rows.front().bound.probability;
  for (const auto& row : report.rows) {
    report.min_bound = std::min(report.min_bound, row.bound.probability);
    report.max_bound = std::max(report.max_bound, row.bound.probability);
  }
  return report;
}

ProbAutomaton fig1_instance(const Rational& x, const Rational& y) {
  AutomatonBuilder builder({"C1", "C2", "L1", "L2", "R1", "R2"}, {"i", "a", "f"});
  const Rational half(1, 2);
  builder.initial("C1").final_state("L2");
  builder.transition("C1", "i", {{"L1", half}, {"R1", half}});
  builder.transition("C2", "a", "C2");
  builder.transition("C2", "f", "C1");
  builder.transition("L1", "a", {{"L1", x}, {"C2", Rational(1 - x)}});
  builder.transition("L1", "f", "L2");
  builder.transition("R1", "a", {{"R1", y}, {"C2", Rational(1 - y)}});
  builder.transition("R1", "f", "R2");
  for (const char* letter : {"i", "a", "f"}) {
    builder.transition("L2", letter, "L2");
    builder.transition("R2", letter, "R2");
  }
  return builder.complete_with_loops().build();
}

NumberlessAutomaton fig1_npa() {
  return support_abstraction(fig1_instance(Rational(1, 2), Rational(1, 2)));
}

FamilyTemplate fig1_family(const NameTable& alphabet) {
  const LetterId i = *alphabet.find("i"), a = *alphabet.find("a"), f = *alphabet.find("f");
  using T = FamilyTemplate;
  return T({T::group({T::letter(i), T::letter(a, std::string("n")), T::letter(f)},
                     std::string("m"))});
}

Rational fig1_closed_form(const Rational& x, const Rational& y, unsigned long n, unsigned long m) {
  const Rational xn = pow(x, n), yn = pow(y, n);
  if (sgn(xn + yn) == 0) return 0;
  return xn / (xn + yn) * (1 - pow(Rational(1 - (xn + yn) / 2), m));
}

CaseStudy fig1_case_study(const Rational& x, const Rational& y, unsigned long n_max,
                          unsigned long m_max, const Rational& eps) {
  const ProbAutomaton pa = fig1_instance(x, y);
  const FamilyTemplate family = fig1_family(pa.alphabet());
  std::vector<unsigned long> ms;
  for (unsigned long m = 1; m <= m_max; m *= 2) ms.push_back(m);
  if (m_max > 0 && ms.back() != m_max) ms.push_back(m_max);

  CaseStudy study;
  study.threshold = 1 - eps;
  for (unsigned long n = 0; n <= n_max; ++n) {
    for (unsigned long m : ms) {
      CaseStudyRow row;
      row.n = n;
      row.m = m;
      row.exact = family_eval(pa, family, {{"n", n}, {"m", m}});
      row.approx = to_double(row.exact);
      if (!study.first_above && row.exact > study.threshold) study.first_above = {{n, m}};
      study.rows.push_back(std::move(row));
    }
  }
  return study;
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
  if (n == 0) throw DomainError("uniform_index over an empty range");
  // Rejection sampling keeps results identical across standard libraries.
  const std::uint64_t limit = Rng::max() - Rng::max() % n;
  std::uint64_t x;
  do x = rng(); while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

ProbAutomaton random_simple_pa(std::uint64_t seed, std::size_t num_states,
                               std::size_t num_letters, double final_density) {
  if (num_states == 0 || num_letters == 0) throw DomainError("need at least one state and letter");
  Rng rng(seed);
  std::vector<std::string> states, letters;
  for (std::size_t i = 0; i < num_states; ++i) states.push_back("q" + std::to_string(i));
  for (std::size_t i = 0; i < num_letters; ++i)
    letters.push_back(i < 26 ? std::string(1, char('a' + i)) : "x" + std::to_string(i));

  AutomatonBuilder builder(states, letters);
  builder.initial(states[0]);
  const Rational half(1, 2);
  for (const auto& s : states) {
    for (const auto& a : letters) {
      const std::size_t t1 = uniform_index(rng, num_states);
      const bool split = num_states > 1 && uniform_index(rng, 2) == 1;
      if (!split) {
        builder.transition(s, a, states[t1]);
      } else {
        std::size_t t2 = uniform_index(rng, num_states - 1);
        if (t2 >= t1) ++t2;
        builder.transition(s, a, {{states[t1], half}, {states[t2], half}});
      }
    }
  }
  bool any_final = false;
  for (const auto& s : states) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < final_density) {
      builder.final_state(s);
      any_final = true;
    }
  }
  if (final_density > 0 && !any_final) builder.final_state(states[uniform_index(rng, num_states)]);
  return builder.build();
}

Word random_word(Rng& rng, std::size_t num_letters, std::size_t length) {
  Word w(length);
  for (auto& c : w) c = static_cast<LetterId>(uniform_index(rng, num_letters));
  return w;
}

namespace {

Rational pick(Rng& rng, const std::vector<Rational>& values) {
  return values[uniform_index(rng, values.size())];
}

// A block that the fairness checker rejects, obtained by a local edit of a
// hat image.
Word mutate_block(Rng& rng, const SimulationContext& ctx, Word block) {
  const std::size_t letters = ctx.alphabet().size() - 1;  // everything but next_word
  for (int attempt = 0; attempt < 16; ++attempt) {
    Word w = block;
    const std::size_t op = w.empty() ? 0 : uniform_index(rng, 3);
    if (op == 0) {
      const std::size_t at = uniform_index(rng, w.size() + 1);
      w.insert(w.begin() + static_cast<long>(at), static_cast<LetterId>(uniform_index(rng, letters)));
    } else if (op == 1) {
      w.erase(w.begin() + static_cast<long>(uniform_index(rng, w.size())));
    } else {
      w[uniform_index(rng, w.size())] = static_cast<LetterId>(uniform_index(rng, letters));
    }
    if (!ctx.in_hat_image(w)) return w;
  }
  block.push_back(ctx.alphabet().dollar());
  return block;
}

}  // namespace

std::vector<PropReport> run_property_suite(std::uint64_t seed, std::size_t trials) {
  Rng rng(seed);
  const std::vector<Rational> lambdas{Rational(1, 3), Rational(1, 2), Rational(2, 3)};
  const std::vector<Rational> thetas{Rational(1, 4), Rational(1, 2)};
  std::vector<PropReport> out;
  auto append = [&out](std::vector<PropReport> reports) {
    for (auto& r : reports) out.push_back(std::move(r));
  };

  for (std::size_t trial = 0; trial < trials; ++trial) {
    {
      const ProbAutomaton a =
          random_simple_pa(rng(), 1 + uniform_index(rng, 4), 1 + uniform_index(rng, 3), 0.4);
      const Rational lambda = pick(rng, lambdas);
      const FairCoinOutput b = fair_coin(a, lambda);
      const unsigned long k = 1 + uniform_index(rng, 3);
      const Word u = random_word(rng, a.num_letters(), uniform_index(rng, 4));
      const Word w = random_word(rng, b.automaton.num_letters(), uniform_index(rng, 7));
      const auto q = static_cast<StateId>(uniform_index(rng, a.num_states()));
      const auto r = static_cast<StateId>(uniform_index(rng, a.num_states()));
      append(check_fair_coin(a, b, lambda, k, u, q, r, w));
    }

    const ProbAutomaton small =
        random_simple_pa(rng(), 1 + uniform_index(rng, 2), 1 + uniform_index(rng, 2), 0.5);
    const SimulationContext ctx(small, pick(rng, lambdas), pick(rng, thetas));
    const std::size_t b_letters = ctx.fair_coin().num_letters();
    const LetterId nw = ctx.alphabet().next_word();

    const Word u = random_word(rng, b_letters, uniform_index(rng, 3));
    append(check_lower(ctx, u, 1 + uniform_index(rng, 3)));

    Word free = uniform_index(rng, 2) ? hat(ctx.alphabet(), u) : Word{};
    const Word tail = random_word(rng, ctx.alphabet().size() - 1, uniform_index(rng, 24));
    free.insert(free.end(), tail.begin(), tail.end());
    out.push_back(check_theta(ctx, free));

    std::vector<Word> blocks;
    const std::size_t count = 1 + uniform_index(rng, 3);
    const std::size_t cheat = uniform_index(rng, count);
    for (std::size_t i = 0; i < count; ++i) {
      Word block = hat(ctx.alphabet(), random_word(rng, b_letters, uniform_index(rng, 3)));
      blocks.push_back(i == cheat ? mutate_block(rng, ctx, std::move(block)) : std::move(block));
    }
    append(check_cheat_once(ctx, blocks));

    // Upper: repeat a short genuine block after an optional cheating prefix.
    const LetterId sharp = ctx.simulation().source().sharp();
    const Word genuine = uniform_index(rng, 2) ? Word(uniform_index(rng, 3), sharp) : u;
    Word w;
    if (uniform_index(rng, 2)) {
      w = mutate_block(rng, ctx, hat(ctx.alphabet(), genuine));
      w.push_back(nw);
    }
    const Word block = hat(ctx.alphabet(), genuine);
    for (std::size_t i = 0, reps = 1 + uniform_index(rng, 6); i < reps; ++i) {
      w.insert(w.end(), block.begin(), block.end());
      w.push_back(nw);
    }
    if (accept_prob(ctx.instance(), w) > ctx.theta()) out.push_back(extract_witness(ctx, w).report);
  }
  return out;
}

}  // namespace numberless
