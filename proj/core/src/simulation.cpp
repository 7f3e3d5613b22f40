#include "numberless/simulation.hpp"

#include "numberless/errors.hpp"
#include "numberless/semantics.hpp"

namespace numberless {

SimAlphabet::SimAlphabet(NameTable b_alphabet, NameTable order)
    : b_alphabet_(std::move(b_alphabet)), order_(std::move(order)) {
  if (b_alphabet_.empty() || order_.empty())
    throw ValidationError("simulation alphabet needs letters and states");
  const std::size_t nb = b_alphabet_.size();
  const std::size_t nq = order_.size();
  for (LetterId b = 0; b < nb; ++b)
    for (StateId q = 0; q < nq; ++q)
      names_.add(render({SimLetter::Kind::Check, b, q}, b_alphabet_, order_));
  for (LetterId b = 0; b < nb; ++b)
    for (StateId q = 0; q < nq; ++q)
      names_.add(render({SimLetter::Kind::Apply, b, q}, b_alphabet_, order_));
  names_.add(render({SimLetter::Kind::Dollar}, b_alphabet_, order_));
  names_.add(render({SimLetter::Kind::NextTransition}, b_alphabet_, order_));
  names_.add(render({SimLetter::Kind::NextWord}, b_alphabet_, order_));
}

LetterId SimAlphabet::check(LetterId b, StateId q) const {
  if (b >= b_alphabet_.size()) throw UnknownLetter("base letter id " + std::to_string(b));
  if (q >= order_.size()) throw UnknownState("state id " + std::to_string(q));
  return static_cast<LetterId>(b * order_.size() + q);
}

LetterId SimAlphabet::apply(LetterId b, StateId q) const {
  return static_cast<LetterId>(block() + check(b, q));
}

SimLetter SimAlphabet::decode(LetterId c) const {
  const std::size_t nq = order_.size();
  if (c < block()) return {SimLetter::Kind::Check, LetterId(c / nq), StateId(c % nq)};
  if (c < 2 * block()) {
    const std::size_t i = c - block();
    return {SimLetter::Kind::Apply, LetterId(i / nq), StateId(i % nq)};
  }
  if (c == dollar()) return {SimLetter::Kind::Dollar};
  if (c == next_transition()) return {SimLetter::Kind::NextTransition};
  if (c == next_word()) return {SimLetter::Kind::NextWord};
  throw UnknownLetter("simulation letter id " + std::to_string(c));
}

std::string SimAlphabet::render(const SimLetter& l, const NameTable& b_alphabet,
                                const NameTable& order) {
  switch (l.kind) {
    case SimLetter::Kind::Base: return b_alphabet.name(l.b);
    case SimLetter::Kind::Sharp: return kSharpName;
    case SimLetter::Kind::Check:
      return "check(" + b_alphabet.name(l.b) + "," + order.name(l.q) + ")";
    case SimLetter::Kind::Apply:
      return "apply(" + b_alphabet.name(l.b) + "," + order.name(l.q) + ")";
    case SimLetter::Kind::Dollar: return "$";
    case SimLetter::Kind::NextTransition: return "next_transition";
    case SimLetter::Kind::NextWord: return "next_word";
  }
  return {};
}

Word hat(const SimAlphabet& alphabet, const Word& u) {
  const std::size_t n = alphabet.order().size();
  Word out;
  out.reserve(u.size() * (3 * n + 1));
  for (LetterId b : u) {
    for (StateId q = 0; q < n; ++q) {
      out.push_back(alphabet.check(b, q));
      out.push_back(alphabet.dollar());
      out.push_back(alphabet.apply(b, q));
    }
    out.push_back(alphabet.next_transition());
  }
  return out;
}

// Checker layout: start, sink, between-letters, then per base letter b the
// 3n block states: expect-dollar(b,i) and expect-apply(b,i) for i < n,
// expect-check(b,i) for 0 < i < n, and expect-next_transition(b).
FairnessDfa::FairnessDfa(SimAlphabet alphabet) : alphabet_(std::move(alphabet)) {
  const std::size_t nb = alphabet_.b_alphabet().size();
  const std::size_t n = alphabet_.order().size();
  const std::size_t nc = alphabet_.size();

  states_.add("start");
  states_.add("sink");
  states_.add("between");
  auto base_of = [&](LetterId b) { return static_cast<StateId>(3 + b * 3 * n); };
  auto expect_dollar = [&](LetterId b, std::size_t i) { return StateId(base_of(b) + i); };
  auto expect_apply = [&](LetterId b, std::size_t i) { return StateId(base_of(b) + n + i); };
  // i in [1, n); i == n is the next_transition state.
  auto expect_check = [&](LetterId b, std::size_t i) {
    return StateId(base_of(b) + 2 * n + (i - 1));
  };
  for (LetterId b = 0; b < nb; ++b) {
    const std::string& bn = alphabet_.b_alphabet().name(b);
    for (std::size_t i = 0; i < n; ++i) states_.add("dollar[" + bn + "," + std::to_string(i) + "]");
    for (std::size_t i = 0; i < n; ++i) states_.add("apply[" + bn + "," + std::to_string(i) + "]");
    for (std::size_t i = 1; i < n; ++i) states_.add("check[" + bn + "," + std::to_string(i) + "]");
    states_.add("end[" + bn + "]");
  }

  next_.assign(states_.size() * nc, sink());
  auto set = [&](StateId s, LetterId c, StateId t) { next_[s * nc + c] = t; };

  for (StateId from : {start(), between_letters()}) {
    set(from, alphabet_.next_word(), start());
    for (LetterId b = 0; b < nb; ++b) set(from, alphabet_.check(b, 0), expect_dollar(b, 0));
  }
  for (LetterId b = 0; b < nb; ++b) {
    for (std::size_t i = 0; i < n; ++i) {
      set(expect_dollar(b, i), alphabet_.dollar(), expect_apply(b, i));
      set(expect_apply(b, i), alphabet_.apply(b, StateId(i)), expect_check(b, i + 1));
      if (i > 0) set(expect_check(b, i), alphabet_.check(b, StateId(i)), expect_dollar(b, i));
    }
    set(expect_check(b, n), alphabet_.next_transition(), between_letters());
  }
}

StateId FairnessDfa::run(StateId s, const Word& w) const {
  for (LetterId c : w) {
    if (c >= alphabet_.size()) throw UnknownLetter("simulation letter id " + std::to_string(c));
    s = next(s, c);
  }
  return s;
}

ProbAutomaton FairnessDfa::as_automaton() const {
  DeltaSpec delta;
  delta.reserve(next_.size());
  for (StateId t : next_) delta.push_back(Distribution::point(t));
  return ProbAutomaton(states_, alphabet_.names(), start(), std::move(delta), {start()});
}

FairnessDfa fairness_dfa(const SimAlphabet& alphabet) { return FairnessDfa(alphabet); }

SimulationNPA::SimulationNPA(FairCoinStructure source, FairnessDfa dfa,
                             NumberlessAutomaton npa, StateId center)
    : source_(std::move(source)), dfa_(std::move(dfa)), npa_(std::move(npa)), center_(center) {}

SimulationNPA build_simulation(const ProbAutomaton& simple) {
  FairCoinStructure b = fair_coin_structure(simple);
  FairnessDfa dfa(SimAlphabet(b.alphabet(), b.states()));
  const SimAlphabet& alpha = dfa.alphabet();

  const std::size_t nb_states = b.num_states();
  const std::size_t nb_letters = b.num_letters();
  const std::size_t nc = alpha.size();

  NameTable states = b.states();
  for (StateId p = 0; p < nb_states; ++p) states.add(states.fresh("bar(" + b.states().name(p) + ")"));
  const auto center = static_cast<StateId>(states.size());
  for (const char* name : {"q_R", "s", "s0", "s1", "wait"}) states.add(states.fresh(name));
  for (const auto& name : dfa.states().names()) states.add(states.fresh("D:" + name));

  const auto right = [&](StateId p) { return static_cast<StateId>(nb_states + p); };
  const StateId q_r = center, s = center + 1, s0 = center + 2, s1 = center + 3, wait = center + 4;
  const auto checker = [&](StateId d) { return static_cast<StateId>(center + 5 + d); };
  const StateId d_start = checker(dfa.start());
  const StateId d_sink = checker(dfa.sink());

  // Every pair loops unless overridden below.
  std::vector<std::vector<StateId>> support(states.size() * nc);
  for (StateId x = 0; x < states.size(); ++x)
    for (LetterId c = 0; c < nc; ++c) support[x * nc + c] = {x};
  auto set = [&](StateId x, LetterId c, std::vector<StateId> to) {
    support[x * nc + c] = std::move(to);
  };

  for (StateId p = 0; p < nb_states; ++p) {
    for (LetterId bl = 0; bl < nb_letters; ++bl) set(p, alpha.check(bl, p), {q_r});
    set(p, alpha.next_word(), {b.is_final(p) ? d_start : d_sink});
    set(right(p), alpha.next_transition(), {p});
    set(right(p), alpha.next_word(), {d_sink});
  }
  set(q_r, alpha.dollar(), {s, s0, s1});
  for (LetterId bl = 0; bl < nb_letters; ++bl) {
    for (StateId q = 0; q < nb_states; ++q) {
      const CoinEdge& e = b.edge(q, bl);
      const LetterId ap = alpha.apply(bl, q);
      set(s0, ap, {right(e.on_lambda)});
      set(s1, ap, {right(e.on_co_lambda)});
      set(s, ap, {wait});
    }
  }
  // Center states other than wait are non-accepting: next_word discards them.
  for (StateId x : {q_r, s, s0, s1}) set(x, alpha.next_word(), {d_sink});
  set(wait, alpha.next_word(), {b.initial()});

  for (StateId d = 0; d < dfa.num_states(); ++d)
    for (LetterId c = 0; c < nc; ++c) set(checker(d), c, {checker(dfa.next(d, c))});

  NumberlessAutomaton npa(std::move(states), alpha.names(), b.initial(), std::move(support),
                          {d_start});
  return SimulationNPA(std::move(b), std::move(dfa), std::move(npa), center);
}

ProbAutomaton instantiate_simulation(const SimulationNPA& c, const Rational& lambda,
                                     const Rational& theta) {
  for (const auto* v : {&lambda, &theta})
    if (sgn(*v) <= 0 || *v >= 1)
      throw DomainError("parameter " + to_string(*v) + " is outside (0, 1)");
  const auto& npa = c.npa();
  const LetterId dollar = c.alphabet().dollar();
  DeltaSpec delta;
  delta.reserve(npa.support().size());
  for (std::size_t row = 0; row < npa.support().size(); ++row) {
    const auto& succ = npa.support()[row];
    if (succ.size() == 1) {
      delta.push_back(Distribution::point(succ.front()));
    } else if (row == c.q_r() * npa.num_letters() + dollar) {
      delta.push_back(Distribution::make({{c.s0(), lambda * theta},
                                          {c.s1(), (1 - lambda) * theta},
                                          {c.s(), Rational(1 - theta)}}));
    } else {
      throw std::logic_error("unexpected probabilistic pair in simulation automaton");
    }
  }
  return instantiate(npa, std::move(delta));
}

std::pair<Rational, Rational> recover_parameters(const SimulationNPA& c,
                                                 const ProbAutomaton& instance) {
  const Distribution& d = instance.delta(c.q_r(), c.alphabet().dollar());
  const Rational theta = d[c.s0()] + d[c.s1()];
  if (sgn(theta) == 0) throw DomainError("theta is zero; lambda is undetermined");
  return {d[c.s0()] / theta, theta};
}

Word hat(const SimulationNPA& c, const Word& u, const std::vector<std::string>& order) {
  if (order != c.order().names())
    throw OrderMismatch("state enumeration differs from the one stored in the simulation");
  for (LetterId b : u)
    if (b >= c.alphabet().b_alphabet().size())
      throw UnknownLetter("base letter id " + std::to_string(b));
  return hat(c.alphabet(), u);
}

}  // namespace numberless
