#include <gtest/gtest.h>

#include "numberless/errors.hpp"
#include "numberless/semantics.hpp"
#include "numberless/verification.hpp"
#include "support/oracles.hpp"

using namespace numberless;

namespace {

const Rational kHalf(1, 2);

bool all_hold(const std::vector<PropReport>& reports) {
  return std::none_of(reports.begin(), reports.end(), [](const PropReport& r) { return r.violated(); });
}

// Two states, the initial one accepting and absorbing under '#'.
ProbAutomaton accepting_start() {
  AutomatonBuilder b({"q0", "q1"}, {"a"});
  b.initial("q0").final_state("q0");
  b.transition("q0", "a", {{"q0", kHalf}, {"q1", kHalf}});
  return b.complete_with_loops().build();
}

Word blocks_word(const SimulationContext& ctx, const std::vector<Word>& blocks) {
  Word w;
  for (const auto& b : blocks) {
    w.insert(w.end(), b.begin(), b.end());
    w.push_back(ctx.alphabet().next_word());
  }
  return w;
}

}  // namespace

TEST(Judge, Relations) {
  EXPECT_EQ(judge(1, 1, Relation::Equal), Verdict::Equal);
  EXPECT_EQ(judge(1, 2, Relation::Equal), Verdict::Violated);
  EXPECT_EQ(judge(1, 2, Relation::AtMost), Verdict::Bounded);
  EXPECT_EQ(judge(2, 1, Relation::AtMost), Verdict::Violated);
  EXPECT_EQ(judge(2, 1, Relation::AtLeast), Verdict::Bounded);
  EXPECT_STREQ(to_string(Verdict::NotApplicable), "not-applicable");
}

TEST(FairCoinProp, EmptyWordIsIndicator) {
  const auto a = random_simple_pa(5, 3, 2, 0.5);
  for (StateId q = 0; q < 3; ++q)
    for (StateId r = 0; r < 3; ++r) {
      const auto reports = check_fair_coin(a, kHalf, 2, {}, q, r);
      ASSERT_EQ(reports.size(), 2u);  // item 1 needs a letter
      EXPECT_EQ(reports[0].lhs, q == r ? 1 : 0);
      EXPECT_EQ(reports[0].rhs, q == r ? 1 : 0);
    }
}

TEST(FairCoinProp, RandomThreeStateExact) {
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    const auto a = random_simple_pa(rng(), 3, 2, 0.4);
    const Word u = random_word(rng, 2, 2);
    const auto q = static_cast<StateId>(uniform_index(rng, 3));
    const auto r = static_cast<StateId>(uniform_index(rng, 3));
    const auto reports = check_fair_coin(a, Rational(1, 3), 2, u, q, r);
    ASSERT_EQ(reports.size(), 3u);
    for (const auto& rep : reports) EXPECT_FALSE(rep.violated()) << rep.proposition << " " << rep.inputs;
    // Independent evaluation of item 2.
    const auto b = fair_coin(a, Rational(1, 3));
    EXPECT_EQ(reports[1].lhs, oracle::reach(b.automaton, q, encode_word(u, 2, b.structure.sharp()), {r}));
    EXPECT_EQ(reports[1].rhs, oracle::power(Rational(56, 81), 2) * oracle::reach(a, q, u, {r}));
  }
}

TEST(FairCoinProp, ItemThreeOnEncodedWordMatchesItemTwo) {
  const auto a = random_simple_pa(12, 3, 2, 0.4);
  const auto reports = check_fair_coin(a, kHalf, 1, {0, 1}, 0, 1);
  EXPECT_EQ(reports[2].lhs, reports[1].lhs);
  EXPECT_NE(reports[2].verdict, Verdict::Violated);
}

TEST(LowerProp, DegenerateCases) {
  const auto a = accepting_start();
  const SimulationContext ctx(a, kHalf, Rational(1, 3));
  const auto one = check_lower(ctx, {0}, 1);
  EXPECT_EQ(one[0].lhs, one[1].lhs);
  EXPECT_EQ(one[0].rhs, one[1].rhs);
  const auto empty = check_lower(ctx, {}, 3);
  EXPECT_EQ(empty[0].lhs, 1);
  EXPECT_EQ(accept_prob(ctx.instance(), {ctx.alphabet().next_word()}), 1);
}

TEST(LowerProp, RandomTwoStateExact) {
  Rng rng(41);
  int positive = 0;
  for (int i = 0; i < 15; ++i) {
    const auto a = random_simple_pa(rng(), 2, 1 + uniform_index(rng, 2), 0.5);
    const SimulationContext ctx(a, kHalf, Rational(1, 3));
    const Word u = random_word(rng, ctx.fair_coin().num_letters(), 2);
    const auto reports = check_lower(ctx, u, 2);
    EXPECT_TRUE(all_hold(reports));
    EXPECT_EQ(reports[1].lhs, oracle::accept(ctx.instance(), blocks_word(ctx, {hat(ctx.alphabet(), u), hat(ctx.alphabet(), u)})));
    positive += reports[1].lhs > 0;
  }
  EXPECT_GT(positive, 0);
}

TEST(ThetaProp, Examples) {
  const SimulationContext ctx(accepting_start(), kHalf, Rational(1, 4));
  const auto single = check_theta(ctx, {ctx.alphabet().check(0, 0)});
  EXPECT_EQ(single.lhs, 0);
  EXPECT_EQ(single.verdict, Verdict::Bounded);
  AutomatonBuilder b({"q"}, {"a"});
  b.initial("q").complete_with_loops();
  const SimulationContext rejecting(b.build(), kHalf, Rational(1, 4));
  EXPECT_EQ(check_theta(rejecting, {}).lhs, 0);
  EXPECT_THROW(check_theta(ctx, {ctx.alphabet().next_word()}), PreconditionFailed);
}

TEST(CheatOnceProp, Examples) {
  const SimulationContext ctx(accepting_start(), Rational(1, 3), kHalf);
  const auto& alpha = ctx.alphabet();
  const Word genuine = hat(alpha, {0});
  Word scrambled = genuine;
  std::swap(scrambled[0], scrambled[2]);
  ASSERT_FALSE(ctx.in_hat_image(scrambled));

  const auto single = check_cheat_once(ctx, {scrambled});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].verdict, Verdict::Equal);

  const auto pair = check_cheat_once(ctx, {genuine, scrambled});
  EXPECT_TRUE(all_hold(pair));
  const auto na = check_cheat_once(ctx, {genuine, genuine});
  ASSERT_EQ(na.size(), 1u);
  EXPECT_EQ(na[0].verdict, Verdict::NotApplicable);
}

TEST(CheatOnceProp, CheatThenGenuine) {
  // Cheating first and genuine afterwards: the checker forgives the cheat only
  // through the genuine suffix, so both sides agree.
  const SimulationContext ctx(accepting_start(), Rational(1, 3), kHalf);
  const Word genuine = hat(ctx.alphabet(), {1});
  Word cheat = genuine;
  cheat.pop_back();
  const auto r = check_cheat_once(ctx, {cheat, genuine, genuine});
  EXPECT_TRUE(all_hold(r));
  EXPECT_GT(r[0].rhs, 0);
}

TEST(UpperProp, WitnessFromRepeatedBlock) {
  const SimulationContext ctx(accepting_start(), kHalf, kHalf);
  const Word u{1};  // the sharp letter keeps q0
  const Word block = hat(ctx.alphabet(), u);
  const Word w = blocks_word(ctx, {block, block, block});
  const auto res = extract_witness(ctx, w);
  EXPECT_EQ(res.witness, u);
  EXPECT_FALSE(res.report.violated());
  EXPECT_EQ(res.report.lhs, 1);
}

TEST(UpperProp, CheatingFirstBlockIsSkipped) {
  // The cheating block loses theta of the mass, so theta is kept small.
  const SimulationContext ctx(accepting_start(), kHalf, Rational(1, 4));
  const Word u{1};
  const Word block = hat(ctx.alphabet(), u);
  Word cheat = hat(ctx.alphabet(), {0});
  cheat.erase(cheat.begin() + 1);
  const Word w = blocks_word(ctx, {cheat, block, block, block, block});
  ASSERT_GT(accept_prob(ctx.instance(), w), ctx.theta());
  const auto res = extract_witness(ctx, w);
  EXPECT_EQ(res.witness, u);
  EXPECT_FALSE(res.report.violated());
}

TEST(UpperProp, Precondition) {
  const SimulationContext ctx(accepting_start(), kHalf, kHalf);
  EXPECT_THROW(extract_witness(ctx, {ctx.alphabet().dollar()}), PreconditionFailed);
}

TEST(Context, SplitAndUnhat) {
  const SimulationContext ctx(accepting_start(), kHalf, kHalf);
  const Word u{0, 1, 0};
  const Word h = hat(ctx.alphabet(), u);
  EXPECT_EQ(ctx.unhat(h), u);
  EXPECT_THROW(ctx.unhat({ctx.alphabet().dollar()}), PreconditionFailed);
  const auto parts = ctx.split_blocks(blocks_word(ctx, {h, {}}));
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0], h);
  EXPECT_TRUE(parts[1].empty());
  EXPECT_TRUE(parts[2].empty());
}

TEST(Chain, AcceptingSinkGivesOne) {
  AutomatonBuilder b({"q"}, {"a"});
  b.initial("q").final_state("q").complete_with_loops();
  const auto report = equivalence_chain_report(b.build(), {kHalf}, {kHalf}, SearchBudget{4, 0},
                                               SearchBudget{2, 0});
  for (const auto& row : report.rows) EXPECT_EQ(row.bound.probability, 1);
  EXPECT_EQ(report.min_bound, 1);
}

TEST(Chain, SymmetricFig1CappedAtHalf) {
  const auto a = fig1_instance(kHalf, kHalf);
  const auto report = equivalence_chain_report(a, {Rational(1, 3), kHalf}, {kHalf},
                                               SearchBudget{9, 0}, SearchBudget{0, 0});
  for (const auto& row : report.rows)
    if (row.automaton != "C") EXPECT_LE(row.bound.probability, kHalf);
  EXPECT_EQ(report.rows.front().automaton, "A");
  EXPECT_EQ(report.rows.front().bound.probability, kHalf);
}

TEST(Chain, ZeroLengthBudget) {
  const auto a = accepting_start();
  const auto report = equivalence_chain_report(a, {kHalf}, {kHalf}, SearchBudget{0, 0}, SearchBudget{0, 0});
  // C only accepts after next_word, so its empty-word value is 0.
  for (const auto& row : report.rows) {
    EXPECT_TRUE(row.bound.word.empty());
    EXPECT_EQ(row.bound.probability, row.automaton == "C" ? 0 : 1);
  }
}

TEST(CaseStudy, SymmetricRowsAtMostHalf) {
  const auto cs = fig1_case_study(kHalf, kHalf, 6, 64, Rational(1, 100));
  for (const auto& r : cs.rows) EXPECT_LE(r.exact, kHalf);
  EXPECT_FALSE(cs.first_above);
}

TEST(CaseStudy, BiasedRowsMatchClosedForm) {
  const Rational x(3, 4), y(1, 4);
  const auto cs = fig1_case_study(x, y, 20, 4096, Rational(1, 100));
  ASSERT_TRUE(cs.first_above);
  for (const auto& r : cs.rows) {
    EXPECT_EQ(r.exact, oracle::fig1_family(x, y, r.n, r.m));
    EXPECT_EQ(r.exact, fig1_closed_form(x, y, r.n, r.m));
    if (r.n == 0) EXPECT_EQ(r.exact, kHalf);
  }
  EXPECT_EQ(cs.threshold, Rational(99, 100));
}

TEST(Suite, NoViolations) {
  const auto reports = run_property_suite(7, 30);
  EXPECT_TRUE(all_hold(reports));
  std::set<std::string> seen;
  for (const auto& r : reports) seen.insert(r.proposition);
  for (const char* p : {"fair_coin.1", "fair_coin.2", "fair_coin.3", "lower.1", "lower.2", "theta",
                        "cheatonce", "upper"})
    EXPECT_TRUE(seen.contains(p)) << p;
  EXPECT_EQ(reports.size(), run_property_suite(7, 30).size());
}
