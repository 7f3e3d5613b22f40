#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "numberless/family.hpp"
#include "numberless/fair_coin.hpp"
#include "numberless/search.hpp"
#include "numberless/simulation.hpp"

namespace numberless {

enum class Relation { Equal, AtMost, AtLeast };
enum class Verdict { Equal, Bounded, Violated, NotApplicable };

const char* to_string(Relation r);
const char* to_string(Verdict v);

// Outcome of checking one identity or inequality on concrete inputs. The
// verdict is a function of (lhs, rhs, relation), see judge().
struct PropReport {
  std::string proposition;
  std::string inputs;
  Rational lhs;
  Rational rhs;
  Relation relation = Relation::Equal;
  Verdict verdict = Verdict::NotApplicable;

  bool violated() const { return verdict == Verdict::Violated; }
};

Verdict judge(const Rational& lhs, const Rational& rhs, Relation relation);
PropReport make_report(std::string proposition, std::string inputs, Rational lhs, Rational rhs,
                       Relation relation);

// Everything derived from one simple PA and one choice of (lambda, theta):
// B_lambda, the numberless simulation C and its instance C[lambda, theta].
class SimulationContext {
 public:
  SimulationContext(const ProbAutomaton& source, Rational lambda, Rational theta);

  const ProbAutomaton& source() const { return source_; }
  const Rational& lambda() const { return lambda_; }
  const Rational& theta() const { return theta_; }
  const ProbAutomaton& fair_coin() const { return fair_coin_; }
  const SimulationNPA& simulation() const { return simulation_; }
  const ProbAutomaton& instance() const { return instance_; }
  const SimAlphabet& alphabet() const { return simulation_.alphabet(); }

  // Is `block` (free of next_word) the hat image of some word over B?
  // Decided by running the fairness checker on block . next_word.
  bool in_hat_image(const Word& block) const;
  // Inverse of hat on its image. Throws PreconditionFailed otherwise.
  Word unhat(const Word& block) const;

  // Splits w after each next_word. The trailing remainder (possibly empty)
  // is returned as the last element.
  std::vector<Word> split_blocks(const Word& w) const;

 private:
  ProbAutomaton source_;
  Rational lambda_;
  Rational theta_;
  SimulationNPA simulation_;
  ProbAutomaton fair_coin_;
  ProbAutomaton instance_;
};

// Fair-coin identities for a source transition structure:
//   item 1: P_B(q -[a]^k-> r) = A_{lambda,k} P_A(q -a-> r), a = u[0]
//   item 2: P_B(q -[u]^k-> r) = A_{lambda,k}^|u| P_A(q -u-> r)
//   item 3: P_B(q -w-> r) <= P_A(q -erase(w)-> r)
// `w` defaults to [u]^k. B-side values are computed on the constructed
// automaton; A-side values on the source.
std::vector<PropReport> check_fair_coin(const ProbAutomaton& a, const FairCoinOutput& b,
                                        const Rational& lambda, unsigned long k, const Word& u,
                                        StateId q, StateId r,
                                        const std::optional<Word>& w = std::nullopt);
std::vector<PropReport> check_fair_coin(const ProbAutomaton& a, const Rational& lambda,
                                        unsigned long k, const Word& u, StateId q, StateId r,
                                        const std::optional<Word>& w = std::nullopt);

// P_C(hat(u) nw) = theta^|u| P_B(u) and
// P_C((hat(u) nw)^l) = (1 - (1 - theta^|u|)^l) P_B(u), u over B.
std::vector<PropReport> check_lower(const SimulationContext& ctx, const Word& u, unsigned long l);

// P_C(u) <= theta for u over C without next_word. Throws PreconditionFailed
// if u contains next_word.
PropReport check_theta(const SimulationContext& ctx, const Word& u);

// For w = u_1 nw ... u_k nw and each u_i outside the hat image:
// P_C(w) <= P_C(u_i nw ... u_k nw). A single NotApplicable report when every
// block is a hat image.
std::vector<PropReport> check_cheat_once(const SimulationContext& ctx,
                                         const std::vector<Word>& blocks);

struct WitnessResult {
  Word witness;  // over B
  PropReport report;
};

// Splits w at next_word, un-hats the blocks that are hat images and returns
// the one with the largest B_lambda acceptance (the empty word when no block
// qualifies), checking P_B(v) >= (P_C(w) - theta) / (1 - theta).
// Throws PreconditionFailed when P_C(w) <= theta.
WitnessResult extract_witness(const SimulationContext& ctx, const Word& w);

struct ChainRow {
  std::string automaton;  // "A", "B", or "C"
  std::optional<Rational> lambda;
  std::optional<Rational> theta;
  SearchResult bound;     // within the search budget
  std::optional<Rational> lifted;  // C only: P_C((hat(u) nw)^l) for the best B word u
};

struct ChainReport {
  std::vector<ChainRow> rows;
  Rational min_bound;
  Rational max_bound;
};

// Lower bounds on the values of A, every B_lambda and every C[lambda, theta].
// Evidence only: value 1 itself is not decided.
ChainReport equivalence_chain_report(const ProbAutomaton& a, const std::vector<Rational>& lambdas,
                                     const std::vector<Rational>& thetas,
                                     const SearchBudget& budget,
                                     const SearchBudget& simulation_budget,
                                     unsigned long lift_repetitions = 3);

// The six-state example automaton over {i, a, f}: C1 -i-> L1/R1 (1/2 each),
// L1 -a-> L1 (x) / C2 (1-x), R1 -a-> R1 (y) / C2 (1-y), L1 -f-> L2,
// R1 -f-> R2, C2 -a-> C2, C2 -f-> C1, L2 and R2 absorbing, L2 accepting.
// Transitions not listed are self-loops.
ProbAutomaton fig1_instance(const Rational& x, const Rational& y);
NumberlessAutomaton fig1_npa();
// (i a^n f)^m over the example alphabet.
FamilyTemplate fig1_family(const NameTable& alphabet);
// x^n/(x^n+y^n) * (1 - (1 - (x^n+y^n)/2)^m), closed form for the family.
Rational fig1_closed_form(const Rational& x, const Rational& y, unsigned long n, unsigned long m);

struct CaseStudyRow {
  unsigned long n = 0;
  unsigned long m = 0;
  Rational exact;
  double approx = 0;
};

struct CaseStudy {
  std::vector<CaseStudyRow> rows;
  Rational threshold;  // 1 - eps
  std::optional<std::pair<unsigned long, unsigned long>> first_above;
};

// Rows for n = 0..n_max and m = 1, 2, 4, ... up to m_max (m_max included).
CaseStudy fig1_case_study(const Rational& x, const Rational& y, unsigned long n_max,
                          unsigned long m_max, const Rational& eps);

using Rng = std::mt19937_64;

std::size_t uniform_index(Rng& rng, std::size_t n);

// Complete simple PA with states q0..q{n-1} and letters a, b, c, ...
// Each pair is either deterministic or a fair split over two distinct
// states. At least one final state when final_density > 0.
ProbAutomaton random_simple_pa(std::uint64_t seed, std::size_t num_states,
                               std::size_t num_letters, double final_density);

Word random_word(Rng& rng, std::size_t num_letters, std::size_t length);

// Randomized run of every proposition check. Each trial draws a simple PA
// (at most 4 states, 3 letters) for the fair-coin items and a smaller one
// (at most 2 states, 2 letters) for the simulation items, then checks
//   fair_coin.1-3, lower.1-2, theta, cheatonce and upper
// on random inputs. Reports are returned in generation order; the upper
// check only appears for words whose acceptance exceeds theta.
std::vector<PropReport> run_property_suite(std::uint64_t seed, std::size_t trials);

}  // namespace numberless
