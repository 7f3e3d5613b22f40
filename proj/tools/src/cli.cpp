#include "numberless_cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "numberless/buchi.hpp"
#include "numberless/document.hpp"
#include "numberless/errors.hpp"
#include "numberless/fair_coin.hpp"
#include "numberless/family.hpp"
#include "numberless/lasso.hpp"
#include "numberless/search.hpp"
#include "numberless/semantics.hpp"
#include "numberless/simulation.hpp"
#include "numberless/sweep.hpp"
#include "numberless/verification.hpp"

namespace numberless::cli {
namespace {

std::string render_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// "3/8 0.375"
std::string exact_and_float(const Rational& r) {
  return to_string(r) + " " + render_double(to_double(r));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string describe_word(const NameTable& alphabet, const Word& w) {
  return w.empty() ? std::string("eps") : format_word(alphabet, w);
}

// Flags shared by the subcommands; each subcommand reads what it needs.
struct Options {
  std::string automaton;
  std::vector<std::string> sets;
  std::string out_path;
  std::string word;
  std::string family;
  std::vector<std::string> binds;
  std::string from;
  std::string to;
  std::string stem;
  std::string cycle;
  std::string lambda = "1/2";
  std::string theta = "1/2";
  std::string eps = "1/10";
  std::string x = "3/4";
  std::string y = "1/4";
  std::size_t max_len = 8;
  std::size_t beam = 0;
  std::size_t max_states = 2'000'000;
  std::size_t grid = 3;
  std::size_t trials = 100;
  std::size_t n_max = 20;
  std::size_t m_max = 4096;
  unsigned long k = 1;
  std::uint64_t seed = 1;
  std::uint64_t samples = 10'000;
};

class Session {
 public:
  Session(const Options& opt, std::ostream& out, std::ostream& err)
      : opt_(opt), out_(out), err_(err) {}

  std::ostream& out() {
    if (opt_.out_path.empty()) return out_;
    if (!file_) {
      file_ = std::make_unique<std::ofstream>(opt_.out_path, std::ios::binary);
      if (!*file_) throw ValidationError("cannot write '" + opt_.out_path + "'");
    }
    return *file_;
  }
  std::ostream& err() { return err_; }

  const AutomatonDocument& document() {
    if (opt_.automaton.empty()) throw ValidationError("--automaton is required");
    if (!doc_) doc_ = parse_document(read_file(opt_.automaton));
    return *doc_;
  }

  ParameterBindings bindings() const {
    ParameterBindings b;
    for (const auto& s : opt_.sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0)
        throw ValidationError("--set expects name=value, got '" + s + "'");
      b[s.substr(0, eq)] = parse_rational(s.substr(eq + 1));
    }
    return b;
  }

  ProbAutomaton prob_automaton() { return to_prob_automaton(document(), bindings()); }

  SearchBudget budget() const {
    return SearchBudget{opt_.max_len, opt_.beam, opt_.max_states};
  }

 private:
  const Options& opt_;
  std::ostream& out_;
  std::ostream& err_;
  std::unique_ptr<std::ofstream> file_;
  std::optional<AutomatonDocument> doc_;
};

Bindings family_bindings(const std::vector<std::string>& binds) {
  Bindings b;
  for (const auto& s : binds) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ValidationError("--bind expects name=count, got '" + s + "'");
    const std::string value = s.substr(eq + 1);
    unsigned long v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
      throw ValidationError("--bind expects a non-negative count, got '" + value + "'");
    b[s.substr(0, eq)] = v;
  }
  return b;
}

int cmd_eval(Session& s, const Options& o) {
  const ProbAutomaton pa = s.prob_automaton();
  if (!o.family.empty()) {
    const auto tmpl = FamilyTemplate::parse(pa.alphabet(), o.family);
    s.out() << exact_and_float(family_eval(pa, tmpl, family_bindings(o.binds))) << "\n";
    return kSuccess;
  }
  s.out() << exact_and_float(accept_prob(pa, parse_word(pa.alphabet(), o.word))) << "\n";
  return kSuccess;
}

int cmd_reach(Session& s, const Options& o) {
  const ProbAutomaton pa = s.prob_automaton();
  const StateId source = o.from.empty() ? pa.initial() : pa.state_id(o.from);
  std::vector<StateId> targets;
  std::istringstream in(o.to);
  for (std::string name; in >> name;) targets.push_back(pa.state_id(name));
  if (targets.empty()) targets = pa.final_states();
  s.out() << exact_and_float(reach_prob(pa, source, parse_word(pa.alphabet(), o.word), targets))
          << "\n";
  return kSuccess;
}

int cmd_search(Session& s, const Options&) {
  const ProbAutomaton pa = s.prob_automaton();
  const SearchResult r = value_lower_bound(pa, s.budget());
  s.out() << "probability " << exact_and_float(r.probability) << "\n"
          << "word " << describe_word(pa.alphabet(), r.word) << "\n"
          << "explored " << r.explored << "\n";
  return kSuccess;
}

int cmd_fair_coin(Session& s, const Options& o) {
  const FairCoinOutput b = fair_coin(s.prob_automaton(), parse_rational(o.lambda));
  s.out() << serialize(to_document(b.automaton, "fair-coin"));
  return kSuccess;
}

int cmd_simulate_build(Session& s, const Options&) {
  s.out() << serialize(to_document(build_simulation(s.prob_automaton()), "simulation"));
  return kSuccess;
}

int cmd_simulate_instantiate(Session& s, const Options& o) {
  const SimulationNPA c = build_simulation(s.prob_automaton());
  const ProbAutomaton inst =
      instantiate_simulation(c, parse_rational(o.lambda), parse_rational(o.theta));
  s.out() << serialize(to_document(inst, "simulation-instance"));
  return kSuccess;
}

int cmd_hat(Session& s, const Options& o) {
  const SimulationNPA c = build_simulation(s.prob_automaton());
  const Word u = parse_word(c.alphabet().b_alphabet(), o.word);
  s.out() << describe_word(c.alphabet().names(), hat(c.alphabet(), u)) << "\n";
  return kSuccess;
}

int cmd_encode(Session& s, const Options& o) {
  const FairCoinStructure b = fair_coin_structure(s.prob_automaton());
  const Word u = parse_word(b.alphabet(), o.word);
  if (std::find(u.begin(), u.end(), b.sharp()) != u.end())
    throw ValidationError("the word to encode must not contain '#'");
  s.out() << describe_word(b.alphabet(), encode_word(u, o.k, b.sharp())) << "\n";
  return kSuccess;
}

int cmd_fairness_dfa(Session& s, const Options&) {
  const SimulationNPA c = build_simulation(s.prob_automaton());
  s.out() << serialize(to_document(c.checker().as_automaton(), "fairness-checker"));
  return kSuccess;
}

int cmd_buchi(Session& s, const Options&) {
  s.out() << serialize(to_document(buchi_reduction(s.prob_automaton()), "buchi"));
  return kSuccess;
}

int cmd_lasso(Session& s, const Options& o) {
  const AutomatonDocument& doc = s.document();
  const ProbAutomaton pa = s.prob_automaton();
  // PBA documents are used as they are; anything else goes through the reduction.
  const BuchiAutomaton ba = doc.kind == DocumentKind::PBA
                                ? BuchiAutomaton{pa, std::nullopt, std::nullopt}
                                : buchi_reduction(pa);
  const NameTable& letters = ba.automaton.alphabet();
  const LassoWord w{parse_word(letters, o.stem), parse_word(letters, o.cycle)};
  s.out() << exact_and_float(lasso_prob(ba, w)) << "\n";
  return kSuccess;
}

int cmd_sweep(Session& s, const Options& o) {
  const AutomatonDocument& doc = s.document();
  NumberlessAutomaton npa = [&] {
    if (doc.kind == DocumentKind::NPA) return std::get<NumberlessAutomaton>(to_automaton(doc));
    return support_abstraction(s.prob_automaton());
  }();
  const DeltaSpec center = s.prob_automaton().transitions();
  const auto points = noisy_sweep(npa, center, parse_rational(o.eps), o.grid, s.budget());

  std::size_t axes = points.empty() ? 0 : points.front().offsets.size();
  std::ostream& out = s.out();
  out << "point";
  for (std::size_t i = 0; i < axes; ++i) out << ",offset" << i;
  out << ",distance,bound,bound_float,word\n";
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto& pt = points[p];
    out << p;
    for (const auto& off : pt.offsets) out << "," << to_string(off);
    out << "," << to_string(pt.distance) << "," << to_string(pt.bound.probability) << ","
        << render_double(to_double(pt.bound.probability)) << ","
        << csv_field(describe_word(npa.alphabet(), pt.bound.word)) << "\n";
  }
  return kSuccess;
}

int cmd_check_props(Session& s, const Options& o) {
  const auto reports = run_property_suite(o.seed, o.trials);
  std::ostream& out = s.out();
  out << "proposition,inputs,lhs,rhs,relation,verdict\n";
  std::size_t violations = 0;
  for (const auto& r : reports) {
    out << r.proposition << "," << csv_field(r.inputs) << "," << to_string(r.lhs) << ","
        << to_string(r.rhs) << "," << csv_field(to_string(r.relation)) << ","
        << to_string(r.verdict) << "\n";
    if (r.violated()) ++violations;
  }
  s.err() << reports.size() << " checks, " << violations << " violations\n";
  return violations ? kViolation : kSuccess;
}

int cmd_case_study(Session& s, const Options& o) {
  const CaseStudy study = fig1_case_study(parse_rational(o.x), parse_rational(o.y), o.n_max,
                                          o.m_max, parse_rational(o.eps));
  std::ostream& out = s.out();
  out << "n,m,exact,float\n";
  for (const auto& r : study.rows)
    out << r.n << "," << r.m << "," << to_string(r.exact) << "," << render_double(r.approx) << "\n";
  if (study.first_above)
    s.err() << "first (n, m) above " << to_string(study.threshold) << ": ("
            << study.first_above->first << ", " << study.first_above->second << ")\n";
  else
    s.err() << "no row above " << to_string(study.threshold) << "\n";
  return kSuccess;
}

int cmd_export_dot(Session& s, const Options& o) {
  const AutomatonDocument& doc = s.document();
  if (doc.kind == DocumentKind::NPA && o.sets.empty()) {
    s.out() << export_dot(to_automaton(doc));
    return kSuccess;
  }
  s.out() << export_dot(s.prob_automaton());
  return kSuccess;
}

int cmd_monte_carlo(Session& s, const Options& o) {
  const ProbAutomaton pa = s.prob_automaton();
  const Word w = parse_word(pa.alphabet(), o.word);
  s.out() << "estimate " << render_double(monte_carlo_accept(pa, w, o.samples, o.seed)) << "\n"
          << "exact " << exact_and_float(accept_prob(pa, w)) << "\n";
  return kSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probabilistic automata with exact rational arithmetic", "numberless"};
  app.require_subcommand(1);
  Options o;

  using Handler = std::function<int(Session&, const Options&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto command = [&](const char* name, const char* help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands.emplace_back(sub, std::move(h));
    return sub;
  };
  auto with_automaton = [&](CLI::App* sub) {
    sub->add_option("--automaton", o.automaton, "Automaton document (JSON)");
    sub->add_option("--set", o.sets, "Bind a document parameter, name=p/q (repeatable)");
    sub->add_option("--out", o.out_path, "Write the result to a file");
    return sub;
  };
  auto with_budget = [&](CLI::App* sub) {
    sub->add_option("--max-len", o.max_len, "Longest word explored");
    sub->add_option("--beam", o.beam, "Beam width (0 = exhaustive)");
    sub->add_option("--max-states", o.max_states, "Distinct distributions before giving up");
    return sub;
  };

  with_automaton(command("eval", "Acceptance probability of a word", cmd_eval))
      ->add_option("--word", o.word, "Whitespace-separated letters");
  commands.back().first->add_option("--family", o.family, "Parametric word, e.g. \"( i a^n f )^m\"");
  commands.back().first->add_option("--bind", o.binds, "Family exponent, name=count (repeatable)");

  auto* reach = with_automaton(command("reach", "Reachability probability", cmd_reach));
  reach->add_option("--word", o.word, "Whitespace-separated letters");
  reach->add_option("--from", o.from, "Source state (default: initial)");
  reach->add_option("--to", o.to, "Target states (default: final states)");

  with_budget(with_automaton(command("search", "Lower bound on the value", cmd_search)));
  with_automaton(command("fair-coin", "Fair-coin automaton B_lambda", cmd_fair_coin))
      ->add_option("--lambda", o.lambda, "Coin bias");
  with_automaton(command("simulate-build", "Numberless simulation automaton", cmd_simulate_build));
  auto* inst = with_automaton(
      command("simulate-instantiate", "Instance of the simulation", cmd_simulate_instantiate));
  inst->add_option("--lambda", o.lambda, "Coin bias");
  inst->add_option("--theta", o.theta, "Check probability");
  with_automaton(command("hat", "Encode a fair-coin word for the simulation", cmd_hat))
      ->add_option("--word", o.word, "Word over the fair-coin alphabet");
  auto* enc = with_automaton(command("encode", "Insert 2k sharps after every letter", cmd_encode));
  enc->add_option("--word", o.word, "Word over the source alphabet");
  enc->add_option("--k", o.k, "Attempts per letter");
  with_automaton(command("fairness-dfa", "Fairness checker of the simulation", cmd_fairness_dfa));
  with_automaton(command("buchi", "Buchi reduction", cmd_buchi));
  auto* lasso = with_automaton(command("lasso", "Probability of a lasso word", cmd_lasso));
  lasso->add_option("--stem", o.stem, "Stem letters");
  lasso->add_option("--cycle", o.cycle, "Cycle letters")->required();
  auto* sweep = with_budget(with_automaton(command("sweep", "Noisy-parameter sweep", cmd_sweep)));
  sweep->add_option("--eps", o.eps, "Largest offset");
  sweep->add_option("--grid", o.grid, "Offsets per axis");
  auto* props = command("check-props", "Randomized proposition checks", cmd_check_props);
  props->add_option("--seed", o.seed, "Random seed");
  props->add_option("--trials", o.trials, "Number of trials");
  props->add_option("--out", o.out_path, "Write the CSV to a file");
  auto* cs = command("case-study", "Acceptance of (i a^n f)^m on the example", cmd_case_study);
  cs->add_option("--x", o.x, "Parameter x");
  cs->add_option("--y", o.y, "Parameter y");
  cs->add_option("--n-max", o.n_max, "Largest n");
  cs->add_option("--m-max", o.m_max, "Largest m");
  cs->add_option("--eps", o.eps, "Threshold is 1 - eps");
  cs->add_option("--out", o.out_path, "Write the CSV to a file");
  with_automaton(command("export-dot", "Graphviz rendering", cmd_export_dot));
  auto* mc = with_automaton(command("monte-carlo", "Sampled acceptance", cmd_monte_carlo));
  mc->add_option("--word", o.word, "Whitespace-separated letters");
  mc->add_option("--samples", o.samples, "Number of runs");
  mc->add_option("--seed", o.seed, "Random seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    for (auto& [sub, handler] : commands) {
      if (!sub->parsed()) continue;
      Session session(o, out, err);
      return handler(session, o);
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace numberless::cli
