// Command-line front end: learning sessions, single queries, fixture generation.
//
// Exit codes: 0 yes / equal, 1 no / not equal, 2 error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "omegatree/omegatree.hpp"

namespace {

using namespace omt;

constexpr int kYes = 0, kNo = 1, kError = 2;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

BuchiAcceptor read_dbw(const std::string& path) {
  AutomatonFile f = read_automaton(path);
  if (f.kind != FileKind::dbw && f.kind != FileKind::nbw) throw InputError(path + ": expected a dbw file");
  return f.buchi();
}

int print_verdict(const Alphabet& sigma, const std::optional<UPWord>& ce) {
  if (!ce) {
    std::cout << "yes\n";
    return kYes;
  }
  std::cout << "no\nce: " << format_upword(sigma, *ce) << "\n";
  return kNo;
}

struct LearnArgs {
  std::string target, learner = "weak", strategy = "uniform", order = "negative", out, trace;
  std::size_t arity = 2, max_queries = 1000000;
};

int cmd_learn_tree(const LearnArgs& a) {
  TeacherOptions opt;
  opt.arity = a.arity;
  opt.strategy = a.strategy == "mixed" ? TreeStrategy::mixed : TreeStrategy::uniform;
  opt.order = a.order == "positive" ? EqOrder::positive_first : EqOrder::negative_first;
  Teacher teacher(complete(read_dbw(a.target)), opt);
  if (!a.trace.empty()) teacher.log().enable_trace();

  std::unique_ptr<WordLearner> learner;
  if (a.learner == "enum")
    learner = std::make_unique<EnumLearner>();
  else
    learner = std::make_unique<WeakLearner>();

  SearchBudget budget;
  budget.max_queries = a.max_queries;
  SessionReport report;
  std::string result = "equal";
  try {
    learn_trees(teacher, *learner, report, budget);
  } catch (const BudgetExhausted& e) {
    result = "budget-exhausted";
    std::cerr << "omegatree: " << e.what() << "\n";
  }

  const QueryLog& log = teacher.log();
  std::cout << "result: " << result << " queries: MQ=" << report.learner_mq << " TMQ=" << log.tree_mq
            << " EQ=" << log.eq << "\n";
  std::cout << "learner: " << learner->name() << "\n"
            << "arity: " << a.arity << "\n"
            << "strategy: " << a.strategy << "\n"
            << "target_states: " << teacher.target().num_states() << "\n"
            << "hypothesis_states: " << report.result.num_states() << "\n"
            << "mq: " << report.learner_mq << "\n"
            << "tree_mq: " << log.tree_mq << "\n"
            << "eq: " << log.eq << "\n"
            << "rsq_simulations: " << report.rsq_simulations << "\n"
            << "max_counterexample_length: " << report.max_counterexample_length << "\n"
            << "wall_time_ms: " << report.wall_time_ms << "\n";

  if (!a.trace.empty()) {
    std::ostringstream t;
    for (const std::string& line : log.trace()) t << line << "\n";
    for (const CounterexampleRecord& c : report.counterexamples)
      t << "CE " << c.hypothesis << " " << polarity_name(c.polarity) << " "
        << format_upword(teacher.alphabet(), c.word) << "\n";
    write_file(a.trace, t.str());
    for (std::size_t i = 0; i < report.hypotheses.size(); ++i)
      write_file(a.trace + ".h" + std::to_string(i) + ".dbw", to_text(report.hypotheses[i]));
  }
  if (result != "equal") return kNo;
  if (!a.out.empty())
    write_file(a.out + ".dbw", to_text(report.result));
  else
    std::cout << to_text(report.result);
  return kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning regular omega-tree languages from word-level queries"};
  app.require_subcommand(1);

  LearnArgs la;
  auto* learn = app.add_subcommand("learn-tree", "learn Trees_d(L) for a target DBW");
  learn->add_option("--target", la.target, "target DBW file")->required();
  learn->add_option("--arity", la.arity, "tree arity d")->check(CLI::PositiveNumber);
  learn->add_option("--learner", la.learner)->check(CLI::IsMember({"weak", "enum"}));
  learn->add_option("--strategy", la.strategy)->check(CLI::IsMember({"uniform", "mixed"}));
  learn->add_option("--eq-order", la.order)->check(CLI::IsMember({"negative", "positive"}));
  learn->add_option("--max-queries", la.max_queries, "tree queries allowed per counterexample search");
  learn->add_option("--out", la.out, "write the learned DBW to <out>.dbw");
  learn->add_option("--trace", la.trace, "write the query trace and hypotheses");

  std::string gen_class = "dwpw", gen_out;
  std::size_t gen_states = 4, gen_alphabet = 2;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "generate a random weak complete DBW");
  gen->add_option("--class", gen_class)->check(CLI::IsMember({"dwpw"}));
  gen->add_option("--states", gen_states)->check(CLI::PositiveNumber);
  gen->add_option("--alphabet", gen_alphabet)->check(CLI::Range(1, 26));
  gen->add_option("--seed", gen_seed);
  gen->add_option("--out", gen_out);

  std::string tree_file, dbw_file;
  auto* acc_cmd = app.add_subcommand("acc", "does every path of a tree belong to L(dbw)?");
  acc_cmd->add_option("--tree", tree_file)->required();
  acc_cmd->add_option("--dbw", dbw_file)->required();

  std::string eq_target, eq_hyp;
  auto* eq = app.add_subcommand("eq", "equivalence of two DBWs");
  eq->add_option("--target", eq_target)->required();
  eq->add_option("--hyp", eq_hyp)->required();

  std::string usq_target, usq_acceptor;
  auto* usq = app.add_subcommand("usq", "is L(hypothesis) a subset of L(target)? (R-omega over RSQs)");
  usq->add_option("--target", usq_target)->required();
  usq->add_option("--hypothesis,--acceptor", usq_acceptor)->required();

  std::string mq_target, mq_word;
  auto* mq = app.add_subcommand("mq", "membership of u(v)^omega, written \"u ; v\"");
  mq->add_option("--target", mq_target)->required();
  mq->add_option("--word", mq_word)->required();

  std::size_t family_n = 3;
  auto* family = app.add_subcommand("family", "print the blowup family member M_n");
  family->add_option("--ln", family_n)->required()->check(CLI::PositiveNumber);

  std::string det_file;
  bool det_print = false;
  auto* det = app.add_subcommand("determinize", "subset construction of a safety acceptor");
  det->add_option("file", det_file, "input file (stdin when omitted)");
  det->add_flag("--print", det_print, "also print the deterministic acceptor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*learn) return cmd_learn_tree(la);
    if (*gen) {
      Rng rng(gen_seed);
      std::string text = to_text(random_weak_dbw(rng, gen_states, gen_alphabet));
      if (gen_out.empty())
        std::cout << text;
      else
        write_file(gen_out, text);
      return kYes;
    }
    if (*acc_cmd) {
      BuchiAcceptor h = read_dbw(dbw_file);
      TreeAutomaton t = read_automaton(tree_file, &h.alphabet()).tree();
      return print_verdict(h.alphabet(), acc(t, h));
    }
    if (*eq) {
      BuchiAcceptor t = read_dbw(eq_target), h = read_dbw(eq_hyp);
      Teacher teacher(complete(t));
      WordEqAnswer a = teacher.word_eq(h);
      if (a.equal) {
        std::cout << "yes\n";
        return kYes;
      }
      std::cout << "no " << polarity_name(a.polarity) << "\nce: " << format_upword(t.alphabet(), *a.witness)
                << "\n";
      return kNo;
    }
    if (*usq) {
      BuchiAcceptor t = read_dbw(usq_target), n = read_dbw(usq_acceptor);
      Teacher teacher(complete(t));
      BuchiRsq oracle([&](const BuchiAcceptor& p) { return teacher.rsq(p); });
      int code = print_verdict(t.alphabet(), r_omega(n, oracle));
      std::cout << "queries: " << oracle.calls() << "\n";
      return code;
    }
    if (*mq) {
      BuchiAcceptor t = read_dbw(mq_target);
      bool yes = mq_lasso(complete(t), parse_upword(t.alphabet(), mq_word));
      std::cout << (yes ? "yes" : "no") << "\n";
      return yes ? kYes : kNo;
    }
    if (*family) {
      std::cout << to_text(blowup_family(family_n));
      return kYes;
    }
    if (*det) {
      AutomatonFile f = det_file.empty() ? parse_automaton(std::cin) : read_automaton(det_file);
      BuchiAcceptor d = determinize_safety(f.buchi());
      std::cout << "macro-states: " << d.num_states() << "\n";
      if (det_print) std::cout << to_text(d);
      return kYes;
    }
  } catch (const ParseError& e) {
    std::cerr << "omegatree: parse error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "omegatree: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
