#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "omegatree/automata.hpp"
#include "omegatree/constructions.hpp"
#include "omegatree/core.hpp"
#include "omegatree/subsetq.hpp"
#include "omegatree/teacher.hpp"
#include "omegatree/wordlearn.hpp"

namespace omt {

/// Product of a tree with a DBW over the directions: node q1 * |M| + q2, edge
/// labelled i to (next(q1, i), δ(q2, label(q1, i))).
inline LabeledDigraph path_product(const TreeAutomaton& t, const BuchiAcceptor& m) {
  const std::size_t n2 = m.num_states();
  LabeledDigraph g;
  g.out.resize(t.num_states() * n2);
  for (State q1 = 0; q1 < t.num_states(); ++q1)
    for (State q2 = 0; q2 < n2; ++q2)
      for (Direction i = 0; i < t.arity(); ++i)
        g.add(q1 * n2 + q2, i, t.next(q1, i) * n2 + *m.next(q2, t.label(q1, i)));
  return g;
}

/// Algorithm Acc: none when every path of the tree is accepted by M (a DBW,
/// completed here), otherwise a path label u(v)^omega outside L(M).
inline std::optional<UPWord> acc(const TreeAutomaton& t, const BuchiAcceptor& dbw) {
  if (!dbw.is_deterministic()) throw InputError("acc: acceptor must be deterministic");
  if (!(t.alphabet() == dbw.alphabet())) throw InputError("acc: alphabets differ");
  const BuchiAcceptor m = complete(dbw);
  const std::size_t n2 = m.num_states();
  auto lasso = find_lasso(
      path_product(t, m), t.initial() * n2 + m.initial(),
      [&](State x) { return !m.is_accepting(x % n2); }, [](State) { return true; });
  if (!lasso) return std::nullopt;
  const auto& [x, y] = *lasso;
  State q1 = t.initial();
  for (Direction d : x) q1 = t.next(q1, d);
  return UPWord{t.labels_along(t.initial(), x), t.labels_along(q1, y)};
}

/// A subset query about L answered by one tree membership query about
/// Trees_d(L); the empty language is answered without a query.
inline bool rsq_via_tree_mq(Teacher& teacher, const BuchiAcceptor& n) {
  if (buchi_empty(n)) return true;
  if (!n.all_accepting())
    throw InputError("rsq_via_tree_mq expects a safety acceptor");
  BuchiAcceptor trimmed = trim_safety(n);
  if (trimmed.num_states() == 0) return true;
  if (trimmed.out_degree() > teacher.arity())
    throw ArityError("probe out-degree exceeds the tree arity");
  return teacher.tree_mq(tree_of_safety(trimmed, teacher.arity()));
}

/// One Findctrex instance per accepting state, stepped round-robin with one
/// oracle query per turn. The first instance to finish wins.
class DovetailPool {
 public:
  struct Turn {
    State instance;
    bool finished;
  };

  DovetailPool(const BuchiAcceptor& m, BuchiRsq& oracle) : oracle_(oracle) {
    LabeledDigraph g = graph_of(m);
    std::vector<bool> reach = accessible(m);
    SccDecomposition scc = sccs(g);
    for (State q : m.accepting_states()) {
      if (!reach[q] || !scc.recurrent[scc.component_of[q]]) continue;
      instances_.push_back({q, findctrex(std::make_shared<const Anchor>(m, q)), false});
    }
  }

  /// Runs until some instance returns; throws BudgetExhausted via the oracle.
  UPWord run() {
    if (instances_.empty()) throw Error("dovetail: no accepting state lies on a cycle");
    oracle_.begin_operation();
    for (;;)
      for (Instance& inst : instances_) {
        bool finished = step(inst);
        log_.push_back({inst.q, finished});
        if (finished) return inst.task.result();
      }
  }

  const std::vector<Turn>& log() const noexcept { return log_; }
  std::size_t size() const noexcept { return instances_.size(); }

 private:
  struct Instance {
    State q;
    OmegaTask<UPWord> task;
    bool started;
  };

  // Advances past locally answered probes up to and including one oracle query.
  bool step(Instance& inst) {
    if (!inst.started) {
      inst.started = true;
      if (!inst.task.advance()) return true;
    }
    for (;;) {
      const BuchiAcceptor& p = inst.task.probe();
      if (oracle_.answered_locally(p)) {
        inst.task.answer(true);
        if (!inst.task.advance()) return true;
        continue;
      }
      inst.task.answer(oracle_.query(p));
      return !inst.task.advance();
    }
  }

  BuchiRsq& oracle_;
  std::vector<Instance> instances_;
  std::vector<Turn> log_;
};

struct CounterexampleRecord {
  UPWord word;
  Polarity polarity;
  std::size_t hypothesis;  ///< index of the equivalence query it answers
};

struct SessionReport {
  BuchiAcceptor result;
  std::size_t learner_mq = 0;   ///< membership queries of the word learner
  std::size_t tree_mq = 0;      ///< all tree membership queries sent to the teacher
  std::size_t eq = 0;
  std::size_t rsq_simulations = 0;  ///< tree membership queries standing for subset queries
  std::size_t max_counterexample_length = 0;
  double wall_time_ms = 0;
  std::vector<BuchiAcceptor> hypotheses;
  std::vector<CounterexampleRecord> counterexamples;
  std::vector<std::vector<DovetailPool::Turn>> dovetail_logs;
};

/// Word oracle for the learner, answered with tree queries (Algorithm A_Trees).
class TreeReductionOracle : public WordOracle {
 public:
  TreeReductionOracle(Teacher& teacher, SessionReport& report, SearchBudget budget = {})
      : teacher_(teacher), report_(report), budget_(budget) {}

  const Alphabet& alphabet() const override { return teacher_.alphabet(); }

  bool membership(const UPWord& w) override {
    if (finished_) throw ProtocolError("query after a successful equivalence query");
    ++report_.learner_mq;
    return teacher_.tree_mq(tree_of_upword(alphabet(), w, teacher_.arity()));
  }

  std::optional<UPWord> equivalence(const BuchiAcceptor& h) override {
    if (finished_) throw ProtocolError("query after a successful equivalence query");
    if (!h.is_deterministic()) throw ProtocolError("learner hypothesis must be deterministic");
    const std::size_t index = report_.eq++;
    report_.hypotheses.push_back(h);
    BuchiAcceptor m = complete(h);
    TreeEqAnswer a = teacher_.tree_eq(derived_tree_acceptor(m, teacher_.arity()));
    if (a.equal) {
      finished_ = true;
      return std::nullopt;
    }
    UPWord w;
    Polarity pol;
    if (auto path = acc(*a.witness, m)) {
      w = std::move(*path);
      pol = Polarity::positive;
    } else {
      BuchiAcceptor paths = trim_safety(acceptor_of_tree(*a.witness));
      BuchiRsq oracle(
          [&](const BuchiAcceptor& n) {
            ++report_.rsq_simulations;
            return rsq_via_tree_mq(teacher_, n);
          },
          budget_);
      DovetailPool pool(paths, oracle);
      w = pool.run();
      report_.dovetail_logs.push_back(pool.log());
      pol = Polarity::negative;
    }
    report_.max_counterexample_length =
        std::max(report_.max_counterexample_length, w.prefix.size() + w.period.size());
    report_.counterexamples.push_back({w, pol, index});
    return w;
  }

 private:
  Teacher& teacher_;
  SessionReport& report_;
  SearchBudget budget_;
  bool finished_ = false;
};

/// Algorithm A_Trees: learns Trees_d(L) by running a word learner whose
/// queries are answered through tree queries. The report is kept up to date
/// even when the session ends with an exception.
inline void learn_trees(Teacher& teacher, WordLearner& learner, SessionReport& report, SearchBudget budget = {}) {
  const std::size_t tmq_before = teacher.log().tree_mq;
  auto start = std::chrono::steady_clock::now();
  auto finish = [&] {
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report.tree_mq = teacher.log().tree_mq - tmq_before;
  };
  TreeReductionOracle oracle(teacher, report, budget);
  try {
    report.result = learner.learn(oracle);
  } catch (...) {
    finish();
    throw;
  }
  finish();
}

inline SessionReport learn_trees(Teacher& teacher, WordLearner& learner, SearchBudget budget = {}) {
  SessionReport report;
  learn_trees(teacher, learner, report, budget);
  return report;
}

/// The same learner against the word teacher directly.
inline SessionReport learn_words(Teacher& teacher, WordLearner& learner) {
  SessionReport report;
  auto start = std::chrono::steady_clock::now();
  const std::size_t mq_before = teacher.log().mq, eq_before = teacher.log().eq;
  TeacherWordOracle oracle(teacher);
  report.result = learner.learn(oracle);
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report.learner_mq = teacher.log().mq - mq_before;
  report.eq = teacher.log().eq - eq_before;
  return report;
}

}  // namespace omt
