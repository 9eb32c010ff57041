#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "omegatree/automata.hpp"
#include "omegatree/core.hpp"
#include "omegatree/errors.hpp"
#include "omegatree/graph.hpp"
#include "omegatree/teacher.hpp"

namespace omt {

/// What a word learner may ask: membership of u(v)^omega and equivalence of a
/// deterministic hypothesis (none means "equal").
class WordOracle {
 public:
  virtual ~WordOracle() = default;
  virtual const Alphabet& alphabet() const = 0;
  virtual bool membership(const UPWord& w) = 0;
  virtual std::optional<UPWord> equivalence(const BuchiAcceptor& hypothesis) = 0;
};

/// A learner runs until an equivalence query is answered "equal" and returns
/// that hypothesis.
class WordLearner {
 public:
  virtual ~WordLearner() = default;
  virtual const char* name() const = 0;
  virtual BuchiAcceptor learn(WordOracle& oracle) = 0;
};

/// Word-level oracle backed directly by a teacher.
class TeacherWordOracle : public WordOracle {
 public:
  explicit TeacherWordOracle(Teacher& teacher) : teacher_(teacher) {}

  const Alphabet& alphabet() const override { return teacher_.alphabet(); }

  bool membership(const UPWord& w) override {
    if (finished_) throw ProtocolError("query after a successful equivalence query");
    return teacher_.word_mq(w);
  }

  std::optional<UPWord> equivalence(const BuchiAcceptor& h) override {
    if (finished_) throw ProtocolError("query after a successful equivalence query");
    WordEqAnswer a = teacher_.word_eq(h);
    if (a.equal) {
      finished_ = true;
      return std::nullopt;
    }
    return a.witness;
  }

 private:
  Teacher& teacher_;
  bool finished_ = false;
};

/// Every recurrent component of the complete DBW has a single acceptance value.
inline bool is_weak(const BuchiAcceptor& m) {
  SccDecomposition scc = sccs(graph_of(m));
  for (std::size_t c = 0; c < scc.components.size(); ++c) {
    if (!scc.recurrent[c]) continue;
    const auto& comp = scc.components[c];
    for (State q : comp)
      if (m.is_accepting(q) != m.is_accepting(comp.front())) return false;
  }
  return true;
}

/// Enumerates complete DBWs over `sigma` with n states whose states are
/// numbered in breadth-first order from 0 (so every state is accessible), in
/// lexicographic order of the transition table and then of the accepting mask.
/// Stops when `visit` returns true; returns whether it did.
template <class Visit>
bool enumerate_dbws(const Alphabet& sigma, std::size_t n, Visit visit) {
  const std::size_t k = sigma.size();
  std::vector<State> table(n * k, 0);
  auto emit = [&]() {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      BuchiAcceptor m(sigma, n, 0);
      for (State q = 0; q < n; ++q) {
        m.set_accepting(q, (mask >> q) & 1);
        for (Symbol s = 0; s < k; ++s) m.add_transition(q, s, table[q * k + s]);
      }
      if (visit(m)) return true;
    }
    return false;
  };
  // Position i of the table may name any seen state or the next fresh one;
  // state q's row may only start once q has been seen.
  auto rec = [&](auto& self, std::size_t i, std::size_t seen) -> bool {
    if (i == table.size()) return seen == n && emit();
    if (i % k == 0 && i / k >= seen) return false;
    std::size_t hi = std::min(seen, n - 1);
    for (std::size_t v = 0; v <= hi; ++v) {
      table[i] = static_cast<State>(v);
      if (self(self, i + 1, v == seen ? seen + 1 : seen)) return true;
    }
    return false;
  };
  return rec(rec, 0, 1);
}

struct LearnerStats {
  std::size_t membership_queries = 0;
  std::size_t equivalence_queries = 0;
  std::vector<BuchiAcceptor> hypotheses;
  std::vector<UPWord> counterexamples;  ///< as received, canonicalized
};

/// Tries complete DBWs in enumeration order, skipping candidates that
/// misclassify a counterexample already received. Asks no membership queries.
class EnumLearner : public WordLearner {
 public:
  explicit EnumLearner(std::size_t max_states = 6) : max_states_(max_states) {}

  const char* name() const override { return "enum"; }
  const LearnerStats& stats() const noexcept { return stats_; }

  BuchiAcceptor learn(WordOracle& oracle) override {
    stats_ = {};
    std::vector<std::pair<UPWord, bool>> labelled;
    std::optional<BuchiAcceptor> answer;
    for (std::size_t n = 1; n <= max_states_ && !answer; ++n) {
      enumerate_dbws(oracle.alphabet(), n, [&](const BuchiAcceptor& cand) {
        for (const auto& [w, in] : labelled)
          if (mq_lasso(cand, w) != in) return false;
        ++stats_.equivalence_queries;
        stats_.hypotheses.push_back(cand);
        auto ce = oracle.equivalence(cand);
        if (!ce) {
          answer = cand;
          return true;
        }
        UPWord w = canonical(*ce);
        labelled.emplace_back(w, !mq_lasso(cand, w));
        stats_.counterexamples.push_back(std::move(w));
        return false;
      });
    }
    if (!answer) throw LearnerError("no DBW with at most " + std::to_string(max_states_) + " states fits");
    return *answer;
  }

 private:
  std::size_t max_states_;
  LearnerStats stats_;
};

/// Observation-table learner for weak languages. Rows are finite words,
/// experiments are ultimately periodic suffixes (x, y) with entry
/// MQ(s·x, y). Each recurrent component of a hypothesis is coloured by one
/// query on the access word of its lowest state and the shortest cycle there.
class WeakLearner : public WordLearner {
 public:
  struct Limits {
    std::size_t max_equivalence_queries = 10'000;
    std::size_t max_split_rounds = 64;  ///< the q of the colour-conflict search
  };

  WeakLearner() = default;
  explicit WeakLearner(Limits limits) : limits_(limits) {}

  const char* name() const override { return "weak"; }
  const LearnerStats& stats() const noexcept { return stats_; }
  const std::vector<Word>& rows() const noexcept { return rows_; }
  const std::vector<UPWord>& experiments() const noexcept { return experiments_; }

  BuchiAcceptor learn(WordOracle& oracle) override {
    stats_ = {};
    oracle_ = &oracle;
    sigma_ = oracle.alphabet();
    rows_.clear();
    row_index_.clear();
    experiments_.clear();
    cache_.clear();
    add_row({});

    for (;;) {
      stabilize();
      Hypothesis h = hypothesis();
      if (stats_.equivalence_queries >= limits_.max_equivalence_queries)
        throw BudgetExhausted("weak learner: equivalence query limit reached");
      ++stats_.equivalence_queries;
      stats_.hypotheses.push_back(h.dbw);
      auto ce = oracle.equivalence(h.dbw);
      if (!ce) return h.dbw;
      UPWord w = canonical(*ce);
      stats_.counterexamples.push_back(w);
      const bool label = !mq_lasso(h.dbw, w);
      cache_[{w.prefix, w.period}] = label;
      absorb(w, label, h.dbw.num_states());
    }
  }

 private:
  struct Hypothesis {
    BuchiAcceptor dbw;
    std::vector<Word> access;  ///< representative of each state
  };

  bool mq(const Word& prefix, const Word& period) {
    UPWord key = canonical({prefix, period});
    auto it = cache_.find({key.prefix, key.period});
    if (it != cache_.end()) return it->second;
    ++stats_.membership_queries;
    bool yes = oracle_->membership(key);
    cache_.emplace(std::make_pair(key.prefix, key.period), yes);
    return yes;
  }

  bool entry(const Word& s, const UPWord& e) { return mq(concat(s, e.prefix), e.period); }

  std::vector<bool> row(const Word& s) {
    std::vector<bool> r;
    r.reserve(experiments_.size());
    for (const UPWord& e : experiments_) r.push_back(entry(s, e));
    return r;
  }

  void add_row(const Word& s) {
    if (row_index_.count(s)) return;
    row_index_.emplace(s, rows_.size());
    rows_.push_back(s);
  }

  void add_prefixes(const Word& w) {
    for (std::size_t i = 0; i <= w.size(); ++i) add_row(Word(w.begin(), w.begin() + i));
  }

  bool add_experiment(UPWord e) {
    e = canonical(e);
    if (std::find(experiments_.begin(), experiments_.end(), e) != experiments_.end()) return false;
    experiments_.push_back(std::move(e));
    return true;
  }

  // Close and make consistent until both hold.
  void stabilize() {
    for (bool changed = true; changed;) {
      changed = false;
      std::map<std::vector<bool>, std::size_t> seen;
      std::vector<std::vector<bool>> r(rows_.size());
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        r[i] = row(rows_[i]);
        seen.emplace(r[i], i);
      }
      for (std::size_t i = 0; i < rows_.size() && !changed; ++i)
        for (Symbol s = 0; s < sigma_.size() && !changed; ++s) {
          Word ext = rows_[i];
          ext.push_back(s);
          if (!seen.count(row(ext))) {
            add_row(ext);
            changed = true;
          }
        }
      if (changed) continue;
      for (std::size_t i = 0; i < rows_.size() && !changed; ++i)
        for (std::size_t j = i + 1; j < rows_.size() && !changed; ++j) {
          if (r[i] != r[j]) continue;
          for (Symbol s = 0; s < sigma_.size() && !changed; ++s) {
            Word a = rows_[i], b = rows_[j];
            a.push_back(s);
            b.push_back(s);
            if (row(a) == row(b)) continue;
            for (const UPWord& e : std::vector<UPWord>(experiments_)) {
              if (entry(a, e) == entry(b, e)) continue;
              Word x{s};
              x.insert(x.end(), e.prefix.begin(), e.prefix.end());
              changed = add_experiment({x, e.period});
              if (changed) break;
            }
            if (!changed) throw LearnerError("weak learner: inconsistency could not be resolved");
          }
        }
    }
  }

  Hypothesis hypothesis() {
    std::map<std::vector<bool>, State> state_of;
    Hypothesis h;
    for (const Word& s : rows_) {
      auto [it, fresh] = state_of.emplace(row(s), static_cast<State>(h.access.size()));
      if (fresh) h.access.push_back(s);
    }
    const std::size_t n = h.access.size();
    BuchiAcceptor m(sigma_, n, state_of.at(row({})));
    for (State q = 0; q < n; ++q)
      for (Symbol s = 0; s < sigma_.size(); ++s) {
        Word ext = h.access[q];
        ext.push_back(s);
        m.add_transition(q, s, state_of.at(row(ext)));
      }
    LabeledDigraph g = graph_of(m);
    SccDecomposition scc = sccs(g);
    for (std::size_t c = 0; c < scc.components.size(); ++c) {
      if (!scc.recurrent[c]) continue;
      State low = scc.components[c].front();
      Word cycle = *shortest_word(g, low, low, [&](State x) { return scc.component_of[x] == c; }, true);
      bool colour = mq(h.access[low], cycle);
      for (State q : scc.components[c]) m.set_accepting(q, colour);
    }
    h.dbw = std::move(m);
    return h;
  }

  State state_after(const BuchiAcceptor& m, const Word& w) const { return *run(m, m.initial(), w); }

  // MQ(w·e) differs from MQ(access(H(w))·e): walk along w to find where the
  // hypothesis forgets it, and add the distinguishing suffix as experiment.
  bool try_split(const Hypothesis& h, const Word& w, const UPWord& e) {
    const BuchiAcceptor& m = h.dbw;
    auto value_at = [&](std::size_t i) {
      Word p = h.access[state_after(m, Word(w.begin(), w.begin() + i))];
      p.insert(p.end(), w.begin() + i, w.end());
      return entry(p, e);
    };
    const bool first = value_at(0);
    if (first == value_at(w.size())) return false;
    std::size_t i = 0;
    while (value_at(i + 1) == first) ++i;
    Word z(w.begin() + i + 1, w.end());
    z.insert(z.end(), e.prefix.begin(), e.prefix.end());
    return add_experiment({z, e.period});
  }

  // Counterexample w with correct label `label`: add the prefixes of
  // u·v^(n+1); while the table still produces a hypothesis that
  // misclassifies w, look for a split that adds a state.
  void absorb(const UPWord& w, bool label, std::size_t states) {
    add_prefixes(concat(w.prefix, repeat(w.period, states + 1)));
    for (;;) {
      stabilize();
      Hypothesis h = hypothesis();
      if (mq_lasso(h.dbw, w) == label) return;
      if (!split(h, w)) throw LearnerError("weak learner: counterexample could not be resolved");
    }
  }

  bool split(const Hypothesis& h, const UPWord& w) {
    const BuchiAcceptor& m = h.dbw;
    const UPWord loop{{}, w.period};
    if (try_split(h, w.prefix, loop)) return true;
    // H(u v^i) for i = 0..n; the sequence cycles from some g on.
    Word uvi = w.prefix;
    State g = state_after(m, uvi);
    for (std::size_t i = 0; i <= m.num_states(); ++i) {
      if (try_split(h, uvi, loop)) return true;
      uvi = concat(uvi, w.period);
    }
    // Advance g into the v-cycle.
    for (std::size_t i = 0; i < m.num_states(); ++i) g = *run(m, g, w.period);
    std::size_t p = 1;
    for (State x = *run(m, g, w.period); x != g; x = *run(m, x, w.period)) ++p;
    const Word c = repeat(w.period, p);

    LabeledDigraph graph = graph_of(m);
    SccDecomposition scc = sccs(graph);
    const std::size_t comp = scc.component_of[g];
    auto inside = [&](State x) { return scc.component_of[x] == comp; };
    const State low = scc.components[comp].front();
    const Word cc = *shortest_word(graph, low, low, inside, true);
    const Word x = *shortest_word(graph, low, g, inside);
    const Word y = *shortest_word(graph, g, low, inside);
    const Word& sc = h.access[low];

    for (std::size_t q = 1; q <= limits_.max_split_rounds; ++q) {
      const Word cq = repeat(c, q), ccq = repeat(cc, q);
      const Word lambda = concat(concat(x, cq), concat(y, ccq));
      Word base = sc;
      for (std::size_t j = 0; j <= q; ++j) {
        Word at_g = concat(concat(base, x), cq);
        if (try_split(h, at_g, {{}, c})) return true;
        if (try_split(h, concat(concat(at_g, y), ccq), {{}, cc})) return true;
        base = concat(base, lambda);
      }
    }
    return false;
  }

  Limits limits_;
  LearnerStats stats_;
  WordOracle* oracle_ = nullptr;
  Alphabet sigma_;
  std::vector<Word> rows_;
  std::map<Word, std::size_t> row_index_;
  std::vector<UPWord> experiments_;
  std::map<std::pair<Word, Word>, bool> cache_;
};

}  // namespace omt
