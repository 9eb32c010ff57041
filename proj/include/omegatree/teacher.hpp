#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omegatree/automata.hpp"
#include "omegatree/constructions.hpp"
#include "omegatree/core.hpp"
#include "omegatree/io.hpp"

namespace omt {

/// Product graph of an arbitrary Buchi acceptor N with a complete DBW T; node
/// p * |T| + t stands for (p, t).
inline LabeledDigraph product_graph(const BuchiAcceptor& n, const BuchiAcceptor& t) {
  const std::size_t nt = t.num_states();
  LabeledDigraph g;
  g.out.resize(n.num_states() * nt);
  for (State p = 0; p < n.num_states(); ++p)
    for (State x = 0; x < nt; ++x)
      for (Symbol s = 0; s < n.num_symbols(); ++s) {
        State y = *t.next(x, s);
        for (State r : n.successors(p, s)) g.add(p * nt + x, s, r * nt + y);
      }
  return g;
}

/// Some u(v)^omega in L(N) \ L(T), none iff L(N) ⊆ L(T). T must be a complete
/// DBW; N may be nondeterministic. Loops avoid T-accepting states and pass
/// through an N-accepting state.
inline std::optional<UPWord> difference_witness(const BuchiAcceptor& n, const BuchiAcceptor& t) {
  require_dbw(t, "containment check");
  if (!(n.alphabet() == t.alphabet())) throw InputError("alphabets differ");
  if (n.num_states() == 0) return std::nullopt;
  const std::size_t nt = t.num_states();
  auto lasso = find_lasso(
      product_graph(n, t), n.initial() * nt + t.initial(),
      [&](State x) { return !t.is_accepting(x % nt); },
      [&](State x) { return n.is_accepting(x / nt); });
  if (!lasso) return std::nullopt;
  return UPWord{std::move(lasso->first), std::move(lasso->second)};
}

/// Difference witness between two DBWs; both are completed first.
inline std::optional<UPWord> dbw_difference_witness(const BuchiAcceptor& m1, const BuchiAcceptor& m2) {
  if (!m1.is_deterministic() || !m2.is_deterministic())
    throw InputError("dbw_difference_witness: acceptors must be deterministic");
  return difference_witness(complete(m1), complete(m2));
}

/// Some word accepted by both complete DBWs: a lasso whose loop meets an
/// accepting state of each.
inline std::optional<UPWord> intersection_witness(const BuchiAcceptor& a, const BuchiAcceptor& b) {
  require_dbw(a, "intersection_witness");
  require_dbw(b, "intersection_witness");
  const std::size_t nb = b.num_states();
  LabeledDigraph g = product_graph(a, b);
  const State init = a.initial() * nb + b.initial();
  std::vector<bool> reach = reachable_from(g, init);
  SccDecomposition scc = sccs(g, reach);
  for (State x = 0; x < g.size(); ++x) {
    if (!reach[x] || !a.is_accepting(x / nb)) continue;
    std::size_t c = scc.component_of[x];
    if (!scc.recurrent[c]) continue;
    auto in_c = [&](State z) { return scc.component_of[z] == c; };
    for (State y : scc.components[c]) {
      if (!b.is_accepting(y % nb)) continue;
      Word access = *shortest_word(g, init, x, [](State) { return true; });
      Word there = *shortest_word(g, x, y, in_c, true);
      Word back = x == y ? Word{} : *shortest_word(g, y, x, in_c);
      return UPWord{std::move(access), concat(there, back)};
    }
  }
  return std::nullopt;
}

/// Shortest w in L(N) \ L(T) for finite-word acceptors, T a complete DFW.
inline std::optional<Word> dfw_difference_witness(const FinAcceptor& n, const FinAcceptor& t) {
  if (!t.is_deterministic() || !t.is_complete())
    throw InputError("finite containment: target must be a complete DFW");
  if (n.num_states() == 0) return std::nullopt;
  const std::size_t nt = t.num_states();
  LabeledDigraph g;
  g.out.resize(n.num_states() * nt);
  for (State p = 0; p < n.num_states(); ++p)
    for (State x = 0; x < nt; ++x)
      for (Symbol s = 0; s < n.num_symbols(); ++s)
        for (State r : n.successors(p, s)) g.add(p * nt + x, s, r * nt + *t.next(x, s));
  const State init = n.initial() * nt + t.initial();
  std::optional<Word> best;
  for (State x = 0; x < g.size(); ++x) {
    if (!n.is_accepting(x / nt) || t.is_accepting(x % nt)) continue;
    auto w = shortest_word(g, init, x, [](State) { return true; });
    if (w && (!best || w->size() < best->size() || (w->size() == best->size() && *w < *best)))
      best = std::move(w);
  }
  return best;
}

/// 64-bit FNV-1a of a tree's text form, as 16 hex digits.
inline std::string tree_hash(const TreeAutomaton& t) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : to_text(t)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Query counters and an optional line-per-query trace.
class QueryLog {
 public:
  std::size_t mq = 0, tree_mq = 0, eq = 0, rsq = 0, usq = 0;

  void enable_trace(bool on = true) { tracing_ = on; }
  bool tracing() const noexcept { return tracing_; }
  const std::vector<std::string>& trace() const noexcept { return lines_; }
  void note(std::string line) {
    if (tracing_) lines_.push_back(std::move(line));
  }

 private:
  bool tracing_ = false;
  std::vector<std::string> lines_;
};

enum class TreeStrategy { uniform, mixed };
enum class EqOrder { negative_first, positive_first };
enum class Polarity { positive, negative };

inline const char* polarity_name(Polarity p) { return p == Polarity::positive ? "positive" : "negative"; }

struct WordEqAnswer {
  bool equal = false;
  std::optional<UPWord> witness;
  Polarity polarity = Polarity::negative;
};

struct TreeEqAnswer {
  bool equal = false;
  std::optional<TreeAutomaton> witness;
  Polarity polarity = Polarity::negative;
};

struct TeacherOptions {
  std::size_t arity = 1;
  TreeStrategy strategy = TreeStrategy::uniform;
  EqOrder order = EqOrder::negative_first;
};

/// Answers word and tree queries about a secret complete DBW target.
class Teacher {
 public:
  explicit Teacher(BuchiAcceptor target, TeacherOptions options = {})
      : target_(std::move(target)), options_(options) {
    require_dbw(target_, "teacher target");
    if (options_.arity == 0) throw ArityError("tree arity must be at least 1");
  }

  const BuchiAcceptor& target() const noexcept { return target_; }
  const Alphabet& alphabet() const noexcept { return target_.alphabet(); }
  std::size_t arity() const noexcept { return options_.arity; }
  const TeacherOptions& options() const noexcept { return options_; }
  QueryLog& log() noexcept { return log_; }
  const QueryLog& log() const noexcept { return log_; }

  bool word_mq(const UPWord& w) {
    bool yes = mq_lasso(target_, w);
    ++log_.mq;
    if (log_.tracing())
      log_.note("MQ " + alphabet().format(w.prefix) + ";" + alphabet().format(w.period) + " -> " +
                yes_no(yes));
    return yes;
  }

  WordEqAnswer word_eq(const BuchiAcceptor& h) {
    WordEqAnswer a = compare(h);
    ++log_.eq;
    log_.note(a.equal ? "EQ -> yes" : std::string("EQ -> no ") + polarity_name(a.polarity));
    return a;
  }

  bool rsq(const BuchiAcceptor& n) {
    bool yes = !violation(n);
    ++log_.rsq;
    log_.note(std::string("RSQ -> ") + yes_no(yes));
    return yes;
  }

  std::optional<UPWord> usq(const BuchiAcceptor& n) {
    auto w = violation(n);
    ++log_.usq;
    log_.note(w ? "USQ -> no " + format_upword(alphabet(), *w) : std::string("USQ -> yes"));
    return w;
  }

  bool tree_mq(const TreeAutomaton& a) {
    if (a.arity() != options_.arity) throw ArityError("tree arity does not match the teacher");
    if (!(a.alphabet() == alphabet())) throw InputError("tree alphabet differs from the target's");
    bool yes = !violation(acceptor_of_tree(a));
    ++log_.tree_mq;
    if (log_.tracing()) log_.note("TMQ " + tree_hash(a) + " -> " + yes_no(yes));
    return yes;
  }

  TreeEqAnswer tree_eq(const DerivedTreeAcceptor& h) {
    if (h.arity != options_.arity) throw ArityError("hypothesis arity does not match the teacher");
    WordEqAnswer w = compare(h.base);
    ++log_.eq;
    log_.note(w.equal ? "EQ -> yes" : std::string("EQ -> no ") + polarity_name(w.polarity));
    TreeEqAnswer a;
    a.equal = w.equal;
    a.polarity = w.polarity;
    if (w.equal) return a;
    std::optional<UPWord> second;
    if (options_.strategy == TreeStrategy::mixed && options_.arity > 1)
      second = intersection_witness(complete(h.base), target_);
    a.witness = second ? graft(*w.witness, *second) : tree_of_upword(alphabet(), *w.witness, arity());
    return a;
  }

 private:
  static const char* yes_no(bool b) { return b ? "yes" : "no"; }

  std::optional<UPWord> violation(const BuchiAcceptor& n) const {
    if (!(n.alphabet() == alphabet())) throw InputError("acceptor alphabet differs from the target's");
    return difference_witness(n, target_);
  }

  WordEqAnswer compare(const BuchiAcceptor& h) const {
    if (!h.is_deterministic()) throw ProtocolError("hypothesis must be deterministic");
    if (!(h.alphabet() == alphabet())) throw InputError("hypothesis alphabet differs from the target's");
    BuchiAcceptor hc = complete(h);
    WordEqAnswer a;
    auto negative = [&] { return difference_witness(hc, target_); };
    auto positive = [&] { return difference_witness(target_, hc); };
    bool neg_first = options_.order == EqOrder::negative_first;
    auto first = neg_first ? negative() : positive();
    if (first) {
      a.witness = std::move(first);
      a.polarity = neg_first ? Polarity::negative : Polarity::positive;
      return a;
    }
    auto other = neg_first ? positive() : negative();
    if (other) {
      a.witness = std::move(other);
      a.polarity = neg_first ? Polarity::positive : Polarity::negative;
      return a;
    }
    a.equal = true;
    return a;
  }

  // Root direction 1 continues along `first`, directions 2..d along `second`.
  TreeAutomaton graft(const UPWord& first, const UPWord& second) const {
    const Word c1 = concat(first.prefix, first.period), c2 = concat(second.prefix, second.period);
    const std::size_t n1 = c1.size(), n2 = c2.size(), d = arity();
    const State root = static_cast<State>(n1 + n2);
    TreeAutomaton t(alphabet(), d, n1 + n2 + 1, root);
    for (State i = 0; i < n1; ++i) {
      State nx = i + 1 < n1 ? i + 1 : static_cast<State>(first.prefix.size());
      for (Direction k = 0; k < d; ++k) t.set_edge(i, k, c1[i], nx);
    }
    for (State i = 0; i < n2; ++i) {
      State nx = static_cast<State>(n1) + (i + 1 < n2 ? i + 1 : static_cast<State>(second.prefix.size()));
      for (Direction k = 0; k < d; ++k) t.set_edge(static_cast<State>(n1) + i, k, c2[i], nx);
    }
    t.set_edge(root, 0, c1[0], t.next(0, 0));
    for (Direction k = 1; k < d; ++k) t.set_edge(root, k, c2[0], t.next(static_cast<State>(n1), 0));
    return t;
  }

  BuchiAcceptor target_;
  TeacherOptions options_;
  QueryLog log_;
};

}  // namespace omt
