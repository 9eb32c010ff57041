#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "omegatree/automata.hpp"
#include "omegatree/graph.hpp"

namespace omt {

/// Transition graph of an acceptor with symbol labels.
template <Acceptance Kind>
LabeledDigraph graph_of(const Acceptor<Kind>& m) {
  LabeledDigraph g;
  g.out.resize(m.num_states());
  for (State q = 0; q < m.num_states(); ++q)
    for (Symbol s = 0; s < m.num_symbols(); ++s)
      for (State r : m.successors(q, s)) g.add(q, s, r);
  return g;
}

inline void require_dbw(const BuchiAcceptor& m, const char* who) {
  if (!m.is_deterministic() || !m.is_complete())
    throw InputError(std::string(who) + ": acceptor must be deterministic and complete");
}

/// Membership of prefix (period)^omega in L(M) for a complete DBW.
/// Runs the prefix, then repeats the period until a boundary state recurs, and
/// checks the states met on the recurring block of periods.
inline bool mq_lasso(const BuchiAcceptor& m, const UPWord& w) {
  require_dbw(m, "mq_lasso");
  if (w.period.empty()) throw InputError("period of an ultimately periodic word must be nonempty");
  if (!m.alphabet().contains(w.prefix) || !m.alphabet().contains(w.period))
    throw InputError("word uses a symbol outside the alphabet");

  State q = m.initial();
  for (Symbol s : w.prefix) q = *m.next(q, s);

  std::vector<std::size_t> boundary_index(m.num_states(), SccDecomposition::npos);
  std::vector<State> boundaries;
  while (boundary_index[q] == SccDecomposition::npos) {
    boundary_index[q] = boundaries.size();
    boundaries.push_back(q);
    for (Symbol s : w.period) q = *m.next(q, s);
  }
  for (std::size_t i = boundary_index[q]; i < boundaries.size(); ++i) {
    State p = boundaries[i];
    for (Symbol s : w.period) {
      p = *m.next(p, s);
      if (m.is_accepting(p)) return true;
    }
  }
  return false;
}

/// Adds one non-accepting sink when some (state, symbol) pair has no successor.
template <Acceptance Kind>
Acceptor<Kind> complete(const Acceptor<Kind>& m) {
  if (m.is_complete()) return m;
  Acceptor<Kind> out = m;
  State sink = out.add_state(false);
  if (m.num_states() == 0) out.set_initial(sink);
  for (State q = 0; q < out.num_states(); ++q)
    for (Symbol s = 0; s < out.num_symbols(); ++s)
      if (out.successors(q, s).empty()) out.add_transition(q, s, sink);
  return out;
}

/// Keeps the states flagged in `keep`, renumbered in ascending order. Returns a
/// zero-state acceptor when the initial state is dropped.
template <Acceptance Kind>
Acceptor<Kind> induced(const Acceptor<Kind>& m, const std::vector<bool>& keep) {
  if (m.num_states() == 0 || !keep[m.initial()]) return Acceptor<Kind>(m.alphabet(), 0);
  std::vector<State> id(m.num_states(), 0);
  State n = 0;
  for (State q = 0; q < m.num_states(); ++q)
    if (keep[q]) id[q] = n++;
  Acceptor<Kind> out(m.alphabet(), n, id[m.initial()]);
  for (State q = 0; q < m.num_states(); ++q) {
    if (!keep[q]) continue;
    out.set_accepting(id[q], m.is_accepting(q));
    for (Symbol s = 0; s < m.num_symbols(); ++s)
      for (State r : m.successors(q, s))
        if (keep[r]) out.add_transition(id[q], s, id[r]);
  }
  return out;
}

/// States reachable from the initial state.
template <Acceptance Kind>
std::vector<bool> accessible(const Acceptor<Kind>& m) {
  if (m.num_states() == 0) return {};
  return reachable_from(graph_of(m), m.initial());
}

/// Safety trim: drop inaccessible states, then repeatedly drop states without
/// successors. The result has zero states iff the language is empty.
inline BuchiAcceptor trim_safety(const BuchiAcceptor& m) {
  if (m.num_states() == 0) return m;
  if (!m.all_accepting()) throw InputError("trim_safety expects all states accepting");
  std::vector<bool> alive = accessible(m);
  for (bool changed = true; changed;) {
    changed = false;
    for (State q = 0; q < m.num_states(); ++q) {
      if (!alive[q]) continue;
      bool has_succ = false;
      for (Symbol s = 0; s < m.num_symbols() && !has_succ; ++s)
        for (State r : m.successors(q, s)) has_succ = has_succ || alive[r];
      if (!has_succ) {
        alive[q] = false;
        changed = true;
      }
    }
  }
  return induced(m, alive);
}

/// Lasso in g from `init` whose loop stays inside the nodes accepted by
/// `allowed` and passes through a node accepted by `target`; the access path is
/// unrestricted. The lowest-numbered suitable target is chosen, the access word
/// is a shortest path and the loop a shortest cycle inside its component.
template <class Allowed, class Target>
std::optional<std::pair<Word, Word>> find_lasso(const LabeledDigraph& g, State init,
                                                Allowed allowed, Target target) {
  if (g.size() == 0) return std::nullopt;
  std::vector<bool> reach = reachable_from(g, init);
  std::vector<bool> keep(g.size(), false);
  for (State x = 0; x < g.size(); ++x) keep[x] = reach[x] && allowed(x);
  SccDecomposition scc = sccs(g, keep);
  for (State t = 0; t < g.size(); ++t) {
    if (!keep[t] || !target(t)) continue;
    std::size_t c = scc.component_of[t];
    if (!scc.recurrent[c]) continue;
    auto in_component = [&](State x) { return scc.component_of[x] == c; };
    auto access = shortest_word(g, init, t, [](State) { return true; });
    auto loop = shortest_word(g, t, t, in_component, true);
    return std::make_pair(std::move(*access), std::move(*loop));
  }
  return std::nullopt;
}

/// Some ultimately periodic word of L(M), if the Buchi language is nonempty.
inline std::optional<UPWord> buchi_witness(const BuchiAcceptor& m) {
  if (m.num_states() == 0) return std::nullopt;
  auto lasso = find_lasso(
      graph_of(m), m.initial(), [](State) { return true; },
      [&](State q) { return m.is_accepting(q); });
  if (!lasso) return std::nullopt;
  return UPWord{std::move(lasso->first), std::move(lasso->second)};
}

inline bool buchi_empty(const BuchiAcceptor& m) { return !buchi_witness(m); }

/// Some shortest word of L(M) for a finite-word acceptor.
inline std::optional<Word> finite_witness(const FinAcceptor& m) {
  if (m.num_states() == 0) return std::nullopt;
  LabeledDigraph g = graph_of(m);
  std::optional<Word> best;
  for (State q : m.accepting_states()) {
    auto w = shortest_word(g, m.initial(), q, [](State) { return true; });
    if (w && (!best || w->size() < best->size())) best = std::move(w);
  }
  return best;
}

inline bool finite_empty(const FinAcceptor& m) { return !finite_witness(m); }

/// Finite-word membership by subset simulation; works for any finite acceptor.
inline bool accepts(const FinAcceptor& m, const Word& w) {
  if (m.num_states() == 0) return false;
  if (!m.alphabet().contains(w)) throw InputError("word uses a symbol outside the alphabet");
  std::vector<bool> cur(m.num_states(), false);
  cur[m.initial()] = true;
  for (Symbol s : w) {
    std::vector<bool> nxt(m.num_states(), false);
    for (State q = 0; q < m.num_states(); ++q)
      if (cur[q])
        for (State r : m.successors(q, s)) nxt[r] = true;
    cur = std::move(nxt);
  }
  for (State q = 0; q < m.num_states(); ++q)
    if (cur[q] && m.is_accepting(q)) return true;
  return false;
}

/// Unique run of a deterministic acceptor on a finite word, if defined.
template <Acceptance Kind>
std::optional<State> run(const Acceptor<Kind>& m, State from, const Word& w) {
  State q = from;
  for (Symbol s : w) {
    auto n = m.next(q, s);
    if (!n) return std::nullopt;
    q = *n;
  }
  return q;
}

/// States reachable from `from` by reading w (nondeterministic run set).
template <Acceptance Kind>
std::vector<bool> reach_set(const Acceptor<Kind>& m, State from, const Word& w) {
  std::vector<bool> cur(m.num_states(), false);
  cur[from] = true;
  for (Symbol s : w) {
    std::vector<bool> nxt(m.num_states(), false);
    for (State q = 0; q < m.num_states(); ++q)
      if (cur[q])
        for (State r : m.successors(q, s)) nxt[r] = true;
    cur = std::move(nxt);
  }
  return cur;
}

}  // namespace omt
