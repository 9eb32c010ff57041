#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <utility>
#include <vector>

#include "omegatree/automata.hpp"
#include "omegatree/core.hpp"
#include "omegatree/errors.hpp"

namespace omt {

inline DerivedTreeAcceptor derived_tree_acceptor(const BuchiAcceptor& m, std::size_t arity) {
  require_dbw(m, "derived_tree_acceptor");
  if (arity == 0) throw ArityError("tree arity must be at least 1");
  return {m, arity};
}

/// Safety NBW of paths(t): one state per tree state, all accepting.
inline BuchiAcceptor acceptor_of_tree(const TreeAutomaton& t) {
  BuchiAcceptor m(t.alphabet(), t.num_states(), t.initial());
  for (State q = 0; q < t.num_states(); ++q) {
    m.set_accepting(q);
    for (Direction d = 0; d < t.arity(); ++d) m.add_transition(q, t.label(q, d), t.next(q, d));
  }
  return m;
}

/// Regular tree whose paths are L(N) for a safety acceptor N. Direction i of
/// state q takes the i-th transition of q in (symbol, target) order; directions
/// past the last transition repeat it.
inline TreeAutomaton tree_of_safety(const BuchiAcceptor& n, std::size_t arity) {
  if (arity == 0) throw ArityError("tree arity must be at least 1");
  if (n.num_states() > 0 && !n.all_accepting())
    throw InputError("tree_of_safety expects all states accepting");
  BuchiAcceptor m = trim_safety(n);
  if (m.num_states() == 0) throw EmptyLanguageError("the empty language is not the paths of a tree");
  if (m.out_degree() > arity)
    throw ArityError("out-degree " + std::to_string(m.out_degree()) + " exceeds arity " +
                     std::to_string(arity));
  TreeAutomaton t(m.alphabet(), arity, m.num_states(), m.initial());
  for (State q = 0; q < m.num_states(); ++q) {
    std::vector<std::pair<Symbol, State>> moves;
    for (Symbol s = 0; s < m.num_symbols(); ++s)
      for (State r : m.successors(q, s)) moves.emplace_back(s, r);
    for (Direction d = 0; d < arity; ++d) {
      const auto& [s, r] = moves[std::min<std::size_t>(d, moves.size() - 1)];
      t.set_edge(q, d, s, r);
    }
  }
  return t;
}

/// The d-ary tree all of whose paths read prefix (period)^omega.
inline TreeAutomaton tree_of_upword(const Alphabet& sigma, const UPWord& w, std::size_t arity) {
  if (w.period.empty()) throw InputError("period of an ultimately periodic word must be nonempty");
  if (!sigma.contains(w.prefix) || !sigma.contains(w.period))
    throw InputError("word uses a symbol outside the alphabet");
  const Word chain = concat(w.prefix, w.period);
  const std::size_t n = chain.size();
  TreeAutomaton t(sigma, arity, n, 0);
  for (State i = 0; i < n; ++i) {
    State next = i + 1 < n ? i + 1 : static_cast<State>(w.prefix.size());
    for (Direction d = 0; d < arity; ++d) t.set_edge(i, d, chain[i], next);
  }
  return t;
}

/// Deterministic safety acceptor for the single word prefix (period)^omega.
inline BuchiAcceptor upword_acceptor(const Alphabet& sigma, const UPWord& w) {
  const Word chain = concat(w.prefix, w.period);
  BuchiAcceptor m(sigma, chain.size(), 0);
  for (State i = 0; i < chain.size(); ++i) {
    m.set_accepting(i);
    m.add_transition(i, chain[i], i + 1 < chain.size() ? i + 1 : static_cast<State>(w.prefix.size()));
  }
  return m;
}

/// Special-form acceptor for the single finite word w.
inline FinAcceptor word_acceptor(const Alphabet& sigma, const Word& w) {
  FinAcceptor m(sigma, w.size() + 1, 0);
  for (State i = 0; i < w.size(); ++i) m.add_transition(i, w[i], i + 1);
  m.set_accepting(static_cast<State>(w.size()));
  return m;
}

/// L_{q0,q}: finite words leading from the initial state to q.
inline FinAcceptor sub_initial_to_q(const BuchiAcceptor& m, State q) {
  if (q >= m.num_states()) throw InputError("state out of range");
  FinAcceptor out = reinterpret<Acceptance::finite>(m);
  for (State p = 0; p < out.num_states(); ++p) out.set_accepting(p, p == q);
  return out;
}

/// L_{q,q}: nonempty words leading from q back to q. A fresh entry copy of q
/// (the new initial state) carries q's out-transitions and has no in-edges.
inline FinAcceptor sub_q_to_q(const BuchiAcceptor& m, State q) {
  FinAcceptor out = sub_initial_to_q(m, q);
  State entry = out.add_state(false);
  for (Symbol s = 0; s < m.num_symbols(); ++s)
    for (State r : m.successors(q, s)) out.add_transition(entry, s, r);
  out.set_initial(entry);
  return out;
}

/// L(M)[n,u] = L(M) ∩ Σ^n ∩ u·Σ*, in special form. Built as the reachable
/// product with the layered (n,u) counter; states that cannot reach acceptance
/// are dropped and the accepting states are merged into one.
inline FinAcceptor restrict(const FinAcceptor& m, std::size_t n, const Word& u) {
  FinAcceptor none = empty_acceptor<Acceptance::finite>(m.alphabet());
  if (n < u.size() || m.num_states() == 0) return none;

  const std::size_t k = m.num_symbols();
  auto key = [&](State p, std::size_t layer) { return layer * m.num_states() + p; };
  std::map<std::size_t, State> id;
  std::vector<std::pair<State, std::size_t>> nodes;
  std::vector<std::vector<std::pair<Symbol, State>>> edges;
  auto intern = [&](State p, std::size_t layer) {
    auto [it, fresh] = id.emplace(key(p, layer), static_cast<State>(nodes.size()));
    if (fresh) {
      nodes.emplace_back(p, layer);
      edges.emplace_back();
    }
    return it->second;
  };
  intern(m.initial(), 0);
  for (State x = 0; x < nodes.size(); ++x) {
    auto [p, layer] = nodes[x];
    if (layer == n) continue;
    for (Symbol s = 0; s < k; ++s) {
      if (layer < u.size() && s != u[layer]) continue;
      for (State r : m.successors(p, s)) {
        State y = intern(r, layer + 1);
        edges[x].emplace_back(s, y);
      }
    }
  }

  std::vector<bool> final_node(nodes.size(), false), live(nodes.size(), false);
  for (State x = 0; x < nodes.size(); ++x)
    final_node[x] = live[x] = nodes[x].second == n && m.is_accepting(nodes[x].first);
  // Layers strictly increase along edges, so one backwards sweep by layer suffices.
  std::vector<State> order(nodes.size());
  for (State x = 0; x < nodes.size(); ++x) order[x] = x;
  std::stable_sort(order.begin(), order.end(),
                   [&](State a, State b) { return nodes[a].second > nodes[b].second; });
  for (State x : order)
    for (auto [s, y] : edges[x]) live[x] = live[x] || live[y];
  if (!live[0]) return none;

  std::vector<State> renum(nodes.size(), 0);
  State count = 0;
  for (State x = 0; x < nodes.size(); ++x)
    if (live[x] && !final_node[x]) renum[x] = count++;
  if (final_node[0]) count = 1;  // n == 0: only the empty word
  const State accept = final_node[0] ? 0 : count++;
  for (State x = 0; x < nodes.size(); ++x)
    if (final_node[x]) renum[x] = accept;

  FinAcceptor out(m.alphabet(), count, 0);
  out.set_accepting(accept);
  for (State x = 0; x < nodes.size(); ++x) {
    if (!live[x] || final_node[x]) continue;
    for (auto [s, y] : edges[x])
      if (live[y]) out.add_transition(renum[x], s, renum[y]);
  }
  return out;
}

namespace detail {

inline std::optional<State> special_accepting(const FinAcceptor& m) {
  if (!m.is_special_form()) throw InputError("acceptor is not in special form");
  auto acc = m.accepting_states();
  if (acc.empty()) return std::nullopt;
  return acc.front();
}

}  // namespace detail

/// L(M1)·L(M2) for a special-form M1: the accepting state of M1 is removed and
/// its in-edges are redirected to the initial state of M2.
template <Acceptance Kind>
Acceptor<Kind> concat_special(const FinAcceptor& m1, const Acceptor<Kind>& m2) {
  auto q1 = detail::special_accepting(m1);
  if (!q1 || m2.num_states() == 0) return empty_acceptor<Kind>(m1.alphabet());
  if (*q1 == m1.initial()) return m2;

  const State n1 = static_cast<State>(m1.num_states() - 1);
  auto left = [&](State p) { return p < *q1 ? p : p - 1; };
  auto right = [&](State p) { return n1 + p; };
  Acceptor<Kind> out(m1.alphabet(), n1 + m2.num_states(), left(m1.initial()));
  for (State p = 0; p < m1.num_states(); ++p) {
    if (p == *q1) continue;
    for (Symbol s = 0; s < m1.num_symbols(); ++s)
      for (State r : m1.successors(p, s))
        out.add_transition(left(p), s, r == *q1 ? right(m2.initial()) : left(r));
  }
  for (State p = 0; p < m2.num_states(); ++p) {
    out.set_accepting(right(p), m2.is_accepting(p));
    for (Symbol s = 0; s < m2.num_symbols(); ++s)
      for (State r : m2.successors(p, s)) out.add_transition(right(p), s, right(r));
  }
  return out;
}

/// L(M1)^omega for a special-form M1: the accepting state is removed and its
/// in-edges go back to the start, which becomes the accepting state. When the
/// initial state has in-edges of its own, the start is a fresh copy of it, so
/// the size stays at most |M1|.
inline BuchiAcceptor omega_repeat(const FinAcceptor& m1) {
  auto q1 = detail::special_accepting(m1);
  if (!q1 || *q1 == m1.initial()) return empty_acceptor<Acceptance::buchi>(m1.alphabet());
  bool entered = false;
  for (State p = 0; p < m1.num_states() && !entered; ++p)
    for (Symbol s = 0; s < m1.num_symbols() && !entered; ++s)
      for (State r : m1.successors(p, s)) entered = entered || r == m1.initial();
  auto id = [&](State p) { return p < *q1 ? p : p - 1; };
  const State n = static_cast<State>(m1.num_states() - 1);
  const State start = entered ? n : id(m1.initial());
  BuchiAcceptor out(m1.alphabet(), entered ? n + 1 : n, start);
  out.set_accepting(start);
  auto target = [&](State r) { return r == *q1 ? start : id(r); };
  for (State p = 0; p < m1.num_states(); ++p) {
    if (p == *q1) continue;
    for (Symbol s = 0; s < m1.num_symbols(); ++s)
      for (State r : m1.successors(p, s)) {
        out.add_transition(id(p), s, target(r));
        if (entered && p == m1.initial()) out.add_transition(start, s, target(r));
      }
  }
  return out;
}

/// M_q: the same automaton with the single accepting state q.
inline BuchiAcceptor single_accepting(const BuchiAcceptor& m, State q) {
  if (q >= m.num_states() || !m.is_accepting(q)) throw InputError("state is not accepting");
  BuchiAcceptor out = m;
  for (State p = 0; p < out.num_states(); ++p) out.set_accepting(p, p == q);
  return out;
}

/// Same graph with every state accepting.
template <Acceptance Kind>
Acceptor<Kind> saturate(Acceptor<Kind> m) {
  for (State p = 0; p < m.num_states(); ++p) m.set_accepting(p);
  return m;
}

/// Safety NBW M_n over {a,b,c} for (a + b + a(a+b)^n c)^omega, n + 2 states.
inline BuchiAcceptor blowup_family(std::size_t n) {
  if (n < 1) throw InputError("family index must be at least 1");
  Alphabet sigma({"a", "b", "c"});
  const Symbol a = 0, b = 1, c = 2;
  BuchiAcceptor m(sigma, n + 2, 0);
  m.add_transition(0, a, 0);
  m.add_transition(0, a, 1);
  m.add_transition(0, b, 0);
  for (State i = 1; i <= n; ++i) {
    m.add_transition(i, a, i + 1);
    m.add_transition(i, b, i + 1);
  }
  m.add_transition(static_cast<State>(n + 1), c, 0);
  return saturate(std::move(m));
}

/// Reachable subset construction for a safety acceptor; the empty set is
/// dropped, so the result is in general incomplete. All macro-states accept.
inline BuchiAcceptor determinize_safety(const BuchiAcceptor& n) {
  if (n.num_states() > 0 && !n.all_accepting())
    throw InputError("determinize_safety expects all states accepting");
  if (n.num_states() == 0) return n;
  std::map<std::vector<bool>, State> id;
  std::vector<std::vector<bool>> sets;
  std::vector<bool> start(n.num_states(), false);
  start[n.initial()] = true;
  id.emplace(start, 0);
  sets.push_back(start);
  std::vector<std::vector<std::pair<Symbol, State>>> edges(1);
  for (State x = 0; x < sets.size(); ++x) {
    for (Symbol s = 0; s < n.num_symbols(); ++s) {
      std::vector<bool> next(n.num_states(), false);
      bool any = false;
      for (State q = 0; q < n.num_states(); ++q)
        if (sets[x][q])
          for (State r : n.successors(q, s)) next[r] = any = true;
      if (!any) continue;
      auto [it, fresh] = id.emplace(next, static_cast<State>(sets.size()));
      if (fresh) {
        sets.push_back(std::move(next));
        edges.emplace_back();
      }
      edges[x].emplace_back(s, it->second);
    }
  }
  BuchiAcceptor out(n.alphabet(), sets.size(), 0);
  for (State x = 0; x < sets.size(); ++x) {
    out.set_accepting(x);
    for (auto [s, y] : edges[x]) out.add_transition(x, s, y);
  }
  return out;
}

}  // namespace omt
