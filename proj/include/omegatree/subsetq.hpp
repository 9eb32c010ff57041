#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "omegatree/automata.hpp"
#include "omegatree/constructions.hpp"
#include "omegatree/core.hpp"
#include "omegatree/errors.hpp"
#include "omegatree/probe_task.hpp"

namespace omt {

struct SearchBudget {
  std::size_t max_queries = 1'000'000;  ///< oracle calls per top-level operation
  std::size_t max_local = 10'000'000;   ///< probes answered locally per top-level operation
};

/// Restricted subset query access to a fixed unknown language. Probes with an
/// empty language are answered "yes" locally and never reach the callback.
template <Acceptance Kind>
class RsqOracle {
 public:
  using Probe = Acceptor<Kind>;
  using Callback = std::function<bool(const Probe&)>;
  using Observer = std::function<void(const Probe&)>;

  explicit RsqOracle(Callback answer, SearchBudget budget = {})
      : answer_(std::move(answer)), budget_(budget) {
    if (budget_.max_queries == 0 || budget_.max_local == 0) throw InputError("budget must be positive");
  }

  /// Called on every probe, local or not.
  void set_observer(Observer obs) { observer_ = std::move(obs); }

  /// Starts a new top-level operation: budgets count from here.
  void begin_operation() {
    base_calls_ = calls_;
    base_local_ = local_;
  }

  /// True when the probe is answered locally (empty language).
  bool answered_locally(const Probe& p) {
    if (observer_) observer_(p);
    bool empty;
    if constexpr (Kind == Acceptance::finite) empty = finite_empty(p);
    else empty = buchi_empty(p);
    if (!empty) return false;
    if (++local_ - base_local_ > budget_.max_local)
      throw BudgetExhausted("local probe budget exhausted");
    return true;
  }

  /// Forwards the probe to the callback; counts against the query budget.
  bool query(const Probe& p) {
    if (++calls_ - base_calls_ > budget_.max_queries) throw BudgetExhausted("subset query budget exhausted");
    return answer_(p);
  }

  bool ask(const Probe& p) { return answered_locally(p) || query(p); }

  std::size_t calls() const noexcept { return calls_; }
  std::size_t local() const noexcept { return local_; }

 private:
  Callback answer_;
  Observer observer_;
  SearchBudget budget_;
  std::size_t calls_ = 0, local_ = 0, base_calls_ = 0, base_local_ = 0;
};

using BuchiRsq = RsqOracle<Acceptance::buchi>;
using FinRsq = RsqOracle<Acceptance::finite>;

/// Search parameters found along the way; lets tests check the length bounds.
struct SearchStats {
  std::vector<std::size_t> prefix_k;                            ///< findprefix
  std::vector<std::pair<std::size_t, std::size_t>> nextword_kl;  ///< nextword (k, l)
  std::vector<std::pair<std::size_t, std::size_t>> nextsymbol_km;
  std::vector<std::size_t> period_k;       ///< findperiod: k of the accepted probe
  std::vector<std::size_t> period_rounds;  ///< findperiod: nextword calls
};

/// M with a chosen accepting state q and the finite acceptors for L_{q0,q}
/// and L_{q,q}, shared by the sub-searches.
struct Anchor {
  BuchiAcceptor m;
  State q;
  FinAcceptor to_q;    ///< L_{q0,q}
  FinAcceptor loop_q;  ///< L_{q,q}
  std::shared_ptr<SearchStats> stats;

  Anchor(BuchiAcceptor machine, State state, std::shared_ptr<SearchStats> s = nullptr)
      : m(std::move(machine)),
        q(state),
        to_q(sub_initial_to_q(m, q)),
        loop_q(sub_q_to_q(m, q)),
        stats(std::move(s)) {
    if (!m.is_accepting(q)) throw InputError("anchor state must be accepting");
  }

  /// {w} for w ∈ L_{q,q} ∪ {ε}, as the restriction L_{q,q}[|w|, w].
  FinAcceptor single(const Word& w) const {
    if (w.empty()) return word_acceptor(m.alphabet(), w);
    return restrict(loop_q, w.size(), w);
  }

  /// L_{q0,q}[k, prefix] · (pieces)^omega, all states accepting.
  BuchiAcceptor probe(std::size_t k, const Word& prefix, const std::vector<FinAcceptor>& pieces) const {
    FinAcceptor period = pieces.back();
    for (std::size_t i = pieces.size() - 1; i-- > 0;) period = concat_special(pieces[i], period);
    return saturate(concat_special(restrict(to_q, k, prefix), omega_repeat(period)));
  }
};

using AnchorPtr = std::shared_ptr<const Anchor>;

template <class T>
using OmegaTask = ProbeTask<BuchiAcceptor, T>;

/// Algorithm "Nextsymbol": σ keeping y·L_{q,q}[l, v'σ]·L_{q,q} extendable to a
/// counterexample. Searches (k, m) by increasing max(k, m), then k, m, σ.
inline OmegaTask<Symbol> nextsymbol(AnchorPtr a, Word y, std::size_t ell, Word vprime) {
  const FinAcceptor head = a->single(y);
  for (std::size_t t = 1;; ++t) {
    for (std::size_t k = 0; k <= t; ++k) {
      for (std::size_t m = k < t ? t : 1; m <= t; ++m) {
        const FinAcceptor tail = restrict(a->loop_q, m, {});
        for (Symbol s = 0; s < a->m.num_symbols(); ++s) {
          Word ext = vprime;
          ext.push_back(s);
          BuchiAcceptor p = a->probe(k, {}, {head, restrict(a->loop_q, ell, ext), tail});
          if (!(co_yield p)) {
            if (a->stats) a->stats->nextsymbol_km.emplace_back(k, m);
            co_return s;
          }
        }
      }
    }
  }
}

/// Algorithm "Nextword": v' ∈ L_{q,q} keeping y·v'·L_{q,q} extendable.
inline OmegaTask<Word> nextword(AnchorPtr a, Word y) {
  const FinAcceptor head = a->single(y);
  std::size_t ell = 0;
  bool found = false;
  for (std::size_t t = 0; !found; ++t) {
    for (std::size_t k = 0; k <= t && !found; ++k) {
      for (std::size_t l = k < t ? t : 0; l <= t && !found; ++l) {
        BuchiAcceptor p = a->probe(k, {}, {head, restrict(a->loop_q, l, {})});
        if (!(co_yield p)) {
          if (a->stats) a->stats->nextword_kl.emplace_back(k, l);
          ell = l;
          found = true;
        }
      }
    }
  }
  Word v;
  while (v.size() < ell) {
    auto sub = nextsymbol(a, y, ell, v);
    while (sub.advance()) sub.answer(co_yield sub.probe());
    v.push_back(sub.result());
  }
  co_return v;
}

/// Algorithm "Findperiod", with the k-loop bound n·|M| kept as stated.
inline OmegaTask<Word> findperiod(AnchorPtr a) {
  std::vector<Word> parts;
  Word y;
  const std::size_t size = a->m.num_states();
  for (std::size_t n = 1;; ++n) {
    auto sub = nextword(a, y);
    while (sub.advance()) sub.answer(co_yield sub.probe());
    parts.push_back(sub.result());
    y = concat(y, parts.back());
    for (std::size_t i = 0; i < n; ++i) {
      Word v;
      for (std::size_t j = i; j < n; ++j) {
        v = concat(v, parts[j]);
        const FinAcceptor loop = a->single(v);
        for (std::size_t k = 0; k <= n * size; ++k) {
          BuchiAcceptor p = a->probe(k, {}, {loop});
          if (!(co_yield p)) {
            if (a->stats) {
              a->stats->period_k.push_back(k);
              a->stats->period_rounds.push_back(n);
            }
            co_return v;
          }
        }
      }
    }
  }
}

/// Algorithm "Findprefix": the least k, then u ∈ L_{q0,q}[k] symbol by symbol.
inline OmegaTask<Word> findprefix(AnchorPtr a, Word v) {
  const FinAcceptor loop = a->single(v);
  std::size_t k = 0;
  for (;; ++k) {
    BuchiAcceptor p = a->probe(k, {}, {loop});
    if (!(co_yield p)) break;
  }
  if (a->stats) a->stats->prefix_k.push_back(k);
  Word u;
  while (u.size() < k) {
    bool extended = false;
    for (Symbol s = 0; s < a->m.num_symbols() && !extended; ++s) {
      Word ext = u;
      ext.push_back(s);
      BuchiAcceptor p = a->probe(k, ext, {loop});
      if (!(co_yield p)) {
        u = std::move(ext);
        extended = true;
      }
    }
    if (!extended) throw Error("findprefix: no symbol extends the prefix (inconsistent oracle)");
  }
  co_return u;
}

/// Algorithm "Findctrex": period first, then a prefix for it.
inline OmegaTask<UPWord> findctrex(AnchorPtr a) {
  auto period = findperiod(a);
  while (period.advance()) period.answer(co_yield period.probe());
  Word v = period.result();
  auto prefix = findprefix(a, v);
  while (prefix.advance()) prefix.answer(co_yield prefix.probe());
  co_return UPWord{prefix.result(), std::move(v)};
}

/// Runs a task to completion against an oracle.
template <class Probe, class T, Acceptance Kind>
T drive(ProbeTask<Probe, T>& task, RsqOracle<Kind>& oracle) {
  while (task.advance()) task.answer(oracle.ask(task.probe()));
  return task.result();
}

inline UPWord run_findctrex(const BuchiAcceptor& m, State q, BuchiRsq& oracle,
                            std::shared_ptr<SearchStats> stats = nullptr) {
  oracle.begin_operation();
  auto task = findctrex(std::make_shared<const Anchor>(m, q, std::move(stats)));
  return drive(task, oracle);
}

/// Algorithm R^omega: none when L(M) ⊆ L, otherwise a word of L(M) \ L.
inline std::optional<UPWord> r_omega(const BuchiAcceptor& m, BuchiRsq& oracle,
                                     std::shared_ptr<SearchStats> stats = nullptr) {
  oracle.begin_operation();
  if (m.num_states() == 0 || oracle.ask(m)) return std::nullopt;
  for (State q : m.accepting_states()) {
    if (oracle.ask(single_accepting(m, q))) continue;
    auto task = findctrex(std::make_shared<const Anchor>(m, q, stats));
    return drive(task, oracle);
  }
  throw Error("r_omega: every M_q was contained although M was not (inconsistent oracle)");
}

/// Algorithm R* for finite words: none when L(M) ⊆ L, otherwise a shortest
/// word of L(M) \ L.
inline std::optional<Word> rstar(const FinAcceptor& m, FinRsq& oracle) {
  oracle.begin_operation();
  if (m.num_states() == 0 || oracle.ask(m)) return std::nullopt;
  std::size_t ell = 0;
  while (oracle.ask(restrict(m, ell, {}))) ++ell;
  Word u;
  while (u.size() < ell) {
    bool extended = false;
    for (Symbol s = 0; s < m.num_symbols() && !extended; ++s) {
      Word ext = u;
      ext.push_back(s);
      if (!oracle.ask(restrict(m, ell, ext))) {
        u = std::move(ext);
        extended = true;
      }
    }
    if (!extended) throw Error("rstar: no symbol extends the prefix (inconsistent oracle)");
  }
  return u;
}

}  // namespace omt
