#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "omegatree/errors.hpp"
#include "omegatree/words.hpp"

namespace omt {

/// How the accepting set of a word automaton is read.
enum class Acceptance {
  finite,  ///< finite words: the run ends in an accepting state
  buchi,   ///< omega-words: some accepting state is visited infinitely often
};

/// Word automaton with dense state ids. Transitions are stored per
/// (state, symbol) as a sorted duplicate-free successor list; the same type is
/// used for deterministic and nondeterministic acceptors and the properties
/// (deterministic, complete, special form) are computed, not declared.
///
/// A Buchi acceptor may have zero states; this is how trim_safety() reports
/// the empty language.
template <Acceptance Kind>
class Acceptor {
 public:
  static constexpr Acceptance kind = Kind;

  Acceptor() = default;

  Acceptor(Alphabet alphabet, std::size_t num_states, State initial = 0)
      : alphabet_(std::move(alphabet)),
        num_states_(num_states),
        initial_(initial),
        delta_(num_states * alphabet_.size()),
        accepting_(num_states, false) {
    if (alphabet_.empty()) throw InputError("acceptor needs a nonempty alphabet");
    if (num_states > 0 && initial >= num_states) throw InputError("initial state out of range");
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t num_symbols() const noexcept { return alphabet_.size(); }
  State initial() const noexcept { return initial_; }

  void set_initial(State q) {
    check_state(q);
    initial_ = q;
  }

  State add_state(bool accepting = false) {
    delta_.resize(delta_.size() + num_symbols());
    accepting_.push_back(accepting);
    return static_cast<State>(num_states_++);
  }

  void add_transition(State src, Symbol sym, State dst) {
    check_state(src);
    check_state(dst);
    if (sym >= num_symbols()) throw InputError("symbol id out of range");
    auto& succ = delta_[src * num_symbols() + sym];
    auto it = std::lower_bound(succ.begin(), succ.end(), dst);
    if (it == succ.end() || *it != dst) succ.insert(it, dst);
  }

  void clear_transitions(State src) {
    check_state(src);
    for (Symbol s = 0; s < num_symbols(); ++s) delta_[src * num_symbols() + s].clear();
  }

  const std::vector<State>& successors(State q, Symbol sym) const {
    return delta_[q * num_symbols() + sym];
  }

  /// Unique successor of a deterministic acceptor, if defined.
  std::optional<State> next(State q, Symbol sym) const {
    const auto& succ = successors(q, sym);
    if (succ.empty()) return std::nullopt;
    return succ.front();
  }

  void set_accepting(State q, bool accepting = true) {
    check_state(q);
    accepting_[q] = accepting;
  }
  bool is_accepting(State q) const { return accepting_[q]; }

  std::vector<State> accepting_states() const {
    std::vector<State> out;
    for (State q = 0; q < num_states_; ++q)
      if (accepting_[q]) out.push_back(q);
    return out;
  }

  bool all_accepting() const {
    return std::all_of(accepting_.begin(), accepting_.end(), [](bool b) { return b; });
  }

  /// Number of (symbol, successor) pairs leaving q.
  std::size_t out_degree(State q) const {
    std::size_t n = 0;
    for (Symbol s = 0; s < num_symbols(); ++s) n += successors(q, s).size();
    return n;
  }

  std::size_t out_degree() const {
    std::size_t best = 0;
    for (State q = 0; q < num_states_; ++q) best = std::max(best, out_degree(q));
    return best;
  }

  std::size_t num_transitions() const {
    std::size_t n = 0;
    for (const auto& succ : delta_) n += succ.size();
    return n;
  }

  bool is_deterministic() const {
    return std::all_of(delta_.begin(), delta_.end(), [](const auto& s) { return s.size() <= 1; });
  }

  bool is_complete() const {
    return num_states_ > 0 &&
           std::all_of(delta_.begin(), delta_.end(), [](const auto& s) { return !s.empty(); });
  }

  /// At most one accepting state, and it has no out-transitions.
  bool is_special_form() const {
    auto acc = accepting_states();
    return acc.size() <= 1 && (acc.empty() || out_degree(acc.front()) == 0);
  }

  friend bool operator==(const Acceptor& a, const Acceptor& b) {
    return a.alphabet_ == b.alphabet_ && a.num_states_ == b.num_states_ &&
           a.initial_ == b.initial_ && a.delta_ == b.delta_ && a.accepting_ == b.accepting_;
  }

 private:
  void check_state(State q) const {
    if (q >= num_states_) throw InputError("state id " + std::to_string(q) + " out of range");
  }

  Alphabet alphabet_;
  std::size_t num_states_ = 0;
  State initial_ = 0;
  std::vector<std::vector<State>> delta_;
  std::vector<bool> accepting_;
};

using FinAcceptor = Acceptor<Acceptance::finite>;
using BuchiAcceptor = Acceptor<Acceptance::buchi>;

/// Same graph and accepting set, read under another acceptance condition.
template <Acceptance To, Acceptance From>
Acceptor<To> reinterpret(const Acceptor<From>& m) {
  Acceptor<To> out(m.alphabet(), m.num_states(), m.initial());
  for (State q = 0; q < m.num_states(); ++q) {
    out.set_accepting(q, m.is_accepting(q));
    for (Symbol s = 0; s < m.num_symbols(); ++s)
      for (State r : m.successors(q, s)) out.add_transition(q, s, r);
  }
  return out;
}

/// One-state acceptor without accepting states or transitions.
template <Acceptance Kind>
Acceptor<Kind> empty_acceptor(const Alphabet& alphabet) {
  return Acceptor<Kind>(alphabet, 1, 0);
}

using Direction = std::uint32_t;

/// Regular omega-tree: a complete deterministic automaton over the directions
/// 0..arity-1 (written 1..arity in files) whose transitions carry a symbol label.
class TreeAutomaton {
 public:
  TreeAutomaton() = default;

  TreeAutomaton(Alphabet alphabet, std::size_t arity, std::size_t num_states, State initial = 0)
      : alphabet_(std::move(alphabet)),
        arity_(arity),
        num_states_(num_states),
        initial_(initial),
        next_(num_states * arity, kUnset),
        label_(num_states * arity, kUnset) {
    if (arity == 0) throw ArityError("tree arity must be at least 1");
    if (num_states == 0 || initial >= num_states) throw InputError("tree needs a valid initial state");
    if (alphabet_.empty()) throw InputError("tree needs a nonempty alphabet");
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t arity() const noexcept { return arity_; }
  std::size_t num_states() const noexcept { return num_states_; }
  State initial() const noexcept { return initial_; }

  void set_edge(State src, Direction dir, Symbol label, State dst) {
    if (src >= num_states_ || dst >= num_states_) throw InputError("tree state out of range");
    if (dir >= arity_) throw ArityError("direction out of range");
    if (label >= alphabet_.size()) throw InputError("tree label out of range");
    next_[src * arity_ + dir] = dst;
    label_[src * arity_ + dir] = label;
  }

  bool has_edge(State q, Direction dir) const { return next_[q * arity_ + dir] != kUnset; }

  State next(State q, Direction dir) const { return next_[q * arity_ + dir]; }
  Symbol label(State q, Direction dir) const { return label_[q * arity_ + dir]; }

  bool is_total() const {
    return std::none_of(next_.begin(), next_.end(), [](State s) { return s == kUnset; });
  }

  /// Labels read along a finite direction word from q.
  Word labels_along(State q, const std::vector<Direction>& dirs) const {
    Word out;
    out.reserve(dirs.size());
    for (Direction d : dirs) {
      out.push_back(label(q, d));
      q = next(q, d);
    }
    return out;
  }

  friend bool operator==(const TreeAutomaton&, const TreeAutomaton&) = default;

 private:
  static constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

  Alphabet alphabet_;
  std::size_t arity_ = 0;
  std::size_t num_states_ = 0;
  State initial_ = 0;
  std::vector<State> next_;
  std::vector<Symbol> label_;
};

/// M^{T,d}: runs a complete DBW independently down every branch of a d-ary tree.
/// Its language is evaluated by acc() in treelearn.hpp.
struct DerivedTreeAcceptor {
  BuchiAcceptor base;
  std::size_t arity = 1;
};

}  // namespace omt
