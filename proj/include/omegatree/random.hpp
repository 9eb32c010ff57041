#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "omegatree/automata.hpp"
#include "omegatree/core.hpp"

namespace omt {

/// Seeded generator with portable draws (plain modulo on mt19937_64 output,
/// so the same seed gives the same automata everywhere).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) { return n <= 1 ? 0 : static_cast<std::size_t>(engine_() % n); }
  bool coin(unsigned percent = 50) { return below(100) < percent; }

 private:
  std::mt19937_64 engine_;
};

/// The alphabet a, b, c, ... of the given size.
inline Alphabet letters(std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return Alphabet(names);
}

inline BuchiAcceptor random_dbw(Rng& rng, std::size_t n, const Alphabet& sigma) {
  BuchiAcceptor m(sigma, n, 0);
  for (State q = 0; q < n; ++q) {
    m.set_accepting(q, rng.coin());
    for (Symbol s = 0; s < sigma.size(); ++s) m.add_transition(q, s, static_cast<State>(rng.below(n)));
  }
  return m;
}

inline FinAcceptor random_dfw(Rng& rng, std::size_t n, const Alphabet& sigma) {
  return reinterpret<Acceptance::finite>(random_dbw(rng, n, sigma));
}

/// Each (state, symbol) pair gets 0..max_succ successors.
template <Acceptance Kind>
Acceptor<Kind> random_acceptor(Rng& rng, std::size_t n, const Alphabet& sigma, std::size_t max_succ = 2) {
  Acceptor<Kind> m(sigma, n, 0);
  for (State q = 0; q < n; ++q) {
    m.set_accepting(q, rng.coin());
    for (Symbol s = 0; s < sigma.size(); ++s) {
      std::size_t k = rng.below(max_succ + 1);
      for (std::size_t i = 0; i < k; ++i) m.add_transition(q, s, static_cast<State>(rng.below(n)));
    }
  }
  return m;
}

inline BuchiAcceptor random_nbw(Rng& rng, std::size_t n, const Alphabet& sigma, std::size_t max_succ = 2) {
  return random_acceptor<Acceptance::buchi>(rng, n, sigma, max_succ);
}

/// All-accepting acceptor whose states have out-degree at most max_out.
inline BuchiAcceptor random_safety(Rng& rng, std::size_t n, const Alphabet& sigma, std::size_t max_out) {
  BuchiAcceptor m(sigma, n, 0);
  for (State q = 0; q < n; ++q) {
    m.set_accepting(q);
    std::size_t k = 1 + rng.below(max_out);
    for (std::size_t i = 0; i < k; ++i)
      m.add_transition(q, static_cast<Symbol>(rng.below(sigma.size())), static_cast<State>(rng.below(n)));
  }
  return m;
}

/// Random weak complete DBW: states are split into ordered blocks whose
/// colours alternate from a random first colour. A block of several states
/// gets an internal cycle, a single state a self-loop when |Σ| > 1; other
/// transitions stay in the block or move to a later one. Only the accessible
/// part is returned.
inline BuchiAcceptor random_weak_dbw(Rng& rng, std::size_t n, std::size_t k) {
  const Alphabet sigma = letters(k);
  std::vector<std::size_t> block(n, 0);
  std::vector<State> first_of{0};
  for (State q = 1; q < n; ++q) {
    block[q] = block[q - 1] + (rng.coin(50) ? 1 : 0);
    if (block[q] != block[q - 1]) first_of.push_back(q);
  }
  const std::size_t blocks = first_of.size();
  std::vector<bool> colour(blocks);
  const bool first = rng.coin();
  for (std::size_t b = 0; b < blocks; ++b) colour[b] = (b % 2 == 0) == first;

  std::vector<long> slot(n * k, -1);
  auto free_slot = [&](State q) {
    std::vector<Symbol> open;
    for (Symbol s = 0; s < k; ++s)
      if (slot[q * k + s] < 0) open.push_back(s);
    return open;
  };
  for (std::size_t b = 0; b < blocks; ++b) {
    State lo = first_of[b], hi = b + 1 < blocks ? first_of[b + 1] : static_cast<State>(n);
    if (hi - lo > 1) {
      for (State q = lo; q < hi; ++q) {
        auto open = free_slot(q);
        slot[q * k + open[rng.below(open.size())]] = q + 1 < hi ? q + 1 : lo;
      }
    } else if (k > 1) {
      auto open = free_slot(lo);
      slot[lo * k + open[rng.below(open.size())]] = lo;
    }
    if (b == 0) continue;
    std::vector<std::pair<State, Symbol>> entries;
    for (State q = 0; q < lo; ++q)
      for (Symbol s : free_slot(q)) entries.emplace_back(q, s);
    if (!entries.empty()) {
      auto [q, s] = entries[rng.below(entries.size())];
      slot[q * k + s] = lo;
    }
  }
  BuchiAcceptor m(sigma, n, 0);
  for (State q = 0; q < n; ++q) {
    m.set_accepting(q, colour[block[q]]);
    const State lo = first_of[block[q]];
    for (Symbol s = 0; s < k; ++s) {
      long dst = slot[q * k + s];
      if (dst < 0) dst = static_cast<long>(lo + rng.below(n - lo));
      m.add_transition(q, s, static_cast<State>(dst));
    }
  }
  return induced(m, accessible(m));
}

}  // namespace omt
