#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "omegatree/errors.hpp"

namespace omt {

using State = std::uint32_t;
using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

/// Finite ordered set of symbol tokens. The order is the enumeration order of
/// every algorithm in the library. Copies share the underlying table.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> symbols) {
    if (symbols.empty()) throw InputError("alphabet must be nonempty");
    auto table = std::make_shared<Table>();
    for (auto& s : symbols) {
      if (s.empty() || s.find_first_of(" \t\r\n") != std::string::npos)
        throw InputError("invalid symbol token '" + s + "'");
      if (!table->index.emplace(s, static_cast<Symbol>(table->names.size())).second)
        throw InputError("duplicate symbol '" + s + "'");
      table->names.push_back(std::move(s));
    }
    table_ = std::move(table);
  }

  std::size_t size() const noexcept { return table_ ? table_->names.size() : 0; }
  bool empty() const noexcept { return size() == 0; }

  const std::string& name(Symbol s) const { return table_->names.at(s); }
  const std::vector<std::string>& symbols() const {
    static const std::vector<std::string> none;
    return table_ ? table_->names : none;
  }

  std::optional<Symbol> find(std::string_view token) const {
    if (!table_) return std::nullopt;
    auto it = table_->index.find(std::string(token));
    if (it == table_->index.end()) return std::nullopt;
    return it->second;
  }

  Symbol at(std::string_view token) const {
    if (auto s = find(token)) return *s;
    throw InputError("symbol '" + std::string(token) + "' not in alphabet");
  }

  bool contains(const Word& w) const {
    return std::all_of(w.begin(), w.end(), [&](Symbol s) { return s < size(); });
  }

  /// Space-separated symbol names.
  std::string format(const Word& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += ' ';
      out += name(w[i]);
    }
    return out;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.table_ == b.table_ || a.symbols() == b.symbols();
  }

 private:
  struct Table {
    std::vector<std::string> names;
    std::unordered_map<std::string, Symbol> index;
  };
  std::shared_ptr<const Table> table_;
};

/// The ultimately periodic word prefix (period)^omega.
struct UPWord {
  Word prefix;
  Word period;

  friend bool operator==(const UPWord&, const UPWord&) = default;
};

inline UPWord make_upword(Word prefix, Word period) {
  if (period.empty()) throw InputError("period of an ultimately periodic word must be nonempty");
  return UPWord{std::move(prefix), std::move(period)};
}

inline Word concat(const Word& a, const Word& b) {
  Word out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Word repeat(const Word& w, std::size_t times) {
  Word out;
  out.reserve(w.size() * times);
  for (std::size_t i = 0; i < times; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

/// Shortest representation of the same omega-word: primitive period, and the
/// prefix shortened by rotating the period as far as possible. Two pairs denote
/// the same omega-word iff their canonical forms are equal.
inline UPWord canonical(UPWord w) {
  if (w.period.empty()) throw InputError("period of an ultimately periodic word must be nonempty");
  const std::size_t n = w.period.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = w.period[i] == w.period[i - p];
    if (periodic) {
      w.period.resize(p);
      break;
    }
  }
  while (!w.prefix.empty() && w.prefix.back() == w.period.back()) {
    w.prefix.pop_back();
    std::rotate(w.period.rbegin(), w.period.rbegin() + 1, w.period.rend());
  }
  return w;
}

inline bool same_omega_word(const UPWord& a, const UPWord& b) { return canonical(a) == canonical(b); }

/// Symbol at position i (0-based) of prefix (period)^omega.
inline Symbol symbol_at(const UPWord& w, std::size_t i) {
  if (i < w.prefix.size()) return w.prefix[i];
  return w.period[(i - w.prefix.size()) % w.period.size()];
}

}  // namespace omt
