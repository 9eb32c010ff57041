#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "omegatree/automata.hpp"
#include "omegatree/errors.hpp"

namespace omt {

enum class FileKind { dfw, nfw, dbw, nbw, tree };

inline const char* kind_name(FileKind k) {
  switch (k) {
    case FileKind::dfw: return "dfw";
    case FileKind::nfw: return "nfw";
    case FileKind::dbw: return "dbw";
    case FileKind::nbw: return "nbw";
    case FileKind::tree: return "tree";
  }
  return "?";
}

/// Result of parsing an automaton file.
struct AutomatonFile {
  FileKind kind;
  std::variant<FinAcceptor, BuchiAcceptor, TreeAutomaton> value;

  const FinAcceptor& fin() const { return get<FinAcceptor>("finite-word"); }
  const BuchiAcceptor& buchi() const { return get<BuchiAcceptor>("Buchi"); }
  const TreeAutomaton& tree() const { return get<TreeAutomaton>("tree"); }

 private:
  template <class T>
  const T& get(const char* what) const {
    if (auto* p = std::get_if<T>(&value)) return *p;
    throw InputError(std::string("expected a ") + what + " automaton, got kind " + kind_name(kind));
  }
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint32_t parse_uint(const std::string& tok, std::size_t line, const char* what) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
  return v;
}

// Rank of each key in the fixed file order.
inline int key_rank(std::string_view key) {
  static constexpr std::string_view order[] = {"kind",      "alphabet", "directions", "states",
                                               "initial",   "accepting", "transition", "edge"};
  for (int i = 0; i < 8; ++i)
    if (order[i] == key) return i;
  return -1;
}

}  // namespace detail

/// Parses the line-oriented automaton format. For trees without an alphabet
/// line, labels are resolved against `context` when given, otherwise the
/// alphabet is the labels in order of first appearance.
inline AutomatonFile parse_automaton(std::istream& in, const Alphabet* context = nullptr) {
  struct Line {
    std::size_t no;
    std::string key;
    std::vector<std::string> args;
  };
  std::vector<Line> lines;
  std::string raw;
  std::size_t no = 0;
  int last_rank = -1;
  while (std::getline(in, raw)) {
    ++no;
    std::string_view s = raw;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] == '#' && (i == 0 || s[i - 1] == ' ' || s[i - 1] == '\t')) {
        s = s.substr(0, i);
        break;
      }
    auto toks = detail::split_ws(s);
    if (toks.empty()) continue;
    const std::string& head = toks.front();
    if (head.size() < 2 || head.back() != ':') throw ParseError(no, "expected 'key:' at line start");
    std::string key = head.substr(0, head.size() - 1);
    int rank = detail::key_rank(key);
    if (rank < 0) throw ParseError(no, "unknown key '" + key + "'");
    bool repeatable = key == "transition" || key == "edge";
    if (rank < last_rank || (rank == last_rank && !repeatable))
      throw ParseError(no, "key '" + key + "' out of order or repeated");
    last_rank = rank;
    lines.push_back({no, std::move(key), {toks.begin() + 1, toks.end()}});
  }

  std::size_t idx = 0;
  auto peek = [&](std::string_view key) { return idx < lines.size() && lines[idx].key == key; };
  auto expect = [&](std::string_view key) -> const Line& {
    if (!peek(key)) {
      std::size_t at = idx < lines.size() ? lines[idx].no : no + 1;
      throw ParseError(at, "missing '" + std::string(key) + ":' line");
    }
    return lines[idx++];
  };
  auto single = [&](const Line& l, const char* what) {
    if (l.args.size() != 1) throw ParseError(l.no, std::string("expected one ") + what);
    return detail::parse_uint(l.args[0], l.no, what);
  };

  const Line& kind_line = expect("kind");
  if (kind_line.args.size() != 1) throw ParseError(kind_line.no, "expected one kind");
  const std::string& k = kind_line.args[0];
  FileKind kind;
  if (k == "dfw") kind = FileKind::dfw;
  else if (k == "nfw") kind = FileKind::nfw;
  else if (k == "dbw") kind = FileKind::dbw;
  else if (k == "nbw") kind = FileKind::nbw;
  else if (k == "tree") kind = FileKind::tree;
  else throw ParseError(kind_line.no, "unknown kind '" + k + "'");

  auto make_alphabet = [](const Line& l) {
    try {
      return Alphabet(l.args);
    } catch (const InputError& e) {
      throw ParseError(l.no, e.what());
    }
  };

  if (kind == FileKind::tree) {
    std::optional<Alphabet> alphabet;
    if (peek("alphabet")) alphabet = make_alphabet(lines[idx++]);
    else if (context) alphabet = *context;
    const Line& dl = expect("directions");
    std::uint32_t arity = single(dl, "direction count");
    if (arity == 0) throw ParseError(dl.no, "directions must be at least 1");
    const Line& sl = expect("states");
    std::uint32_t n = single(sl, "state count");
    if (n == 0) throw ParseError(sl.no, "a tree needs at least one state");
    const Line& il = expect("initial");
    std::uint32_t init = single(il, "initial state");
    if (init >= n) throw ParseError(il.no, "initial state out of range");
    if (peek("accepting")) throw ParseError(lines[idx].no, "trees have no accepting line");

    struct RawEdge {
      std::size_t no;
      std::uint32_t src, dir, dst;
      std::string label;
    };
    std::vector<RawEdge> edges;
    std::vector<std::string> first_seen;
    while (idx < lines.size()) {
      const Line& l = lines[idx++];
      if (l.key != "edge") throw ParseError(l.no, "unexpected '" + l.key + ":' in a tree file");
      if (l.args.size() != 4) throw ParseError(l.no, "edge needs: src dir symbol dst");
      RawEdge e{l.no, detail::parse_uint(l.args[0], l.no, "state"),
                detail::parse_uint(l.args[1], l.no, "direction"),
                detail::parse_uint(l.args[3], l.no, "state"), l.args[2]};
      if (std::find(first_seen.begin(), first_seen.end(), e.label) == first_seen.end())
        first_seen.push_back(e.label);
      edges.push_back(std::move(e));
    }
    if (!alphabet) {
      if (first_seen.empty()) throw ParseError(il.no, "tree without edges");
      alphabet = Alphabet(first_seen);
    }
    TreeAutomaton t(*alphabet, arity, n, init);
    for (const RawEdge& e : edges) {
      if (e.src >= n || e.dst >= n) throw ParseError(e.no, "state out of range");
      if (e.dir < 1 || e.dir > arity) throw ParseError(e.no, "direction out of range");
      auto sym = alphabet->find(e.label);
      if (!sym) throw ParseError(e.no, "symbol '" + e.label + "' not in alphabet");
      if (t.has_edge(e.src, e.dir - 1)) throw ParseError(e.no, "duplicate edge");
      t.set_edge(e.src, e.dir - 1, *sym, e.dst);
    }
    if (!t.is_total()) throw ParseError(no, "tree transition map is not total");
    return {kind, std::move(t)};
  }

  Alphabet alphabet = make_alphabet(expect("alphabet"));
  if (peek("directions")) throw ParseError(lines[idx].no, "word automata have no directions line");
  const Line& sl = expect("states");
  std::uint32_t n = single(sl, "state count");
  if (n == 0) throw ParseError(sl.no, "an acceptor needs at least one state");
  const Line& il = expect("initial");
  std::uint32_t init = single(il, "initial state");
  if (init >= n) throw ParseError(il.no, "initial state out of range");
  const Line& al = expect("accepting");

  auto fill = [&](auto acceptor) {
    for (const std::string& tok : al.args) {
      std::uint32_t q = detail::parse_uint(tok, al.no, "state");
      if (q >= n) throw ParseError(al.no, "accepting state out of range");
      acceptor.set_accepting(q);
    }
    while (idx < lines.size()) {
      const Line& l = lines[idx++];
      if (l.key != "transition") throw ParseError(l.no, "unexpected '" + l.key + ":' in an acceptor file");
      if (l.args.size() != 3) throw ParseError(l.no, "transition needs: src symbol dst");
      std::uint32_t src = detail::parse_uint(l.args[0], l.no, "state");
      std::uint32_t dst = detail::parse_uint(l.args[2], l.no, "state");
      if (src >= n || dst >= n) throw ParseError(l.no, "state out of range");
      auto sym = alphabet.find(l.args[1]);
      if (!sym) throw ParseError(l.no, "symbol '" + l.args[1] + "' not in alphabet");
      acceptor.add_transition(src, *sym, dst);
      if ((kind == FileKind::dfw || kind == FileKind::dbw) && acceptor.successors(src, *sym).size() > 1)
        throw ParseError(l.no, "second transition on the same symbol in a deterministic acceptor");
    }
    return acceptor;
  };
  if (kind == FileKind::dfw || kind == FileKind::nfw)
    return {kind, fill(FinAcceptor(alphabet, n, init))};
  return {kind, fill(BuchiAcceptor(alphabet, n, init))};
}

inline AutomatonFile parse_automaton(const std::string& text, const Alphabet* context = nullptr) {
  std::istringstream in(text);
  return parse_automaton(in, context);
}

inline AutomatonFile read_automaton(const std::string& path, const Alphabet* context = nullptr) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return parse_automaton(in, context);
}

template <Acceptance Kind>
std::string to_text(const Acceptor<Kind>& m) {
  const bool det = m.is_deterministic();
  std::ostringstream out;
  if constexpr (Kind == Acceptance::finite) out << "kind: " << (det ? "dfw" : "nfw") << '\n';
  else out << "kind: " << (det ? "dbw" : "nbw") << '\n';
  out << "alphabet:";
  for (const auto& s : m.alphabet().symbols()) out << ' ' << s;
  out << "\nstates: " << m.num_states() << "\ninitial: " << m.initial() << "\naccepting:";
  for (State q : m.accepting_states()) out << ' ' << q;
  out << '\n';
  for (State q = 0; q < m.num_states(); ++q)
    for (Symbol s = 0; s < m.num_symbols(); ++s)
      for (State r : m.successors(q, s))
        out << "transition: " << q << ' ' << m.alphabet().name(s) << ' ' << r << '\n';
  return out.str();
}

inline std::string to_text(const TreeAutomaton& t) {
  std::ostringstream out;
  out << "kind: tree\ndirections: " << t.arity() << "\nstates: " << t.num_states()
      << "\ninitial: " << t.initial() << '\n';
  for (State q = 0; q < t.num_states(); ++q)
    for (Direction d = 0; d < t.arity(); ++d)
      out << "edge: " << q << ' ' << d + 1 << ' ' << t.alphabet().name(t.label(q, d)) << ' '
          << t.next(q, d) << '\n';
  return out.str();
}

/// "a b ; b a" (prefix, then period).
inline std::string format_upword(const Alphabet& sigma, const UPWord& w) {
  std::string u = sigma.format(w.prefix);
  return (u.empty() ? std::string("; ") : u + " ; ") + sigma.format(w.period);
}

inline UPWord parse_upword(const Alphabet& sigma, std::string_view text) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos) throw InputError("word needs 'prefix ; period'");
  auto side = [&](std::string_view part) {
    Word w;
    for (const auto& tok : detail::split_ws(part)) w.push_back(sigma.at(tok));
    return w;
  };
  return make_upword(side(text.substr(0, semi)), side(text.substr(semi + 1)));
}

}  // namespace omt
