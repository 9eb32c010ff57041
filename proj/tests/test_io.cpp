#include <catch_amalgamated.hpp>

#include "support/oracles.hpp"

using namespace omt;

namespace {

std::size_t error_line(const std::string& text, const Alphabet* context = nullptr) {
  try {
    parse_automaton(text, context);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("word acceptor files round-trip", "[io]") {
  for (const char* name : {"target_m.dbw", "h1.dbw", "h2.dbw", "m1.dbw", "m2.dbw"}) {
    AutomatonFile f = read_automaton(oracle::fixture(name));
    CHECK(f.kind == FileKind::dbw);
    const BuchiAcceptor& m = f.buchi();
    CHECK(parse_automaton(to_text(m)).buchi() == m);
  }
}

TEST_CASE("target fixture has the expected shape", "[io]") {
  BuchiAcceptor m = read_automaton(oracle::fixture("target_m.dbw")).buchi();
  CHECK(m.alphabet().symbols() == std::vector<std::string>{"a", "b", "c"});
  CHECK(m.num_states() == 3);
  CHECK(m.accepting_states() == std::vector<State>{0});
  CHECK(m.is_deterministic());
  CHECK(m.is_complete());
}

TEST_CASE("comments and blank lines are ignored", "[io]") {
  const std::string text =
      "# header\n"
      "\n"
      "kind: nfw   # trailing comment\n"
      "alphabet: x y#z\n"
      "states: 2\n"
      "initial: 1\n"
      "accepting:\n"
      "transition: 1 x 0\n"
      "transition: 1 x 1\n";
  AutomatonFile f = parse_automaton(text);
  CHECK(f.kind == FileKind::nfw);
  const FinAcceptor& m = f.fin();
  CHECK(m.alphabet().symbols() == std::vector<std::string>{"x", "y#z"});
  CHECK(m.initial() == 1);
  CHECK(m.accepting_states().empty());
  CHECK(m.successors(1, 0) == std::vector<State>{0, 1});
  CHECK_FALSE(m.is_deterministic());
  CHECK_THROWS_AS(f.buchi(), InputError);
}

TEST_CASE("parse errors name the offending line", "[io]") {
  const std::string head = "kind: dbw\nalphabet: a b\nstates: 2\ninitial: 0\naccepting: 1\n";
  CHECK(error_line(head + "transition: 0 c 1\n") == 6);
  CHECK(error_line(head + "transition: 0 a 2\n") == 6);
  CHECK(error_line(head + "transition: 0 a 1\ntransition: 0 a 0\n") == 7);
  CHECK(error_line(head + "bogus: 1\n") == 6);
  CHECK(error_line(head + "states: 3\n") == 6);
  CHECK(error_line("kind: dbw\nstates: 2\nalphabet: a\n") == 3);
  CHECK(error_line("kind: dbw\nstates: 2\n") == 2);
  CHECK(error_line("kind: zzz\n") == 1);
  CHECK(error_line("transition 0 a 1\n") == 1);
  CHECK(error_line("kind: dbw\nalphabet: a\nstates: 1\ninitial: 3\naccepting:\n") == 4);
  CHECK(error_line("kind: dbw\nalphabet: a a\nstates: 1\ninitial: 0\naccepting:\n") == 2);
  CHECK(error_line("kind: dbw\nalphabet: a\nstates: x\n") == 3);
}

TEST_CASE("tree files use 1-based directions and an outside alphabet", "[io]") {
  Alphabet sigma({"a", "b", "c"});
  TreeAutomaton t1 = read_automaton(oracle::fixture("t1.tree"), &sigma).tree();
  CHECK(t1.arity() == 2);
  CHECK(t1.num_states() == 2);
  CHECK(t1.next(0, 0) == 1);
  CHECK(t1.label(0, 1) == sigma.at("b"));
  CHECK(t1.alphabet() == sigma);
  CHECK(parse_automaton(to_text(t1), &sigma).tree() == t1);

  const std::string no_alpha = "kind: tree\ndirections: 1\nstates: 1\ninitial: 0\nedge: 0 1 q 0\n";
  TreeAutomaton t = parse_automaton(no_alpha).tree();
  CHECK(t.alphabet().symbols() == std::vector<std::string>{"q"});

  const std::string with_alpha = "kind: tree\nalphabet: p q\ndirections: 1\nstates: 1\ninitial: 0\nedge: 0 1 q 0\n";
  CHECK(parse_automaton(with_alpha).tree().alphabet().size() == 2);
}

TEST_CASE("tree file errors", "[io]") {
  const std::string head = "kind: tree\ndirections: 2\nstates: 1\ninitial: 0\n";
  CHECK(error_line(head + "edge: 0 1 a 0\n") == 5);  // not total: reported at end of file
  CHECK(error_line(head + "edge: 0 3 a 0\nedge: 0 1 a 0\n") == 5);
  CHECK(error_line(head + "edge: 0 1 a 0\nedge: 0 1 a 0\n") == 6);
  CHECK(error_line(head + "accepting: 0\n") == 5);
  CHECK(error_line("kind: tree\ndirections: 0\n") == 2);
  Alphabet sigma({"a"});
  CHECK(error_line(head + "edge: 0 1 a 0\nedge: 0 2 z 0\n", &sigma) == 6);
}

TEST_CASE("ultimately periodic words serialize as 'u ; v'", "[io]") {
  Alphabet sigma({"a", "b", "c"});
  CHECK(format_upword(sigma, {{1, 2}, {1, 0}}) == "b c ; b a");
  CHECK(format_upword(sigma, {{}, {0}}) == "; a");
  CHECK(parse_upword(sigma, "b c ; b a") == UPWord{{1, 2}, {1, 0}});
  CHECK(parse_upword(sigma, " ; c") == UPWord{{}, {2}});
  CHECK_THROWS_AS(parse_upword(sigma, "a b"), InputError);
  CHECK_THROWS_AS(parse_upword(sigma, "a ;"), InputError);
  CHECK_THROWS_AS(parse_upword(sigma, "; d"), InputError);
}

TEST_CASE("property: random acceptors round-trip through text", "[io][property]") {
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    BuchiAcceptor m = random_nbw(rng, 1 + rng.below(5), letters(1 + rng.below(3)));
    AutomatonFile f = parse_automaton(to_text(m));
    CHECK(f.buchi() == m);
    CHECK((f.kind == FileKind::dbw) == m.is_deterministic());
    FinAcceptor d = random_acceptor<Acceptance::finite>(rng, 1 + rng.below(4), letters(2));
    CHECK(parse_automaton(to_text(d)).fin() == d);
  }
}
