#include <catch_amalgamated.hpp>

#include "support/oracles.hpp"

using namespace omt;

namespace {

BuchiAcceptor load(const std::string& name) { return read_automaton(oracle::fixture(name)).buchi(); }

BuchiRsq teacher_oracle(Teacher& t) {
  return BuchiRsq([&t](const BuchiAcceptor& p) { return t.rsq(p); });
}

// M2 against L(M1); state 1 of M2 is its accepting state.
struct Pair {
  BuchiAcceptor m1 = complete(load("m1.dbw"));
  BuchiAcceptor m2 = load("m2.dbw");
  Teacher teacher{m1};
  BuchiRsq oracle = teacher_oracle(teacher);
  AnchorPtr anchor = std::make_shared<const Anchor>(m2, 1, std::make_shared<SearchStats>());
};

template <class T>
T run(OmegaTask<T> task, BuchiRsq& oracle) {
  oracle.begin_operation();
  return drive(task, oracle);
}

// v loops at q and u reaches q in the deterministic acceptor m.
bool anchored(const BuchiAcceptor& m, State q, const UPWord& w) {
  auto at = run(m, m.initial(), w.prefix);
  auto back = run(m, q, w.period);
  return at && *at == q && back && *back == q;
}

}  // namespace

TEST_CASE("two-acceptor example: r_omega finds a separating word", "[subsetq]") {
  Pair p;
  auto stats = std::make_shared<SearchStats>();
  auto w = r_omega(p.m2, p.oracle, stats);
  REQUIRE(w);
  CHECK(oracle::lasso_accepts(p.m2, *w));
  CHECK_FALSE(mq_lasso(p.m1, *w));
  CHECK(anchored(p.m2, 1, *w));
  // Regression value of the diagonal search order.
  CHECK(format_upword(p.m2.alphabet(), *w) == "c b ; a b");
  REQUIRE_FALSE(stats->nextword_kl.empty());
  CHECK(stats->nextword_kl.front() == std::pair<std::size_t, std::size_t>{2, 2});
}

TEST_CASE("two-acceptor example: the (k, l) probes of the first nextword", "[subsetq]") {
  Pair p;
  const Anchor& a = *p.anchor;
  auto probe = [&](std::size_t k, std::size_t l) {
    return p.teacher.rsq(a.probe(k, {}, {a.single({}), restrict(a.loop_q, l, {})}));
  };
  CHECK(probe(1, 2));
  CHECK_FALSE(probe(2, 2));
  CHECK_FALSE(probe(1, 3));
}

TEST_CASE("two-acceptor example: findprefix and nextsymbol", "[subsetq]") {
  Pair p;
  const Alphabet& s = p.m2.alphabet();
  Word u = run(findprefix(p.anchor, parse_upword(s, "; a a b").period), p.oracle);
  CHECK(s.format(u) == "b");
  CHECK(p.anchor->stats->prefix_k == std::vector<std::size_t>{1});

  Symbol x = run(nextsymbol(p.anchor, {}, 3, {}), p.oracle);
  CHECK((x == s.at("a") || x == s.at("c")));

  Word v = run(findperiod(p.anchor), p.oracle);
  INFO(s.format(v));
  auto back = run(p.m2, 1, v);
  CHECK((back && *back == 1));
}

TEST_CASE("findperiod with a single-letter loop", "[subsetq]") {
  Alphabet s({"a", "b"});
  BuchiAcceptor target(s, 2, 0);  // at least one b
  target.add_transition(0, 0, 0);
  target.add_transition(0, 1, 1);
  target.add_transition(1, 0, 1);
  target.add_transition(1, 1, 1);
  target.set_accepting(1);
  BuchiAcceptor m(s, 1, 0);
  m.set_accepting(0);
  m.add_transition(0, 0, 0);
  Teacher t(target);
  BuchiRsq o = teacher_oracle(t);
  auto stats = std::make_shared<SearchStats>();
  Word v = run(findperiod(std::make_shared<const Anchor>(m, 0, stats)), o);
  CHECK(v == Word{0});
  CHECK(stats->period_rounds == std::vector<std::size_t>{1});
}

TEST_CASE("findprefix against the empty language", "[subsetq]") {
  BuchiAcceptor m2 = load("m2.dbw");
  BuchiRsq nothing([](const BuchiAcceptor&) { return false; });
  auto stats = std::make_shared<SearchStats>();
  auto a = std::make_shared<const Anchor>(m2, 1, stats);
  Word u = run(findprefix(a, {0, 0, 1}), nothing);
  CHECK(u.size() == 1);
  CHECK(stats->prefix_k == std::vector<std::size_t>{1});
}

TEST_CASE("empty probes never reach the oracle", "[subsetq]") {
  Pair p;
  std::size_t seen = 0;
  BuchiRsq o([&](const BuchiAcceptor& n) {
    CHECK_FALSE(buchi_empty(n));
    return p.teacher.rsq(n);
  });
  o.set_observer([&](const BuchiAcceptor&) { ++seen; });
  auto w = r_omega(p.m2, o);
  REQUIRE(w);
  CHECK(o.local() > 0);
  CHECK(seen == o.local() + o.calls());
}

TEST_CASE("r_omega answers yes on contained languages", "[subsetq]") {
  BuchiAcceptor m = load("target_m.dbw");
  Teacher t(m);
  BuchiRsq o = teacher_oracle(t);
  CHECK_FALSE(r_omega(m, o));
  CHECK_FALSE(r_omega(empty_acceptor<Acceptance::buchi>(m.alphabet()), o));
}

TEST_CASE("findctrex on the T1 paths acceptor", "[subsetq]") {
  BuchiAcceptor m = load("target_m.dbw");
  TreeAutomaton t1 = read_automaton(oracle::fixture("t1.tree"), &m.alphabet()).tree();
  BuchiAcceptor mp = acceptor_of_tree(t1);
  Teacher t(m);
  BuchiRsq o = teacher_oracle(t);
  auto w = r_omega(mp, o);
  REQUIRE(w);
  CHECK(oracle::tree_has_path(t1, *w));
  CHECK_FALSE(mq_lasso(m, *w));
  CHECK(oracle::tree_has_path(t1, {{0}, {1}}));
  CHECK_FALSE(mq_lasso(m, {{0}, {1}}));
}

TEST_CASE("budget exhaustion is reported, not guessed", "[subsetq]") {
  Pair p;
  BuchiRsq tight([&](const BuchiAcceptor& n) { return p.teacher.rsq(n); }, SearchBudget{3, 1000});
  CHECK_THROWS_AS(r_omega(p.m2, tight), BudgetExhausted);

  // Precondition violated: everything is contained, the search cannot end.
  BuchiRsq yes([](const BuchiAcceptor&) { return true; }, SearchBudget{200, 100000});
  CHECK_THROWS_AS(run_findctrex(p.m2, 1, yes), BudgetExhausted);
  CHECK_THROWS_AS(BuchiRsq([](const BuchiAcceptor&) { return true; }, SearchBudget{0, 1}), InputError);
}

TEST_CASE("r_omega reports an inconsistent oracle", "[subsetq]") {
  BuchiAcceptor m2 = load("m2.dbw");
  bool first = true;
  BuchiRsq liar([&](const BuchiAcceptor&) {
    bool answer = !first;
    first = false;
    return answer;
  });
  CHECK_THROWS_AS(r_omega(m2, liar), Error);
}

TEST_CASE("rstar: shortest counterexample for a*b against the complement of a*b", "[subsetq]") {
  Alphabet s({"a", "b"});
  FinAcceptor m(s, 2, 0);  // a*b
  m.add_transition(0, 0, 0);
  m.add_transition(0, 1, 1);
  m.set_accepting(1);
  FinAcceptor l(s, 3, 0);  // complement of a*b, complete
  l.add_transition(0, 0, 0);
  l.add_transition(0, 1, 1);
  l.add_transition(1, 0, 2);
  l.add_transition(1, 1, 2);
  l.add_transition(2, 0, 2);
  l.add_transition(2, 1, 2);
  l.set_accepting(0);
  l.set_accepting(2);
  FinRsq o([&](const FinAcceptor& p) { return !dfw_difference_witness(p, l); });
  auto u = rstar(m, o);
  REQUIRE(u);
  CHECK(*u == Word{1});
  CHECK_FALSE(rstar(empty_acceptor<Acceptance::finite>(s), o));
  CHECK_FALSE(rstar(restrict(m, 0, {}), o));
}

TEST_CASE("property: rstar finds the shortest counterexample", "[subsetq][property]") {
  Rng rng(51);
  int witnessed = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Alphabet sigma = letters(1 + rng.below(3));
    FinAcceptor m = rng.coin() ? random_dfw(rng, 1 + rng.below(4), sigma)
                               : random_acceptor<Acceptance::finite>(rng, 1 + rng.below(4), sigma);
    FinAcceptor l = random_dfw(rng, 1 + rng.below(4), sigma);
    const bool det = m.is_deterministic();
    FinRsq o([&](const FinAcceptor& p) {
      if (!(p == m)) CHECK(p.is_special_form());
      if (det) CHECK(p.is_deterministic());
      return !dfw_difference_witness(p, l);
    });
    auto u = rstar(m, o);
    const std::size_t bound = m.num_states() * l.num_states();
    if (u) {
      ++witnessed;
      CHECK(u->size() < bound);
      CHECK(oracle::shortest_fin_difference(m, l, u->size()) == u);
    } else {
      CHECK_FALSE(oracle::shortest_fin_difference(m, l, std::min<std::size_t>(bound, 7)));
    }
  }
  CHECK(witnessed > 50);
}

TEST_CASE("property: r_omega witnesses, length bounds and probe shape", "[subsetq][property]") {
  Rng rng(52);
  int witnessed = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Alphabet sigma = letters(1 + rng.below(3));
    BuchiAcceptor m = rng.coin() ? random_dbw(rng, 1 + rng.below(4), sigma)
                                 : random_nbw(rng, 1 + rng.below(4), sigma);
    BuchiAcceptor target = random_dbw(rng, 1 + rng.below(4), sigma);
    Teacher t(target);
    const bool det = m.is_deterministic();
    BuchiRsq o = teacher_oracle(t);
    std::vector<BuchiAcceptor> top{m};
    for (State q : m.accepting_states()) top.push_back(single_accepting(m, q));
    o.set_observer([&](const BuchiAcceptor& p) {
      if (std::find(top.begin(), top.end(), p) != top.end()) return;
      CHECK(p.all_accepting());
      CHECK(p.out_degree() <= std::max<std::size_t>(m.out_degree(), 1));
      if (det) CHECK(p.is_deterministic());
    });
    auto stats = std::make_shared<SearchStats>();
    auto w = r_omega(m, o, stats);
    CHECK(w.has_value() == oracle::violation_exists(m, target, 16, 16));
    if (!w) continue;
    ++witnessed;
    CHECK(oracle::lasso_accepts(m, *w));
    CHECK_FALSE(mq_lasso(target, *w));
    CHECK_FALSE(oracle::lasso_accepts(target, *w));
    const std::size_t bound = m.num_states() * target.num_states();
    for (std::size_t k : stats->prefix_k) CHECK(k < bound);
    // k is strictly below the bound; l and m can reach it (see the
    // two-state cycle case below), never exceed it.
    for (auto [k, l] : stats->nextword_kl) {
      CHECK(k < bound);
      CHECK(l <= bound);
    }
    for (auto [k, mm] : stats->nextsymbol_km) {
      CHECK(k < bound);
      CHECK(mm <= bound);
    }
    for (std::size_t rounds : stats->period_rounds) CHECK(rounds <= target.num_states() + 1);
    // Findperiod keeps the literal k <= n*|M| loop bound; the k it settles on
    // also lies below |M|*|T_L|, so the bound never cuts a search short.
    REQUIRE(stats->period_k.size() == stats->period_rounds.size());
    for (std::size_t i = 0; i < stats->period_k.size(); ++i) {
      CHECK(stats->period_k[i] <= stats->period_rounds[i] * m.num_states());
      CHECK(stats->period_k[i] < bound);
    }
  }
  CHECK(witnessed > 50);
}

TEST_CASE("loop lengths can equal |M|*|T| exactly", "[subsetq]") {
  // M is a two-state cycle on a, the target language is empty (one rejecting
  // state). The only loops at q have even length, so l = 2 = |M|*|T|.
  Alphabet s({"a"});
  BuchiAcceptor m(s, 2, 0);
  m.add_transition(0, 0, 1);
  m.add_transition(1, 0, 0);
  m.set_accepting(0);
  BuchiAcceptor none(s, 1, 0);
  none.add_transition(0, 0, 0);
  Teacher t(none);
  BuchiRsq o = teacher_oracle(t);
  auto stats = std::make_shared<SearchStats>();
  auto w = r_omega(m, o, stats);
  REQUIRE(w);
  REQUIRE_FALSE(stats->nextword_kl.empty());
  CHECK(stats->nextword_kl.front().second == 2);
  CHECK(w->period == Word{0, 0});
}
