#include <catch_amalgamated.hpp>

#include "support/oracles.hpp"

using namespace omt;

namespace {

BuchiAcceptor load(const std::string& name) { return read_automaton(oracle::fixture(name)).buchi(); }

TreeAutomaton load_tree(const std::string& name, const Alphabet& sigma) {
  return read_automaton(oracle::fixture(name), &sigma).tree();
}

UPWord w(const BuchiAcceptor& m, const char* text) { return parse_upword(m.alphabet(), text); }

// Separates: accepted by `in`, rejected by `out`, checked by the explicit oracle.
bool separates(const UPWord& x, const BuchiAcceptor& in, const BuchiAcceptor& out) {
  return oracle::lasso_accepts(in, x) && !oracle::lasso_accepts(out, x);
}

}  // namespace

TEST_CASE("word membership queries", "[teacher]") {
  BuchiAcceptor m = load("target_m.dbw");
  Teacher t(m);
  t.log().enable_trace();
  CHECK(t.word_mq(w(m, "b c ; b a")));
  CHECK_FALSE(t.word_mq(w(m, "a ; b")));
  CHECK_FALSE(t.word_mq(w(m, "; c")));
  CHECK(t.log().mq == 3);
  REQUIRE(t.log().trace().size() == 3);
  CHECK(t.log().trace()[0] == "MQ b c;b a -> yes");
  CHECK(t.log().trace()[2] == "MQ ;c -> no");
}

TEST_CASE("teacher rejects an incomplete or nondeterministic target", "[teacher]") {
  CHECK_THROWS_AS(Teacher(load("h1.dbw")), InputError);
  CHECK_THROWS_AS(Teacher(load("target_m.dbw"), {0}), ArityError);
}

TEST_CASE("DBW difference witnesses", "[teacher]") {
  BuchiAcceptor m = load("target_m.dbw");
  BuchiAcceptor h1 = complete(load("h1.dbw")), h2 = load("h2.dbw");
  auto x = dbw_difference_witness(m, h2);
  REQUIRE(x);
  CHECK(separates(*x, m, h2));
  CHECK(separates(w(m, "b c ; b a"), m, h2));
  CHECK_FALSE(dbw_difference_witness(m, m));
  auto y = dbw_difference_witness(h1, m);
  REQUIRE(y);
  CHECK(separates(*y, h1, m));
  CHECK(separates(w(m, "a ; b"), h1, m));
}

TEST_CASE("word equivalence queries and polarity", "[teacher]") {
  BuchiAcceptor m = load("target_m.dbw");
  Teacher t(m);
  CHECK(t.word_eq(m).equal);
  WordEqAnswer a1 = t.word_eq(load("h1.dbw"));
  REQUIRE_FALSE(a1.equal);
  CHECK(a1.polarity == Polarity::negative);
  CHECK(separates(*a1.witness, complete(load("h1.dbw")), m));
  WordEqAnswer a2 = t.word_eq(load("h2.dbw"));
  REQUIRE_FALSE(a2.equal);
  CHECK(a2.polarity == Polarity::positive);
  CHECK(separates(*a2.witness, m, load("h2.dbw")));
  CHECK(t.log().eq == 3);

  Teacher pos(m, {1, TreeStrategy::uniform, EqOrder::positive_first});
  WordEqAnswer a3 = pos.word_eq(load("h1.dbw"));
  REQUIRE_FALSE(a3.equal);
  CHECK(separates(*a3.witness, a3.polarity == Polarity::positive ? m : complete(load("h1.dbw")),
                  a3.polarity == Polarity::positive ? complete(load("h1.dbw")) : m));
}

TEST_CASE("restricted and unrestricted subset queries", "[teacher]") {
  BuchiAcceptor m = load("target_m.dbw");
  const Alphabet& s = m.alphabet();
  Teacher t(m);
  CHECK_FALSE(t.rsq(acceptor_of_tree(load_tree("t1.tree", s))));
  CHECK(t.rsq(empty_acceptor<Acceptance::buchi>(s)));
  CHECK(t.rsq(m));
  CHECK(t.log().rsq == 3);

  BuchiAcceptor m1 = load("m1.dbw"), m2 = load("m2.dbw");
  Teacher tb(complete(m1));
  auto ce = tb.usq(m2);
  REQUIRE(ce);
  CHECK(separates(*ce, m2, complete(m1)));
  CHECK(separates(w(m1, "b ; a a b"), m2, complete(m1)));
  CHECK(separates(w(m1, "c b ; a b"), m2, complete(m1)));
  CHECK_FALSE(tb.usq(complete(m1)));
  CHECK(tb.log().usq == 2);
}

TEST_CASE("tree membership queries", "[teacher]") {
  BuchiAcceptor m = load("target_m.dbw");
  const Alphabet& s = m.alphabet();
  Teacher t(m, {2});
  t.log().enable_trace();
  CHECK(t.tree_mq(load_tree("t2.tree", s)));
  CHECK_FALSE(t.tree_mq(load_tree("t1.tree", s)));
  CHECK(t.tree_mq(tree_of_upword(s, w(m, "b c ; b a"), 2)));
  CHECK(t.log().tree_mq == 3);
  CHECK(t.log().trace()[0].rfind("TMQ ", 0) == 0);
  CHECK(t.log().trace()[0].size() == 4 + 16 + 7);
  CHECK_THROWS_AS(t.tree_mq(tree_of_upword(s, w(m, "; a"), 3)), ArityError);
}

TEST_CASE("tree equivalence queries", "[teacher]") {
  BuchiAcceptor m = load("target_m.dbw");
  BuchiAcceptor h1 = complete(load("h1.dbw"));
  for (TreeStrategy strategy : {TreeStrategy::uniform, TreeStrategy::mixed}) {
    Teacher t(m, {2, strategy});
    CHECK(t.tree_eq(derived_tree_acceptor(m, 2)).equal);
    TreeEqAnswer a = t.tree_eq(derived_tree_acceptor(h1, 2));
    REQUIRE_FALSE(a.equal);
    CHECK(a.polarity == Polarity::negative);
    REQUIRE(a.witness);
    CHECK(a.witness->arity() == 2);
    CHECK_FALSE(t.tree_mq(*a.witness));
    CHECK_FALSE(acc(*a.witness, h1));
    if (strategy == TreeStrategy::mixed) {
      // Two distinct path labels: one in H1 only, one shared.
      BuchiAcceptor paths = acceptor_of_tree(*a.witness);
      CHECK(paths.out_degree(a.witness->initial()) == 2);
    }
  }
  Teacher t(m, {2});
  CHECK_THROWS_AS(t.tree_eq(derived_tree_acceptor(m, 3)), ArityError);
}

TEST_CASE("tree hash is stable and content-based", "[teacher]") {
  Alphabet s({"a", "b"});
  TreeAutomaton a = tree_of_upword(s, {{0}, {1}}, 2), b = tree_of_upword(s, {{0}, {1}}, 2);
  CHECK(tree_hash(a) == tree_hash(b));
  CHECK(tree_hash(a) != tree_hash(tree_of_upword(s, {{1}, {0}}, 2)));
}

TEST_CASE("property: EQ and USQ witnesses are sound", "[teacher][property]") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const Alphabet sigma = letters(1 + rng.below(3));
    BuchiAcceptor target = random_dbw(rng, 1 + rng.below(5), sigma);
    BuchiAcceptor hyp = random_dbw(rng, 1 + rng.below(5), sigma);
    Teacher t(target, {1, TreeStrategy::uniform, rng.coin() ? EqOrder::negative_first : EqOrder::positive_first});
    WordEqAnswer a = t.word_eq(hyp);
    if (a.equal) {
      CHECK(oracle::bounded_equal(target, hyp, 4, 4));
    } else {
      const bool in_target = mq_lasso(target, *a.witness), in_hyp = mq_lasso(hyp, *a.witness);
      CHECK(in_target != in_hyp);
      CHECK(in_target == (a.polarity == Polarity::positive));
      CHECK(oracle::lasso_accepts(target, *a.witness) == in_target);
    }
    BuchiAcceptor n = random_nbw(rng, 1 + rng.below(4), sigma);
    auto ce = t.usq(n);
    if (ce) {
      CHECK(oracle::lasso_accepts(n, *ce));
      CHECK_FALSE(mq_lasso(target, *ce));
    }
  }
}

TEST_CASE("property: rsq agrees with an explicit bounded lasso search", "[teacher][property]") {
  Rng rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const Alphabet sigma = letters(1 + rng.below(3));
    BuchiAcceptor target = random_dbw(rng, 1 + rng.below(4), sigma);
    BuchiAcceptor n = random_nbw(rng, 1 + rng.below(4), sigma);
    Teacher t(target);
    CHECK(t.rsq(n) == !oracle::violation_exists(n, target, 16, 16));
  }
}

TEST_CASE("property: tree EQ is yes exactly on word-level equivalence", "[teacher][property]") {
  Rng rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    const Alphabet sigma = letters(1 + rng.below(3));
    const std::size_t d = 1 + rng.below(3);
    BuchiAcceptor target = random_dbw(rng, 1 + rng.below(4), sigma);
    BuchiAcceptor hyp = random_dbw(rng, 1 + rng.below(4), sigma);
    Teacher t(target, {d, rng.coin() ? TreeStrategy::mixed : TreeStrategy::uniform});
    TreeEqAnswer a = t.tree_eq(derived_tree_acceptor(hyp, d));
    const bool equal = !dbw_difference_witness(target, hyp) && !dbw_difference_witness(hyp, target);
    CHECK(a.equal == equal);
    if (!a.equal) {
      const bool in_target = t.tree_mq(*a.witness), in_hyp = !acc(*a.witness, hyp);
      CHECK(in_target != in_hyp);
      CHECK(in_target == (a.polarity == Polarity::positive));
    }
  }
}
