#include <doctest.h>

#include <algorithm>
#include <random>

#include "cpfcert/rewriting.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace cpfcert;

namespace {

Term V(const std::string& n) { return Term::var(n); }
Term F(const std::string& n, std::vector<Term> args = {}) { return Term::app(n, std::move(args)); }

// Packs terms and their variables into one term, so "u is an instance
// of v" can be decided with match alone.
Term pack(const Term& s, const Term& t) {
  std::vector<Term> parts = {s, t};
  for (const auto& v : variables_of(s)) parts.push_back(V(v));
  for (const auto& v : variables_of(t)) parts.push_back(V(v));
  return F("tuple", std::move(parts));
}

}  // namespace

TEST_SUITE("rewriting") {
  TEST_CASE("match basics") {
    auto s = match(F("f", {V("x"), V("y")}), F("f", {F("a"), F("g", {F("b")})}));
    REQUIRE(s.has_value());
    CHECK(s->apply(F("f", {V("x"), V("y")})) == F("f", {F("a"), F("g", {F("b")})}));

    // nonlinear pattern: both occurrences must agree
    CHECK(!match(F("f", {V("x"), V("x")}), F("f", {F("a"), F("b")})).has_value());
    CHECK(match(F("f", {V("x"), V("x")}), F("f", {F("a"), F("a")})).has_value());

    CHECK(!match(F("f", {V("x")}), F("g", {V("x")})).has_value());
    CHECK(!match(F("a"), V("x")).has_value());  // a variable subject is not an instance
    CHECK(match(V("x"), F("f", {V("y")})).has_value());
  }

  TEST_CASE("match agrees with the naive matcher") {
    std::mt19937 rng(23);
    auto pool = oracle::default_pool();
    for (int i = 0; i < 300; ++i) {
      Term pattern = oracle::random_term(rng, pool, 3);
      Term subject = oracle::random_term(rng, pool, 3);
      // half the time force a positive case
      if (rng() % 2) {
        Substitution sigma;
        for (const auto& v : variables_of(pattern))
          if (rng() % 2) sigma.bind(v, oracle::random_term(rng, pool, 2));
        subject = sigma.apply(pattern);
      }
      auto mine = match(pattern, subject);
      auto naive = oracle::match_naive(pattern, subject);
      CHECK(mine.has_value() == naive.has_value());
      if (mine) CHECK(mine->apply(pattern) == subject);
    }
  }

  TEST_CASE("unify basics") {
    auto s = unify(F("f", {V("x"), F("a")}), F("f", {F("g", {V("y")}), V("z")}));
    REQUIRE(s.has_value());
    CHECK(s->apply(F("f", {V("x"), F("a")})) == s->apply(F("f", {F("g", {V("y")}), V("z")})));

    CHECK(!unify(V("x"), F("f", {V("x")})).has_value());  // occurs check
    CHECK(!unify(F("a"), F("b")).has_value());
    CHECK(unify(V("x"), V("x")).has_value());
    CHECK(unify(V("x"), V("x"))->empty());
  }

  TEST_CASE("unify produces an idempotent mgu, agreeing with the naive unifier") {
    std::mt19937 rng(29);
    auto pool = oracle::default_pool();
    int positives = 0;
    for (int i = 0; i < 300; ++i) {
      Term s = oracle::random_term(rng, pool, 3);
      Term t = oracle::random_term(rng, pool, 3);
      auto mine = unify(s, t);
      auto naive = oracle::unify_naive(s, t);
      REQUIRE(mine.has_value() == naive.has_value());
      if (!mine) continue;
      ++positives;
      CHECK(mine->apply(s) == mine->apply(t));
      CHECK(naive->apply(s) == naive->apply(t));
      // idempotence: applying twice changes nothing
      Term u = mine->apply(s);
      CHECK(mine->apply(u) == u);
      // most general: the naive unifier's result is an instance of ours
      Term packed = pack(s, t);
      CHECK(match(mine->apply(packed), naive->apply(packed)).has_value());
    }
    CHECK(positives > 20);  // the generator must exercise the positive branch
  }

  TEST_CASE("rewrite_steps matches the brute-force step enumeration") {
    std::mt19937 rng(31);
    auto pool = oracle::default_pool();
    for (int i = 0; i < 80; ++i) {
      Trs trs = oracle::random_trs(rng, pool, 1 + rng() % 3, 2);
      Term t = oracle::random_term(rng, pool, 3);
      auto steps = rewrite_steps(trs, t);
      // ordered by (position, rule index)
      for (std::size_t k = 1; k < steps.size(); ++k) {
        auto prev = std::make_pair(steps[k - 1].position, steps[k - 1].rule_index);
        auto cur = std::make_pair(steps[k].position, steps[k].rule_index);
        CHECK(prev < cur);
      }
      std::vector<Term> mine;
      for (const auto& st : steps) {
        mine.push_back(st.reduct);
        // each step is sound: the rule really applies there
        auto sub = subterm_at(t, st.position);
        REQUIRE(sub.has_value());
        auto sigma = match(trs.rules[st.rule_index].lhs, *sub);
        REQUIRE(sigma.has_value());
        CHECK(replace_at(t, st.position, sigma->apply(trs.rules[st.rule_index].rhs)) ==
              st.reduct);
      }
      auto expected = oracle::one_step_reducts(trs, t);
      std::sort(mine.begin(), mine.end());
      std::sort(expected.begin(), expected.end());
      CHECK(mine == expected);
    }
  }

  TEST_CASE("normal_form on the group system") {
    Trs r = testutil::group_trs();
    using testutil::gb;
    using testutil::ge;
    using testutil::gi;
    using testutil::gv;
    CHECK(normal_form(r, gb(ge(), gv("x")), 100) == gv("x"));
    CHECK(normal_form(r, gi(gi(ge())), 100) == ge());
    CHECK(normal_form(r, gb(gi(gv("x")), gb(gv("x"), gv("z"))), 100) == gv("z"));
    CHECK(normal_form(r, gi(gb(gv("y"), gv("x"))), 100) == gb(gi(gv("x")), gi(gv("y"))));
    // normal forms need no fuel
    CHECK(normal_form(r, gv("x"), 0) == gv("x"));
  }

  TEST_CASE("normal_form runs out of fuel on a loop") {
    Trs loop{{{F("f", {V("x")}), F("f", {F("s", {V("x")})})}}};
    CHECK(!normal_form(loop, F("f", {F("a")}), 1000).has_value());
  }

  TEST_CASE("normal_form is leftmost-innermost with lowest rule index first") {
    // innermost: the argument redex fires before the root redex
    Trs inner{{{F("a"), F("b")}, {F("f", {F("a")}), F("d")}}};
    CHECK(normal_form(inner, F("f", {F("a")}), 100) == F("f", {F("b")}));
    // lowest index: both rules rewrite a, rule 0 wins
    Trs first{{{F("a"), F("b")}, {F("a"), F("c")}}};
    CHECK(normal_form(first, F("a"), 100) == F("b"));
    // a root redex appearing mid-reduction must wait for inner redexes:
    // g(a,a) -> g(b,a) exposes g(b,a) -> hit, but position 2 fires first
    Trs trace{{{F("a"), F("b")}, {F("g", {F("b"), F("a")}), F("hit")}}};
    CHECK(normal_form(trace, F("g", {F("a"), F("a")}), 100) == F("g", {F("b"), F("b")}));
  }

  TEST_CASE("critical pairs of the associativity rule") {
    Term x = V("x"), y = V("y"), z = V("z");
    Trs assoc{{{F("f", {F("f", {x, y}), z}), F("f", {x, F("f", {y, z})})}}};
    auto cps = critical_pairs(assoc);
    REQUIRE(cps.size() == 1);
    // the only overlap is the inner f(x,y) against a renamed copy
    CHECK(cps[0].position == Position({1}));
    CHECK(cps[0].outer_rule == 0);
    CHECK(cps[0].inner_rule == 0);
    CHECK(critical_pair_replays(assoc, cps[0]));
    auto forms = oracle::critical_pair_forms(cps);
    CHECK(forms == oracle::critical_pairs_brute(assoc));
  }

  TEST_CASE("root overlaps of distinct rules count, self root overlap does not") {
    Trs two{{{F("a"), F("b")}, {F("a"), F("c")}}};
    auto cps = critical_pairs(two);
    CHECK(cps.size() == 2);  // (0 over 1) and (1 over 0); no rule against itself at the root
    for (const auto& cp : cps) CHECK(critical_pair_replays(two, cp));
    Trs one{{{F("a"), F("b")}}};
    CHECK(critical_pairs(one).empty());
  }

  TEST_CASE("group system has 55 critical pairs, all joinable") {
    Trs r = testutil::group_trs();
    auto cps = critical_pairs(r);
    CHECK(cps.size() == 55);
    CHECK(oracle::critical_pair_forms(cps) == oracle::critical_pairs_brute(r));
    for (const auto& cp : cps) {
      CHECK(critical_pair_replays(r, cp));
      auto l = normal_form(r, cp.left, 10000);
      auto rr = normal_form(r, cp.right, 10000);
      REQUIRE(l.has_value());
      REQUIRE(rr.has_value());
      CHECK(*l == *rr);
    }
  }

  TEST_CASE("critical pair enumeration is ordered and replayable on random systems") {
    std::mt19937 rng(37);
    auto pool = oracle::default_pool();
    for (int i = 0; i < 60; ++i) {
      Trs trs = oracle::random_trs(rng, pool, 1 + rng() % 3, 2);
      auto cps = critical_pairs(trs);
      for (std::size_t k = 1; k < cps.size(); ++k) {
        auto prev = std::make_tuple(cps[k - 1].outer_rule, cps[k - 1].inner_rule,
                                    cps[k - 1].position);
        auto cur = std::make_tuple(cps[k].outer_rule, cps[k].inner_rule, cps[k].position);
        CHECK(prev < cur);
      }
      for (const auto& cp : cps) CHECK(critical_pair_replays(trs, cp));
      CHECK(oracle::critical_pair_forms(cps) == oracle::critical_pairs_brute(trs));
    }
  }

  TEST_CASE("critical_pair_replays rejects corrupted pairs") {
    Trs r = testutil::group_trs();
    auto cps = critical_pairs(r);
    REQUIRE(!cps.empty());
    CriticalPair bad = cps[0];
    bad.right = F("nonsense");
    CHECK(!critical_pair_replays(r, bad));
    bad = cps[0];
    bad.inner_rule = r.rules.size();
    CHECK(!critical_pair_replays(r, bad));
  }

  TEST_CASE("alpha equality") {
    Rule a{F("f", {V("x"), V("y")}), V("x")};
    Rule b{F("f", {V("u"), V("v")}), V("u")};
    Rule c{F("f", {V("u"), V("v")}), V("v")};
    CHECK(alpha_equal(a, b));
    CHECK(alpha_equal(b, a));
    CHECK(!alpha_equal(a, c));
    // renaming must be bijective: x,y |-> u,u is not allowed
    Rule nonlinear{F("f", {V("u"), V("u")}), V("u")};
    CHECK(!alpha_equal(a, nonlinear));
    CHECK(alpha_equal(a, a));
  }

  TEST_CASE("canonical_rule") {
    Rule a{F("f", {V("q"), V("p")}), F("g", {V("p")})};
    Rule canon = canonical_rule(a);
    CHECK(canon.lhs == F("f", {V("v0"), V("v1")}));
    CHECK(canon.rhs == F("g", {V("v1")}));
    CHECK(canonical_rule(canon) == canon);  // idempotent
    Rule b{F("f", {V("x"), V("y")}), F("g", {V("y")})};
    CHECK(canonical_rule(b) == canon);
    CHECK(alpha_equal(a, b));
  }
}
