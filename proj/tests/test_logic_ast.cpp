#include <doctest.h>

#include "finvar/error.hpp"
#include "finvar/evaluator.hpp"
#include "finvar/formula.hpp"
#include "support/support.hpp"

using namespace finvar;

namespace {

const Signature kSig{{"R", 3}, {"S", 2}};

}  // namespace

TEST_CASE("parse builds the primitive tree") {
  CHECK(parse("v0 = v0", kSig) == eq(0, 0));
  CHECK(parse("E v1 R(v0, v1, v2)", kSig) == exists(1, atom("R", {0, 1, 2})));
  CHECK(parse("~(R(v0,v1,v2) & S(v0,v1))", kSig) == negate(conj(atom("R", {0, 1, 2}), atom("S", {0, 1}))));
  CHECK(parse("  E v1   R( v0 ,v1, v2 ) ", kSig) == exists(1, atom("R", {0, 1, 2})));
}

TEST_CASE("render") {
  CHECK(render(eq(0, 0)) == "v0 = v0");
  CHECK(render(exists(1, atom("R", {0, 1, 2}))) == "E v1 R(v0, v1, v2)");
  CHECK(render(negate(eq(0, 1))) == "~v0 = v1");
}

TEST_CASE("sugar is rewritten into primitives") {
  Formula p = atom("S", {0, 1});
  Formula q = eq(1, 2);
  CHECK(parse("S(v0,v1) | v1 = v2", kSig) == negate(conj(negate(p), negate(q))));
  CHECK(parse("S(v0,v1) -> v1 = v2", kSig) == negate(conj(p, negate(q))));
  CHECK(parse("S(v0,v1) <-> v1 = v2", kSig) == conj(negate(conj(p, negate(q))), negate(conj(q, negate(p)))));
  CHECK(parse("A v1 S(v0,v1)", kSig) == negate(exists(1, negate(p))));
}

TEST_CASE("precedence and associativity") {
  Formula a = eq(0, 0), b = eq(1, 1), c = eq(2, 2);
  CHECK(parse("v0 = v0 | v1 = v1 & v2 = v2", kSig) == disj(a, conj(b, c)));
  CHECK(parse("v0 = v0 -> v1 = v1 -> v2 = v2", kSig) == implies(a, implies(b, c)));
  CHECK(parse("v0 = v0 & v1 = v1 & v2 = v2", kSig) == conj(conj(a, b), c));
  CHECK(parse("~v0 = v0 & v1 = v1", kSig) == conj(negate(a), b));
  CHECK(parse("v0 = v0 <-> v1 = v1 -> v2 = v2", kSig) == iff(a, implies(b, c)));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse("R(v0, v1)", kSig), SignatureError);
  CHECK_THROWS_AS(parse("Q(v0)", kSig), SignatureError);
  CHECK_THROWS_AS(parse("v0 = ", kSig), ParseError);
  CHECK_THROWS_AS(parse("(v0 = v1", kSig), ParseError);
  CHECK_THROWS_AS(parse("v0 = v1 v2", kSig), ParseError);
  CHECK_THROWS_AS(parse("E x R(v0,v1,v2)", kSig), ParseError);
  try {
    parse("v0 = v1 & ", kSig);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 10);
  }
}

TEST_CASE("variable_span") {
  CHECK(variable_span(eq(0, 0)) == 1);
  CHECK(variable_span(atom("R", {0, 1, 2})) == 3);
  CHECK(variable_span(exists(2, eq(0, 0))) == 3);
  CHECK(variable_span(exists(2, eq(0, 2))) == 3);
}

TEST_CASE("is_restricted") {
  CHECK(is_restricted(atom("R", {0, 1, 2}), kSig));
  CHECK_FALSE(is_restricted(atom("R", {0, 2, 1}), kSig));
  CHECK_FALSE(is_restricted(atom("S", {1, 0}), kSig));
  CHECK(is_restricted(conj(atom("S", {0, 1}), eq(2, 1)), kSig));
  CHECK_FALSE(is_restricted(parse("S(v0,v1) | S(v1,v0) | v0 = v1", kSig), kSig));
}

TEST_CASE("signature invariants") {
  Signature s;
  s.add("P", 1);
  CHECK_THROWS_AS(s.add("P", 2), SignatureError);
  CHECK_THROWS_AS(s.add("Z", 0), SignatureError);
  CHECK(s.arity("P") == 1u);
  CHECK_FALSE(s.arity("Q").has_value());
}

TEST_CASE("render then parse is the identity on random formulas") {
  testing::Rng rng(11);
  for (unsigned n = 1; n <= 3; ++n)
    for (int k = 0; k < 400; ++k) {
      Formula f = testing::random_formula(rng, kSig, n, 6);
      Formula g = parse(render(f), kSig);
      REQUIRE_MESSAGE(g == f, render(f));
      CHECK(variable_span(f) <= n);
    }
}

TEST_CASE("sugar agrees with its truth-table reading") {
  testing::Rng rng(12);
  const unsigned n = 3;
  for (unsigned m = 1; m <= 4; ++m) {
    CylindricSpace space(n, m);
    for (int k = 0; k < 30; ++k) {
      Structure s = testing::random_structure(rng, m, kSig);
      Formula p = testing::random_formula(rng, kSig, n, 3);
      Formula q = testing::random_formula(rng, kSig, n, 3);
      NAryRelation mp = evaluate_naive(s, p, space), mq = evaluate_naive(s, q, space);
      const std::string tp = "(" + render(p) + ")", tq = "(" + render(q) + ")";
      CHECK(evaluate_naive(s, parse(tp + " | " + tq, kSig), space) == (mp | mq));
      CHECK(evaluate_naive(s, parse(tp + " -> " + tq, kSig), space) == (mp.complement() | mq));
      CHECK(evaluate_naive(s, parse(tp + " <-> " + tq, kSig), space) ==
            ((mp & mq) | (mp.complement() & mq.complement())));
      for (unsigned i = 0; i < n; ++i) {
        // A v_i p holds at t iff p holds at every i-variant of t.
        NAryRelation expected = space.full();
        for (std::uint64_t c = 0; c < space.cell_count(); ++c) {
          Tuple t = mp.tuple_of(c);
          for (Element v = 0; v < m; ++v) {
            t[i] = v;
            if (!mp.contains(t)) {
              expected.reset(c);
              break;
            }
          }
        }
        CHECK(evaluate_naive(s, parse("A v" + std::to_string(i) + " " + tp, kSig), space) == expected);
      }
    }
  }
}

TEST_CASE("construction formulas stay within n variables") {
  for (unsigned n = 3; n <= 5; ++n) {
    for (const auto& ax : build_theory(n)) CHECK_MESSAGE(variable_span(ax.formula) <= n, ax.label);
    for (const auto& ax : build_sigma(n)) CHECK_MESSAGE(variable_span(ax.formula) <= n, ax.label);
  }
  for (const auto& ax : build_theory(4, {.include_s = false})) CHECK(variable_span(ax.formula) <= 4);
}

TEST_CASE("tree_size saturates") {
  Formula f = eq(0, 1);
  for (int k = 0; k < 100; ++k) f = conj(f, f);
  CHECK(tree_size(eq(0, 1)) == 1);
  CHECK(tree_size(conj(eq(0, 1), negate(eq(1, 0)))) == 4);
  CHECK(tree_size(f, 1000) == 1000);
}
