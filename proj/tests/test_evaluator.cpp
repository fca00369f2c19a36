#include <doctest.h>

#include "finvar/construction.hpp"
#include "finvar/cylindric.hpp"
#include "finvar/error.hpp"
#include "finvar/evaluator.hpp"
#include "support/support.hpp"

using namespace finvar;

namespace {

const Signature kSig{{"R", 3}, {"S", 2}};

struct M3 {
  PaperModel model = build_model(3);
  CylindricSpace space{3, 7};
  NAryRelation mn(const std::string& text) const {
    return evaluate(model.structure, parse(text, model.structure.signature()), space);
  }
};

}  // namespace

TEST_CASE("complement and intersection") {
  M3 m;
  CHECK(m.space.complement(m.space.full()).empty());
  testing::Rng rng(1);
  NAryRelation x = testing::random_relation(rng, 3, 7);
  CHECK(m.space.intersect(x, m.space.complement(x)).empty());
  // 343 cells minus the parity-rule count.
  const std::uint64_t expected = 343 - testing::oracle_count_R(3);
  CHECK(expected == 337);
  CHECK(m.space.complement(m.mn("R(v0,v1,v2)")).count() == expected);
  CHECK_THROWS_AS(m.space.complement(NAryRelation(2, 7)), DimensionError);
}

TEST_CASE("cylindrify") {
  M3 m;
  CHECK(m.space.cylindrify(1, m.space.empty()).empty());
  NAryRelation r = m.mn("R(v0,v1,v2)");
  NAryRelation c0 = m.space.cylindrify(0, r);
  CHECK(c0 == testing::oracle_cylindrify(r, 0));
  // M x U_1 x U_2.
  CHECK(c0.count() == 7 * 2 * 2);
  CHECK(c0.count() == 28);
  for (const auto& t : c0.tuples()) {
    CHECK(m.model.carriers[1].contains({t[1]}));
    CHECK(m.model.carriers[2].contains({t[2]}));
  }
  CHECK_THROWS_AS(m.space.cylindrify(3, r), DimensionError);
}

TEST_CASE("cylindrification laws on random tables") {
  testing::Rng rng(2);
  for (unsigned m = 1; m <= 4; ++m) {
    CylindricSpace space(3, m);
    for (int k = 0; k < 20; ++k) {
      NAryRelation x = testing::random_relation(rng, 3, m, 0.15);
      NAryRelation y = testing::random_relation(rng, 3, m, 0.15);
      for (unsigned i = 0; i < 3; ++i) {
        NAryRelation cx = space.cylindrify(i, x);
        CHECK(cx == testing::oracle_cylindrify(x, i));
        CHECK(x.subset_of(cx));
        CHECK(space.cylindrify(i, cx) == cx);
        CHECK(space.cylindrify(i, x | y) == (cx | space.cylindrify(i, y)));
        for (unsigned j = 0; j < 3; ++j)
          CHECK(space.cylindrify(i, space.cylindrify(j, x)) == space.cylindrify(j, space.cylindrify(i, x)));
      }
    }
  }
}

TEST_CASE("diagonals") {
  CylindricSpace space(3, 7);
  CHECK(space.diagonal(0, 0).is_full());
  CHECK(space.diagonal(0, 1).count() == 49);
  CHECK(space.diagonal(0, 1) == space.diagonal(1, 0));
  CHECK(space.diagonal(0, 2) == testing::oracle_diagonal(3, 7, 0, 2));
  CHECK_THROWS_AS(space.diagonal(0, 3), DimensionError);
}

TEST_CASE("evaluate on the three-variable model") {
  M3 m;
  CHECK(m.mn("R(v0,v1,v2)").count() == testing::oracle_count_R(3));
  CHECK(m.mn("R(v0,v1,v2)").count() == 6);
  NAryRelation u0 = m.mn("E v1 E v2 R(v0,v1,v2)");
  CHECK(u0 == m.space.lift(m.model.carriers[0]));
  CHECK(u0.count() == 147);
  CHECK(m.mn("v0 = v0").is_full());
  for (const char* text : {"R(v0,v1,v2)", "E v1 E v2 R(v0,v1,v2)", "v0 = v0",
                           "A v0 (R(v0,v1,v2) -> R(v0,v1,v2))"})
    CHECK(evaluate_naive(m.model.structure, parse(text, kSig), m.space) == m.mn(text));
  CHECK(m.mn("A v0 (R(v0,v1,v2) -> R(v0,v1,v2))").is_full());
}

TEST_CASE("sentence_holds") {
  M3 m;
  for (const auto& ax : build_theory(3)) CHECK_MESSAGE(sentence_holds(m.model.structure, ax.formula, m.space), ax.label);
  CHECK_FALSE(sentence_holds(m.model.structure, eq(0, 1), m.space));
  CHECK(sentence_holds(m.model.structure, iff(exists(0, r_atom(3)), exists(0, conj(hull_formula(3), negate(r_atom(3))))),
                       m.space));
}

TEST_CASE("evaluation errors") {
  M3 m;
  CHECK_THROWS_AS(evaluate(m.model.structure, atom("Q", {0}), m.space), SignatureError);
  CHECK_THROWS_AS(evaluate(m.model.structure, atom("S", {0, 1, 2}), m.space), SignatureError);
  CHECK_THROWS_AS(evaluate(m.model.structure, eq(0, 3), m.space), DimensionError);
  CHECK_THROWS_AS(evaluate_naive(m.model.structure, eq(0, 3), m.space), DimensionError);
}

TEST_CASE("Tarski substitution agrees with reindexed atoms") {
  M3 m;
  Structure s = m.model.structure;
  for (unsigned i = 0; i < 3; ++i) s.add_relation("U" + std::to_string(i), m.model.carriers[i]);
  auto u = [](unsigned sort, VarIndex v) { return atom("U" + std::to_string(sort), {v}); };
  for (unsigned sort = 0; sort < 3; ++sort)
    for (VarIndex v = 0; v < 3; ++v) {
      NAryRelation direct = evaluate(s, u(sort, v), m.space);
      // U<v> := E w (v = w & U(w)) for every other variable w.
      for (VarIndex w = 0; w < 3; ++w)
        if (w != v) CHECK(evaluate(s, exists(w, conj(eq(v, w), u(sort, w))), m.space) == direct);
      // The construction's own rendering through R.
      CHECK(evaluate(s, sort_formula(3, sort, v), m.space) == direct);
    }
}

TEST_CASE("evaluate matches the per-assignment oracle on random input") {
  testing::Rng rng(5);
  for (int k = 0; k < 300; ++k) {
    unsigned m = 1 + k % 4;
    CylindricSpace space(3, m);
    Structure s = testing::random_structure(rng, m, kSig);
    Formula f = testing::random_formula(rng, kSig, 3, 6);
    REQUIRE_MESSAGE(evaluate(s, f, space) == evaluate_naive(s, f, space), render(f));
  }
}

TEST_CASE("evaluator memo is dropped on rebind") {
  M3 m;
  Evaluator ev(m.model.structure, m.space);
  Formula f = exists(1, atom("S", {0, 1}));
  CHECK(ev.evaluate(f).count() == 3 * 49);
  ev.rebind("S", NAryRelation(2, 7));
  CHECK(ev.evaluate(f).empty());
}

TEST_CASE("lift") {
  CylindricSpace space(3, 4);
  NAryRelation v = NAryRelation::unary(4, {1, 3});
  NAryRelation lifted = space.lift(v);
  CHECK(lifted.count() == 2 * 16);
  CHECK(lifted.contains({3, 0, 2}));
  CHECK_FALSE(lifted.contains({0, 3, 3}));
}
