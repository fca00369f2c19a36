#include <doctest.h>

#include "finvar/cylindric.hpp"
#include "finvar/error.hpp"
#include "finvar/structure.hpp"
#include "support/support.hpp"

using namespace finvar;

TEST_CASE("relation_from_tuples") {
  NAryRelation s = NAryRelation::from_tuples(2, 7, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(s.count() == 3);
  CHECK(s.contains({0, 1}));
  CHECK(s.contains({2, 0}));
  CHECK_FALSE(s.contains({1, 0}));

  CHECK(NAryRelation::from_tuples(1, 7, {}).empty());

  std::vector<Tuple> all;
  for (Element a = 0; a < 7; ++a)
    for (Element b = 0; b < 7; ++b)
      for (Element c = 0; c < 7; ++c) all.push_back({a, b, c});
  NAryRelation full = NAryRelation::from_tuples(3, 7, all);
  CHECK(full.is_full());
  CHECK(full.count() == 343);

  CHECK(NAryRelation::from_tuples(2, 3, {{0, 1}, {0, 1}, {1, 1}}).count() == 2);
  CHECK_THROWS_AS(NAryRelation::from_tuples(2, 7, {{0, 7}}), DimensionError);
  CHECK_THROWS_AS(NAryRelation::from_tuples(2, 7, {{0, 1, 2}}), DimensionError);
}

TEST_CASE("cell order puts coordinate 0 first") {
  NAryRelation r(3, 4);
  CHECK(r.cell_of(Tuple{1, 2, 3}) == 1 * 16 + 2 * 4 + 3);
  CHECK(r.tuple_of(27) == Tuple{1, 2, 3});
  r.insert(Tuple{3, 0, 0});
  r.insert(Tuple{0, 0, 1});
  CHECK(r.tuples() == std::vector<Tuple>{{0, 0, 1}, {3, 0, 0}});
}

TEST_CASE("set operations") {
  testing::Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    NAryRelation a = testing::random_relation(rng, 3, 4), b = testing::random_relation(rng, 3, 4);
    CHECK((a & b).count() + (a | b).count() == a.count() + b.count());
    CHECK((a - b) == (a & b.complement()));
    CHECK((a & a.complement()).empty());
    CHECK((a | a.complement()).is_full());
    CHECK((a & b).subset_of(a));
    CHECK((a - b).disjoint_from(b));
  }
  CHECK_THROWS_AS(NAryRelation(2, 3) & NAryRelation(2, 4), DimensionError);
}

TEST_CASE("projection by tuple scan matches cylindrify and restrict") {
  testing::Rng rng(4);
  for (unsigned m = 1; m <= 4; ++m)
    for (unsigned k = 1; k <= 3; ++k)
      for (int rep = 0; rep < 10; ++rep) {
        NAryRelation x = testing::random_relation(rng, k, m, 0.2);
        CylindricSpace space(k, m);
        for (unsigned i = 0; i < k; ++i) {
          // Cylindrify every coordinate except i, then read off the line
          // through the origin along i.
          NAryRelation y = x;
          for (unsigned j = 0; j < k; ++j)
            if (j != i) y = space.cylindrify(j, y);
          NAryRelation expected(1, m);
          Tuple t(k, 0);
          for (Element v = 0; v < m; ++v) {
            t[i] = v;
            if (y.contains(t)) expected.set(v);
          }
          CHECK(x.project(i) == expected);
        }
      }
}

TEST_CASE("structure JSON round-trip") {
  PaperModel model = build_model(3);
  nlohmann::json doc = save_structure(model.structure);
  CHECK(doc["universe_size"] == 7);
  CHECK(doc["signature"]["R"] == 3);
  CHECK(load_structure(doc) == model.structure);
  CHECK(load_structure(nlohmann::json::parse(doc.dump())) == model.structure);
}

TEST_CASE("structure JSON errors") {
  nlohmann::json good = {{"universe_size", 7},
                         {"signature", {{"S", 2}}},
                         {"relations", {{"S", {{"arity", 2}, {"tuples", {{0, 1}, {1, 2}, {2, 0}}}}}}}};
  CHECK_NOTHROW(load_structure(good));

  nlohmann::json bad = good;
  bad["relations"]["S"]["tuples"].push_back({7, 0});
  CHECK_THROWS_AS(load_structure(bad), SchemaError);

  bad = good;
  bad["relations"].erase("S");
  CHECK_THROWS_AS(load_structure(bad), SchemaError);

  bad = good;
  bad["relations"]["S"]["arity"] = 3;
  CHECK_THROWS_AS(load_structure(bad), SchemaError);

  bad = good;
  bad["relations"]["S"]["tuples"].push_back({0, 1, 2});
  CHECK_THROWS_AS(load_structure(bad), SchemaError);

  bad = good;
  bad["relations"]["P"] = {{"arity", 1}, {"tuples", nlohmann::json::array()}};
  CHECK_THROWS_AS(load_structure(bad), SchemaError);

  bad = good;
  bad.erase("universe_size");
  CHECK_THROWS_AS(load_structure(bad), SchemaError);

  CHECK_THROWS_AS(load_structure(nlohmann::json::array()), SchemaError);
}

TEST_CASE("structure invariants") {
  Structure s(3);
  s.add_relation("P", NAryRelation(1, 3));
  CHECK_THROWS_AS(s.add_relation("P", NAryRelation(1, 3)), SignatureError);
  CHECK_THROWS_AS(s.add_relation("Q", NAryRelation(1, 4)), DimensionError);
  CHECK_THROWS_AS(s.set_relation("P", NAryRelation(2, 3)), DimensionError);
  CHECK_THROWS_AS(s.set_relation("Q", NAryRelation(1, 3)), SignatureError);
  CHECK_THROWS(s.relation("Z"));
}

TEST_CASE("permuted structure") {
  Structure s(3);
  s.add_relation("E", NAryRelation::from_tuples(2, 3, {{0, 1}}));
  Structure t = s.permuted(std::vector<Element>{2, 0, 1});
  CHECK(t.relation("E") == NAryRelation::from_tuples(2, 3, {{2, 0}}));
}
