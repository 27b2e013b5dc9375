#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "slices/quiver.hpp"

using namespace slices;

namespace {

Quiver linear_a3() {
  return Quiver{{"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}}};
}

// The 4-vertex cyclic quiver with arrows b:2->1, e:1->4, a:4->2, g:4->3, d:3->1.
Quiver cyclic_d4_shape() {
  return Quiver{{"1", "2", "3", "4"},
                {{"b", "2", "1"}, {"e", "1", "4"}, {"a", "4", "2"},
                 {"g", "4", "3"}, {"d", "3", "1"}}};
}

// Arrows 2->1, 3->2, 3->1: acyclic, connected, underlying graph a triangle.
Quiver triangle() {
  return Quiver{{"1", "2", "3"}, {{"a", "2", "1"}, {"b", "3", "2"}, {"c", "3", "1"}}};
}

}  // namespace

TEST_CASE("validation rejects malformed quivers") {
  CHECK_THROWS_AS(classify(Quiver{{"1", "1"}, {}}), validation_error);
  CHECK_THROWS_AS(classify(Quiver{{"1"}, {{"a", "1", "2"}}}), validation_error);
  CHECK_THROWS_AS(classify(Quiver{{"1", "2"}, {{"a", "1", "2"}, {"a", "2", "1"}}}),
                  validation_error);
}

TEST_CASE("linear A3 classification") {
  auto c = classify(linear_a3());
  CHECK(c.connected);
  CHECK(c.acyclic);
  CHECK(c.tree);
  REQUIRE(c.dynkin.has_value());
  CHECK(c.dynkin->str() == "A3");
}

TEST_CASE("cyclic 4-vertex quiver classification") {
  auto c = classify(cyclic_d4_shape());
  CHECK(c.connected);
  CHECK_FALSE(c.acyclic);  // 1 -> 4 -> 2 -> 1
  CHECK_FALSE(c.tree);
  CHECK_FALSE(c.dynkin.has_value());
}

TEST_CASE("triangle quiver: acyclic connected non-tree") {
  auto c = classify(triangle());
  CHECK(c.connected);
  CHECK(c.acyclic);
  CHECK_FALSE(c.tree);
  CHECK_FALSE(c.dynkin.has_value());
}

TEST_CASE("D and E recognition") {
  Quiver d4{{"0", "1", "2", "3"},
            {{"a", "1", "0"}, {"b", "2", "0"}, {"c", "3", "0"}}};
  auto c = classify(d4);
  REQUIRE(c.dynkin.has_value());
  CHECK(c.dynkin->str() == "D4");

  // E6: path of 5 with a branch of length 1 at the middle.
  Quiver e6{{"1", "2", "3", "4", "5", "6"},
            {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "4"},
             {"d", "4", "5"}, {"e", "3", "6"}}};
  auto ce = classify(e6);
  REQUIRE(ce.dynkin.has_value());
  CHECK(ce.dynkin->str() == "E6");

  // D5: branch lengths (1,1,2).
  Quiver d5{{"1", "2", "3", "4", "5"},
            {{"a", "1", "3"}, {"b", "2", "3"}, {"c", "3", "4"}, {"d", "4", "5"}}};
  auto cd = classify(d5);
  REQUIRE(cd.dynkin.has_value());
  CHECK(cd.dynkin->str() == "D5");
}

TEST_CASE("classification is orientation independent for tree/dynkin") {
  for (const auto& q : {linear_a3(), cyclic_d4_shape(), triangle()}) {
    auto c = classify(q), co = classify(q.opposite());
    CHECK(c.tree == co.tree);
    CHECK(c.dynkin.has_value() == co.dynkin.has_value());
    if (c.dynkin) CHECK(c.dynkin->str() == co.dynkin->str());
  }
}

TEST_CASE("dynkin implies tree implies acyclic") {
  for (const auto& q : {linear_a3(), cyclic_d4_shape(), triangle()}) {
    auto c = classify(q);
    if (c.dynkin) CHECK(c.tree);
    if (c.tree) CHECK(c.acyclic);
  }
}

TEST_CASE("topological order") {
  auto ord = topological_order(triangle());
  REQUIRE(ord.size() == 3);
  CHECK(ord[0] == "3");
  CHECK(ord[2] == "1");
  CHECK_THROWS_AS(topological_order(cyclic_d4_shape()), validation_error);
}

TEST_CASE("positive root counts") {
  CHECK(positive_root_count({'A', 2}) == 3);
  CHECK(positive_root_count({'A', 5}) == 15);
  CHECK(positive_root_count({'D', 4}) == 12);
  CHECK(positive_root_count({'D', 5}) == 20);
  CHECK(positive_root_count({'E', 6}) == 36);
  CHECK_THROWS_AS(positive_root_count({'E', 9}), validation_error);
}
