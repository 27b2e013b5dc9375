#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "slices/exact.hpp"

using namespace slices;

TEST_CASE("rational normal form and parsing") {
  CHECK(Rat(Int(2), Int(4)).str() == "1/2");
  CHECK(Rat(Int(-2), Int(-4)).str() == "1/2");
  CHECK(Rat(Int(2), Int(-4)).str() == "-1/2");
  CHECK(Rat(Int(0), Int(7)).str() == "0");
  CHECK(Rat::parse("3/9") == Rat(Int(1), Int(3)));
  CHECK(Rat::parse("-5") == Rat(-5));
  CHECK_THROWS_AS(Rat::parse("x"), validation_error);
  CHECK_THROWS_AS(Rat(Int(1), Int(0)), validation_error);
}

TEST_CASE("rational arithmetic is exact") {
  Rat a = Rat::parse("1/3"), b = Rat::parse("1/6");
  CHECK((a + b).str() == "1/2");
  CHECK((a - b).str() == "1/6");
  CHECK((a * b).str() == "1/18");
  CHECK((a / b).str() == "2");
  CHECK((-a).str() == "-1/3");
}

TEST_CASE("rref, rank, kernel") {
  Mat m = {{Rat(1), Rat(2), Rat(3)},
           {Rat(2), Rat(4), Rat(6)},
           {Rat(0), Rat(1), Rat(1)}};
  CHECK(rank(m) == 2);
  auto ker = kernel_basis(m, 3);
  REQUIRE(ker.size() == 1);
  // m * k == 0 for every kernel vector
  for (const auto& k : ker) {
    for (const auto& row : m) {
      Rat s(0);
      for (std::size_t c = 0; c < 3; ++c) s += row[c] * k[c];
      CHECK(s.is_zero());
    }
  }
}

TEST_CASE("kernel of an injective map is trivial") {
  Mat m = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}};
  CHECK(kernel_basis(m, 2).empty());
}

TEST_CASE("span builder and span equality") {
  SpanBuilder sb(3);
  CHECK(sb.add({Rat(1), Rat(1), Rat(0)}));
  CHECK(sb.add({Rat(0), Rat(1), Rat(1)}));
  CHECK_FALSE(sb.add({Rat(1), Rat(2), Rat(1)}));  // dependent
  CHECK(sb.dim() == 2);
  CHECK(sb.contains({Rat(2), Rat(3), Rat(1)}));
  CHECK_FALSE(sb.contains({Rat(1), Rat(0), Rat(0)}));

  Mat a = {{Rat(1), Rat(1), Rat(0)}, {Rat(0), Rat(1), Rat(1)}};
  Mat b = {{Rat(1), Rat(0), Rat(-1)}, {Rat(0), Rat(2), Rat(2)}};
  CHECK(same_span(a, b, 3));
  Mat c = {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(1)}};
  CHECK_FALSE(same_span(a, c, 3));
}

TEST_CASE("reduction is idempotent") {
  SpanBuilder sb(4);
  sb.add({Rat(1), Rat(2), Rat(0), Rat(5)});
  sb.add({Rat(0), Rat(0), Rat(1), Rat(7)});
  Vec v = {Rat(3), Rat(1), Rat(4), Rat(1)};
  Vec r1 = reduce_against(sb.rows(), sb.pivots(), v);
  Vec r2 = reduce_against(sb.rows(), sb.pivots(), r1);
  CHECK(r1 == r2);
}
