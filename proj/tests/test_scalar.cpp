#include <random>

#include "ample/fixtures.hpp"
#include "ample/scalar.hpp"
#include "doctest.h"

using namespace ample;

TEST_CASE("field axioms hold on random scalars") {
  std::mt19937 rng(1234);
  for (FieldDesc f : {FieldDesc::Fp(5), FieldDesc::Fp(2), FieldDesc::Q()}) {
    for (int trial = 0; trial < 200; ++trial) {
      auto rnd = [&]() {
        int v = static_cast<int>(rng() % 21) - 10;
        if (f.rational && trial % 3 == 0) {
          int d = 1 + static_cast<int>(rng() % 9);
          return Scalar::rational(mpq_class(v, d));
        }
        return Scalar::from_int(f, v);
      };
      Scalar a = rnd(), b = rnd(), c = rnd();
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + Scalar::zero(f) == a);
      CHECK(a * Scalar::one(f) == a);
      CHECK(a - a == Scalar::zero(f));
      if (!a.is_zero()) {
        CHECK(a * a.inverse() == Scalar::one(f));
        CHECK(a / a == Scalar::one(f));
      }
    }
  }
}

TEST_CASE("rationals stay reduced") {
  Scalar x = Scalar::rational(mpq_class(4, 6));
  CHECK(x.str() == "2/3");
  Scalar y = Scalar::rational(mpq_class(3, -6));
  CHECK(y.str() == "-1/2");
}

TEST_CASE("scalar literals parse in both fields") {
  CHECK(parse_scalar("7", FieldDesc::Q()) == Scalar::from_int(FieldDesc::Q(), 7));
  CHECK(parse_scalar("-3/4", FieldDesc::Q()) ==
        Scalar::rational(mpq_class(-3, 4)));
  CHECK(parse_scalar("2 mod 7", FieldDesc::Fp(7)) == Scalar::residue(2, 7));
  CHECK(parse_scalar("9", FieldDesc::Fp(7)) == Scalar::residue(2, 7));
  CHECK_THROWS_AS(parse_scalar("2 mod 5", FieldDesc::Fp(7)), ValidationError);
  CHECK_THROWS_AS(parse_scalar("x", FieldDesc::Q()), ValidationError);
  CHECK_THROWS_AS((void)FieldDesc::Fp(6), ValidationError);
}

TEST_CASE("unit embeddings: order must divide the unit group order") {
  auto e1 = find_unit_embedding(FieldDesc::Fp(5), *fixtures::z2());
  REQUIRE(e1.has_value());
  CHECK((*e1)[0] == Scalar::residue(1, 5));
  CHECK((*e1)[1] == Scalar::residue(4, 5));

  CHECK_FALSE(find_unit_embedding(FieldDesc::Fp(5), *fixtures::z3()).has_value());

  auto e3 = find_unit_embedding(FieldDesc::Fp(7), *fixtures::z3());
  REQUIRE(e3.has_value());
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK((*e3)[a] * (*e3)[b] == (*e3)[fixtures::z3()->at(a, b)]);

  auto et = find_unit_embedding(FieldDesc::Q(), *fixtures::trivial_group());
  REQUIRE(et.has_value());
  CHECK((*et)[0] == Scalar::one(FieldDesc::Q()));

  auto eq = find_unit_embedding(FieldDesc::Q(), *fixtures::z2());
  REQUIRE(eq.has_value());
  CHECK((*eq)[1] == Scalar::from_int(FieldDesc::Q(), -1));
  CHECK_FALSE(find_unit_embedding(FieldDesc::Q(), *fixtures::z3()).has_value());
}

TEST_CASE("multiplicative orders") {
  CHECK(Scalar::residue(4, 5).mult_order() == 2);
  CHECK(Scalar::residue(2, 5).mult_order() == 4);
  CHECK(Scalar::from_int(FieldDesc::Q(), -1).mult_order() == 2);
}
