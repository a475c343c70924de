#include <random>

#include "ample/linalg.hpp"
#include "doctest.h"

using namespace ample;

namespace {

Vec vec_of(const FieldDesc& f, std::initializer_list<int> vals) {
  Vec v;
  for (int x : vals) v.push_back(Scalar::from_int(f, x));
  return v;
}

}  // namespace

TEST_CASE("echelonize on the stated examples") {
  auto Q = FieldDesc::Q();
  CHECK(echelonize(Q, 3, {}).empty());

  auto basis = echelonize(Q, 2, {vec_of(Q, {1, 1}), vec_of(Q, {2, 2})});
  REQUIRE(basis.size() == 1);
  CHECK(basis[0] == vec_of(Q, {1, 1}));

  auto F5 = FieldDesc::Fp(5);
  auto b2 = echelonize(F5, 2, {vec_of(F5, {1, 2}), vec_of(F5, {0, 3})});
  REQUIRE(b2.size() == 2);
  CHECK(b2[0] == vec_of(F5, {1, 0}));
  CHECK(b2[1] == vec_of(F5, {0, 1}));
}

TEST_CASE("echelonize is idempotent") {
  std::mt19937 rng(99);
  auto F5 = FieldDesc::Fp(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vec> rows;
    for (int i = 0; i < 4; ++i) {
      Vec v;
      for (int j = 0; j < 5; ++j)
        v.push_back(Scalar::from_int(F5, static_cast<int>(rng() % 5)));
      rows.push_back(v);
    }
    auto once = echelonize(F5, 5, rows);
    CHECK(echelonize(F5, 5, once) == once);
  }
}

TEST_CASE("coset representatives") {
  auto Q = FieldDesc::Q();
  VectorSpaceQuotient trivial(Q, 3, {});
  Vec v = vec_of(Q, {1, 2, 3});
  CHECK(trivial.coset_rep(v) == v);

  auto F5 = FieldDesc::Fp(5);
  VectorSpaceQuotient Qu(F5, 2, {vec_of(F5, {1, 1})});
  CHECK(is_zero_vec(Qu.coset_rep(vec_of(F5, {3, 3}))));
  CHECK(Qu.coset_rep(vec_of(F5, {2, 3})) == vec_of(F5, {0, 1}));
  CHECK(Qu.quotient_dim() == 1);
}

TEST_CASE("coset_rep is a linear projection with the right kernel") {
  std::mt19937 rng(7);
  auto F5 = FieldDesc::Fp(5);
  std::vector<Vec> gens = {vec_of(F5, {1, 2, 0, 1}), vec_of(F5, {0, 0, 1, 4})};
  VectorSpaceQuotient Qu(F5, 4, gens);
  for (int trial = 0; trial < 100; ++trial) {
    Vec u, v;
    for (int j = 0; j < 4; ++j) {
      u.push_back(Scalar::from_int(F5, static_cast<int>(rng() % 5)));
      v.push_back(Scalar::from_int(F5, static_cast<int>(rng() % 5)));
    }
    CHECK(Qu.coset_rep(add(u, v)) == add(Qu.coset_rep(u), Qu.coset_rep(v)));
    CHECK(Qu.coset_rep(Qu.coset_rep(u)) == Qu.coset_rep(u));
    CHECK(Qu.in_subspace(sub(u, Qu.coset_rep(u))));
  }
  for (const Vec& g : gens) CHECK(Qu.in_subspace(g));
  CHECK(Qu.quotient_dim() == 2);
}

TEST_CASE("matrix inversion") {
  auto F5 = FieldDesc::Fp(5);
  std::vector<Vec> m = {vec_of(F5, {1, 2}), vec_of(F5, {3, 4})};
  auto inv = invert_matrix(F5, m);
  REQUIRE(inv.has_value());
  // m * inv = id
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Scalar acc = Scalar::zero(F5);
      for (int k = 0; k < 2; ++k) acc = acc + m[i][k] * (*inv)[k][j];
      CHECK(acc == (i == j ? Scalar::one(F5) : Scalar::zero(F5)));
    }
  CHECK_FALSE(invert_matrix(F5, {vec_of(F5, {1, 2}), vec_of(F5, {2, 4})})
                  .has_value());
}

TEST_CASE("finite algebra multiplication is bilinear") {
  auto Q = FieldDesc::Q();
  FiniteAlgebra alg;  // 2-dim: e0 identity, e1 with e1^2 = -e0
  alg.field = Q;
  alg.dim = 2;
  alg.mult = {vec_of(Q, {1, 0}), vec_of(Q, {0, 1}), vec_of(Q, {0, 1}),
              vec_of(Q, {-1, 0})};
  CHECK(alg.associative_on_basis());
  Vec x = vec_of(Q, {2, 3});
  Vec y = vec_of(Q, {1, -1});
  // (2 + 3i)(1 - i) = 5 + i
  CHECK(alg.multiply(x, y) == vec_of(Q, {5, 1}));
}
