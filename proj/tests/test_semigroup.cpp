#include "ample/duality.hpp"
#include "ample/fixtures.hpp"
#include "ample/semigroup.hpp"
#include "doctest.h"

using namespace ample;

TEST_CASE("one-element semigroup validates") {
  auto S = validate_inverse_semigroup(1, {0});
  CHECK(S.idempotents == std::vector<int>{0});
  CHECK(S.star[0] == 0);
  CHECK(S.zero == 0);
}

TEST_CASE("the three-element fixture validates with g* = g") {
  auto S = fixtures::s1();
  CHECK(S->zero == 0);
  CHECK(S->star[2] == 2);
  CHECK(S->idempotents == std::vector<int>{0, 1});
  CHECK(S->leq(0, 2));
  CHECK_FALSE(S->leq(1, 2));
}

TEST_CASE("left-zero table is rejected with a witness") {
  // a b = a for all a, b: idempotent but not inverse
  try {
    validate_inverse_semigroup(2, {0, 0, 1, 1});
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    bool known = e.code() == "NoPseudoInverse" ||
                 e.code() == "IdempotentsDontCommute";
    CHECK(known);
    CHECK_FALSE(e.witness().empty());
  }
}

TEST_CASE("associativity violations carry a triple") {
  // 2-element table with a(ab) != (aa)b
  try {
    validate_inverse_semigroup(2, {1, 0, 0, 0});
    FAIL("expected NotAssociative");
  } catch (const ValidationError& e) {
    CHECK(e.code() == "NotAssociative");
    CHECK(e.witness().size() == 3);
  }
}

TEST_CASE("star is an involutive anti-automorphism and leq is compatible") {
  std::vector<SemigroupPtr> pool = {fixtures::s1(), fixtures::two_chain(),
                                    fixtures::three_chain()};
  auto SG = gamma_c(fixtures::g4());
  pool.push_back(SG.semigroup());
  for (const auto& S : pool) {
    for (int s = 0; s < S->n; ++s) {
      CHECK(S->at(S->at(s, S->star[s]), s) == s);
      CHECK(S->star[S->star[s]] == s);
      for (int t = 0; t < S->n; ++t) {
        CHECK(S->star[S->at(s, t)] == S->at(S->star[t], S->star[s]));
        // order compatibility and preservation under star
        for (int u = 0; u < S->n; ++u)
          if (S->leq(s, t)) {
            CHECK(S->leq(S->at(s, u), S->at(t, u)));
            CHECK(S->leq(S->at(u, s), S->at(u, t)));
          }
        if (S->leq(s, t)) CHECK(S->leq(S->star[s], S->star[t]));
      }
    }
    // leq is a partial order
    for (int s = 0; s < S->n; ++s) {
      CHECK(S->leq(s, s));
      for (int t = 0; t < S->n; ++t) {
        if (S->leq(s, t) && S->leq(t, s)) CHECK(s == t);
        for (int u = 0; u < S->n; ++u)
          if (S->leq(s, t) && S->leq(t, u)) CHECK(S->leq(s, u));
      }
    }
  }
}

TEST_CASE("Boolean structure of the fixtures") {
  auto B = is_boolean(*fixtures::s1());
  // orthogonal joins only involve the zero
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t) {
      if (B.orthogonal_join(s, t) < 0) continue;
      CHECK((s == 0 || t == 0));
    }
  CHECK(B.atoms == std::vector<int>{1});

  auto B2 = is_boolean(*fixtures::two_chain());
  CHECK(B2.relative_complement(1, 1) == 0);  // e \ e = 0

  try {
    is_boolean(*fixtures::three_chain());
    FAIL("three-chain must not be Boolean");
  } catch (const ValidationError& e) {
    CHECK(e.code() == "MissingComplement");
  }

  // the two-element group has no zero, so Boolean structure must be
  // refused rather than a zero silently adjoined
  std::vector<int> z2mult = {0, 1, 1, 0};
  auto Z2 = validate_inverse_semigroup(2, z2mult);
  CHECK_FALSE(Z2.zero.has_value());
  try {
    is_boolean(Z2);
    FAIL("expected NoZero");
  } catch (const ValidationError& e) {
    CHECK(e.code() == "NoZero");
  }
}

TEST_CASE("orthogonal joins satisfy the support identities") {
  auto SG = gamma_c(fixtures::g4());
  const auto& B = *SG.boolean;
  const auto& S = B.S;
  for (int s = 0; s < S.n; ++s)
    for (int t = 0; t < S.n; ++t) {
      int j = B.orthogonal_join(s, t);
      if (j < 0) {
        CHECK_FALSE(S.orthogonal(s, t));
        continue;
      }
      CHECK(S.range_idem(j) ==
            B.join_of_idempotents(S.range_idem(s), S.range_idem(t)));
      CHECK(S.domain_idem(j) ==
            B.join_of_idempotents(S.domain_idem(s), S.domain_idem(t)));
    }
}

TEST_CASE("hom flags on the fixture homs") {
  auto S = fixtures::s1();
  auto id = identity_hom(S);
  CHECK(id.flags.is_hom);
  CHECK(id.flags.idempotent_bijective);
  CHECK(id.flags.injective);
  CHECK(id.flags.surjective);
  CHECK(id.flags.additive);

  auto C = fixtures::two_chain();
  auto collapse = make_hom(S, C, {0, 1, 1});
  CHECK(collapse.flags.is_hom);
  CHECK(collapse.flags.idempotent_bijective);
  CHECK_FALSE(collapse.flags.injective);
  CHECK(collapse.flags.surjective);

  auto to_zero = make_hom(S, S, {0, 0, 0});
  CHECK(to_zero.flags.is_hom);
  CHECK_FALSE(to_zero.flags.idempotent_separating);

  auto not_hom = make_hom(S, S, {1, 1, 2});  // 0 -> e breaks 0 g = 0
  CHECK_FALSE(not_hom.flags.is_hom);
  REQUIRE(not_hom.flags.violation.has_value());
  CHECK(not_hom.flags.violation->code == "NotAHomomorphism");
}

TEST_CASE("kernels") {
  auto S = fixtures::s1();
  CHECK(kernel(identity_hom(S)) == std::vector<int>{0, 1});
  auto collapse = make_hom(S, fixtures::two_chain(), {0, 1, 1});
  CHECK(kernel(collapse) == std::vector<int>{0, 1, 2});

  auto SG = gamma_c(fixtures::g4());
  auto idg = identity_hom(SG.semigroup());
  auto K = kernel(idg);
  CHECK(K.size() == 4);  // the idempotents of the 7-element semigroup
  for (int e : K) CHECK(SG.boolean->S.is_idempotent(e));
}

TEST_CASE("injectivity matches the kernel criterion") {
  auto S = fixtures::s1();
  auto id = identity_hom(S);
  CHECK((kernel(id).size() == S->idempotents.size()) == id.flags.injective);
  auto collapse = make_hom(S, fixtures::two_chain(), {0, 1, 1});
  CHECK((kernel(collapse).size() == S->idempotents.size()) ==
        collapse.flags.injective);
}

TEST_CASE("section search") {
  auto S = fixtures::s1();
  auto id = identity_hom(S);
  auto res = find_oip_section(id);
  REQUIRE(res.section.has_value());
  CHECK(*res.section == std::vector<int>{0, 1, 2});

  auto collapse = make_hom(S, fixtures::two_chain(), {0, 1, 1});
  auto res2 = find_oip_section(collapse);
  REQUIRE(res2.section.has_value());
  CHECK((*res2.section)[0] == 0);
  CHECK((*res2.section)[1] == 1);
  CHECK(res2.search_completed);
}
