#include "ample/fixtures.hpp"
#include "ample/twist.hpp"
#include "doctest.h"

using namespace ample;

TEST_CASE("abelian group validation") {
  CHECK(fixtures::z2()->identity == 0);
  CHECK(fixtures::z3()->inverse[1] == 2);
  // non-abelian: S3-like partial table is not even a group table here;
  // use a non-commutative 2x2 counterexample (left projection)
  CHECK_THROWS_AS(validate_abelian_group(2, {0, 0, 1, 1}), ValidationError);
}

TEST_CASE("tilde_A sizes and the labelling isomorphism") {
  auto t1 = tilde_A(fixtures::z2(), 1);
  CHECK(t1.semigroup->n == 3);
  auto t2 = tilde_A(fixtures::z2(), 2);
  CHECK(t2.semigroup->n == 9);
  CHECK(t2.bundle_bisections.size() == 9);
  CHECK(t2.gamma.flags.injective);
  CHECK(t2.gamma.flags.surjective);
  // gamma is multiplicative on all pairs (already certified by flags);
  // spot check supports: supp(fg) = supp(f) supp(g)
  const auto& K = *t2.semigroup;
  for (int x = 0; x < K.n; ++x)
    for (int y = 0; y < K.n; ++y) {
      auto fx = t2.decode(x), fy = t2.decode(y), fz = t2.decode(K.at(x, y));
      for (int ui = 0; ui < 2; ++ui)
        CHECK((fz[ui] >= 0) == (fx[ui] >= 0 && fy[ui] >= 0));
    }
}

TEST_CASE("the tilde_A module acts by arrow transport") {
  auto G = fixtures::g4();
  auto SG = gamma_c(G);
  auto tilde = tilde_A(fixtures::z2(), 2);
  auto M = module_tilde_A(SG, tilde);

  // U = {(0,1)} moves the value at unit 1 to unit 0
  int U = SG.index_of(Bits::of(4, {1}));
  std::vector<int> f(2, -1);
  f[1] = 1;  // value a at unit 1
  int k = tilde.encode(f);
  auto moved = tilde.decode(M.action(U, k));
  CHECK(moved[0] == 1);
  CHECK(moved[1] == -1);

  // idempotents act by restriction
  for (int e : SG.boolean->S.idempotents)
    for (int kk = 0; kk < tilde.semigroup->n; ++kk) {
      auto vals = tilde.decode(kk);
      std::vector<int> expect(2, -1);
      for (int ui = 0; ui < 2; ++ui)
        if (SG.labels[e].test(G->units[ui])) expect[ui] = vals[ui];
      CHECK(M.action(e, kk) == tilde.encode(expect));
    }
}

TEST_CASE("twists from groupoid cocycles") {
  auto tw = fixtures::tw2();
  CHECK(tw.Sigma->n == 4);
  CHECK(tw.Sigma->units.size() == 1);
  // the total groupoid is cyclic of order 4
  int g = -1;
  for (int s = 0; s < 4; ++s)
    if (tw.phi.map[s] == 1 && s == tw.iota.map[0] + 0) g = s;
  // find any lift of the flip and check its order is 4
  for (int s = 0; s < 4; ++s) {
    if (tw.phi.map[s] != 1) continue;
    int s2 = tw.Sigma->at(s, s);
    CHECK(tw.Sigma->is_unit[s2] == false);
    int s4 = tw.Sigma->at(s2, s2);
    CHECK(tw.Sigma->is_unit[s4] == true);
  }
  (void)g;

  auto triv = trivial_twist(fixtures::z2(), fixtures::g2());
  CHECK(triv.Sigma->n == 4);
  // trivial twist contains a lift of order 2
  bool found_order2 = false;
  for (int s = 0; s < 4; ++s)
    if (triv.phi.map[s] == 1 && triv.Sigma->at(s, s) == triv.Sigma->units[0])
      found_order2 = true;
  CHECK(found_order2);
}

TEST_CASE("a non-cocycle sigma over the pair groupoid is rejected") {
  auto G = fixtures::g4();
  std::vector<int> sigma(16, 0);
  sigma[1 * 4 + 2] = 1;  // sigma((0,1),(1,0)) = a, all else trivial
  try {
    twist_from_groupoid_cocycle(fixtures::z2(), G, sigma);
    FAIL("expected NotACocycle");
  } catch (const ValidationError& e) {
    CHECK(e.code() == "NotACocycle");
    CHECK(e.witness().size() == 3);
  }
}

TEST_CASE("centrality: fixtures and the constructed counterexample") {
  CHECK(is_central(fixtures::tw1()));
  CHECK(is_central(fixtures::tw2()));
  auto nc = fixtures::noncentral();
  CHECK_FALSE(is_central(nc));
}

TEST_CASE("every constructed twist passes centrality") {
  for (auto tw : {fixtures::tw1(), fixtures::tw2(),
                  trivial_twist(fixtures::z3(), fixtures::g4())})
    CHECK(is_central(tw));
}

TEST_CASE("twist classes") {
  auto cls = twist_class_cocycle(fixtures::tw2());
  const int n = cls.SG.size();
  // c({g},{g}) is the nontrivial fiber element over the unit
  int gi = cls.SG.index_of(Bits::of(2, {1}));
  int val = cls.cocycle.table[gi * n + gi];
  CHECK_FALSE(cls.M.K->is_idempotent(val));
  CHECK(cls.M.p[val] == cls.SG.boolean->S.range_idem(gi));

  auto cls_triv =
      twist_class_cocycle(trivial_twist(fixtures::z2(), fixtures::g2()));
  CHECK(cohomologous(cls.M, cls_triv.cocycle, trivial_cocycle(cls.M))
            .has_value());
  CHECK_FALSE(cohomologous(cls.M, cls.cocycle, cls_triv.cocycle).has_value());
}

TEST_CASE("twist equivalence search") {
  auto T2 = fixtures::tw2();
  auto self = twists_equivalent(T2, T2);
  REQUIRE(self.has_value());
  CHECK(self->flags.injective);
  CHECK(self->flags.surjective);

  auto Ttriv = trivial_twist(fixtures::z2(), fixtures::g2());
  CHECK_FALSE(twists_equivalent(Ttriv, T2).has_value());
}

TEST_CASE("Baer sums") {
  auto T2 = fixtures::tw2();
  auto Ttriv = trivial_twist(fixtures::z2(), fixtures::g2());

  auto s1 = baer_sum(T2, Ttriv);
  CHECK(twists_equivalent(s1, T2).has_value());

  auto s2 = baer_sum(T2, T2);
  CHECK(twists_equivalent(s2, Ttriv).has_value());

  auto s3 = baer_sum(Ttriv, Ttriv);
  CHECK(twists_equivalent(s3, Ttriv).has_value());
}

TEST_CASE("realizing cohomology classes as twists") {
  auto G = fixtures::g2();
  auto SG = gamma_c(G);
  auto tilde = tilde_A(fixtures::z2(), 1);
  auto M = module_tilde_A(SG, tilde);
  auto rep = h2(M);
  REQUIRE(rep.h2_order == 2);
  auto T2 = fixtures::tw2();
  auto Ttriv = trivial_twist(fixtures::z2(), G);
  int matches = 0;
  for (const auto& c : rep.representatives) {
    auto T = realize_class(G, SG, tilde, M, c);
    auto cls = twist_class_cocycle(T);
    CHECK(cohomologous(M, cls.cocycle, c).has_value());
    if (twists_equivalent(T, T2).has_value()) ++matches;
    if (twists_equivalent(T, Ttriv).has_value()) ++matches;
  }
  CHECK(matches == 2);
}

TEST_CASE("order-three classification and Baer group law") {
  auto G = fixtures::cyclic_groupoid(3);
  auto A = fixtures::z3();
  auto SG = gamma_c(G);
  auto tilde = tilde_A(A, 1);
  auto M = module_tilde_A(SG, tilde);
  auto rep = h2(M);
  REQUIRE(rep.h2_order == 3);

  std::vector<TwistExtension> tws;
  for (const auto& c : rep.representatives)
    tws.push_back(realize_class(G, SG, tilde, M, c));
  for (std::size_t i = 0; i < tws.size(); ++i)
    for (std::size_t j = i + 1; j < tws.size(); ++j)
      CHECK_FALSE(twists_equivalent(tws[i], tws[j]).has_value());

  // the class map is a group homomorphism under Baer sum
  for (std::size_t i = 0; i < tws.size(); ++i)
    for (std::size_t j = 0; j < tws.size(); ++j) {
      auto sum = baer_sum(tws[i], tws[j]);
      auto prod = cocycle_product(M, rep.representatives[i],
                                  rep.representatives[j]);
      auto cls = twist_class_cocycle(sum);
      CHECK(cohomologous(M, cls.cocycle, prod).has_value());
    }
}

TEST_CASE("Klein four-group of twists over the doubled flip groupoid") {
  auto G = fixtures::disjoint_union(fixtures::g2(), fixtures::g2());
  auto SG = gamma_c(G);
  auto tilde = tilde_A(fixtures::z2(), 2);
  auto M = module_tilde_A(SG, tilde);
  auto rep = h2(M);
  REQUIRE(rep.h2_order == 4);
  std::vector<TwistExtension> tws;
  for (const auto& c : rep.representatives)
    tws.push_back(realize_class(G, SG, tilde, M, c));
  for (std::size_t i = 0; i < tws.size(); ++i) {
    CHECK(is_central(tws[i]));
    for (std::size_t j = i + 1; j < tws.size(); ++j)
      CHECK_FALSE(twists_equivalent(tws[i], tws[j]).has_value());
  }
  // every nontrivial twist is its own Baer inverse here
  for (std::size_t i = 1; i < tws.size(); ++i) {
    auto dbl = baer_sum(tws[i], tws[i]);
    auto cls = twist_class_cocycle(dbl);
    CHECK(cohomologous(M, cls.cocycle, trivial_cocycle(M)).has_value());
  }
}

TEST_CASE("total groupoids of twists are Hausdorff in the finite sense") {
  for (auto tw : {fixtures::tw1(), fixtures::tw2()}) {
    auto SS = gamma_c(tw.Sigma);
    for (int s = 0; s < SS.size(); ++s)
      CHECK(max_idempotent_below(SS.boolean->S, s).has_value());
  }
}
