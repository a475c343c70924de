#include "ample/fixtures.hpp"
#include "ample/steinberg.hpp"
#include "doctest.h"

using namespace ample;

namespace {

TwistedSteinbergAlgebra steinberg_of(const TwistExtension& tw,
                                     const FieldDesc& field) {
  auto embed = find_unit_embedding(field, *tw.A);
  REQUIRE(embed.has_value());
  return build_steinberg(tw, field, *embed);
}

}  // namespace

TEST_CASE("untwisted algebras are groupoid convolution algebras") {
  for (auto G : {fixtures::g2(), fixtures::g4()}) {
    auto tw = trivial_twist(fixtures::trivial_group(), G);
    auto alg = steinberg_of(tw, FieldDesc::Fp(5));
    CHECK(alg.dim() == G->n);
    auto conv = groupoid_convolution_algebra(*G, FieldDesc::Fp(5));
    CHECK(alg.alg.mult == conv.mult);
  }
}

TEST_CASE("trivial twists with larger fibers still give the convolution "
          "structure") {
  auto tw = trivial_twist(fixtures::z2(), fixtures::g2());
  auto alg = steinberg_of(tw, FieldDesc::Fp(5));
  auto conv = groupoid_convolution_algebra(*fixtures::g2(), FieldDesc::Fp(5));
  CHECK(alg.alg.mult == conv.mult);
}

TEST_CASE("the tw2 convolution squares the generator to -1") {
  auto alg = steinberg_of(fixtures::tw2(), FieldDesc::Fp(5));
  REQUIRE(alg.dim() == 2);
  const Vec& sq = alg.alg.basis_product(1, 1);
  CHECK(sq[0] == Scalar::from_int(FieldDesc::Fp(5), 4));
  CHECK(sq[1].is_zero());

  auto algQ = steinberg_of(fixtures::tw2(), FieldDesc::Q());
  CHECK(algQ.alg.basis_product(1, 1)[0] ==
        Scalar::from_int(FieldDesc::Q(), -1));
}

TEST_CASE("the pair groupoid gives the 2x2 matrix algebra") {
  auto alg = steinberg_of(fixtures::tw1(), FieldDesc::Fp(5));
  REQUIRE(alg.dim() == 4);
  // arrows: 0=(0,0), 1=(0,1), 2=(1,0), 3=(1,1) behave like matrix units
  auto conv = groupoid_convolution_algebra(*fixtures::g4(), FieldDesc::Fp(5));
  CHECK(alg.alg.mult == conv.mult);
}

TEST_CASE("tilde_one elements") {
  auto tw = fixtures::tw2();
  auto alg = steinberg_of(tw, FieldDesc::Fp(5));
  const auto& Sg = *tw.Sigma;

  // the unit set of the total groupoid gives the identity element
  Bits units = Bits::of(Sg.n, Sg.units);
  Vec one = tilde_one(alg, units);
  for (int k = 0; k < alg.dim(); ++k) {
    Vec ek = zero_vec(alg.field, alg.dim());
    ek[k] = Scalar::one(alg.field);
    CHECK(alg.alg.multiply(one, ek) == ek);
    CHECK(alg.alg.multiply(ek, one) == ek);
  }

  // the section image over the flip recovers the basis vector
  Bits V(Sg.n);
  V.set(alg.section[1]);
  Vec fg = tilde_one(alg, V);
  Vec expect = zero_vec(alg.field, alg.dim());
  expect[1] = Scalar::one(alg.field);
  CHECK(fg == expect);

  CHECK_THROWS_AS(tilde_one(alg, Bits::of(Sg.n, {0, 1})), ValidationError);
}

TEST_CASE("tilde_one elements span the algebra") {
  for (auto tw : {fixtures::tw1(), fixtures::tw2()}) {
    auto alg = steinberg_of(tw, FieldDesc::Fp(5));
    CHECK(tilde_one_span_rank(alg) == alg.dim());
  }
}

TEST_CASE("convolution is independent of the evaluation section") {
  for (auto tw : {fixtures::tw2(), fixtures::tw1()}) {
    auto embed = *find_unit_embedding(FieldDesc::Fp(5), *tw.A);
    auto alg = build_steinberg(tw, FieldDesc::Fp(5), embed);
    // the opposite set-theoretic section: greatest lifts
    std::vector<int> alt(tw.G->n, -1);
    for (int s = 0; s < tw.Sigma->n; ++s) alt[tw.phi.map[s]] = s;
    for (int g = 0; g < alg.dim(); ++g)
      for (int h = 0; h < alg.dim(); ++h) {
        Vec a = convolve(alg, alg.basis_values[g], alg.basis_values[h],
                         alg.section);
        Vec b = convolve(alg, alg.basis_values[g], alg.basis_values[h], alt);
        CHECK(a == b);
      }
  }
}

TEST_CASE("iso with the crossed product on all ring fixtures") {
  std::vector<TwistExtension> tws = {
      trivial_twist(fixtures::z2(), fixtures::g1()),
      trivial_twist(fixtures::z2(), fixtures::g2()), fixtures::tw2(),
      fixtures::tw1()};
  for (const auto& tw : tws) {
    for (FieldDesc field : {FieldDesc::Fp(5), FieldDesc::Q()}) {
      auto setup = build_crossed_from_twist(tw, field);
      auto alg = build_steinberg(tw, field, setup.embed);
      auto m = iso_psi(setup, alg);
      CHECK(static_cast<int>(m.size()) == tw.G->n);
      CHECK(setup.cp.dim() == tw.G->n);
    }
  }
}

TEST_CASE("a Z/3 twist over F7 gives a three-dimensional twisted algebra") {
  auto G = fixtures::cyclic_groupoid(3);
  std::vector<int> sigma(9, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) sigma[i * 3 + j] = (i + j) / 3;
  auto tw = twist_from_groupoid_cocycle(fixtures::z3(), G, sigma);

  auto setup = build_crossed_from_twist(tw, FieldDesc::Fp(7));
  auto alg = build_steinberg(tw, FieldDesc::Fp(7), setup.embed);
  auto m = iso_psi(setup, alg);
  CHECK(static_cast<int>(m.size()) == 3);
  // the generator cubes to the embedded value of the twist class
  Vec x = zero_vec(alg.field, 3);
  x[1] = Scalar::one(alg.field);
  Vec cube = alg.alg.multiply(alg.alg.multiply(x, x), x);
  CHECK(cube[1].is_zero());
  CHECK(cube[2].is_zero());
  CHECK_FALSE(cube[0].is_zero());
  CHECK_FALSE(cube[0].is_one());  // nontrivial twist
}

TEST_CASE("broken embeddings are refused") {
  auto tw = fixtures::tw2();
  std::vector<Scalar> bad = {Scalar::residue(1, 5), Scalar::residue(2, 5)};
  CHECK_THROWS_AS(build_steinberg(tw, FieldDesc::Fp(5), bad),
                  ValidationError);
}

TEST_CASE("iso_psi realizes the universal covariant representation") {
  auto tw = fixtures::tw2();
  FieldDesc field = FieldDesc::Fp(5);
  auto setup = build_crossed_from_twist(tw, field);
  auto alg = build_steinberg(tw, field, setup.embed);
  auto m = iso_psi(setup, alg);
  const auto& cp = setup.cp;
  const auto& Ss = cp.action.S.boolean->S;

  auto apply = [&](const Vec& coords) {
    Vec out = zero_vec(field, alg.dim());
    for (int i = 0; i < cp.dim(); ++i)
      if (!coords[i].is_zero()) out = add(out, scale(coords[i], m[i]));
    return out;
  };

  std::vector<Vec> rho_st, psi_st;
  for (int x = 0; x < cp.action.n_units; ++x) {
    Vec one_x = zero_vec(field, cp.action.n_units);
    one_x[x] = Scalar::one(field);
    rho_st.push_back(apply(cp.Q.quotient_coords(rho_embed(cp, one_x))));
  }
  for (int s = 0; s < cp.nS; ++s)
    psi_st.push_back(apply(cp.Q.quotient_coords(
        cp.ambient_of(s, cp.action.indicator(Ss.range_idem(s))))));

  auto report = check_covariant(cp, alg.alg, rho_st, psi_st);
  CHECK(report.covariant);
  auto pi = universal_extend(cp, alg.alg, rho_st, psi_st);
  for (int i = 0; i < cp.dim(); ++i) CHECK(pi[i] == m[i]);
}
