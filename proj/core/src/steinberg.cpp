#include "ample/steinberg.hpp"

#include <algorithm>

namespace ample {

Vec convolve(const TwistedSteinbergAlgebra& alg, const Vec& f, const Vec& g,
             const std::vector<int>& section) {
  const auto& tw = alg.tw;
  const auto& Sg = *tw.Sigma;
  const auto& G = *tw.G;
  Vec out = zero_vec(alg.field, Sg.n);
  for (int s = 0; s < Sg.n; ++s) {
    Scalar acc = Scalar::zero(alg.field);
    int target_ran = G.ran[tw.phi.map[s]];
    for (int h = 0; h < G.n; ++h) {
      if (G.ran[h] != target_ran) continue;
      int ph = section[h];
      if (f[ph].is_zero()) continue;
      int rest = Sg.at(Sg.inv[ph], s);
      if (rest < 0)
        fail("InconsistentVerdict", "convolution factor not composable",
             {s, h});
      if (g[rest].is_zero()) continue;
      acc = acc + f[ph] * g[rest];
    }
    out[s] = acc;
  }
  return out;
}

Vec values_of(const TwistedSteinbergAlgebra& alg, const Vec& coeffs) {
  Vec out = zero_vec(alg.field, alg.tw.Sigma->n);
  for (int g = 0; g < alg.dim(); ++g)
    if (!coeffs[g].is_zero()) out = add(out, scale(coeffs[g], alg.basis_values[g]));
  return out;
}

TwistedSteinbergAlgebra build_steinberg(const TwistExtension& tw,
                                        const FieldDesc& field,
                                        std::vector<Scalar> embed,
                                        const std::vector<int>* section) {
  TwistedSteinbergAlgebra alg;
  alg.tw = tw;
  alg.field = field;
  alg.embed = std::move(embed);
  const auto& G = *tw.G;
  const auto& Sg = *tw.Sigma;

  if (static_cast<int>(alg.embed.size()) != tw.A->n)
    fail("NoEmbedding", "embedding table has wrong size");
  for (int x = 0; x < tw.A->n; ++x)
    for (int y = 0; y < tw.A->n; ++y) {
      if (x < y && alg.embed[x] == alg.embed[y])
        fail("NoEmbedding", "embedding is not injective", {x, y});
      if (!(alg.embed[x] * alg.embed[y] == alg.embed[tw.A->at(x, y)]))
        fail("NoEmbedding", "embedding is not a homomorphism", {x, y});
    }

  if (section) {
    alg.section = *section;
    for (int g = 0; g < G.n; ++g)
      if (tw.phi.map[alg.section[g]] != g)
        fail("BadSection", "section does not lift the base arrow", {g});
  } else {
    alg.section.assign(G.n, -1);
    for (int s = 0; s < Sg.n; ++s)
      if (alg.section[tw.phi.map[s]] < 0) alg.section[tw.phi.map[s]] = s;
  }

  // basis: f_g is 1 at the lift of g, extended anti-equivariantly on the
  // fiber, zero elsewhere
  alg.basis_values.assign(G.n, Vec());
  for (int g = 0; g < G.n; ++g) {
    Vec v = zero_vec(field, Sg.n);
    for (int a = 0; a < tw.A->n; ++a)
      v[tw.act(a, alg.section[g])] = alg.embed[a].inverse();
    alg.basis_values[g] = std::move(v);
  }
  for (int g = 0; g < G.n; ++g)
    for (int a = 0; a < tw.A->n; ++a)
      for (int s = 0; s < Sg.n; ++s)
        if (!(alg.basis_values[g][tw.act(a, s)] ==
              alg.embed[a].inverse() * alg.basis_values[g][s]))
          fail("InconsistentVerdict", "basis is not anti-equivariant",
               {g, a, s});

  alg.alg.field = field;
  alg.alg.dim = G.n;
  alg.alg.mult.assign(G.n * G.n, Vec());
  for (int g = 0; g < G.n; ++g)
    for (int h = 0; h < G.n; ++h) {
      Vec conv = convolve(alg, alg.basis_values[g], alg.basis_values[h],
                          alg.section);
      Vec coeffs = zero_vec(field, G.n);
      for (int k = 0; k < G.n; ++k) coeffs[k] = conv[alg.section[k]];
      // closure: the convolution really is the anti-equivariant extension
      if (!(values_of(alg, coeffs) == conv))
        fail("InconsistentVerdict",
             "convolution left the anti-equivariant span", {g, h});
      alg.alg.mult[g * G.n + h] = std::move(coeffs);
    }

  // independence of the section: recompute along the greatest lifts
  std::vector<int> alt(G.n, -1);
  for (int s = 0; s < Sg.n; ++s) alt[tw.phi.map[s]] = s;
  for (int g = 0; g < G.n; ++g)
    for (int h = 0; h < G.n; ++h) {
      Vec conv = convolve(alg, alg.basis_values[g], alg.basis_values[h], alt);
      if (!(conv == values_of(alg, alg.alg.basis_product(g, h))))
        fail("InconsistentVerdict", "convolution depends on the section",
             {g, h});
    }
  if (!alg.alg.associative_on_basis())
    fail("InconsistentVerdict", "convolution is not associative");
  return alg;
}

Vec tilde_one(const TwistedSteinbergAlgebra& alg, const Bits& V) {
  const auto& tw = alg.tw;
  const auto& Sg = *tw.Sigma;
  if (!is_bisection(Sg, V)) fail("NotABisection", "tilde_one needs a bisection");
  Vec v = zero_vec(alg.field, Sg.n);
  for (int s = 0; s < Sg.n; ++s)
    for (int a = 0; a < tw.A->n; ++a)
      if (V.test(tw.act(a, s))) {
        v[s] = alg.embed[a];
        break;
      }
  Vec coeffs = zero_vec(alg.field, alg.dim());
  for (int k = 0; k < alg.dim(); ++k) coeffs[k] = v[alg.section[k]];
  if (!(values_of(alg, coeffs) == v))
    fail("InconsistentVerdict", "tilde_one left the anti-equivariant span");
  return coeffs;
}

int tilde_one_span_rank(const TwistedSteinbergAlgebra& alg, long cap) {
  auto bisections = enumerate_bisections(*alg.tw.Sigma, cap);
  std::vector<Vec> rows;
  rows.reserve(bisections.size());
  for (const auto& V : bisections) rows.push_back(tilde_one(alg, V));
  return rank(alg.field, alg.dim(), rows);
}

std::vector<Vec> iso_psi(const TwistedRingSetup& setup,
                         const TwistedSteinbergAlgebra& alg) {
  const auto& cp = setup.cp;
  const auto& tw = setup.tw;
  const auto& a = cp.action;
  const auto& G = *tw.G;
  const auto& Sg = *tw.Sigma;
  const int nu = a.n_units;
  if (!(alg.field == a.field))
    fail("Precondition", "field mismatch between the two algebras");

  // psi(1_x delta_U + I) = f_{1_x, U}: supported over the arrows of U
  // with range x, valued through the classifying section j
  const auto& SSigma = setup.cls.SSigma;
  const auto& j = setup.cls.section;

  auto f_of = [&](int s_elt, int ui) {
    Vec v = zero_vec(alg.field, Sg.n);
    const Bits& U = a.S.labels[s_elt];
    const Bits& JU = SSigma.labels[j[s_elt]];
    for (int sigma = 0; sigma < Sg.n; ++sigma) {
      int g = tw.phi.map[sigma];
      if (!U.test(g)) continue;
      if (a.unit_pos[G.ran[g]] != ui) continue;
      // the lift of g inside j(U)
      int lift = -1;
      for (int x : JU.elements())
        if (tw.phi.map[x] == g) lift = x;
      if (lift < 0)
        fail("InconsistentVerdict", "classifying section misses an arrow",
             {s_elt, g});
      // sigma = u . lift; value embed(u)^{-1}
      int u = -1;
      for (int b = 0; b < tw.A->n; ++b)
        if (tw.act(b, lift) == sigma) u = b;
      if (u < 0)
        fail("InconsistentVerdict", "arrow not on the lift orbit", {sigma});
      v[sigma] = alg.embed[u].inverse();
    }
    Vec coeffs = zero_vec(alg.field, alg.dim());
    for (int k = 0; k < alg.dim(); ++k) coeffs[k] = v[alg.section[k]];
    if (!(values_of(alg, coeffs) == v))
      fail("NotIso", "image is not anti-equivariant", {s_elt, ui});
    return coeffs;
  };

  std::vector<Vec> psi_amb(cp.ambient_dim);
  for (int s = 0; s < cp.nS; ++s)
    for (int ui = 0; ui < nu; ++ui)
      psi_amb[cp.ambient_index(s, ui)] = f_of(s, ui);
  auto psi_of_ambient = [&](const Vec& v) {
    Vec out = zero_vec(alg.field, alg.dim());
    for (int i = 0; i < cp.ambient_dim; ++i)
      if (!v[i].is_zero()) out = add(out, scale(v[i], psi_amb[i]));
    return out;
  };
  for (const Vec& row : cp.Q.subspace_basis())
    if (!is_zero_vec(psi_of_ambient(row)))
      fail("NotIso", "map does not kill the ideal");

  const int d = cp.dim();
  if (d != alg.dim()) fail("NotIso", "dimension mismatch");
  std::vector<Vec> m(d);
  for (int i = 0; i < d; ++i) {
    Vec coords = zero_vec(alg.field, d);
    coords[i] = Scalar::one(alg.field);
    m[i] = psi_of_ambient(cp.Q.lift(coords));
  }
  if (!invert_matrix(alg.field, m)) fail("NotIso", "map is not bijective");

  auto apply = [&](const Vec& coords) {
    Vec out = zero_vec(alg.field, d);
    for (int i = 0; i < d; ++i)
      if (!coords[i].is_zero()) out = add(out, scale(coords[i], m[i]));
    return out;
  };
  for (int i = 0; i < d; ++i)
    for (int j2 = 0; j2 < d; ++j2) {
      Vec lhs = apply(cp.alg.basis_product(i, j2));
      Vec ei = zero_vec(alg.field, d), ej = zero_vec(alg.field, d);
      ei[i] = Scalar::one(alg.field);
      ej[j2] = Scalar::one(alg.field);
      Vec rhs = alg.alg.multiply(apply(ei), apply(ej));
      if (!(lhs == rhs)) fail("NotIso", "map is not multiplicative", {i, j2});
    }
  return m;
}

}  // namespace ample
