#include "ample/fixtures.hpp"

namespace ample::fixtures {

GroupoidPtr g1() {
  return std::make_shared<const FiniteGroupoid>(
      validate_groupoid(1, {0}, {0}, {0}, {0}, {0}));
}

GroupoidPtr g2() {
  // arrows: 0 = unit, 1 = the flip
  std::vector<int> comp = {0, 1, 1, 0};
  return std::make_shared<const FiniteGroupoid>(
      validate_groupoid(2, std::move(comp), {0, 1}, {0, 0}, {0, 0}, {0}));
}

GroupoidPtr g3() {
  std::vector<int> comp = {0, -1, -1, 1};
  return std::make_shared<const FiniteGroupoid>(
      validate_groupoid(2, std::move(comp), {0, 1}, {0, 1}, {0, 1}, {0, 1}));
}

GroupoidPtr g4() {
  // arrows (i,j): j -> i, encoded 2*i + j; units 0 and 3
  const int n = 4;
  std::vector<int> comp(n * n, -1), inv(n), dom(n), ran(n);
  auto enc = [](int i, int j) { return 2 * i + j; };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      int a = enc(i, j);
      dom[a] = enc(j, j);
      ran[a] = enc(i, i);
      inv[a] = enc(j, i);
      for (int k = 0; k < 2; ++k) comp[a * n + enc(j, k)] = enc(i, k);
    }
  return std::make_shared<const FiniteGroupoid>(validate_groupoid(
      n, std::move(comp), std::move(inv), std::move(dom), std::move(ran),
      {0, 3}));
}

GroupoidPtr pair_groupoid(int k) {
  const int n = k * k;
  std::vector<int> comp(n * n, -1), inv(n), dom(n), ran(n), units;
  auto enc = [k](int i, int j) { return k * i + j; };
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      int a = enc(i, j);
      dom[a] = enc(j, j);
      ran[a] = enc(i, i);
      inv[a] = enc(j, i);
      for (int l = 0; l < k; ++l) comp[a * n + enc(j, l)] = enc(i, l);
    }
  for (int i = 0; i < k; ++i) units.push_back(enc(i, i));
  std::sort(units.begin(), units.end());
  return std::make_shared<const FiniteGroupoid>(validate_groupoid(
      n, std::move(comp), std::move(inv), std::move(dom), std::move(ran),
      std::move(units)));
}

GroupoidPtr cyclic_groupoid(int n) {
  std::vector<int> comp(n * n, -1), inv(n), dom(n, 0), ran(n, 0);
  for (int a = 0; a < n; ++a) {
    inv[a] = (n - a) % n;
    for (int b = 0; b < n; ++b) comp[a * n + b] = (a + b) % n;
  }
  return std::make_shared<const FiniteGroupoid>(validate_groupoid(
      n, std::move(comp), std::move(inv), std::move(dom), std::move(ran),
      {0}));
}

GroupoidPtr disjoint_union(const GroupoidPtr& a, const GroupoidPtr& b) {
  const int n = a->n + b->n;
  std::vector<int> comp(n * n, -1), inv(n), dom(n), ran(n), units;
  for (int g = 0; g < a->n; ++g) {
    inv[g] = a->inv[g];
    dom[g] = a->dom[g];
    ran[g] = a->ran[g];
    for (int h = 0; h < a->n; ++h) comp[g * n + h] = a->at(g, h);
  }
  for (int g = 0; g < b->n; ++g) {
    inv[a->n + g] = a->n + b->inv[g];
    dom[a->n + g] = a->n + b->dom[g];
    ran[a->n + g] = a->n + b->ran[g];
    for (int h = 0; h < b->n; ++h) {
      int v = b->at(g, h);
      comp[(a->n + g) * n + (a->n + h)] = v < 0 ? -1 : a->n + v;
    }
  }
  for (int u : a->units) units.push_back(u);
  for (int u : b->units) units.push_back(a->n + u);
  std::sort(units.begin(), units.end());
  return std::make_shared<const FiniteGroupoid>(validate_groupoid(
      n, std::move(comp), std::move(inv), std::move(dom), std::move(ran),
      std::move(units)));
}

AbelianGroupPtr cyclic_group(int n) {
  std::vector<int> mult(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mult[a * n + b] = (a + b) % n;
  return std::make_shared<const FiniteAbelianGroup>(
      validate_abelian_group(n, std::move(mult)));
}

AbelianGroupPtr trivial_group() {
  return std::make_shared<const FiniteAbelianGroup>(
      validate_abelian_group(1, {0}));
}

AbelianGroupPtr z2() {
  return std::make_shared<const FiniteAbelianGroup>(
      validate_abelian_group(2, {0, 1, 1, 0}));
}

AbelianGroupPtr z3() {
  std::vector<int> mult = {0, 1, 2, 1, 2, 0, 2, 0, 1};
  return std::make_shared<const FiniteAbelianGroup>(
      validate_abelian_group(3, std::move(mult)));
}

SemigroupPtr s1() {
  // 0 = zero, 1 = e, 2 = g with g g = e
  std::vector<int> mult = {0, 0, 0, 0, 1, 2, 0, 2, 1};
  return std::make_shared<const FiniteInverseSemigroup>(
      validate_inverse_semigroup(3, std::move(mult)));
}

SemigroupPtr two_chain() {
  std::vector<int> mult = {0, 0, 0, 1};
  return std::make_shared<const FiniteInverseSemigroup>(
      validate_inverse_semigroup(2, std::move(mult)));
}

SemigroupPtr three_chain() {
  // 0 < e < f, meet semilattice
  std::vector<int> mult = {0, 0, 0, 0, 1, 1, 0, 1, 2};
  return std::make_shared<const FiniteInverseSemigroup>(
      validate_inverse_semigroup(3, std::move(mult)));
}

TwistExtension tw1() { return trivial_twist(z2(), g4()); }

TwistExtension tw2() {
  auto G = g2();
  std::vector<int> sigma(4, 0);
  sigma[1 * 2 + 1] = 1;  // sigma(g, g) is the nontrivial element
  return twist_from_groupoid_cocycle(z2(), G, sigma);
}

TwistExtension noncentral() {
  auto A = z3();
  auto G = g4();
  const int ng = G->n;
  const int n = A->n * ng;
  auto enc = [&](int a, int g) { return a * ng + g; };
  // theta_(i,j) is inversion when i != j, identity otherwise
  auto theta = [&](int g, int a) {
    bool offdiag = (g == 1 || g == 2);
    return offdiag ? A->inverse[a] : a;
  };
  std::vector<int> comp(n * n, -1), inv(n), dom(n), ran(n), units;
  for (int a = 0; a < A->n; ++a)
    for (int g = 0; g < ng; ++g) {
      int x = enc(a, g);
      dom[x] = enc(A->identity, G->dom[g]);
      ran[x] = enc(A->identity, G->ran[g]);
      inv[x] = enc(theta(G->inv[g], A->inverse[a]), G->inv[g]);
      for (int b = 0; b < A->n; ++b)
        for (int h = 0; h < ng; ++h)
          if (G->composable(g, h))
            comp[x * n + enc(b, h)] = enc(A->at(a, theta(g, b)), G->at(g, h));
    }
  for (int u : G->units) units.push_back(enc(A->identity, u));
  std::sort(units.begin(), units.end());
  auto Sigma = std::make_shared<const FiniteGroupoid>(validate_groupoid(
      n, std::move(comp), std::move(inv), std::move(dom), std::move(ran),
      std::move(units)));

  const int nu = static_cast<int>(G->units.size());
  std::vector<int> iota_map(A->n * nu), phi_map(n);
  for (int a = 0; a < A->n; ++a)
    for (int ui = 0; ui < nu; ++ui)
      iota_map[a * nu + ui] = enc(a, G->units[ui]);
  for (int a = 0; a < A->n; ++a)
    for (int g = 0; g < ng; ++g) phi_map[enc(a, g)] = g;
  return make_twist_extension(A, G, Sigma, std::move(iota_map),
                              std::move(phi_map), /*require_central=*/false);
}

std::vector<NamedFunctor> fixture_functors() {
  std::vector<NamedFunctor> out;
  auto G1 = g1();
  auto G2 = g2();
  auto G4 = g4();
  out.push_back({"id_g1", identity_functor(G1)});
  out.push_back({"id_g2", identity_functor(G2)});
  out.push_back({"id_g4", identity_functor(G4)});
  out.push_back({"collapse_g2_g1", make_functor(G2, G1, {0, 0})});
  // swap the two points of the pair groupoid
  out.push_back({"swap_g4", make_functor(G4, G4, {3, 2, 1, 0})});
  auto T1 = tw1();
  out.push_back({"tw1_phi", T1.phi});
  out.push_back({"tw1_iota", T1.iota});
  auto T2 = tw2();
  out.push_back({"tw2_phi", T2.phi});
  out.push_back({"tw2_iota", T2.iota});
  auto NC = noncentral();
  out.push_back({"noncentral_phi", NC.phi});
  out.push_back({"noncentral_iota", NC.iota});
  return out;
}

std::vector<NamedHom> fixture_homs() {
  std::vector<NamedHom> out;
  auto S = s1();
  auto C = two_chain();
  out.push_back({"id_s1", identity_hom(S)});
  out.push_back({"collapse_s1", make_hom(S, C, {0, 1, 1})});
  out.push_back({"id_two_chain", identity_hom(C)});
  return out;
}

}  // namespace ample::fixtures
