#include "ample/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace ample {

namespace {
std::string ar(int g) { return "#" + std::to_string(g); }
}  // namespace

FiniteGroupoid validate_groupoid(int n, std::vector<int> comp,
                                 std::vector<int> inv, std::vector<int> dom,
                                 std::vector<int> ran,
                                 std::vector<int> declared_units) {
  if (n <= 0) fail("BadTable", "arrow count must be positive");
  if (static_cast<int>(comp.size()) != n * n ||
      static_cast<int>(inv.size()) != n ||
      static_cast<int>(dom.size()) != n || static_cast<int>(ran.size()) != n)
    fail("BadTable", "groupoid tables have wrong sizes");

  FiniteGroupoid G;
  G.n = n;
  G.comp = std::move(comp);
  G.inv = std::move(inv);
  G.dom = std::move(dom);
  G.ran = std::move(ran);

  for (int g = 0; g < n; ++g) {
    if (G.inv[g] < 0 || G.inv[g] >= n || G.dom[g] < 0 || G.dom[g] >= n ||
        G.ran[g] < 0 || G.ran[g] >= n)
      fail("BadTable", "table entry out of range", {g});
  }

  // derived units: fixed points of dom
  std::vector<char> unit(n, 0);
  for (int g = 0; g < n; ++g)
    if (G.dom[g] == g && G.ran[g] == g) unit[g] = 1;
  std::sort(declared_units.begin(), declared_units.end());
  std::vector<int> derived;
  for (int g = 0; g < n; ++g)
    if (unit[g]) derived.push_back(g);
  if (derived != declared_units)
    fail("BadUnits", "declared unit set disagrees with the derived one");
  G.units = derived;
  G.is_unit = unit;

  for (int u : G.units)
    if (G.dom[u] != u || G.ran[u] != u || G.inv[u] != u)
      fail("BadUnits", "unit " + ar(u) + " must satisfy dom=ran=inv=id", {u});

  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      int gh = G.at(g, h);
      if ((gh >= 0) != G.composable(g, h))
        fail("BadComposability",
             ar(g) + ar(h) + " defined iff dom=ran fails", {g, h});
      if (gh >= 0) {
        if (gh >= n) fail("BadTable", "composition out of range", {g, h});
        if (G.dom[gh] != G.dom[h] || G.ran[gh] != G.ran[g])
          fail("BadComposability",
               "dom/ran of " + ar(g) + ar(h) + " are wrong", {g, h});
      }
    }

  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k) {
        if (!G.composable(g, h) || !G.composable(h, k)) continue;
        if (G.at(G.at(g, h), k) != G.at(g, G.at(h, k)))
          fail("NotAssociative",
               "(" + ar(g) + ar(h) + ")" + ar(k) + " != " + ar(g) + "(" +
                   ar(h) + ar(k) + ")",
               {g, h, k});
      }

  for (int g = 0; g < n; ++g) {
    int gi = G.inv[g];
    if (G.inv[gi] != g) fail("BadInverse", "inv is not an involution", {g});
    if (G.dom[gi] != G.ran[g] || G.ran[gi] != G.dom[g])
      fail("BadInverse", "inv swaps dom/ran fails at " + ar(g), {g});
    if (G.at(gi, g) != G.dom[g] || G.at(g, gi) != G.ran[g])
      fail("BadInverse", ar(g) + " inv(" + ar(g) + ") is not a unit", {g});
    if (G.at(g, G.dom[g]) != g || G.at(G.ran[g], g) != g)
      fail("BadUnits", "units do not act as identities at " + ar(g), {g});
  }
  return G;
}

GroupoidFunctor make_functor(GroupoidPtr source, GroupoidPtr target,
                             std::vector<int> map) {
  if (static_cast<int>(map.size()) != source->n)
    fail("BadTable", "functor table has wrong size");
  for (int v : map)
    if (v < 0 || v >= target->n) fail("BadTable", "functor value out of range");
  GroupoidFunctor F{std::move(source), std::move(target), std::move(map), {}};
  F.flags = check_functor(F);
  return F;
}

FunctorFlags check_functor(const GroupoidFunctor& F) {
  const auto& G = *F.source;
  const auto& H = *F.target;
  FunctorFlags f;

  f.is_functor = true;
  for (int u : G.units)
    if (!H.is_unit[F.map[u]]) {
      f.is_functor = false;
      f.violation = Error{"NotAFunctor", "unit " + ar(u) + " maps off the units", {u}};
      break;
    }
  for (int g = 0; g < G.n && f.is_functor; ++g)
    for (int h = 0; h < G.n; ++h) {
      if (!G.composable(g, h)) continue;
      if (!H.composable(F.map[g], F.map[h]) ||
          H.at(F.map[g], F.map[h]) != F.map[G.at(g, h)]) {
        f.is_functor = false;
        f.violation = Error{"NotAFunctor",
                            "map(" + ar(g) + ar(h) + ") != map(" + ar(g) +
                                ")map(" + ar(h) + ")",
                            {g, h}};
        break;
      }
    }

  {
    std::vector<char> hit(H.n, 0);
    bool inj = true;
    for (int u : G.units) {
      if (hit[F.map[u]]) inj = false;
      hit[F.map[u]] = 1;
    }
    bool onto = true;
    for (int u : H.units)
      if (!hit[u]) onto = false;
    f.iso_unital = f.is_functor && inj && onto &&
                   G.units.size() == H.units.size();
  }

  f.injective = true;
  for (int g = 0; g < G.n && f.injective; ++g)
    for (int h = g + 1; h < G.n; ++h)
      if (F.map[g] == F.map[h]) {
        f.injective = false;
        break;
      }
  {
    std::vector<char> hit(H.n, 0);
    for (int g = 0; g < G.n; ++g) hit[F.map[g]] = 1;
    f.surjective =
        std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  }

  if (f.iso_unital) {
    bool units_only = true;
    for (int g = 0; g < G.n; ++g)
      if (H.is_unit[F.map[g]] && !G.is_unit[g]) units_only = false;
    if (units_only != f.injective)
      fail("InconsistentVerdict",
           "injectivity disagrees with the unit-preimage criterion");
  }
  return f;
}

GroupoidFunctor identity_functor(GroupoidPtr G) {
  std::vector<int> id(G->n);
  std::iota(id.begin(), id.end(), 0);
  auto t = G;
  return make_functor(std::move(G), std::move(t), std::move(id));
}

GroupoidFunctor compose(const GroupoidFunctor& g, const GroupoidFunctor& f) {
  if (f.target.get() != g.source.get() && !(f.target->comp == g.source->comp))
    fail("Precondition", "functors are not composable");
  std::vector<int> m(f.source->n);
  for (int x = 0; x < f.source->n; ++x) m[x] = g.map[f.map[x]];
  return make_functor(f.source, g.target, std::move(m));
}

GroupoidFunctor inverse_functor(const GroupoidFunctor& F) {
  if (!F.flags.injective || !F.flags.surjective)
    fail("Precondition", "functor is not bijective");
  std::vector<int> m(F.target->n, -1);
  for (int g = 0; g < F.source->n; ++g) m[F.map[g]] = g;
  return make_functor(F.target, F.source, std::move(m));
}

bool is_bisection(const FiniteGroupoid& G, const Bits& U) {
  std::vector<char> seen_dom(G.n, 0), seen_ran(G.n, 0);
  for (int g = 0; g < G.n; ++g) {
    if (!U.test(g)) continue;
    if (seen_dom[G.dom[g]] || seen_ran[G.ran[g]]) return false;
    seen_dom[G.dom[g]] = 1;
    seen_ran[G.ran[g]] = 1;
  }
  return true;
}

Bits set_product(const FiniteGroupoid& G, const Bits& U, const Bits& V) {
  Bits out(G.n);
  for (int g = 0; g < G.n; ++g) {
    if (!U.test(g)) continue;
    for (int h = 0; h < G.n; ++h)
      if (V.test(h) && G.composable(g, h)) out.set(G.at(g, h));
  }
  return out;
}

Bits set_inverse(const FiniteGroupoid& G, const Bits& U) {
  Bits out(G.n);
  for (int g = 0; g < G.n; ++g)
    if (U.test(g)) out.set(G.inv[g]);
  return out;
}

std::vector<Bits> enumerate_bisections(const FiniteGroupoid& G, long cap) {
  std::vector<Bits> out;
  Bits cur(G.n);
  std::vector<char> used_dom(G.n, 0), used_ran(G.n, 0);
  long visited = 0;

  // Arrows are added in increasing index order; a subset of a bisection
  // is a bisection, so conflicts prune whole subtrees.
  auto rec = [&](auto&& self, int next) -> void {
    if (++visited > cap)
      fail("SizeLimitExceeded",
           "bisection enumeration exceeded cap " + std::to_string(cap));
    out.push_back(cur);
    for (int g = next; g < G.n; ++g) {
      if (used_dom[G.dom[g]] || used_ran[G.ran[g]]) continue;
      used_dom[G.dom[g]] = 1;
      used_ran[G.ran[g]] = 1;
      cur.set(g);
      self(self, g + 1);
      cur.reset(g);
      used_dom[G.dom[g]] = 0;
      used_ran[G.ran[g]] = 0;
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ample
