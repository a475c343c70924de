#include "ample/semigroup.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace ample {

namespace {

std::string el(int s) { return "#" + std::to_string(s); }

}  // namespace

FiniteInverseSemigroup validate_inverse_semigroup(int n,
                                                  std::vector<int> mult) {
  if (n <= 0) fail("BadTable", "element count must be positive");
  if (static_cast<int>(mult.size()) != n * n)
    fail("BadTable", "multiplication table has wrong size");
  for (int v : mult)
    if (v < 0 || v >= n) fail("BadTable", "table entry out of range");

  FiniteInverseSemigroup S;
  S.n = n;
  S.mult = std::move(mult);

  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int u = 0; u < n; ++u)
        if (S.at(S.at(s, t), u) != S.at(s, S.at(t, u)))
          fail("NotAssociative",
               "(" + el(s) + el(t) + ")" + el(u) + " != " + el(s) + "(" +
                   el(t) + el(u) + ")",
               {s, t, u});

  S.star.assign(n, -1);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (S.at(S.at(s, t), s) == s && S.at(S.at(t, s), t) == t) {
        if (S.star[s] != -1)
          fail("NoPseudoInverse",
               el(s) + " has two pseudo-inverses " + el(S.star[s]) + ", " +
                   el(t),
               {s, S.star[s], t});
        S.star[s] = t;
      }
    }
    if (S.star[s] == -1)
      fail("NoPseudoInverse", el(s) + " has no pseudo-inverse", {s});
  }

  S.idem.assign(n, 0);
  for (int s = 0; s < n; ++s)
    if (S.at(s, s) == s) {
      S.idem[s] = 1;
      S.idempotents.push_back(s);
    }
  for (int e : S.idempotents)
    for (int f : S.idempotents)
      if (S.at(e, f) != S.at(f, e))
        fail("IdempotentsDontCommute", el(e) + el(f) + " != " + el(f) + el(e),
             {e, f});

  // s <= t iff s = t (s* s); the left-sided form s = (s s*) t agrees and
  // is re-checked here since both are used downstream.
  S.leq_table.assign(n * n, 0);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      bool right = S.at(t, S.at(S.star[s], s)) == s;
      bool left = S.at(S.at(s, S.star[s]), t) == s;
      if (right != left)
        fail("InconsistentVerdict",
             "two order characterizations disagree on " + el(s) + "," + el(t),
             {s, t});
      S.leq_table[s * n + t] = right ? 1 : 0;
    }

  for (int z = 0; z < n; ++z) {
    bool absorbing = true;
    for (int s = 0; s < n && absorbing; ++s)
      absorbing = S.at(z, s) == z && S.at(s, z) == z;
    if (absorbing) {
      S.zero = z;
      break;
    }
  }
  return S;
}

namespace {

// Least upper bound in a finite poset; empty optional when there is no
// upper bound or no least one.
std::optional<int> least_upper_bound(const FiniteInverseSemigroup& S, int s,
                                     int t, const std::vector<int>& among) {
  std::vector<int> ub;
  for (int u : among)
    if (S.leq(s, u) && S.leq(t, u)) ub.push_back(u);
  for (int u0 : ub) {
    bool least = true;
    for (int u : ub)
      if (!S.leq(u0, u)) {
        least = false;
        break;
      }
    if (least) return u0;
  }
  return std::nullopt;
}

}  // namespace

BooleanStructure is_boolean(const FiniteInverseSemigroup& S) {
  if (!S.zero) fail("NoZero", "Boolean structure requires a zero element");
  const int n = S.n;
  const int z = *S.zero;

  BooleanStructure B;
  B.S = S;
  B.join_idem.assign(n * n, -1);
  B.complement.assign(n * n, -1);
  B.join_orth.assign(n * n, -1);

  for (int e : S.idempotents)
    for (int f : S.idempotents) {
      auto j = least_upper_bound(S, e, f, S.idempotents);
      if (!j) fail("MissingJoin", "idempotents " + el(e) + "," + el(f), {e, f});
      B.join_idem[e * n + f] = *j;
    }

  // joins of idempotents distribute over meets (= products)
  for (int e : S.idempotents)
    for (int f : S.idempotents)
      for (int g : S.idempotents) {
        int lhs = S.at(e, B.join_idem[f * n + g]);
        int rhs = B.join_idem[S.at(e, f) * n + S.at(e, g)];
        if (lhs != rhs)
          fail("NotDistributive",
               el(e) + "(" + el(f) + "v" + el(g) + ") != " + el(e) + el(f) +
                   " v " + el(e) + el(g),
               {e, f, g});
      }

  for (int e : S.idempotents)
    for (int f : S.idempotents) {
      if (!S.leq(f, e)) continue;
      int found = -1;
      for (int x : S.idempotents)
        if (S.at(f, x) == z && B.join_idem[f * n + x] == e) {
          found = x;
          break;
        }
      if (found < 0)
        fail("MissingComplement",
             "no complement of " + el(f) + " in " + el(e), {e, f});
      B.complement[e * n + f] = found;
    }

  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (!S.orthogonal(s, t)) continue;
      auto j = least_upper_bound(S, s, t, all);
      if (!j) fail("MissingJoin", "orthogonal pair " + el(s) + "," + el(t),
                   {s, t});
      int v = *j;
      B.join_orth[s * n + t] = v;
      int lhs = S.at(v, S.star[v]);
      int rhs = B.join_idem[S.range_idem(s) * n + S.range_idem(t)];
      if (lhs != rhs)
        fail("InconsistentVerdict",
             "(s v t)(s v t)* != ss* v tt* at " + el(s) + "," + el(t), {s, t});
      lhs = S.at(S.star[v], v);
      rhs = B.join_idem[S.domain_idem(s) * n + S.domain_idem(t)];
      if (lhs != rhs)
        fail("InconsistentVerdict",
             "(s v t)*(s v t) != s*s v t*t at " + el(s) + "," + el(t), {s, t});
    }

  // multiplication distributes over orthogonal joins, on both sides
  for (int u = 0; u < n; ++u)
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        int v = B.join_orth[s * n + t];
        if (v < 0) continue;
        int us = S.at(u, s), ut = S.at(u, t);
        int ju = B.join_orth[us * n + ut];
        if (ju < 0 || S.at(u, v) != ju)
          fail("NotDistributive",
               el(u) + "(" + el(s) + "v" + el(t) + ") != " + el(u) + el(s) +
                   " v " + el(u) + el(t),
               {u, s, t});
        int su = S.at(s, u), tu = S.at(t, u);
        ju = B.join_orth[su * n + tu];
        if (ju < 0 || S.at(v, u) != ju)
          fail("NotDistributive",
               "(" + el(s) + "v" + el(t) + ")" + el(u) + " != " + el(s) +
                   el(u) + " v " + el(t) + el(u),
               {u, s, t});
      }

  for (int a : S.idempotents) {
    if (a == z) continue;
    bool atom = true;
    for (int e : S.idempotents)
      if (e != z && e != a && S.leq(e, a)) {
        atom = false;
        break;
      }
    if (atom) B.atoms.push_back(a);
  }
  return B;
}

SemigroupHom make_hom(SemigroupPtr source, SemigroupPtr target,
                      std::vector<int> map) {
  if (static_cast<int>(map.size()) != source->n)
    fail("BadTable", "hom table has wrong size");
  for (int v : map)
    if (v < 0 || v >= target->n) fail("BadTable", "hom value out of range");
  SemigroupHom h{std::move(source), std::move(target), std::move(map), {}};
  h.flags = check_hom(h);
  return h;
}

HomFlags check_hom(const SemigroupHom& h) {
  const auto& S = *h.source;
  const auto& T = *h.target;
  HomFlags f;

  f.is_hom = true;
  for (int s = 0; s < S.n && f.is_hom; ++s)
    for (int t = 0; t < S.n; ++t)
      if (h.map[S.at(s, t)] != T.at(h.map[s], h.map[t])) {
        f.is_hom = false;
        f.violation = Error{"NotAHomomorphism",
                            "map(" + el(s) + el(t) + ") != map(" + el(s) +
                                ")map(" + el(t) + ")",
                            {s, t}};
        break;
      }

  f.idempotent_separating = true;
  for (int e : S.idempotents)
    for (int g : S.idempotents)
      if (e != g && h.map[e] == h.map[g]) f.idempotent_separating = false;
  {
    std::vector<char> hit(T.n, 0);
    for (int e : S.idempotents) hit[h.map[e]] = 1;
    bool onto = true;
    for (int e : T.idempotents)
      if (!hit[e]) onto = false;
    f.idempotent_bijective = f.idempotent_separating && onto &&
                             S.idempotents.size() == T.idempotents.size();
  }

  f.injective = true;
  for (int s = 0; s < S.n && f.injective; ++s)
    for (int t = s + 1; t < S.n; ++t)
      if (h.map[s] == h.map[t]) {
        f.injective = false;
        break;
      }
  {
    std::vector<char> hit(T.n, 0);
    for (int s = 0; s < S.n; ++s) hit[h.map[s]] = 1;
    f.surjective = std::all_of(hit.begin(), hit.end(),
                               [](char c) { return c != 0; });
  }

  // additive: joins of orthogonal pairs are preserved wherever they exist
  f.additive = true;
  if (S.zero && f.is_hom) {
    std::vector<int> allS(S.n), allT(T.n);
    std::iota(allS.begin(), allS.end(), 0);
    std::iota(allT.begin(), allT.end(), 0);
    for (int s = 0; s < S.n && f.additive; ++s)
      for (int t = 0; t < S.n; ++t) {
        if (!S.orthogonal(s, t)) continue;
        auto j = least_upper_bound(S, s, t, allS);
        if (!j) continue;
        auto jt = least_upper_bound(T, h.map[s], h.map[t], allT);
        if (!jt || h.map[*j] != *jt) {
          f.additive = false;
          break;
        }
      }
  }

  // Cross-check: for idempotent bijective homs, injectivity must agree
  // with the kernel being exactly the idempotents.
  if (f.is_hom && f.idempotent_bijective) {
    bool kernel_trivial = true;
    for (int s = 0; s < S.n; ++s)
      if (T.is_idempotent(h.map[s]) && !S.is_idempotent(s))
        kernel_trivial = false;
    if (kernel_trivial != f.injective)
      fail("InconsistentVerdict",
           "injectivity disagrees with the kernel criterion");
  }
  return f;
}

SemigroupHom identity_hom(SemigroupPtr S) {
  std::vector<int> id(S->n);
  std::iota(id.begin(), id.end(), 0);
  auto t = S;
  return make_hom(std::move(S), std::move(t), std::move(id));
}

SemigroupHom compose(const SemigroupHom& g, const SemigroupHom& f) {
  if (f.target.get() != g.source.get() && !(f.target->mult == g.source->mult))
    fail("Precondition", "homs are not composable");
  std::vector<int> m(f.source->n);
  for (int s = 0; s < f.source->n; ++s) m[s] = g.map[f.map[s]];
  return make_hom(f.source, g.target, std::move(m));
}

std::vector<int> kernel(const SemigroupHom& h) {
  if (!h.flags.is_hom || !h.flags.idempotent_bijective)
    fail("Precondition", "kernel needs an idempotent-bijective homomorphism");
  const auto& S = *h.source;
  const auto& T = *h.target;
  std::vector<int> K;
  std::vector<char> in_K(S.n, 0);
  for (int s = 0; s < S.n; ++s)
    if (T.is_idempotent(h.map[s])) {
      K.push_back(s);
      in_K[s] = 1;
    }
  // normality: E(K) = E(S) and s K s* inside K
  for (int e : S.idempotents)
    if (!in_K[e]) fail("InconsistentVerdict", "kernel misses idempotent " + el(e), {e});
  for (int s = 0; s < S.n; ++s)
    for (int k : K) {
      int c = S.at(S.at(s, k), S.star[s]);
      if (!in_K[c])
        fail("InconsistentVerdict", "kernel is not normal at " + el(s) + "," + el(k),
             {s, k});
    }
  return K;
}

SectionSearchResult find_oip_section(const SemigroupHom& h) {
  if (!h.flags.is_hom || !h.flags.surjective || !h.flags.idempotent_bijective)
    fail("Precondition",
         "section search needs a surjective idempotent-bijective hom");
  const auto& S = *h.source;
  const auto& T = *h.target;

  std::vector<std::vector<int>> preimage(T.n);
  for (int s = 0; s < S.n; ++s) preimage[h.map[s]].push_back(s);

  std::vector<int> j(T.n, -1);
  // idempotent values are forced: the unique idempotent preimage
  for (int e : T.idempotents) {
    for (int s : preimage[e])
      if (S.is_idempotent(s)) {
        j[e] = s;
        break;
      }
    if (j[e] < 0) return {std::nullopt, true};
  }

  // remaining elements, largest down-set first to prune early
  std::vector<int> order;
  for (int t = 0; t < T.n; ++t)
    if (!T.is_idempotent(t)) order.push_back(t);
  std::vector<int> downset(T.n, 0);
  for (int t = 0; t < T.n; ++t)
    for (int x = 0; x < T.n; ++x)
      if (T.leq(x, t)) ++downset[t];
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (downset[a] != downset[b]) return downset[a] > downset[b];
    return a < b;
  });

  auto order_ok = [&](int t) {
    for (int x = 0; x < T.n; ++x) {
      if (j[x] < 0) continue;
      if (T.leq(x, t) && !S.leq(j[x], j[t])) return false;
      if (T.leq(t, x) && !S.leq(j[t], j[x])) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (k == order.size()) return true;
    int t = order[k];
    for (int s : preimage[t]) {
      j[t] = s;
      if (order_ok(t) && self(self, k + 1)) return true;
      j[t] = -1;
    }
    return false;
  };

  if (!rec(rec, 0)) return {std::nullopt, true};

  // multiplicative characterizations of order/idempotent preserving
  // sections must now hold
  for (int t = 0; t < T.n; ++t)
    for (int e : T.idempotents) {
      if (j[T.at(t, e)] != S.at(j[t], j[e]))
        fail("InconsistentVerdict", "section fails j(te)=j(t)j(e)", {t, e});
      if (j[T.at(e, t)] != S.at(j[e], j[t]))
        fail("InconsistentVerdict", "section fails j(et)=j(e)j(t)", {t, e});
    }
  return {j, true};
}

}  // namespace ample
