#include "ample/cohomology.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "ample/duality.hpp"

namespace ample {

namespace {
std::string el(int s) { return "#" + std::to_string(s); }
}  // namespace

LauschModule validate_module(SemigroupPtr S, SemigroupPtr K,
                             std::vector<int> p, std::vector<int> act) {
  LauschModule M;
  M.S = std::move(S);
  M.K = std::move(K);
  M.p = std::move(p);
  M.act = std::move(act);
  const auto& Ss = *M.S;
  const auto& Kk = *M.K;

  if (static_cast<int>(M.p.size()) != Kk.n ||
      static_cast<int>(M.act.size()) != Ss.n * Kk.n)
    fail("BadTable", "module tables have wrong sizes");

  for (int a = 0; a < Kk.n; ++a)
    for (int b = 0; b < Kk.n; ++b)
      if (Kk.at(a, b) != Kk.at(b, a))
        fail("NotAbelian", "coefficients do not commute", {a, b});

  for (int k = 0; k < Kk.n; ++k)
    if (!Ss.is_idempotent(M.p[k]))
      fail("BadTable", "p must land in the idempotents", {k});
  for (int a = 0; a < Kk.n; ++a)
    for (int b = 0; b < Kk.n; ++b)
      if (M.p[Kk.at(a, b)] != Ss.at(M.p[a], M.p[b]))
        fail("BadTable", "p is not a homomorphism", {a, b});
  // p restricted to E(K) is a bijection onto E(S)
  {
    std::vector<int> count(Ss.n, 0);
    for (int e : Kk.idempotents) ++count[M.p[e]];
    for (int e : Ss.idempotents)
      if (count[e] != 1)
        fail("BadTable", "p is not idempotent bijective at " + el(e), {e});
  }

  for (int s = 0; s < Ss.n; ++s)
    for (int a = 0; a < Kk.n; ++a)
      for (int b = 0; b < Kk.n; ++b)
        if (M.action(s, Kk.at(a, b)) != Kk.at(M.action(s, a), M.action(s, b)))
          fail("BadTable", "action is not by endomorphisms", {s, a, b});
  for (int s = 0; s < Ss.n; ++s)
    for (int t = 0; t < Ss.n; ++t)
      for (int k = 0; k < Kk.n; ++k)
        if (M.action(s, M.action(t, k)) != M.action(Ss.at(s, t), k))
          fail("BadTable", "action is not associative", {s, t, k});
  for (int s = 0; s < Ss.n; ++s)
    for (int k = 0; k < Kk.n; ++k)
      if (M.p[M.action(s, k)] != Ss.at(Ss.at(s, M.p[k]), Ss.star[s]))
        fail("BadTable", "p(sk) != s p(k) s*", {s, k});
  for (int k = 0; k < Kk.n; ++k)
    if (M.action(M.p[k], k) != k)
      fail("BadTable", "p(k) k != k", {k});

  M.fiber_identity.assign(Ss.n, -1);
  M.fibers.assign(Ss.n, {});
  for (int k = 0; k < Kk.n; ++k) M.fibers[M.p[k]].push_back(k);
  for (int e : Ss.idempotents)
    for (int k : M.fibers[e])
      if (Kk.is_idempotent(k)) M.fiber_identity[e] = k;

  // each fiber is an abelian group
  for (int e : Ss.idempotents) {
    int one = M.fiber_identity[e];
    for (int k : M.fibers[e]) {
      if (Kk.at(one, k) != k)
        fail("BadTable", "fiber identity fails over " + el(e), {e, k});
      if (Kk.at(k, Kk.star[k]) != one)
        fail("BadTable", "fiber inverse fails over " + el(e), {e, k});
      for (int k2 : M.fibers[e])
        if (M.p[Kk.at(k, k2)] != e)
          fail("BadTable", "fiber is not closed over " + el(e), {e, k, k2});
    }
  }
  return M;
}

CocycleCheck validate_cocycle(const LauschModule& M,
                              const std::vector<int>& table) {
  const auto& S = *M.S;
  CocycleCheck out;
  if (static_cast<int>(table.size()) != S.n * S.n)
    fail("BadTable", "cocycle table has wrong size");
  auto at = [&](int s, int t) { return table[s * S.n + t]; };
  for (int s = 0; s < S.n; ++s)
    for (int t = 0; t < S.n; ++t)
      if (M.p[at(s, t)] != M.pair_support(s, t))
        out.fiber_violations.push_back({s, t});
  for (int s = 0; s < S.n; ++s)
    for (int t = 0; t < S.n; ++t)
      for (int u = 0; u < S.n; ++u) {
        int lhs = M.kmul(M.action(s, at(t, u)), at(s, S.at(t, u)));
        int rhs = M.kmul(at(s, t), at(S.at(s, t), u));
        if (lhs != rhs) out.cocycle_violations.push_back({s, t, u});
      }
  out.valid = out.fiber_violations.empty() && out.cocycle_violations.empty();
  return out;
}

namespace {

bool is_normalized(const LauschModule& M, const std::vector<int>& table) {
  const auto& S = *M.S;
  for (int e : S.idempotents)
    if (!M.K->is_idempotent(table[e * S.n + e])) return false;
  return true;
}

}  // namespace

TwoCocycle trivial_cocycle(const LauschModule& M) {
  const auto& S = *M.S;
  TwoCocycle c;
  c.table.assign(S.n * S.n, -1);
  for (int s = 0; s < S.n; ++s)
    for (int t = 0; t < S.n; ++t)
      c.table[s * S.n + t] = M.fiber_identity[M.pair_support(s, t)];
  c.normalized = true;
  return c;
}

Cochain identity_cochain(const LauschModule& M) {
  const auto& S = *M.S;
  Cochain F;
  F.values.assign(S.n, -1);
  for (int s = 0; s < S.n; ++s)
    F.values[s] = M.fiber_identity[S.range_idem(s)];
  return F;
}

TwoCocycle coboundary(const LauschModule& M, const Cochain& F) {
  const auto& S = *M.S;
  TwoCocycle c;
  c.table.assign(S.n * S.n, -1);
  for (int s = 0; s < S.n; ++s)
    for (int t = 0; t < S.n; ++t) {
      int v = M.kmul(M.kmul(F.values[s], M.action(s, F.values[t])),
                     M.kstar(F.values[S.at(s, t)]));
      c.table[s * S.n + t] = v;
    }
  c.normalized = is_normalized(M, c.table);
  return c;
}

TwoCocycle cocycle_product(const LauschModule& M, const TwoCocycle& a,
                           const TwoCocycle& b) {
  TwoCocycle c;
  c.table.resize(a.table.size());
  for (std::size_t i = 0; i < a.table.size(); ++i)
    c.table[i] = M.kmul(a.table[i], b.table[i]);
  c.normalized = is_normalized(M, c.table);
  return c;
}

TwoCocycle cocycle_star(const LauschModule& M, const TwoCocycle& a) {
  TwoCocycle c;
  c.table.resize(a.table.size());
  for (std::size_t i = 0; i < a.table.size(); ++i)
    c.table[i] = M.kstar(a.table[i]);
  c.normalized = is_normalized(M, c.table);
  return c;
}

std::pair<TwoCocycle, Cochain> normalize_cocycle(const LauschModule& M,
                                                 const TwoCocycle& c) {
  const auto& S = *M.S;
  Cochain F;
  F.values.assign(S.n, -1);
  for (int s = 0; s < S.n; ++s) {
    int e = S.range_idem(s);
    F.values[s] = M.kstar(c.table[e * S.n + e]);
  }
  TwoCocycle cn = cocycle_product(M, c, coboundary(M, F));
  if (!cn.normalized)
    fail("InconsistentVerdict", "normalization did not normalize");
  return {std::move(cn), std::move(F)};
}

namespace {

// Odometer over per-position candidate lists; calls sink for every tuple.
void odometer(const std::vector<std::vector<int>>& domains, long cap,
              const std::function<void(const std::vector<int>&)>& sink) {
  long total = 1;
  for (const auto& d : domains) {
    if (d.empty()) return;
    if (total > cap / static_cast<long>(d.size()))
      fail("SizeLimitExceeded", "enumeration exceeds cap");
    total *= static_cast<long>(d.size());
  }
  std::vector<std::size_t> idx(domains.size(), 0);
  std::vector<int> cur(domains.size());
  for (std::size_t i = 0; i < domains.size(); ++i) cur[i] = domains[i][0];
  for (;;) {
    sink(cur);
    std::size_t i = 0;
    while (i < domains.size()) {
      if (++idx[i] < domains[i].size()) {
        cur[i] = domains[i][idx[i]];
        break;
      }
      idx[i] = 0;
      cur[i] = domains[i][0];
      ++i;
    }
    if (i == domains.size()) break;
  }
}

std::vector<std::vector<int>> cochain_domains(const LauschModule& M,
                                              bool idempotents_trivial) {
  const auto& S = *M.S;
  std::vector<std::vector<int>> domains(S.n);
  for (int s = 0; s < S.n; ++s) {
    int e = S.range_idem(s);
    if (idempotents_trivial && S.is_idempotent(s))
      domains[s] = {M.fiber_identity[e]};
    else
      domains[s] = M.fibers[e];
  }
  return domains;
}

}  // namespace

std::optional<Cochain> cohomologous(const LauschModule& M,
                                    const TwoCocycle& c1, const TwoCocycle& c2,
                                    long cap) {
  auto domains = cochain_domains(M, false);
  std::optional<Cochain> found;
  odometer(domains, cap, [&](const std::vector<int>& vals) {
    if (found) return;
    Cochain F{vals};
    if (cocycle_product(M, c1, coboundary(M, F)).table == c2.table)
      found = std::move(F);
  });
  return found;
}

NormalizedIdentityReport check_normalized_identities(const LauschModule& M,
                                                     const TwoCocycle& cc) {
  const auto& S = *M.S;
  const auto& K = *M.K;
  const int n = S.n;
  auto c = [&](int s, int t) { return cc.table[s * n + t]; };
  NormalizedIdentityReport rep;
  auto record = [&](int number, bool pass, std::vector<int> witness) {
    rep.items.push_back({number, pass, std::move(witness)});
    rep.all_pass = rep.all_pass && pass;
  };

  {  // (1) c(s,s*s) = c(ss*,s), idempotent
    bool ok = true;
    std::vector<int> w;
    for (int s = 0; s < n && ok; ++s) {
      int lhs = c(s, S.domain_idem(s)), rhs = c(S.range_idem(s), s);
      if (lhs != rhs || !K.is_idempotent(lhs)) { ok = false; w = {s}; }
    }
    record(1, ok, w);
  }
  {  // (2) c(s,s*) = s c(s*,s)
    bool ok = true;
    std::vector<int> w;
    for (int s = 0; s < n && ok; ++s)
      if (c(s, S.star[s]) != M.action(s, c(S.star[s], s))) { ok = false; w = {s}; }
    record(2, ok, w);
  }
  {  // (3) c(e,ef) = c(ef,e), idempotent
    bool ok = true;
    std::vector<int> w;
    for (int e : S.idempotents) {
      for (int f : S.idempotents) {
        int ef = S.at(e, f);
        if (c(e, ef) != c(ef, e) || !K.is_idempotent(c(e, ef))) {
          ok = false; w = {e, f};
          break;
        }
      }
      if (!ok) break;
    }
    record(3, ok, w);
  }
  {  // (4) c(e,f) idempotent
    bool ok = true;
    std::vector<int> w;
    for (int e : S.idempotents) {
      for (int f : S.idempotents)
        if (!K.is_idempotent(c(e, f))) { ok = false; w = {e, f}; break; }
      if (!ok) break;
    }
    record(4, ok, w);
  }
  {  // (5) c(s,e) = c(s, s*se)
    bool ok = true;
    std::vector<int> w;
    for (int s = 0; s < n && ok; ++s)
      for (int e : S.idempotents)
        if (c(s, e) != c(s, S.at(S.domain_idem(s), e))) { ok = false; w = {s, e}; break; }
    record(5, ok, w);
  }
  {  // (6) c(e,s) = c(ess*, s)
    bool ok = true;
    std::vector<int> w;
    for (int s = 0; s < n && ok; ++s)
      for (int e : S.idempotents)
        if (c(e, s) != c(S.at(e, S.range_idem(s)), s)) { ok = false; w = {e, s}; break; }
    record(6, ok, w);
  }
  {  // (7) c(e,es), c(se,e) idempotent
    bool ok = true;
    std::vector<int> w;
    for (int s = 0; s < n && ok; ++s)
      for (int e : S.idempotents) {
        if (!K.is_idempotent(c(e, S.at(e, s))) ||
            !K.is_idempotent(c(S.at(s, e), e))) { ok = false; w = {e, s}; break; }
      }
    record(7, ok, w);
  }
  {  // (8) c(e,s) = c(s, s*es)
    bool ok = true;
    std::vector<int> w;
    for (int s = 0; s < n && ok; ++s)
      for (int e : S.idempotents) {
        int ses = S.at(S.at(S.star[s], e), s);
        if (c(e, s) != c(s, ses)) { ok = false; w = {e, s}; break; }
      }
    record(8, ok, w);
  }
  {  // (9) c(s,e) = c(ses*, s)
    bool ok = true;
    std::vector<int> w;
    for (int s = 0; s < n && ok; ++s)
      for (int e : S.idempotents) {
        int ses = S.at(S.at(s, e), S.star[s]);
        if (c(s, e) != c(ses, s)) { ok = false; w = {s, e}; break; }
      }
    record(9, ok, w);
  }
  {  // (10) c(u,s) c(ut, s*u*us)* = (u c(t,s*s)*) c(u,t) for s <= t
    bool ok = true;
    std::vector<int> w;
    for (int s = 0; s < n && ok; ++s)
      for (int t = 0; t < n && ok; ++t) {
        if (!S.leq(s, t)) continue;
        for (int u = 0; u < n; ++u) {
          int lhs = M.kmul(c(u, s),
                           M.kstar(c(S.at(u, t), S.domain_idem(S.at(u, s)))));
          int rhs = M.kmul(M.action(u, M.kstar(c(t, S.domain_idem(s)))),
                           c(u, t));
          if (lhs != rhs) { ok = false; w = {u, s, t}; break; }
        }
      }
    record(10, ok, w);
  }
  {  // (11) c(s,u) c(tu, u*s*su)* = c(t,s*s)* c(t,u) for s <= t
    bool ok = true;
    std::vector<int> w;
    for (int s = 0; s < n && ok; ++s)
      for (int t = 0; t < n && ok; ++t) {
        if (!S.leq(s, t)) continue;
        for (int u = 0; u < n; ++u) {
          int lhs = M.kmul(c(s, u),
                           M.kstar(c(S.at(t, u), S.domain_idem(S.at(s, u)))));
          int rhs = M.kmul(M.kstar(c(t, S.domain_idem(s))), c(t, u));
          if (lhs != rhs) { ok = false; w = {s, t, u}; break; }
        }
      }
    record(11, ok, w);
  }
  return rep;
}

namespace {

/// Normalized-cocycle enumerator: entries over singleton fibers and
/// entries of the shapes (e, et) / (te, e) are forced to the fiber
/// idempotent; the rest is filled by constraint propagation over the
/// cocycle identity with branching. Every leaf is re-validated in full,
/// so the pruning cannot manufacture cocycles.
class NormalizedEnumerator {
 public:
  NormalizedEnumerator(const LauschModule& M, long cap) : M_(M), cap_(cap) {
    const auto& S = *M_.S;
    n_ = S.n;
    val_.assign(n_ * n_, -1);
    for (int s = 0; s < n_; ++s)
      for (int t = 0; t < n_; ++t) {
        int e = M_.pair_support(s, t);
        bool forced = M_.fibers[e].size() == 1;
        if (S.is_idempotent(s) && S.at(s, t) == t) forced = true;
        if (S.is_idempotent(t) && S.at(s, t) == s) forced = true;
        if (forced) val_[s * n_ + t] = M_.fiber_identity[e];
      }
    for (int i = 0; i < n_ * n_; ++i)
      if (val_[i] < 0) free_.push_back(i);
  }

  std::vector<std::vector<int>> run() {
    search();
    std::sort(found_.begin(), found_.end());
    return found_;
  }

 private:
  const LauschModule& M_;
  long cap_;
  long nodes_ = 0;
  int n_ = 0;
  std::vector<int> val_;
  std::vector<int> free_;
  std::vector<std::vector<int>> found_;

  void budget() {
    if (++nodes_ > cap_)
      fail("SizeLimitExceeded", "cocycle enumeration exceeds cap");
  }

  // Returns false on contradiction. Fills entries that are uniquely
  // determined by some triple of the cocycle identity.
  bool propagate() {
    const auto& S = *M_.S;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int s = 0; s < n_; ++s)
        for (int t = 0; t < n_; ++t)
          for (int u = 0; u < n_; ++u) {
            budget();
            int tu = S.at(t, u), st = S.at(s, t);
            int iA = t * n_ + u, iB = s * n_ + tu, iC = s * n_ + t,
                iD = st * n_ + u;
            int a = val_[iA], b = val_[iB], cv = val_[iC], d = val_[iD];
            int unknowns = (a < 0) + (b < 0) + (cv < 0) + (d < 0);
            if (unknowns == 0) {
              if (M_.kmul(M_.action(s, a), b) != M_.kmul(cv, d)) return false;
              continue;
            }
            if (unknowns != 1) continue;
            int f = M_.pair_support(st, u);  // fiber of both sides
            if (a < 0) {
              // act(s,-) must be injective on the fiber of (t,u)
              int e = M_.pair_support(t, u);
              if (!S.leq(e, S.domain_idem(s))) continue;
              int rhs = M_.kmul(M_.kmul(cv, d), M_.kstar(b));
              int cand = M_.action(S.star[s], rhs);
              if (M_.p[cand] != e || M_.action(s, cand) != rhs) return false;
              val_[iA] = cand;
              changed = true;
            } else if (b < 0) {
              int cand = M_.kmul(M_.kstar(M_.action(s, a)), M_.kmul(cv, d));
              if (M_.p[cand] != M_.pair_support(s, tu)) return false;
              val_[iB] = cand;
              changed = true;
            } else if (cv < 0) {
              if (M_.pair_support(s, t) != f) continue;  // underdetermined
              int cand = M_.kmul(M_.kmul(M_.action(s, a), b), M_.kstar(d));
              if (M_.p[cand] != f) return false;
              val_[iC] = cand;
              changed = true;
            } else {
              int cand = M_.kmul(M_.kstar(cv), M_.kmul(M_.action(s, a), b));
              if (M_.p[cand] != f) return false;
              val_[iD] = cand;
              changed = true;
            }
          }
    }
    return true;
  }

  void search() {
    auto saved = val_;
    if (!propagate()) {
      val_ = saved;
      return;
    }
    int entry = -1;
    for (int i : free_)
      if (val_[i] < 0) {
        entry = i;
        break;
      }
    if (entry < 0) {
      auto check = validate_cocycle(M_, val_);
      if (check.valid && is_normalized(M_, val_)) found_.push_back(val_);
      val_ = saved;
      return;
    }
    int e = M_.pair_support(entry / n_, entry % n_);
    auto branch_point = val_;
    for (int k : M_.fibers[e]) {
      val_ = branch_point;
      val_[entry] = k;
      search();
    }
    val_ = saved;
  }
};

std::vector<std::vector<int>> enumerate_z2_oracle(const LauschModule& M,
                                                  long cap) {
  const auto& S = *M.S;
  std::vector<std::vector<int>> domains(S.n * S.n);
  for (int s = 0; s < S.n; ++s)
    for (int t = 0; t < S.n; ++t)
      domains[s * S.n + t] = M.fibers[M.pair_support(s, t)];
  std::vector<std::vector<int>> out;
  odometer(domains, cap, [&](const std::vector<int>& table) {
    if (validate_cocycle(M, table).valid) out.push_back(table);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::vector<int>> coboundary_set(const LauschModule& M,
                                          bool idempotents_trivial, long cap) {
  auto domains = cochain_domains(M, idempotents_trivial);
  std::set<std::vector<int>> out;
  odometer(domains, cap, [&](const std::vector<int>& vals) {
    out.insert(coboundary(M, Cochain{vals}).table);
  });
  return out;
}

std::vector<long> divisors(long n) {
  std::vector<long> out;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

// Finite abelian group type from order statistics: the counts of
// solutions of x^d = 1 determine the invariant factors.
std::string abelian_type(const std::vector<std::vector<int>>& table,
                         int identity) {
  const long n = static_cast<long>(table.size());
  if (n == 1) return "trivial";
  auto powmod = [&](int x, long e) {
    int acc = identity;
    for (long i = 0; i < e; ++i) acc = table[acc][x];
    return acc;
  };
  auto divs = divisors(n);
  std::map<long, long> stat;
  for (long d : divs) {
    long c = 0;
    for (int x = 0; x < n; ++x)
      if (powmod(x, d) == identity) ++c;
    stat[d] = c;
  }

  // candidate elementary-divisor multisets, built per prime
  std::vector<std::pair<long, int>> fact;
  {
    long m = n;
    for (long p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        int e = 0;
        while (m % p == 0) { m /= p; ++e; }
        fact.push_back({p, e});
      }
    if (m > 1) fact.push_back({m, 1});
  }
  std::vector<std::vector<std::vector<long>>> per_prime;  // prime -> partitions -> divisors
  for (auto [p, e] : fact) {
    std::vector<std::vector<long>> parts;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rem, int maxpart) -> void {
      if (rem == 0) {
        std::vector<long> ds;
        for (int x : cur) {
          long q = 1;
          for (int i = 0; i < x; ++i) q *= p;
          ds.push_back(q);
        }
        parts.push_back(ds);
        return;
      }
      for (int x = std::min(rem, maxpart); x >= 1; --x) {
        cur.push_back(x);
        self(self, rem - x, x);
        cur.pop_back();
      }
    };
    rec(rec, e, e);
    per_prime.push_back(parts);
  }
  // combine choices across primes; compare order statistics
  std::vector<long> chosen;
  std::vector<long> answer;
  auto match = [&](const std::vector<long>& eds) {
    for (long d : divs) {
      long c = 1;
      for (long q : eds) c *= std::gcd(d, q);
      if (c != stat[d]) return false;
    }
    return true;
  };
  auto rec2 = [&](auto&& self, std::size_t i) -> bool {
    if (i == per_prime.size()) {
      if (match(chosen)) {
        answer = chosen;
        return true;
      }
      return false;
    }
    for (const auto& ds : per_prime[i]) {
      auto save = chosen;
      chosen.insert(chosen.end(), ds.begin(), ds.end());
      if (self(self, i + 1)) return true;
      chosen = save;
    }
    return false;
  };
  if (!rec2(rec2, 0)) return "unidentified";

  // elementary divisors -> invariant factors d1 | d2 | ...
  std::map<long, std::vector<long>> by_prime;
  for (long q : answer) {
    long p = 2;
    while (q % p != 0) ++p;
    by_prime[p].push_back(q);
  }
  std::size_t rows = 0;
  for (auto& [p, qs] : by_prime) {
    std::sort(qs.rbegin(), qs.rend());
    rows = std::max(rows, qs.size());
  }
  std::vector<long> inv(rows, 1);
  for (auto& [p, qs] : by_prime)
    for (std::size_t i = 0; i < qs.size(); ++i) inv[i] *= qs[i];
  std::sort(inv.begin(), inv.end());
  std::string out;
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (i) out += " x ";
    out += "Z/" + std::to_string(inv[i]);
  }
  return out;
}

}  // namespace

H2Report h2(const LauschModule& M, long cap, bool use_pruning) {
  H2Report rep;
  rep.pruned = use_pruning;

  std::vector<std::vector<int>> z2_norm;
  std::set<std::vector<int>> b2_full = coboundary_set(M, false, cap);
  std::set<std::vector<int>> b2_norm = coboundary_set(M, true, cap);

  if (use_pruning) {
    z2_norm = NormalizedEnumerator(M, cap).run();
    rep.z2_normalized = static_cast<long>(z2_norm.size());
    rep.b2_normalized = static_cast<long>(b2_norm.size());
    rep.b2_total = static_cast<long>(b2_full.size());
    if (rep.z2_normalized % rep.b2_normalized != 0)
      fail("InconsistentVerdict", "B2 does not divide Z2");
    rep.z2_total = rep.z2_normalized / rep.b2_normalized * rep.b2_total;
  } else {
    auto z2_all = enumerate_z2_oracle(M, cap);
    rep.z2_total = static_cast<long>(z2_all.size());
    rep.b2_total = static_cast<long>(b2_full.size());
    for (const auto& t : z2_all)
      if (is_normalized(M, t)) z2_norm.push_back(t);
    rep.z2_normalized = static_cast<long>(z2_norm.size());
    rep.b2_normalized = static_cast<long>(b2_norm.size());
  }

  // cosets of the normalized coboundaries inside the normalized cocycles
  std::vector<std::vector<int>> reps;
  std::vector<int> class_of(z2_norm.size(), -1);
  for (std::size_t i = 0; i < z2_norm.size(); ++i) {
    if (class_of[i] >= 0) continue;
    int cls = static_cast<int>(reps.size());
    reps.push_back(z2_norm[i]);  // z2_norm sorted: first hit is lex-least
    TwoCocycle ci{z2_norm[i], true};
    for (std::size_t j = i; j < z2_norm.size(); ++j) {
      if (class_of[j] >= 0) continue;
      TwoCocycle cj{z2_norm[j], true};
      auto diff = cocycle_product(M, cj, cocycle_star(M, ci));
      if (b2_norm.count(diff.table)) class_of[j] = cls;
    }
  }
  rep.h2_order = static_cast<long>(reps.size());
  if (rep.b2_normalized * rep.h2_order != rep.z2_normalized)
    fail("InconsistentVerdict", "class count disagrees with |Z2|/|B2|");

  auto find_class = [&](const std::vector<int>& table) {
    TwoCocycle c{table, true};
    for (std::size_t k = 0; k < reps.size(); ++k) {
      auto diff = cocycle_product(M, c, cocycle_star(M, TwoCocycle{reps[k], true}));
      if (b2_norm.count(diff.table)) return static_cast<int>(k);
    }
    fail("InconsistentVerdict", "product left the class set");
  };

  // group structure of H2 under pointwise product
  int ident = find_class(trivial_cocycle(M).table);
  std::vector<std::vector<int>> gtable(reps.size(),
                                       std::vector<int>(reps.size(), -1));
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j) {
      auto prod = cocycle_product(M, TwoCocycle{reps[i], true},
                                  TwoCocycle{reps[j], true});
      gtable[i][j] = find_class(prod.table);
    }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    long ord = 1;
    int acc = gtable[ident][static_cast<int>(i)];
    while (acc != ident) {
      acc = gtable[acc][static_cast<int>(i)];
      ++ord;
    }
    rep.class_orders.push_back(ord);
  }
  rep.group_structure = abelian_type(gtable, ident);

  for (auto& t : reps)
    rep.representatives.push_back(TwoCocycle{std::move(t), true});
  return rep;
}

std::vector<int> canonical_section(const SemigroupHom& phi) {
  if (!phi.flags.surjective)
    fail("Precondition", "section needs a surjective hom");
  const auto& T = *phi.source;
  const auto& S = *phi.target;
  std::vector<int> j(S.n, -1);
  for (int t = 0; t < T.n; ++t) {
    int s = phi.map[t];
    if (S.is_idempotent(s)) {
      if (T.is_idempotent(t)) j[s] = t;  // unique idempotent preimage
    } else if (j[s] < 0) {
      j[s] = t;
    }
  }
  for (int s = 0; s < S.n; ++s)
    if (j[s] < 0) fail("InconsistentVerdict", "no preimage found", {s});
  return j;
}

std::vector<std::vector<int>> enumerate_sections(const SemigroupHom& phi,
                                                 bool idempotent_preserving,
                                                 long cap) {
  const auto& T = *phi.source;
  const auto& S = *phi.target;
  std::vector<std::vector<int>> domains(S.n);
  for (int t = 0; t < T.n; ++t) {
    int s = phi.map[t];
    if (idempotent_preserving && S.is_idempotent(s) && !T.is_idempotent(t))
      continue;
    domains[s].push_back(t);
  }
  std::vector<std::vector<int>> out;
  odometer(domains, cap,
           [&](const std::vector<int>& j) { out.push_back(j); });
  return out;
}

LauschModule module_from_extension(const SemigroupHom& iota,
                                   const SemigroupHom& phi,
                                   const std::vector<int>* section) {
  const auto& K = *iota.source;
  const auto& T = *phi.source;
  const auto& S = *phi.target;

  for (int a = 0; a < K.n; ++a)
    for (int b = 0; b < K.n; ++b)
      if (K.at(a, b) != K.at(b, a))
        fail("NotAbelian", "extension kernel is not commutative", {a, b});
  if (!iota.flags.is_hom || !iota.flags.injective ||
      !iota.flags.idempotent_bijective || !phi.flags.is_hom ||
      !phi.flags.surjective || !phi.flags.idempotent_bijective)
    fail("Precondition", "not an extension");

  std::vector<int> img_index(T.n, -1);
  for (int k = 0; k < K.n; ++k) img_index[iota.map[k]] = k;

  std::vector<int> p(K.n);
  for (int k = 0; k < K.n; ++k) p[k] = phi.map[iota.map[k]];

  auto build_act = [&](const std::vector<int>& j) {
    std::vector<int> act(S.n * K.n, -1);
    for (int s = 0; s < S.n; ++s)
      for (int k = 0; k < K.n; ++k) {
        int t = T.at(T.at(j[s], iota.map[k]), T.star[j[s]]);
        int kk = img_index[t];
        if (kk < 0)
          fail("InconsistentVerdict", "conjugation left the kernel", {s, k});
        act[s * K.n + k] = kk;
      }
    return act;
  };

  std::vector<int> j0 = section ? *section : canonical_section(phi);
  for (int s = 0; s < S.n; ++s)
    if (phi.map[j0[s]] != s) fail("BadSection", "not a section", {s});
  auto act = build_act(j0);

  // independence of the section: rebuild with the greatest preimages
  std::vector<int> j1(S.n, -1);
  for (int t = 0; t < T.n; ++t) j1[phi.map[t]] = t;
  if (build_act(j1) != act)
    fail("InconsistentVerdict", "module action depends on the section");

  return validate_module(phi.target, iota.source, std::move(p),
                         std::move(act));
}

TwoCocycle cocycle_from_any_section(const LauschModule& M,
                                    const SemigroupHom& iota,
                                    const SemigroupHom& phi,
                                    const std::vector<int>& j) {
  const auto& T = *phi.source;
  const auto& S = *phi.target;
  for (int s = 0; s < S.n; ++s)
    if (phi.map[j[s]] != s) fail("BadSection", "not a section of phi", {s});

  std::vector<int> img_index(T.n, -1);
  for (int k = 0; k < iota.source->n; ++k) img_index[iota.map[k]] = k;

  TwoCocycle c;
  c.table.assign(S.n * S.n, -1);
  for (int s = 0; s < S.n; ++s)
    for (int t = 0; t < S.n; ++t) {
      int x = T.at(T.at(j[s], j[t]), T.star[j[S.at(s, t)]]);
      int k = img_index[x];
      if (k < 0)
        fail("InconsistentVerdict", "section product left the kernel", {s, t});
      c.table[s * S.n + t] = k;
    }
  auto check = validate_cocycle(M, c.table);
  if (!check.valid)
    fail("InconsistentVerdict", "section did not produce a cocycle");
  c.normalized = is_normalized(M, c.table);
  return c;
}

TwoCocycle cocycle_from_extension(const LauschModule& M,
                                  const SemigroupHom& iota,
                                  const SemigroupHom& phi,
                                  const std::vector<int>& j) {
  const auto& T = *phi.source;
  const auto& S = *phi.target;
  for (int e : S.idempotents)
    if (!T.is_idempotent(j[e]))
      fail("BadSection", "section must preserve idempotents", {e});
  auto c = cocycle_from_any_section(M, iota, phi, j);
  if (!c.normalized)
    fail("InconsistentVerdict",
         "idempotent-preserving section gave an unnormalized cocycle");
  return c;
}

int BuiltExtension::index_of(int k, int s) const {
  return pair_index[k * static_cast<int>(phi.target->n) + s];
}

BuiltExtension extension_from_cocycle(const LauschModule& M,
                                      const TwoCocycle& c) {
  const auto& S = *M.S;
  const auto& K = *M.K;
  auto check = validate_cocycle(M, c.table);
  if (!check.valid || !is_normalized(M, c.table))
    fail("InvalidCocycle", "need a valid normalized cocycle");

  BuiltExtension E;
  E.pair_index.assign(K.n * S.n, -1);
  for (int k = 0; k < K.n; ++k)
    for (int s = 0; s < S.n; ++s)
      if (M.p[k] == S.range_idem(s)) {
        E.pair_index[k * S.n + s] = static_cast<int>(E.pairs.size());
        E.pairs.push_back({k, s});
      }
  const int m = static_cast<int>(E.pairs.size());

  std::vector<int> mult(m * m, -1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      auto [k1, s1] = E.pairs[i];
      auto [k2, s2] = E.pairs[j];
      int kk = M.kmul(M.kmul(k1, M.action(s1, k2)),
                      c.table[s1 * S.n + s2]);
      int ss = S.at(s1, s2);
      int idx = E.pair_index[kk * S.n + ss];
      if (idx < 0)
        fail("InvalidCocycle", "product left the pair set", {i, j});
      mult[i * m + j] = idx;
    }

  auto T = std::make_shared<const FiniteInverseSemigroup>(
      validate_inverse_semigroup(m, std::move(mult)));

  // stated inverse formula must agree with the derived involution
  for (int i = 0; i < m; ++i) {
    auto [k, s] = E.pairs[i];
    int kk = M.kmul(M.action(S.star[s], M.kstar(k)),
                    M.kstar(c.table[s * S.n + S.star[s]]));
    int idx = E.pair_index[kk * S.n + S.star[s]];
    if (idx < 0 || T->star[i] != idx)
      fail("InconsistentVerdict", "inverse formula mismatch", {i});
  }

  std::vector<int> iota_map(K.n), phi_map(m);
  for (int k = 0; k < K.n; ++k) iota_map[k] = E.pair_index[k * S.n + M.p[k]];
  for (int i = 0; i < m; ++i) phi_map[i] = E.pairs[i].second;
  E.T = T;
  E.iota = make_hom(M.K, T, std::move(iota_map));
  E.phi = make_hom(T, M.S, std::move(phi_map));

  auto report = check_extension_semigroups(E.iota, E.phi);
  if (!report.passed() || !report.abelian)
    fail("InconsistentVerdict", "built extension fails the extension checks");

  // when S and K are Boolean the middle term must be Boolean as well
  bool boolean_ends = true;
  try {
    is_boolean(S);
    is_boolean(K);
  } catch (const ValidationError&) {
    boolean_ends = false;
  }
  if (boolean_ends) is_boolean(*T);  // throws on failure
  return E;
}

std::optional<std::vector<int>> extensions_equivalent(
    const SemigroupHom& iota1, const SemigroupHom& phi1,
    const SemigroupHom& iota2, const SemigroupHom& phi2) {
  const auto& T1 = *phi1.source;
  const auto& T2 = *phi2.source;
  if (iota1.source->n != iota2.source->n ||
      !(iota1.source->mult == iota2.source->mult) ||
      !(phi1.target->mult == phi2.target->mult))
    fail("Precondition", "extensions have different ends");
  if (T1.n != T2.n) return std::nullopt;

  std::vector<int> psi(T1.n, -1);
  std::vector<char> used(T2.n, 0);
  // commuting with the kernel legs forces psi on the image of iota1
  for (int k = 0; k < iota1.source->n; ++k) {
    int a = iota1.map[k], b = iota2.map[k];
    if (psi[a] >= 0 && psi[a] != b) return std::nullopt;
    if (psi[a] < 0) {
      psi[a] = b;
      used[b] = 1;
    }
  }

  std::vector<int> order;
  for (int t = 0; t < T1.n; ++t)
    if (psi[t] < 0) order.push_back(t);

  auto partial_ok = [&](int t) {
    for (int x = 0; x < T1.n; ++x) {
      if (psi[x] < 0) continue;
      int xt = T1.at(x, t), tx = T1.at(t, x);
      if (psi[xt] >= 0 && T2.at(psi[x], psi[t]) != psi[xt]) return false;
      if (psi[tx] >= 0 && T2.at(psi[t], psi[x]) != psi[tx]) return false;
    }
    if (psi[T1.at(t, t)] >= 0 && T2.at(psi[t], psi[t]) != psi[T1.at(t, t)])
      return false;
    return true;
  };

  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == order.size()) {
      for (int x = 0; x < T1.n; ++x)
        for (int y = 0; y < T1.n; ++y)
          if (T2.at(psi[x], psi[y]) != psi[T1.at(x, y)]) return false;
      return true;
    }
    int t = order[i];
    for (int cand = 0; cand < T2.n; ++cand) {
      if (used[cand] || phi2.map[cand] != phi1.map[t]) continue;
      psi[t] = cand;
      used[cand] = 1;
      if (partial_ok(t) && self(self, i + 1)) return true;
      used[cand] = 0;
      psi[t] = -1;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return psi;
}

}  // namespace ample
