#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ample/semigroup.hpp"

namespace ample {

/// Module over an inverse semigroup: a commutative inverse semigroup K,
/// an idempotent-bijective p: K -> E(S) and a compatible S-action. Each
/// fiber p^{-1}(e) is an abelian group whose identity is the unique
/// idempotent over e.
struct LauschModule {
  SemigroupPtr S;
  SemigroupPtr K;
  std::vector<int> p;    // K -> E(S)
  std::vector<int> act;  // s * |K| + k -> K

  std::vector<int> fiber_identity;        // e -> idempotent of K over e, else -1
  std::vector<std::vector<int>> fibers;   // e -> sorted fiber

  int action(int s, int k) const { return act[s * K->n + k]; }
  int kmul(int a, int b) const { return K->at(a, b); }
  int kstar(int a) const { return K->star[a]; }
  /// Idempotent of S under the cocycle entry c(s,t): s t t* s*.
  int pair_support(int s, int t) const {
    int st = S->at(s, t);
    return S->range_idem(st);
  }
};

LauschModule validate_module(SemigroupPtr S, SemigroupPtr K,
                             std::vector<int> p, std::vector<int> act);

/// 1-cochain: F(s) in the fiber over ss*.
struct Cochain {
  std::vector<int> values;  // S-element -> K-element
};

struct TwoCocycle {
  std::vector<int> table;  // s * |S| + t -> K-element
  bool normalized = false;

  int at(int s, int t, int n) const { return table[s * n + t]; }
};

struct CocycleCheck {
  bool valid = false;
  std::vector<std::array<int, 2>> fiber_violations;   // (s,t)
  std::vector<std::array<int, 3>> cocycle_violations; // (s,t,u)
};

CocycleCheck validate_cocycle(const LauschModule& M,
                              const std::vector<int>& table);

TwoCocycle trivial_cocycle(const LauschModule& M);
Cochain identity_cochain(const LauschModule& M);

/// delta F (s,t) = F(s) (s F(t)) F(st)*; always a valid cocycle.
TwoCocycle coboundary(const LauschModule& M, const Cochain& F);

TwoCocycle cocycle_product(const LauschModule& M, const TwoCocycle& a,
                           const TwoCocycle& b);
TwoCocycle cocycle_star(const LauschModule& M, const TwoCocycle& a);

/// c' = c * delta F with F(s) = c(ss*,ss*)*; c' is normalized and
/// cohomologous to c by construction.
std::pair<TwoCocycle, Cochain> normalize_cocycle(const LauschModule& M,
                                                 const TwoCocycle& c);

/// Exhaustive search for F with c2 = c1 * delta F.
std::optional<Cochain> cohomologous(const LauschModule& M,
                                    const TwoCocycle& c1, const TwoCocycle& c2,
                                    long cap = 10'000'000);

struct NormalizedIdentityReport {
  struct Item {
    int number = 0;
    bool pass = false;
    std::vector<int> witness;
  };
  std::vector<Item> items;  // the eleven identities, in order
  bool all_pass = true;
};

/// Verifies the eleven consequences of normalization over all applicable
/// tuples; any failure marks an invalid input (they are theorems).
NormalizedIdentityReport check_normalized_identities(const LauschModule& M,
                                                     const TwoCocycle& c);

struct H2Report {
  long z2_normalized = 0;
  long b2_normalized = 0;
  long z2_total = 0;
  long b2_total = 0;
  long h2_order = 0;
  std::vector<TwoCocycle> representatives;  // normalized, lex-least per class
  std::vector<long> class_orders;
  std::string group_structure;  // "trivial", "Z/2", "Z/2 x Z/4", ...
  bool pruned = true;
};

/// Second cohomology of the module. The default path enumerates
/// normalized cocycles by constraint propagation over the forced entries;
/// the unpruned oracle path enumerates every fiber-respecting table and
/// filters, which is only feasible for very small modules. Both agree on
/// all counts.
H2Report h2(const LauschModule& M, long cap = 10'000'000,
            bool use_pruning = true);

/// ----- extensions <-> cocycles -----

/// Any set-theoretic section of a surjective hom (idempotents take their
/// unique idempotent preimage; other elements the least one).
std::vector<int> canonical_section(const SemigroupHom& phi);
/// All set-theoretic sections (cap-guarded); idempotent_preserving
/// restricts idempotents to idempotent preimages.
std::vector<std::vector<int>> enumerate_sections(const SemigroupHom& phi,
                                                 bool idempotent_preserving,
                                                 long cap = 1'000'000);

/// Conjugation module of an abelian extension; the result is verified to
/// be independent of the chosen section.
LauschModule module_from_extension(const SemigroupHom& iota,
                                   const SemigroupHom& phi,
                                   const std::vector<int>* section = nullptr);

/// Normalized cocycle of an abelian extension along an
/// idempotent-preserving section (BadSection otherwise).
TwoCocycle cocycle_from_extension(const LauschModule& M,
                                  const SemigroupHom& iota,
                                  const SemigroupHom& phi,
                                  const std::vector<int>& j);

/// Same formula along an arbitrary section; the result need not be
/// normalized.
TwoCocycle cocycle_from_any_section(const LauschModule& M,
                                    const SemigroupHom& iota,
                                    const SemigroupHom& phi,
                                    const std::vector<int>& j);

/// The extension realizing a normalized cocycle:
/// T = {(k,s) : p(k) = ss*}, (k,s)(k',s') = (k (s k') c(s,s'), ss').
struct BuiltExtension {
  SemigroupPtr T;
  SemigroupHom iota;  // K -> T
  SemigroupHom phi;   // T -> S
  std::vector<std::pair<int, int>> pairs;  // T-element -> (k, s)
  std::vector<int> pair_index;             // k * |S| + s -> T-element or -1

  int index_of(int k, int s) const;
};

BuiltExtension extension_from_cocycle(const LauschModule& M,
                                      const TwoCocycle& c);

/// Isomorphism T -> T' commuting with both legs, by exhaustive search.
std::optional<std::vector<int>> extensions_equivalent(
    const SemigroupHom& iota1, const SemigroupHom& phi1,
    const SemigroupHom& iota2, const SemigroupHom& phi2);

}  // namespace ample
