#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ample/error.hpp"

namespace ample {

/// Finite inverse semigroup on elements 0..n-1, given by its full
/// multiplication table. The involution, idempotents and the natural
/// partial order are derived (and certified) at validation time.
struct FiniteInverseSemigroup {
  int n = 0;
  std::vector<int> mult;        // n*n, row-major
  std::vector<int> star;        // unique pseudo-inverse per element
  std::vector<char> idem;       // idempotency flags
  std::vector<int> idempotents; // sorted
  std::vector<char> leq_table;  // natural partial order, n*n
  std::optional<int> zero;      // absorbing element if present

  int at(int s, int t) const { return mult[s * n + t]; }
  bool leq(int s, int t) const { return leq_table[s * n + t] != 0; }
  bool is_idempotent(int s) const { return idem[s] != 0; }
  int range_idem(int s) const { return at(s, star[s]); }   // s s*
  int domain_idem(int s) const { return at(star[s], s); }  // s* s
  bool orthogonal(int s, int t) const {
    if (!zero) return false;
    return at(s, star[t]) == *zero && at(star[t], s) == *zero;
  }
};

using SemigroupPtr = std::shared_ptr<const FiniteInverseSemigroup>;

/// Checks all inverse-semigroup axioms exhaustively.
/// Fails with NotAssociative / NoPseudoInverse / IdempotentsDontCommute,
/// carrying a witness tuple.
FiniteInverseSemigroup validate_inverse_semigroup(int n,
                                                  std::vector<int> mult);

/// Boolean inverse semigroup: idempotents form a Boolean algebra and
/// orthogonal pairs have joins. All partial tables are materialized.
struct BooleanStructure {
  FiniteInverseSemigroup S;
  std::vector<int> join_idem;   // E x E joins, -1 elsewhere
  std::vector<int> complement;  // complement[e*n+f] = e \ f when f <= e
  std::vector<int> join_orth;   // joins of orthogonal pairs, -1 elsewhere
  std::vector<int> atoms;       // atoms of E(S), sorted

  int n() const { return S.n; }
  int join_of_idempotents(int e, int f) const { return join_idem[e * S.n + f]; }
  int relative_complement(int e, int f) const { return complement[e * S.n + f]; }
  int orthogonal_join(int s, int t) const { return join_orth[s * S.n + t]; }
};

/// Decides Boolean structure by exhaustive least-upper-bound and
/// complement searches. Fails with NoZero / MissingJoin /
/// MissingComplement / NotDistributive naming the offending elements.
BooleanStructure is_boolean(const FiniteInverseSemigroup& S);

struct HomFlags {
  bool is_hom = false;
  bool idempotent_separating = false;
  bool idempotent_bijective = false;
  bool additive = false;
  bool injective = false;
  bool surjective = false;
  std::optional<Error> violation;  // set when is_hom is false
};

struct SemigroupHom {
  SemigroupPtr source;
  SemigroupPtr target;
  std::vector<int> map;
  HomFlags flags;

  int operator()(int s) const { return map[s]; }
};

/// Builds the hom and fills its flag record via check_hom.
SemigroupHom make_hom(SemigroupPtr source, SemigroupPtr target,
                      std::vector<int> map);

/// Sets every flag; the injectivity verdict is cross-checked against the
/// kernel criterion (kernel equals the idempotents) whenever the hom is
/// idempotent bijective.
HomFlags check_hom(const SemigroupHom& h);

SemigroupHom identity_hom(SemigroupPtr S);
SemigroupHom compose(const SemigroupHom& g, const SemigroupHom& f);  // g after f

/// Preimage of the target idempotents; verifies it is a normal inverse
/// subsemigroup. Requires a hom that is idempotent bijective.
std::vector<int> kernel(const SemigroupHom& h);

struct SectionSearchResult {
  std::optional<std::vector<int>> section;  // target element -> source element
  bool search_completed = false;            // exhaustion certificate
};

/// Exhaustive search for an order-preserving, idempotent-preserving
/// section of a surjective idempotent-bijective hom. A found section is
/// checked against the multiplicative characterizations j(te)=j(t)j(e)
/// and j(et)=j(e)j(t).
SectionSearchResult find_oip_section(const SemigroupHom& h);

}  // namespace ample
