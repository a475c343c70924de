#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ample/bits.hpp"
#include "ample/error.hpp"

namespace ample {

/// Finite groupoid on arrows 0..n-1 with partial composition. Under the
/// discrete topology every finite groupoid is ample and Hausdorff, so no
/// topological data is carried.
struct FiniteGroupoid {
  int n = 0;
  std::vector<int> comp;  // n*n, -1 where undefined
  std::vector<int> inv;   // involution
  std::vector<int> dom;   // arrow -> unit arrow
  std::vector<int> ran;
  std::vector<int> units;  // sorted
  std::vector<char> is_unit;

  int at(int g, int h) const { return comp[g * n + h]; }
  bool composable(int g, int h) const { return dom[g] == ran[h]; }
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

/// Exhaustive axiom check; the declared unit set is cross-checked against
/// the derived one. Fails with BadComposability / NotAssociative /
/// BadInverse / BadUnits.
FiniteGroupoid validate_groupoid(int n, std::vector<int> comp,
                                 std::vector<int> inv, std::vector<int> dom,
                                 std::vector<int> ran,
                                 std::vector<int> declared_units);

struct FunctorFlags {
  bool is_functor = false;
  bool iso_unital = false;
  bool injective = false;
  bool surjective = false;
  std::optional<Error> violation;
};

struct GroupoidFunctor {
  GroupoidPtr source;
  GroupoidPtr target;
  std::vector<int> map;
  FunctorFlags flags;

  int operator()(int g) const { return map[g]; }
};

GroupoidFunctor make_functor(GroupoidPtr source, GroupoidPtr target,
                             std::vector<int> map);

/// Flags; for iso-unital functors injectivity is cross-checked against
/// the unit-preimage criterion.
FunctorFlags check_functor(const GroupoidFunctor& F);

GroupoidFunctor identity_functor(GroupoidPtr G);
GroupoidFunctor compose(const GroupoidFunctor& g, const GroupoidFunctor& f);
/// Inverse of a bijective functor.
GroupoidFunctor inverse_functor(const GroupoidFunctor& F);

/// True iff dom and ran are injective on U.
bool is_bisection(const FiniteGroupoid& G, const Bits& U);

/// Pointwise set product { gh : g in U, h in V, composable }.
Bits set_product(const FiniteGroupoid& G, const Bits& U, const Bits& V);
Bits set_inverse(const FiniteGroupoid& G, const Bits& U);

/// All bisections, in canonical (lexicographic Bits) order, found by a
/// subset DFS that skips supersets of non-bisections. Aborts with
/// SizeLimitExceeded once more than `cap` search nodes are visited.
std::vector<Bits> enumerate_bisections(const FiniteGroupoid& G,
                                       long cap = 1 << 20);

}  // namespace ample
