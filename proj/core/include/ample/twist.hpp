#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ample/cohomology.hpp"
#include "ample/duality.hpp"
#include "ample/groupoid.hpp"

namespace ample {

struct FiniteAbelianGroup {
  int n = 0;
  std::vector<int> mult;
  int identity = -1;
  std::vector<int> inverse;

  int size() const { return n; }
  int at(int a, int b) const { return mult[a * n + b]; }
};

using AbelianGroupPtr = std::shared_ptr<const FiniteAbelianGroup>;

FiniteAbelianGroup validate_abelian_group(int n, std::vector<int> mult);

/// The group bundle A x G0: one loop per group element over each unit.
/// Arrow encoding: a * n_units + ui.
GroupoidPtr make_bundle(const FiniteAbelianGroup& A, int n_units);

/// Pointwise-product inverse semigroup of maps G0 -> A u {0}, together
/// with the labelling isomorphism gamma onto Gamma_c(A x G0).
struct TildeA {
  AbelianGroupPtr A;
  int n_units = 0;
  SemigroupPtr semigroup;
  GroupoidPtr bundle;
  BisectionSemigroup bundle_bisections;
  SemigroupHom gamma;  // semigroup -> Gamma_c(bundle), bijective

  /// Mixed-radix encoding: digit 0 is the zero value, digit a+1 is a.
  int encode(const std::vector<int>& values) const;  // values: ui -> -1 or a
  std::vector<int> decode(int element) const;
};

TildeA tilde_A(AbelianGroupPtr A, int n_units, long cap = 1 << 20);

/// The canonical module structure on tilde_A over Gamma_c(G):
/// p(f) = supp(f), (Uf)(x) = f(dom of the U-arrow into x).
LauschModule module_tilde_A(const BisectionSemigroup& SG, const TildeA& tilde);

/// Central extension A x G0 -> Sigma -> G with its derived free A-action.
struct TwistExtension {
  AbelianGroupPtr A;
  GroupoidPtr G;
  GroupoidPtr Sigma;
  GroupoidPtr bundle;
  GroupoidFunctor iota;  // bundle -> Sigma
  GroupoidFunctor phi;   // Sigma -> G
  std::vector<int> a_action;  // a * |Sigma| + s -> a.s

  int act(int a, int s) const { return a_action[a * Sigma->n + s]; }
};

/// Validates the exact-sequence structure (and, when required, the
/// centrality and action laws). Non-central data is representable with
/// require_central=false so that is_central stays a genuine test.
TwistExtension make_twist_extension(AbelianGroupPtr A, GroupoidPtr G,
                                    GroupoidPtr Sigma,
                                    std::vector<int> iota_map,
                                    std::vector<int> phi_map,
                                    bool require_central = true,
                                    long cap = 1 << 20);

/// Direct centrality test, cross-checked against the module-theoretic
/// criterion (gamma is equivariant iff the extension is central).
bool is_central(const TwistExtension& tw, long cap = 1 << 20);

/// Twist built from a normalized groupoid 2-cocycle: Sigma = A x G with
/// (a,g)(b,h) = (ab sigma(g,h), gh). sigma is a full table over arrow
/// pairs, ignored at non-composable ones.
TwistExtension twist_from_groupoid_cocycle(AbelianGroupPtr A, GroupoidPtr G,
                                           const std::vector<int>& sigma);

TwistExtension trivial_twist(AbelianGroupPtr A, GroupoidPtr G);

/// The classifying data of a twist: its Lausch cocycle over the tilde_A
/// module, along a chosen idempotent-preserving section.
struct TwistClass {
  BisectionSemigroup SG;      // Gamma_c(G)
  BisectionSemigroup SSigma;  // Gamma_c(Sigma)
  TildeA tilde;
  LauschModule M;             // module_tilde_A over SG
  SemigroupHom gamma_iota;    // Gamma_c(iota), rebased on tilde's bundle copy
  SemigroupHom gamma_phi;
  std::vector<int> section;   // idempotent-preserving section of gamma_phi
  TwoCocycle cocycle;         // normalized
};

TwistClass twist_class_cocycle(const TwistExtension& tw, long cap = 1 << 20);

/// Baer sum: pullback along the two projections modulo the antidiagonal
/// A-action, with canonical orbit representatives.
TwistExtension baer_sum(const TwistExtension& T1, const TwistExtension& T2);

/// Isomorphism Sigma -> Sigma' commuting with both legs, if any; found by
/// exhaustive search over A-equivariant lifts.
std::optional<GroupoidFunctor> twists_equivalent(const TwistExtension& T1,
                                                 const TwistExtension& T2);

/// Realizes a Lausch cohomology class as a twist: the cocycle extension
/// is transported back to groupoids along the germ functors and the
/// natural isomorphisms.
TwistExtension realize_class(GroupoidPtr G, const BisectionSemigroup& SG,
                             const TildeA& tilde, const LauschModule& M,
                             const TwoCocycle& c, long cap = 1 << 20);

}  // namespace ample
