#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ample/duality.hpp"
#include "ample/linalg.hpp"
#include "ample/scalar.hpp"
#include "ample/twist.hpp"

namespace ample {

/// The function ring R of maps G0 -> field with the bisection action:
/// alpha_U moves the value at dom(g) to ran(g) for the arrow g of U.
/// R-elements are coordinate vectors over the unit set.
struct FunctionRingAction {
  GroupoidPtr G;
  FieldDesc field;
  BisectionSemigroup S;       // Gamma_c(G)
  int n_units = 0;
  std::vector<int> unit_pos;  // unit arrow -> index, -1 otherwise
  std::vector<int> alpha;     // s * n_units + ui -> target unit index or -1

  Vec apply(int s, const Vec& r) const;     // alpha_s(r)
  Vec indicator(int e) const;               // 1_e for an idempotent element
  Vec indicator_of(const Bits& units) const;
};

/// Tabulates alpha on the indicator basis and certifies that it is a
/// zero-preserving non-degenerate action by proper endomorphisms.
FunctionRingAction build_action(GroupoidPtr G, const FieldDesc& field,
                                long cap = 1 << 20);

/// The unit sheaf of the function ring: unit-valued maps supported on
/// idempotents, materialized as tilde_A over the full unit group of the
/// field (prime fields only; the rational unit group is infinite).
struct UnitSheaf {
  AbelianGroupPtr units_group;
  std::vector<Scalar> embedding;  // group element -> field unit
  TildeA tilde;
  LauschModule M;
};

UnitSheaf unit_sheaf(const FunctionRingAction& action, long cap = 1 << 20);

/// Exact crossed product: quotient of the free module over the
/// delta-basis by the order ideal, with certified ring structure.
struct CrossedProduct {
  FunctionRingAction action;
  AbelianGroupPtr A;
  std::vector<Scalar> embed;  // A -> field units
  TildeA tilde;
  LauschModule M;        // tilde_A module over Gamma_c(G)
  TwoCocycle cocycle;    // normalized, values in tilde
  std::vector<Vec> chat;  // (s,t) -> embedded cocycle value, dim n_units

  int nS = 0;
  int ambient_dim = 0;  // nS * n_units
  VectorSpaceQuotient Q;
  FiniteAlgebra alg;  // product in quotient coordinates (free columns)

  // canonical basis indexed by base arrows: e_g = 1_{ran g} delta_{{g}}
  std::vector<Vec> arrow_basis_coords;  // g -> quotient coordinates
  FiniteAlgebra arrow_alg;              // structure constants on {e_g}

  int ambient_index(int s, int ui) const { return s * action.n_units + ui; }
  Vec ambient_of(int s, const Vec& r) const;  // r delta_s
  const Vec& embedded_cocycle(int s, int t) const { return chat[s * nS + t]; }
  int dim() const { return Q.quotient_dim(); }
};

CrossedProduct build_crossed_product(FunctionRingAction action,
                                     AbelianGroupPtr A,
                                     std::vector<Scalar> embed, TildeA tilde,
                                     LauschModule M, TwoCocycle c,
                                     long ambient_cap = 20000);

/// Everything needed to compare a twist's crossed product with its
/// Steinberg algebra: the classifying data and the shared section.
struct TwistedRingSetup {
  TwistExtension tw;
  TwistClass cls;
  std::vector<Scalar> embed;
  CrossedProduct cp;
};

/// Builds the crossed product of a twist over the given field; the
/// embedding A -> field units is searched when not supplied.
TwistedRingSetup build_crossed_from_twist(
    const TwistExtension& tw, const FieldDesc& field,
    const std::vector<Scalar>* embed = nullptr, long cap = 1 << 20);

struct NormalFormTerm {
  Vec coeff;    // function with supp = ran(label)
  int element;  // bisection element of Gamma_c(G)
};

/// Rewrites an ambient element as a sum over pairwise disjoint non-empty
/// bisections with coefficients supported exactly on their ranges; equal
/// to the input modulo the ideal.
std::vector<NormalFormTerm> normal_form(const CrossedProduct& cp,
                                        const Vec& ambient);

/// The conditional expectation onto the function ring:
/// tau(r delta_s + I) = r c(s, e(s)) with e(s) the maximum idempotent
/// below s (the unit part of the bisection).
Vec tau(const CrossedProduct& cp, const Vec& ambient);

/// Diagonal embedding rho(r) = sum r_x delta_{x}; ambient representative.
Vec rho_embed(const CrossedProduct& cp, const Vec& r);

struct CovariantReport {
  bool covariant = true;
  std::string axiom;  // first failing axiom, "C1".."C4"
  std::vector<int> witness;
};

/// Checks (C1)-(C4) for a representation in a structure-constant algebra:
/// rho on the indicator basis and psi on the bisection elements.
CovariantReport check_covariant(const CrossedProduct& cp,
                                const FiniteAlgebra& target,
                                const std::vector<Vec>& rho_basis,
                                const std::vector<Vec>& psi);

/// The induced homomorphism pi(r delta_s + I) = rho(r) psi(s) of a
/// covariant representation, as a matrix on quotient coordinates;
/// verified to be a homomorphism extending (rho, psi) uniquely.
std::vector<Vec> universal_extend(const CrossedProduct& cp,
                                  const FiniteAlgebra& target,
                                  const std::vector<Vec>& rho_basis,
                                  const std::vector<Vec>& psi);

/// Isomorphism between crossed products of cohomologous cocycles
/// (c2 = c1 * delta F), as a matrix on quotient coordinates.
std::vector<Vec> same_crossed_iso(const CrossedProduct& cp1,
                                  const CrossedProduct& cp2, const Cochain& F);

/// Structure constants of the untwisted convolution algebra of G on the
/// arrow basis: e_g e_h = e_{gh} when composable, 0 otherwise.
FiniteAlgebra groupoid_convolution_algebra(const FiniteGroupoid& G,
                                           const FieldDesc& field);

}  // namespace ample
