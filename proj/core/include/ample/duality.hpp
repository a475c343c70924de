#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ample/bits.hpp"
#include "ample/groupoid.hpp"
#include "ample/semigroup.hpp"

namespace ample {

using BooleanPtr = std::shared_ptr<const BooleanStructure>;

/// The Boolean inverse semigroup of all bisections of a finite groupoid,
/// with each element labelled by its arrow set.
struct BisectionSemigroup {
  GroupoidPtr groupoid;
  BooleanPtr boolean;
  std::vector<Bits> labels;  // element -> arrow subset, lexicographic order
  std::unordered_map<Bits, int, BitsHash> label_index;

  SemigroupPtr semigroup() const {
    return SemigroupPtr(boolean, &boolean->S);
  }
  int index_of(const Bits& U) const {
    auto it = label_index.find(U);
    return it == label_index.end() ? -1 : it->second;
  }
  int size() const { return boolean->S.n; }
};

/// Enumerates bisections (cap-guarded), builds the set-product table and
/// certifies the Boolean inverse semigroup structure.
BisectionSemigroup gamma_c(GroupoidPtr G, long cap = 1 << 20);

/// Image map U -> F(U) of an iso-unital functor; the result is an
/// idempotent-bijective homomorphism.
SemigroupHom gamma_c_on_functor(const GroupoidFunctor& F,
                                const BisectionSemigroup& SG,
                                const BisectionSemigroup& SH);

/// Stone spectrum of the (finite) Boolean algebra of idempotents.
/// Characters are realized by atoms: chi_a(e) = 1 iff a <= e.
struct StoneSpace {
  BooleanPtr base;
  std::vector<int> points;  // atom elements of the base semigroup
  std::vector<Bits> D;      // idempotent e -> set of points with chi(e)=1
};

StoneSpace stone_spec(BooleanPtr B);

/// Groupoid of germs of a Boolean inverse semigroup acting on its Stone
/// space. Arrows are classes of pairs (s, atom a <= s*s); two pairs with
/// the same atom are identified when a common lower bound covers a.
struct GermGroupoid {
  BooleanPtr base;
  GroupoidPtr groupoid;
  std::vector<int> atoms;         // atom element indices
  std::vector<int> atom_pos;      // element -> index into atoms, or -1
  std::vector<int> germ_of;       // s * natoms + ai -> arrow, or -1
  std::vector<Bits> D_s;          // element s -> bisection {[s,chi]}
  std::vector<int> unit_of_atom;  // atom index -> unit arrow

  int natoms() const { return static_cast<int>(atoms.size()); }
  int germ(int s, int ai) const { return germ_of[s * natoms() + ai]; }
};

GermGroupoid germ_groupoid(BooleanPtr B);

/// Induced functor on germ groupoids of an idempotent-bijective hom;
/// characters transported along the inverse idempotent bijection.
GroupoidFunctor germ_on_hom(const SemigroupHom& h, const GermGroupoid& GS,
                            const GermGroupoid& GT);

/// Natural isomorphism G -> Germ(Gamma_c(G)), h -> [U, chi_dom(h)].
GroupoidFunctor eta(GroupoidPtr G, const BisectionSemigroup& SG,
                    const GermGroupoid& GSG);

/// Natural isomorphism S -> Gamma_c(Germ(S)), s -> D(s).
SemigroupHom epsilon(BooleanPtr B, const GermGroupoid& GB,
                     const BisectionSemigroup& SGB);

struct DualityRoundTrip {
  BisectionSemigroup bisections;  // Gamma_c(G)
  GermGroupoid germs;             // Germ(Gamma_c(G))
  GroupoidFunctor iso;            // eta
};
DualityRoundTrip eta_roundtrip(GroupoidPtr G, long cap = 1 << 20);

struct CoDualityRoundTrip {
  GermGroupoid germs;             // Germ(S)
  BisectionSemigroup bisections;  // Gamma_c(Germ(S))
  SemigroupHom iso;               // epsilon
};
CoDualityRoundTrip epsilon_roundtrip(BooleanPtr B, long cap = 1 << 20);

struct ConditionReport {
  std::string name;
  bool pass = false;
  std::vector<int> witness;
};

struct ExtensionReport {
  std::vector<ConditionReport> conditions;
  bool abelian = false;
  bool passed() const {
    for (const auto& c : conditions)
      if (!c.pass) return false;
    return true;
  }
};

/// K -> T -> S: iota injective idempotent-bijective, phi surjective
/// idempotent-bijective, image(iota) = preimage of the idempotents.
ExtensionReport check_extension_semigroups(const SemigroupHom& iota,
                                           const SemigroupHom& phi);

/// Groupoid mirror: phi^{-1}(units) = image(iota).
ExtensionReport check_extension_groupoids(const GroupoidFunctor& iota,
                                          const GroupoidFunctor& phi);

struct TransferredSemigroupExtension {
  BisectionSemigroup K, T, S;
  SemigroupHom iota, phi;
  ExtensionReport report;
};
/// Gamma_c applied to a groupoid extension.
TransferredSemigroupExtension gamma_c_extension(const GroupoidFunctor& iota,
                                                const GroupoidFunctor& phi,
                                                long cap = 1 << 20);

struct TransferredGroupoidExtension {
  GermGroupoid K, T, S;
  GroupoidFunctor iota, phi;
  ExtensionReport report;
};
/// Germ functor applied to a Boolean semigroup extension.
TransferredGroupoidExtension germ_extension(const SemigroupHom& iota,
                                            const SemigroupHom& phi);

/// Maximum idempotent below s in the natural order, when it exists.
std::optional<int> max_idempotent_below(const FiniteInverseSemigroup& S,
                                        int s);

/// Finite form of the section correspondence: a unit-preserving section
/// of a surjective iso-unital functor exists iff the bisection semigroup
/// map has an order/idempotent-preserving section. Returns the shared
/// verdict; disagreement raises InconsistentVerdict.
bool oip_section_iff_unit_section(const GroupoidFunctor& phi,
                                  long cap = 1 << 20);

}  // namespace ample
