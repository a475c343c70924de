#pragma once

#include <string>
#include <vector>

#include "ample/groupoid.hpp"
#include "ample/semigroup.hpp"
#include "ample/twist.hpp"

namespace ample::fixtures {

/// One unit, no other arrows.
GroupoidPtr g1();
/// The two-element group as a one-object groupoid.
GroupoidPtr g2();
/// Two isolated units.
GroupoidPtr g3();
/// Pair groupoid on two points.
GroupoidPtr g4();

/// Pair groupoid on k points (k*k arrows).
GroupoidPtr pair_groupoid(int k);
/// The cyclic group of order n as a one-object groupoid.
GroupoidPtr cyclic_groupoid(int n);
/// Disjoint union of two groupoids (arrows of b shifted after a).
GroupoidPtr disjoint_union(const GroupoidPtr& a, const GroupoidPtr& b);

AbelianGroupPtr cyclic_group(int n);

AbelianGroupPtr trivial_group();
AbelianGroupPtr z2();
AbelianGroupPtr z3();

/// {0, e, g} with g^2 = e: the bisection semigroup of g2.
SemigroupPtr s1();
/// Two-element semilattice {0, e}.
SemigroupPtr two_chain();
/// Three-element chain 0 < e < f (not Boolean).
SemigroupPtr three_chain();

/// Trivial Z/2 twist over the pair groupoid.
TwistExtension tw1();
/// The nontrivial Z/2 twist over g2 (total groupoid cyclic of order 4).
TwistExtension tw2();
/// Z/3 acted on by inversion over the pair groupoid; a valid extension
/// that is not central.
TwistExtension noncentral();

struct NamedFunctor {
  std::string name;
  GroupoidFunctor F;
};
/// Iso-unital functors used by the naturality and preservation sweeps:
/// identities, the collapse g2 -> g1, a g4 automorphism, and the legs of
/// the twist fixtures.
std::vector<NamedFunctor> fixture_functors();

struct NamedHom {
  std::string name;
  SemigroupHom h;
};
/// Homomorphisms of Boolean inverse semigroups for the germ-direction
/// sweeps.
std::vector<NamedHom> fixture_homs();

}  // namespace ample::fixtures
