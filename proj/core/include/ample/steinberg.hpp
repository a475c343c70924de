#pragma once

#include <vector>

#include "ample/crossed.hpp"
#include "ample/linalg.hpp"
#include "ample/twist.hpp"

namespace ample {

/// Algebra of anti-equivariant functions on a twist under twisted
/// convolution. Elements are stored by their full value vectors on the
/// total groupoid; the basis {f_g} is indexed by base arrows through a
/// set-theoretic section.
struct TwistedSteinbergAlgebra {
  TwistExtension tw;
  FieldDesc field;
  std::vector<Scalar> embed;  // A -> field units
  std::vector<int> section;   // g -> chosen lift in Sigma
  std::vector<Vec> basis_values;  // g -> values on Sigma arrows
  FiniteAlgebra alg;              // structure constants on {f_g}

  int dim() const { return alg.dim; }
};

/// Builds the basis and the convolution table; section independence is
/// certified by recomputing the products along a second section.
TwistedSteinbergAlgebra build_steinberg(const TwistExtension& tw,
                                        const FieldDesc& field,
                                        std::vector<Scalar> embed,
                                        const std::vector<int>* section =
                                            nullptr);

/// Twisted convolution of full value vectors along a given section.
Vec convolve(const TwistedSteinbergAlgebra& alg, const Vec& f, const Vec& g,
             const std::vector<int>& section);

/// Value vector of an element given by basis coefficients.
Vec values_of(const TwistedSteinbergAlgebra& alg, const Vec& coeffs);

/// The indicator-style element of a bisection V of the total groupoid:
/// supported on the A-orbit of V, sending s to embed(a) when a.s lies in
/// V. Returned as basis coefficients.
Vec tilde_one(const TwistedSteinbergAlgebra& alg, const Bits& V);

/// Rank of the span of all tilde_one elements; equals the dimension.
int tilde_one_span_rank(const TwistedSteinbergAlgebra& alg,
                        long cap = 1 << 20);

/// The isomorphism from the crossed product of the same twist (same
/// field, embedding and classifying section) onto the Steinberg algebra:
/// a delta_U + I -> f_{a,U}. Returned as a matrix taking crossed-product
/// quotient coordinates to basis coefficients; verified bijective and
/// multiplicative.
std::vector<Vec> iso_psi(const TwistedRingSetup& setup,
                         const TwistedSteinbergAlgebra& alg);

}  // namespace ample
