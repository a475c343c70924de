#pragma once

#include <vector>

#include "ample/scalar.hpp"

namespace ample {

using Vec = std::vector<Scalar>;

Vec zero_vec(const FieldDesc& f, int dim);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Scalar& c, const Vec& v);
bool is_zero_vec(const Vec& v);

/// Reduced row echelon basis of the span of `rows`. Pivot order is
/// deterministic: rows are eliminated in the order given, pivots are the
/// leftmost nonzero columns.
std::vector<Vec> echelonize(const FieldDesc& f, int dim,
                            const std::vector<Vec>& rows);

/// Quotient of an ambient space by a subspace, with canonical coset
/// representatives obtained by eliminating pivot coordinates.
class VectorSpaceQuotient {
 public:
  VectorSpaceQuotient() = default;
  VectorSpaceQuotient(const FieldDesc& f, int dim,
                      const std::vector<Vec>& subspace_generators);

  const FieldDesc& field() const { return field_; }
  int ambient_dim() const { return dim_; }
  int subspace_dim() const { return static_cast<int>(basis_.size()); }
  int quotient_dim() const { return dim_ - subspace_dim(); }

  const std::vector<Vec>& subspace_basis() const { return basis_; }
  const std::vector<int>& pivot_columns() const { return pivots_; }
  /// Non-pivot coordinates; they index a basis of the quotient.
  const std::vector<int>& free_columns() const { return free_; }

  /// Canonical representative: v with all pivot coordinates eliminated.
  Vec coset_rep(const Vec& v) const;
  bool in_subspace(const Vec& v) const;
  /// Coordinates of coset_rep(v) on the free columns.
  Vec quotient_coords(const Vec& v) const;
  /// Ambient representative of a quotient coordinate vector.
  Vec lift(const Vec& coords) const;

 private:
  FieldDesc field_;
  int dim_ = 0;
  std::vector<Vec> basis_;  // reduced echelon form
  std::vector<int> pivots_;
  std::vector<int> free_;
};

/// Rank of a set of vectors.
int rank(const FieldDesc& f, int dim, const std::vector<Vec>& rows);

/// Inverse of a square matrix given as rows; empty when singular.
std::optional<std::vector<Vec>> invert_matrix(const FieldDesc& f,
                                              const std::vector<Vec>& rows);

/// Finite-dimensional algebra by structure constants on a basis.
struct FiniteAlgebra {
  FieldDesc field;
  int dim = 0;
  std::vector<Vec> mult;  // (i*dim+j) -> coordinates of e_i e_j

  const Vec& basis_product(int i, int j) const { return mult[i * dim + j]; }
  Vec multiply(const Vec& a, const Vec& b) const;
  bool associative_on_basis() const;
};

}  // namespace ample
