#include "ample/linalg.hpp"

#include <algorithm>

#include "ample/error.hpp"

namespace ample {

Vec zero_vec(const FieldDesc& f, int dim) {
  return Vec(dim, Scalar::zero(f));
}

Vec add(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
  return r;
}

Vec scale(const Scalar& c, const Vec& v) {
  Vec r = v;
  for (auto& x : r) x = c * x;
  return r;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Scalar& x) { return x.is_zero(); });
}

std::vector<Vec> echelonize(const FieldDesc&, int dim,
                            const std::vector<Vec>& rows) {
  for (const Vec& row : rows)
    if (static_cast<int>(row.size()) != dim)
      fail("BadTable", "row dimension mismatch");
  std::vector<Vec> basis;    // reduced echelon rows
  std::vector<int> pivots;

  for (const Vec& row : rows) {
    Vec v = row;
    // eliminate known pivots
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (!v[pivots[i]].is_zero()) v = sub(v, scale(v[pivots[i]], basis[i]));
    int p = -1;
    for (int j = 0; j < dim; ++j)
      if (!v[j].is_zero()) {
        p = j;
        break;
      }
    if (p < 0) continue;
    v = scale(v[p].inverse(), v);
    // back-substitute into existing rows
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (!basis[i][p].is_zero())
        basis[i] = sub(basis[i], scale(basis[i][p], v));
    basis.push_back(std::move(v));
    pivots.push_back(p);
  }
  // sort rows by pivot column for a canonical result
  std::vector<std::size_t> idx(basis.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return pivots[a] < pivots[b]; });
  std::vector<Vec> out;
  out.reserve(basis.size());
  for (auto i : idx) out.push_back(std::move(basis[i]));
  return out;
}

VectorSpaceQuotient::VectorSpaceQuotient(
    const FieldDesc& f, int dim, const std::vector<Vec>& subspace_generators)
    : field_(f), dim_(dim), basis_(echelonize(f, dim, subspace_generators)) {
  std::vector<char> is_pivot(dim, 0);
  for (const Vec& row : basis_) {
    int p = 0;
    while (row[p].is_zero()) ++p;
    pivots_.push_back(p);
    is_pivot[p] = 1;
  }
  for (int j = 0; j < dim_; ++j)
    if (!is_pivot[j]) free_.push_back(j);
}

Vec VectorSpaceQuotient::coset_rep(const Vec& v) const {
  if (static_cast<int>(v.size()) != dim_)
    fail("BadTable", "vector dimension mismatch");
  Vec r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (!r[pivots_[i]].is_zero())
      r = sub(r, scale(r[pivots_[i]], basis_[i]));
  return r;
}

bool VectorSpaceQuotient::in_subspace(const Vec& v) const {
  return is_zero_vec(coset_rep(v));
}

Vec VectorSpaceQuotient::quotient_coords(const Vec& v) const {
  Vec r = coset_rep(v);
  Vec out;
  out.reserve(free_.size());
  for (int j : free_) out.push_back(r[j]);
  return out;
}

Vec VectorSpaceQuotient::lift(const Vec& coords) const {
  Vec v = zero_vec(field_, dim_);
  for (std::size_t i = 0; i < free_.size(); ++i) v[free_[i]] = coords[i];
  return v;
}

int rank(const FieldDesc& f, int dim, const std::vector<Vec>& rows) {
  return static_cast<int>(echelonize(f, dim, rows).size());
}

std::optional<std::vector<Vec>> invert_matrix(const FieldDesc& f,
                                              const std::vector<Vec>& rows) {
  const int n = static_cast<int>(rows.size());
  // Gauss-Jordan on [A | I]
  std::vector<Vec> aug(n, zero_vec(f, 2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = rows[i][j];
    aug[i][n + i] = Scalar::one(f);
  }
  int r = 0;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int i = r; i < n; ++i)
      if (!aug[i][col].is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) return std::nullopt;
    std::swap(aug[r], aug[pivot]);
    aug[r] = scale(aug[r][col].inverse(), aug[r]);
    for (int i = 0; i < n; ++i)
      if (i != r && !aug[i][col].is_zero())
        aug[i] = sub(aug[i], scale(aug[i][col], aug[r]));
    ++r;
  }
  std::vector<Vec> inv(n, zero_vec(f, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

Vec FiniteAlgebra::multiply(const Vec& a, const Vec& b) const {
  Vec out = zero_vec(field, dim);
  for (int i = 0; i < dim; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < dim; ++j) {
      if (b[j].is_zero()) continue;
      Scalar c = a[i] * b[j];
      const Vec& sc = basis_product(i, j);
      for (int k = 0; k < dim; ++k)
        if (!sc[k].is_zero()) out[k] = out[k] + c * sc[k];
    }
  }
  return out;
}

bool FiniteAlgebra::associative_on_basis() const {
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        Vec ei = zero_vec(field, dim), ej = zero_vec(field, dim),
            ek = zero_vec(field, dim);
        ei[i] = Scalar::one(field);
        ej[j] = Scalar::one(field);
        ek[k] = Scalar::one(field);
        Vec lhs = multiply(multiply(ei, ej), ek);
        Vec rhs = multiply(ei, multiply(ej, ek));
        if (!(lhs == rhs)) return false;
      }
  return true;
}

}  // namespace ample
