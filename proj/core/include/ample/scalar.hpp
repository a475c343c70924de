#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ample/error.hpp"

namespace ample {

struct FiniteAbelianGroup;

/// Coefficient field: a prime field F_p or the rationals.
struct FieldDesc {
  bool rational = true;
  std::int64_t p = 0;

  bool operator==(const FieldDesc&) const = default;

  static FieldDesc Q() { return FieldDesc{true, 0}; }
  static FieldDesc Fp(std::int64_t p);  // checks primality

  std::string str() const { return rational ? "Q" : "F" + std::to_string(p); }
};

/// Exact field element. Residues are kept in [0,p); rationals are kept
/// reduced with positive denominator (mpq_class canonicalizes).
class Scalar {
 public:
  Scalar() : field_(FieldDesc::Q()) {}

  static Scalar zero(const FieldDesc& f) { return from_int(f, 0); }
  static Scalar one(const FieldDesc& f) { return from_int(f, 1); }
  static Scalar from_int(const FieldDesc& f, std::int64_t v);
  static Scalar rational(const mpq_class& q);
  static Scalar residue(std::int64_t v, std::int64_t p);

  const FieldDesc& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // fails on division by zero
  Scalar operator-() const;
  Scalar inverse() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Literal form: "3", "-2/7" over Q; "k mod p" over F_p.
  std::string str() const;

  /// Multiplicative order when finite (element must be nonzero).
  std::optional<long> mult_order(long limit = 1000000) const;

  std::int64_t residue_value() const { return r_; }
  const mpq_class& rational_value() const { return q_; }

 private:
  FieldDesc field_;
  std::int64_t r_ = 0;  // residue when field is F_p
  mpq_class q_ = 0;     // value when field is Q

  void check_same(const Scalar& o) const;
};

/// Parse a scalar literal ("5", "-3/4", "2 mod 7") in the given field.
Scalar parse_scalar(const std::string& text, const FieldDesc& f);

/// Injective group homomorphism A -> (field units), if one exists.
/// Returned table is indexed by the group's elements.
std::optional<std::vector<Scalar>> find_unit_embedding(
    const FieldDesc& f, const FiniteAbelianGroup& A);

}  // namespace ample
