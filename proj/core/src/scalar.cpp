#include "ample/scalar.hpp"

#include <algorithm>
#include <cctype>

#include "ample/twist.hpp"

namespace ample {

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::int64_t mod_norm(std::int64_t v, std::int64_t p) {
  std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t acc = 1 % p;
  b = mod_norm(b, p);
  while (e > 0) {
    if (e & 1) acc = acc * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return acc;
}

}  // namespace

FieldDesc FieldDesc::Fp(std::int64_t p) {
  if (!is_prime(p)) fail("NotPrime", "modulus " + std::to_string(p) + " is not prime");
  return FieldDesc{false, p};
}

Scalar Scalar::from_int(const FieldDesc& f, std::int64_t v) {
  Scalar s;
  s.field_ = f;
  if (f.rational)
    s.q_ = mpq_class(static_cast<long>(v));
  else
    s.r_ = mod_norm(v, f.p);
  return s;
}

Scalar Scalar::rational(const mpq_class& q) {
  Scalar s;
  s.field_ = FieldDesc::Q();
  // copy-construct before canonicalizing: gmpxx tolerates non-canonical
  // fractions only in the copy constructor, not in assignments
  mpq_class tmp(q);
  tmp.canonicalize();
  s.q_ = tmp;
  return s;
}

Scalar Scalar::residue(std::int64_t v, std::int64_t p) {
  return from_int(FieldDesc::Fp(p), v);
}

void Scalar::check_same(const Scalar& o) const {
  if (!(field_ == o.field_))
    fail("FieldMismatch",
         "mixed scalars from " + field_.str() + " and " + o.field_.str());
}

bool Scalar::is_zero() const { return field_.rational ? q_ == 0 : r_ == 0; }
bool Scalar::is_one() const { return field_.rational ? q_ == 1 : r_ == 1 % field_.p; }

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  Scalar s = *this;
  if (field_.rational)
    s.q_ = q_ + o.q_;
  else
    s.r_ = (r_ + o.r_) % field_.p;
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (field_.rational)
    s.q_ = -q_;
  else
    s.r_ = mod_norm(-r_, field_.p);
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  Scalar s = *this;
  if (field_.rational)
    s.q_ = q_ * o.q_;
  else
    s.r_ = r_ * o.r_ % field_.p;
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail("DivisionByZero", "inverse of zero");
  Scalar s = *this;
  if (field_.rational)
    s.q_ = 1 / q_;
  else
    s.r_ = mod_pow(r_, field_.p - 2, field_.p);
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
  if (!(field_ == o.field_)) return false;
  return field_.rational ? q_ == o.q_ : r_ == o.r_;
}

std::string Scalar::str() const {
  if (field_.rational) return q_.get_str();
  return std::to_string(r_) + " mod " + std::to_string(field_.p);
}

std::optional<long> Scalar::mult_order(long limit) const {
  if (is_zero()) return std::nullopt;
  Scalar acc = *this;
  for (long k = 1; k <= limit; ++k) {
    if (acc.is_one()) return k;
    acc = acc * *this;
  }
  return std::nullopt;
}

Scalar parse_scalar(const std::string& text, const FieldDesc& f) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  auto bad = [&]() -> Scalar {
    fail("ParseError", "bad scalar literal '" + text + "' for " + f.str());
  };
  if (t.empty()) return bad();

  auto mod_pos = t.find("mod");
  if (mod_pos != std::string::npos) {
    try {
      std::int64_t k = std::stoll(t.substr(0, mod_pos));
      std::int64_t p = std::stoll(t.substr(mod_pos + 3));
      if (f.rational || p != f.p) return bad();
      return Scalar::residue(k, p);
    } catch (const std::exception&) {
      return bad();
    }
  }
  auto slash = t.find('/');
  try {
    if (slash != std::string::npos) {
      std::int64_t num = std::stoll(t.substr(0, slash));
      std::int64_t den = std::stoll(t.substr(slash + 1));
      if (den == 0) return bad();
      if (f.rational)
        return Scalar::rational(mpq_class(static_cast<long>(num),
                                          static_cast<long>(den)));
      return Scalar::from_int(f, num) / Scalar::from_int(f, den);
    }
    return Scalar::from_int(f, std::stoll(t));
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception&) {
    return bad();
  }
}

std::optional<std::vector<Scalar>> find_unit_embedding(
    const FieldDesc& f, const FiniteAbelianGroup& A) {
  const int n = A.size();
  // Candidate unit values: all of F_p^*, or {1,-1} over Q (the only
  // rationals of finite multiplicative order).
  std::vector<Scalar> units;
  if (f.rational) {
    units = {Scalar::from_int(f, 1), Scalar::from_int(f, -1)};
  } else {
    for (std::int64_t v = 1; v < f.p; ++v) units.push_back(Scalar::residue(v, f.p));
  }

  std::vector<Scalar> img(n, Scalar::one(f));
  std::vector<char> assigned(n, 0);
  img[A.identity] = Scalar::one(f);
  assigned[A.identity] = 1;

  // Backtracking over elements in index order; products of assigned
  // elements must stay consistent and the map must stay injective.
  auto consistent = [&]() {
    for (int a = 0; a < n; ++a) {
      if (!assigned[a]) continue;
      for (int b = 0; b < n; ++b) {
        if (!assigned[b]) continue;
        int ab = A.mult[a * n + b];
        if (assigned[ab] && !(img[a] * img[b] == img[ab])) return false;
      }
    }
    return true;
  };
  std::vector<int> order;
  for (int a = 0; a < n; ++a)
    if (a != A.identity) order.push_back(a);

  std::vector<Scalar> best;
  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (k == order.size()) {
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (img[a] == img[b]) return false;
      best = img;
      return true;
    }
    int a = order[k];
    for (const Scalar& u : units) {
      img[a] = u;
      assigned[a] = 1;
      if (consistent() && self(self, k + 1)) return true;
      assigned[a] = 0;
    }
    return false;
  };
  if (rec(rec, 0)) return best;
  return std::nullopt;
}

}  // namespace ample
