#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace modlie {

// GF(p^k). Elements are packed codes c_0 + c_1 p + ... + c_{k-1} p^{k-1}
// where c_i is the coefficient of w^i and w is the class of X modulo the
// defining polynomial. Codes below p are the prime subfield.
class Field {
 public:
  Field(uint32_t p, uint32_t k, std::vector<uint32_t> modulus);

  uint32_t p() const { return p_; }
  uint32_t k() const { return k_; }
  uint32_t q() const { return q_; }
  // Monic, low degree first, size k+1.
  const std::vector<uint32_t>& modulus() const { return modulus_; }
  bool is_prime() const { return k_ == 1; }

  uint32_t add(uint32_t a, uint32_t b) const {
    if (k_ == 1) {
      uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_ext(a, b);
  }
  uint32_t neg(uint32_t a) const {
    if (k_ == 1) return a ? p_ - a : 0;
    return neg_ext(a);
  }
  uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
  uint32_t mul(uint32_t a, uint32_t b) const {
    if (k_ == 1) return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p_);
    if (a == 0 || b == 0) return 0;
    if (a < p_) return scale_ext(b, a);
    if (b < p_) return scale_ext(a, b);
    return mul_ext(a, b);
  }
  uint32_t inv(uint32_t a) const;
  uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }
  uint32_t pow(uint32_t a, int64_t e) const;
  uint32_t frob(uint32_t a) const { return pow(a, p_); }

  uint32_t from_int(int64_t v) const {
    int64_t r = v % static_cast<int64_t>(p_);
    return static_cast<uint32_t>(r < 0 ? r + p_ : r);
  }
  bool in_prime_subfield(uint32_t a) const { return a < p_; }
  std::vector<uint32_t> digits(uint32_t a) const;
  uint32_t from_digits(const std::vector<uint32_t>& d) const;
  std::string str(uint32_t a) const;

  bool same(const Field& o) const { return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_; }

 private:
  uint32_t add_ext(uint32_t a, uint32_t b) const;
  uint32_t neg_ext(uint32_t a) const;
  uint32_t scale_ext(uint32_t a, uint32_t c) const;
  uint32_t mul_ext(uint32_t a, uint32_t b) const;

  uint32_t p_, k_, q_;
  std::vector<uint32_t> modulus_;
  std::vector<uint32_t> pw_;  // p^i
  mutable std::once_flag inv_once_;
  mutable std::vector<uint32_t> inv_table_;
};

using FieldPtr = std::shared_ptr<const Field>;

// Cached per (p, k); the modulus is the smallest monic irreducible of degree k
// when coefficient vectors (c_{k-1}, ..., c_0) are compared lexicographically.
FieldPtr make_field(uint32_t p, uint32_t k);

bool is_prime(uint32_t n);
bool is_irreducible(uint32_t p, const std::vector<uint32_t>& f);

struct Scalar {
  FieldPtr field;
  uint32_t code = 0;

  Scalar() = default;
  Scalar(FieldPtr f, uint32_t c) : field(std::move(f)), code(c) {}
  static Scalar of_int(FieldPtr f, int64_t v) {
    uint32_t c = f->from_int(v);
    return Scalar(std::move(f), c);
  }
  bool is_zero() const { return code == 0; }
  std::vector<uint32_t> digits() const { return field->digits(code); }
};

enum class ArithOp { add, sub, mul, div, pow, frobenius };

// pow reads the exponent from b's integer value unless given explicitly;
// prefer power() for negative exponents.
Scalar arith(const Scalar& a, const Scalar& b, ArithOp op);
Scalar power(const Scalar& a, int64_t e);
Scalar frobenius(const Scalar& a);

Scalar operator+(const Scalar& a, const Scalar& b);
Scalar operator-(const Scalar& a, const Scalar& b);
Scalar operator*(const Scalar& a, const Scalar& b);
Scalar operator/(const Scalar& a, const Scalar& b);
bool operator==(const Scalar& a, const Scalar& b);

// The field GF(p^p) that houses xi.
FieldPtr xi_field(uint32_t p);
// Root of X^p - X - a, F_p-linear in a; lives in GF(p^p).
Scalar artin_schreier_xi(const Scalar& a);
// Code of xi(1) inside an arbitrary GF(p^k) with p | k.
uint32_t xi_one_in(const FieldPtr& f);

// Fixed embedding GF(p^j) -> GF(p^k), j | k.
Scalar embed(const Scalar& x, const FieldPtr& target);
// Same map on raw codes; cached per field pair.
class Embedding {
 public:
  Embedding(const FieldPtr& src, const FieldPtr& dst);
  uint32_t operator()(uint32_t c) const;
  const FieldPtr& source() const { return src_; }
  const FieldPtr& target() const { return dst_; }

 private:
  FieldPtr src_, dst_;
  std::vector<uint32_t> powers_;  // images of w^i
};
const Embedding& embedding(const FieldPtr& src, const FieldPtr& dst);

}  // namespace modlie
