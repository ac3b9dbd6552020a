#include "modlie/field.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "modlie/error.hpp"

namespace modlie {

namespace {

using Poly = std::vector<uint32_t>;  // low degree first, over F_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, uint32_t p) {
  trim(a);
  size_t dm = m.size() - 1;
  uint32_t lead_inv = 1;
  for (uint32_t t = 1; t < p; ++t)
    if (m.back() * t % p == 1) lead_inv = t;
  while (a.size() > dm) {
    uint32_t c = a.back() * lead_inv % p;
    size_t shift = a.size() - 1 - dm;
    for (size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(r, m, p);
}

Poly poly_gcd(Poly a, Poly b, uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = b;
    b = r;
  }
  return a;
}

// X^(p^e) mod m
Poly frob_power_x(uint32_t e, const Poly& m, uint32_t p) {
  Poly x = poly_mod({0, 1}, m, p);
  for (uint32_t i = 0; i < e; ++i) {
    Poly r{1};
    Poly b = x;
    uint32_t n = p;
    while (n) {
      if (n & 1) r = poly_mulmod(r, b, m, p);
      b = poly_mulmod(b, b, m, p);
      n >>= 1;
    }
    x = r;
  }
  return x;
}

}  // namespace

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Rabin's test.
bool is_irreducible(uint32_t p, const Poly& f) {
  Poly g = f;
  trim(g);
  size_t k = g.size() - 1;
  if (k == 0) return false;
  if (k == 1) return true;
  Poly xk = frob_power_x(static_cast<uint32_t>(k), g, p);
  Poly x = poly_mod({0, 1}, g, p);
  if (xk != x) return false;
  for (uint32_t r = 2; r <= k; ++r) {
    if (k % r || !is_prime(r)) continue;
    Poly h = frob_power_x(static_cast<uint32_t>(k / r), g, p);
    h.resize(std::max<size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    Poly d = poly_gcd(g, h, p);
    if (d.size() != 1) return false;
  }
  return true;
}

Field::Field(uint32_t p, uint32_t k, std::vector<uint32_t> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  q_ = 1;
  for (uint32_t i = 0; i < k; ++i) {
    pw_.push_back(q_);
    q_ *= p;
  }
  pw_.push_back(q_);
}

std::vector<uint32_t> Field::digits(uint32_t a) const {
  std::vector<uint32_t> d(k_);
  for (uint32_t i = 0; i < k_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

uint32_t Field::from_digits(const std::vector<uint32_t>& d) const {
  uint32_t r = 0;
  for (size_t i = d.size(); i-- > 0;) r = r * p_ + d[i] % p_;
  return r;
}

std::string Field::str(uint32_t a) const {
  if (k_ == 1) return std::to_string(a);
  std::ostringstream os;
  auto d = digits(a);
  os << "[";
  for (uint32_t i = 0; i < k_; ++i) os << (i ? "," : "") << d[i];
  os << "]";
  return os.str();
}

uint32_t Field::add_ext(uint32_t a, uint32_t b) const {
  uint32_t r = 0;
  for (uint32_t i = 0; i < k_ && (a | b); ++i) {
    uint32_t d = a % p_ + b % p_;
    if (d >= p_) d -= p_;
    r += d * pw_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

uint32_t Field::neg_ext(uint32_t a) const {
  uint32_t r = 0;
  for (uint32_t i = 0; i < k_ && a; ++i) {
    uint32_t d = a % p_;
    if (d) r += (p_ - d) * pw_[i];
    a /= p_;
  }
  return r;
}

uint32_t Field::scale_ext(uint32_t a, uint32_t c) const {
  uint32_t r = 0;
  for (uint32_t i = 0; i < k_ && a; ++i) {
    r += (a % p_) * c % p_ * pw_[i];
    a /= p_;
  }
  return r;
}

uint32_t Field::mul_ext(uint32_t a, uint32_t b) const {
  uint32_t da[16], db[16], prod[32] = {0};
  for (uint32_t i = 0; i < k_; ++i) {
    da[i] = a % p_;
    a /= p_;
    db[i] = b % p_;
    b /= p_;
  }
  for (uint32_t i = 0; i < k_; ++i) {
    if (!da[i]) continue;
    for (uint32_t j = 0; j < k_; ++j) prod[i + j] += da[i] * db[j];
  }
  // Reduce from the top; prod entries stay below k*p^2 + p^2 before the mod.
  for (uint32_t t = 2 * k_ - 2; t >= k_; --t) {
    uint32_t c = prod[t] % p_;
    prod[t] = 0;
    if (c) {
      uint32_t nc = p_ - c;
      for (uint32_t i = 0; i < k_; ++i) prod[t - k_ + i] += nc * modulus_[i];
    }
    for (uint32_t i = t - k_; i < t; ++i) prod[i] %= p_;
  }
  uint32_t r = 0;
  for (uint32_t i = k_; i-- > 0;) r = r * p_ + prod[i] % p_;
  return r;
}

uint32_t Field::pow(uint32_t a, int64_t e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  uint64_t n = static_cast<uint64_t>(e) % (q_ - 1);
  if (e > 0 && n == 0) n = q_ - 1;
  if (a == 0) {
    if (e == 0) return 1;
    return 0;
  }
  uint32_t r = 1;
  while (n) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

uint32_t Field::inv(uint32_t a) const {
  if (a == 0) throw ValidationError("division by zero in GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")");
  if (q_ <= (1u << 18)) {
    std::call_once(inv_once_, [this] {
      inv_table_.assign(q_, 0);
      for (uint32_t x = 1; x < q_; ++x) {
        if (inv_table_[x]) continue;
        uint32_t y = 1, base = x;
        uint64_t n = q_ - 2;
        while (n) {
          if (n & 1) y = mul(y, base);
          base = mul(base, base);
          n >>= 1;
        }
        inv_table_[x] = y;
        inv_table_[y] = x;
      }
    });
    return inv_table_[a];
  }
  uint32_t r = 1, base = a;
  uint64_t n = q_ - 2;
  while (n) {
    if (n & 1) r = mul(r, base);
    base = mul(base, base);
    n >>= 1;
  }
  return r;
}

FieldPtr make_field(uint32_t p, uint32_t k) {
  if (!is_prime(p) || p < 3) throw ValidationError("p must be an odd prime, got " + std::to_string(p));
  if (k < 1 || k > 12) throw ValidationError("extension degree must lie in [1, 12], got " + std::to_string(k));
  double size = 1;
  for (uint32_t i = 0; i < k; ++i) size *= p;
  if (size > 4.0e9) throw ValidationError("field too large for packed codes");

  static std::mutex mu;
  static std::map<std::pair<uint32_t, uint32_t>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({p, k});
  if (it != cache.end()) return it->second;

  Poly mod;
  if (k == 1) {
    mod = {0, 1};
  } else {
    // Enumerate (c_{k-1}, ..., c_0) lexicographically.
    uint64_t total = 1;
    for (uint32_t i = 0; i < k; ++i) total *= p;
    for (uint64_t idx = 0; idx < total; ++idx) {
      Poly f(k + 1, 0);
      f[k] = 1;
      uint64_t v = idx;
      for (uint32_t i = 0; i < k; ++i) {
        f[i] = static_cast<uint32_t>(v % p);
        v /= p;
      }
      if (f[0] == 0) continue;
      if (is_irreducible(p, f)) {
        mod = f;
        break;
      }
    }
  }
  auto f = std::make_shared<const Field>(p, k, mod);
  cache[{p, k}] = f;
  return f;
}

namespace {
void same_field(const Scalar& a, const Scalar& b) {
  if (!a.field || !b.field) throw ValidationError("scalar without field");
  if (a.field != b.field && !a.field->same(*b.field)) throw ValidationError("field mismatch");
}
}  // namespace

Scalar arith(const Scalar& a, const Scalar& b, ArithOp op) {
  if (op == ArithOp::frobenius) return frobenius(a);
  if (op == ArithOp::pow) {
    return power(a, static_cast<int64_t>(b.code));
  }
  same_field(a, b);
  const Field& F = *a.field;
  switch (op) {
    case ArithOp::add: return Scalar(a.field, F.add(a.code, b.code));
    case ArithOp::sub: return Scalar(a.field, F.sub(a.code, b.code));
    case ArithOp::mul: return Scalar(a.field, F.mul(a.code, b.code));
    case ArithOp::div: return Scalar(a.field, F.div(a.code, b.code));
    default: break;
  }
  throw ValidationError("unknown arithmetic op");
}

Scalar power(const Scalar& a, int64_t e) {
  if (e < 0 && a.code == 0) throw ValidationError("division by zero: negative power of 0");
  return Scalar(a.field, a.field->pow(a.code, e));
}

Scalar frobenius(const Scalar& a) { return Scalar(a.field, a.field->frob(a.code)); }

Scalar operator+(const Scalar& a, const Scalar& b) { return arith(a, b, ArithOp::add); }
Scalar operator-(const Scalar& a, const Scalar& b) { return arith(a, b, ArithOp::sub); }
Scalar operator*(const Scalar& a, const Scalar& b) { return arith(a, b, ArithOp::mul); }
Scalar operator/(const Scalar& a, const Scalar& b) { return arith(a, b, ArithOp::div); }
bool operator==(const Scalar& a, const Scalar& b) {
  return a.code == b.code && a.field && b.field && a.field->same(*b.field);
}

namespace {

// Solve A x = b over F_p; returns one solution with free variables zero.
bool solve_fp(std::vector<std::vector<uint32_t>> A, std::vector<uint32_t> b, uint32_t p, std::vector<uint32_t>& x) {
  size_t n = A.size(), m = n ? A[0].size() : 0;
  for (size_t i = 0; i < n; ++i) A[i].push_back(b[i]);
  std::vector<size_t> piv;
  size_t r = 0;
  auto inv = [p](uint32_t a) {
    for (uint32_t t = 1; t < p; ++t)
      if (a * t % p == 1) return t;
    return 0u;
  };
  for (size_t c = 0; c < m && r < n; ++c) {
    size_t s = r;
    while (s < n && A[s][c] == 0) ++s;
    if (s == n) continue;
    std::swap(A[s], A[r]);
    uint32_t iv = inv(A[r][c]);
    for (auto& v : A[r]) v = v * iv % p;
    for (size_t i = 0; i < n; ++i) {
      if (i == r || A[i][c] == 0) continue;
      uint32_t f = A[i][c];
      for (size_t j = 0; j <= m; ++j) A[i][j] = (A[i][j] + (p - f) * A[r][j]) % p;
    }
    piv.push_back(c);
    ++r;
  }
  for (size_t i = r; i < n; ++i)
    if (A[i][m]) return false;
  x.assign(m, 0);
  for (size_t i = 0; i < r; ++i) x[piv[i]] = A[i][m];
  return true;
}

}  // namespace

FieldPtr xi_field(uint32_t p) { return make_field(p, p); }

uint32_t xi_one_in(const FieldPtr& f) {
  if (f->k() % f->p() != 0) throw ValidationError("xi needs GF(p^k) with p | k");
  static std::mutex mu;
  static std::map<uint32_t, uint32_t> base;
  uint32_t root;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = base.find(f->p());
    if (it == base.end()) {
      FieldPtr X = xi_field(f->p());
      uint32_t p = X->p();
      // x^p - x is F_p-linear; its kernel is F_p, so roots differ only in the
      // constant digit and the smallest has constant digit 0.
      std::vector<std::vector<uint32_t>> M(p, std::vector<uint32_t>(p, 0));
      for (uint32_t i = 0; i < p; ++i) {
        uint32_t wi = 1;
        for (uint32_t t = 0; t < i; ++t) wi *= p;
        auto d = X->digits(X->sub(X->frob(wi), wi));
        for (uint32_t r = 0; r < p; ++r) M[r][i] = d[r];
      }
      std::vector<uint32_t> rhs(p, 0), sol;
      rhs[0] = 1;
      if (!solve_fp(M, rhs, p, sol)) throw AlarmError("X^p - X - 1 has no root in GF(p^p)");
      sol[0] = 0;
      uint32_t x = X->from_digits(sol);
      if (X->sub(X->frob(x), x) != 1) throw AlarmError("xi(1) check failed");
      it = base.emplace(p, x).first;
    }
    root = it->second;
  }
  if (f->k() == f->p()) return root;
  return embedding(xi_field(f->p()), f)(root);
}

Scalar artin_schreier_xi(const Scalar& a) {
  if (!a.field->in_prime_subfield(a.code)) throw ValidationError("xi is defined here only on the prime subfield");
  FieldPtr X = xi_field(a.field->p());
  uint32_t one = xi_one_in(X);
  return Scalar(X, X->mul(a.code, one));
}

Embedding::Embedding(const FieldPtr& src, const FieldPtr& dst) : src_(src), dst_(dst) {
  if (src->p() != dst->p()) throw ValidationError("characteristic mismatch in embed");
  if (dst->k() % src->k() != 0) throw ValidationError("no embedding GF(p^" + std::to_string(src->k()) + ") -> GF(p^" + std::to_string(dst->k()) + ")");
  uint32_t j = src->k(), k = dst->k(), p = dst->p();
  uint32_t r = 0;
  if (j > 1) {
    // The subfield of dst of order p^j is ker(Frob^j - id), an F_p-subspace.
    std::vector<std::vector<uint32_t>> M(k, std::vector<uint32_t>(k, 0));
    uint32_t wi = 1;
    for (uint32_t i = 0; i < k; ++i) {
      uint32_t y = wi;
      for (uint32_t t = 0; t < j; ++t) y = dst->frob(y);
      auto d = dst->digits(dst->sub(y, wi));
      for (uint32_t rr = 0; rr < k; ++rr) M[rr][i] = d[rr];
      wi *= p;
    }
    // Kernel basis over F_p by elimination.
    std::vector<size_t> piv;
    size_t rank = 0;
    auto inv = [p](uint32_t a) {
      for (uint32_t t = 1; t < p; ++t)
        if (a * t % p == 1) return t;
      return 0u;
    };
    for (size_t c = 0; c < k && rank < k; ++c) {
      size_t s = rank;
      while (s < k && M[s][c] == 0) ++s;
      if (s == k) continue;
      std::swap(M[s], M[rank]);
      uint32_t iv = inv(M[rank][c]);
      for (auto& v : M[rank]) v = v * iv % p;
      for (size_t i = 0; i < k; ++i) {
        if (i == rank || M[i][c] == 0) continue;
        uint32_t f = M[i][c];
        for (size_t t = 0; t < k; ++t) M[i][t] = (M[i][t] + (p - f) * M[rank][t]) % p;
      }
      piv.push_back(c);
      ++rank;
    }
    std::vector<uint32_t> basis;
    for (size_t c = 0; c < k; ++c) {
      if (std::find(piv.begin(), piv.end(), c) != piv.end()) continue;
      std::vector<uint32_t> v(k, 0);
      v[c] = 1;
      for (size_t i = 0; i < rank; ++i) v[piv[i]] = (p - M[i][c]) % p;
      basis.push_back(dst->from_digits(v));
    }
    if (basis.size() != j) throw AlarmError("subfield dimension mismatch");
    // Enumerate the subfield, collect roots of the source modulus, keep the smallest code.
    const auto& f = src->modulus();
    uint64_t count = 1;
    for (uint32_t t = 0; t < j; ++t) count *= p;
    bool found = false;
    for (uint64_t idx = 0; idx < count; ++idx) {
      uint64_t v = idx;
      uint32_t y = 0;
      for (uint32_t t = 0; t < j; ++t) {
        y = dst->add(y, dst->mul(static_cast<uint32_t>(v % p), basis[t]));
        v /= p;
      }
      uint32_t acc = 0;
      for (size_t t = f.size(); t-- > 0;) acc = dst->add(dst->mul(acc, y), f[t]);
      if (acc == 0 && (!found || y < r)) {
        r = y;
        found = true;
      }
    }
    if (!found) throw AlarmError("no root of the source modulus in the target field");
  }
  powers_.resize(j);
  uint32_t acc = 1;
  for (uint32_t i = 0; i < j; ++i) {
    powers_[i] = acc;
    acc = dst->mul(acc, r);
  }
}

uint32_t Embedding::operator()(uint32_t c) const {
  if (src_->k() == 1) return c;
  const Field& D = *dst_;
  uint32_t p = src_->p();
  uint32_t out = 0;
  for (uint32_t i = 0; c; ++i) {
    uint32_t d = c % p;
    c /= p;
    if (d) out = D.add(out, D.mul(d, powers_[i]));
  }
  return out;
}

const Embedding& embedding(const FieldPtr& src, const FieldPtr& dst) {
  static std::mutex mu;
  static std::map<std::pair<std::pair<uint32_t, uint32_t>, uint32_t>, std::unique_ptr<Embedding>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(std::make_pair(src->p(), src->k()), dst->k());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<Embedding>(src, dst)).first;
  return *it->second;
}

Scalar embed(const Scalar& x, const FieldPtr& target) {
  if (!x.field->same(*make_field(x.field->p(), x.field->k())))
    throw ValidationError("embed: source field is not a canonical field");
  return Scalar(target, embedding(x.field, target)(x.code));
}

}  // namespace modlie
