#pragma once

#include <string>
#include <vector>

#include "modlie/liealg.hpp"

namespace modlie {

constexpr size_t kSizeCap = 10000;

// O(m;n): basis x^(a), 0 <= a_i < p^{n_i}; index is mixed radix with a_0 most significant.
class DividedPowerAlgebra {
 public:
  DividedPowerAlgebra(FieldPtr f, std::vector<uint32_t> heights);

  const FieldPtr& field() const { return field_; }
  size_t vars() const { return heights_.size(); }
  const std::vector<uint32_t>& heights() const { return heights_; }
  size_t dim() const { return dim_; }
  const std::vector<uint32_t>& exponent(size_t idx) const { return exps_[idx]; }
  // Index of the exponent vector, or dim() when out of range.
  size_t index(const std::vector<uint32_t>& a) const;
  size_t degree(size_t idx) const;
  size_t top() const { return dim_ - 1; }

  // x^(a) x^(b) = coef x^(a+b); returns (index, coef) with coef = 0 when it vanishes.
  std::pair<size_t, uint32_t> mul_basis(size_t a, size_t b) const;
  Vec mul(const Vec& f, const Vec& g) const;
  // d/dx_i
  Vec deriv(size_t i, const Vec& f) const;
  std::string monomial(size_t idx) const;

 private:
  FieldPtr field_;
  std::vector<uint32_t> heights_, bound_;
  size_t dim_ = 0;
  std::vector<std::vector<uint32_t>> exps_;
  std::vector<size_t> stride_;
};

// Vector fields on O(m;n) as coefficient lists f_0..f_{m-1}.
struct VectorField {
  std::vector<Vec> f;
};

struct GradedMeta {
  AlgPtr algebra;
  std::vector<int> degrees;
  Subspace standard_zero;
  std::string name;
  // Set when the algebra sits inside a Witt model: columns are images.
  AlgPtr ambient;
  Matrix embedding;
};

// ad(w) for an ambient element w, restricted to the algebra in its own basis.
// Empty when the algebra is not invariant under w.
std::optional<Matrix> induced_derivation(const GradedMeta& g, const Vec& w);

// Lie algebra with basis x^(a) d_i, index a*m + i.
struct WittModel {
  GradedMeta meta;
  std::shared_ptr<DividedPowerAlgebra> O;
  VectorField field_of(const Vec& x) const;
  Vec vec_of(const VectorField& v) const;
  Vec basis_vec(size_t mono, size_t i) const;
  Vec divergence(const Vec& x) const;
  // x acting on O.
  Vec apply_to(const Vec& x, const Vec& f) const;
};

DividedPowerAlgebra make_O(FieldPtr f, size_t m, const std::vector<uint32_t>& n);
WittModel make_W(FieldPtr f, size_t m, const std::vector<uint32_t>& n);
GradedMeta make_S1(FieldPtr f, size_t m, const std::vector<uint32_t>& n);
enum class HVariant { second_derived, first_derived, full };
GradedMeta make_H2(FieldPtr f, const std::vector<uint32_t>& n, HVariant variant);
GradedMeta make_K(FieldPtr f, size_t m, const std::vector<uint32_t>& n);
GradedMeta make_melikian(FieldPtr f);
enum class ClassicalKind { sl, gl, psl };
AlgPtr make_classical(FieldPtr f, ClassicalKind kind, size_t n);

// S (x) O(m;n) inside the ambient (Der S) (x) O  x|  Id (x) W(m;n).
struct TensorModel {
  AlgPtr S;
  AlgPtr A;                    // S (x) O, index s*N + a
  AlgPtr ambient;              // basis: D_k (x) x^(a) (index k*N + a), then Id (x) W basis
  Homomorphism incl;           // A -> ambient
  Matrix pi2;                  // ambient -> W(m;n)
  WittModel W;
  std::vector<Matrix> der_S;   // basis of Der S; the first dim S are ad e_i
  size_t N = 0;
  // Action of an ambient element on A.
  Matrix action(const Vec& y) const;
};
TensorModel make_tensor(const AlgPtr& S, size_t m, const std::vector<uint32_t>& n);

// Dimension formulas used for size checks.
size_t divided_power_dim(uint32_t p, const std::vector<uint32_t>& n);

}  // namespace modlie
