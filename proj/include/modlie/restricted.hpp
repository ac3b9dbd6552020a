#pragma once

#include <optional>
#include <vector>

#include "modlie/liealg.hpp"

namespace modlie {

// A p-closed Lie algebra of derivations G with ad L <= G <= Der L, for a
// centerless L. Basis: ad(e_0..e_{n-1}) then the extra derivations.
// The p-map is the matrix p-th power.
class RestrictedAlgebra {
 public:
  RestrictedAlgebra() = default;
  // Closes ad L + span(extra) under brackets and p-th powers.
  RestrictedAlgebra(AlgPtr L, const std::vector<Matrix>& extra);

  size_t dim() const { return mats_.size(); }
  size_t base_dim() const { return L_->dim(); }
  const AlgPtr& base() const { return L_; }
  const AlgPtr& lie() const { return G_; }
  const FieldPtr& field() const { return L_->field(); }
  const Matrix& basis_matrix(size_t i) const { return mats_[i]; }
  const std::vector<size_t>& probes() const { return probes_; }

  Matrix rho(const Vec& x) const;
  // x acting on v in L.
  Vec act(const Vec& x, const Vec& v) const;
  Vec p_power(const Vec& x) const;
  Vec p_power_iter(const Vec& x, size_t times) const;
  std::optional<Vec> decompose(const Matrix& D) const;
  // Coordinates of an operator given by its values on the probes.
  std::optional<Vec> decompose_signature(const Vec& sig) const;
  Vec from_L(const Vec& y) const;
  // The L part as a subspace of G.
  Subspace L_subspace() const;
  bool is_p_closed(const Subspace& S) const;
  // The ad homomorphism L -> G.
  Homomorphism ad_map() const;
  RestrictedAlgebra change_field(const FieldPtr& target) const;

 private:
  Vec signature(const Matrix& D) const;
  void build_lie();

  AlgPtr L_;
  AlgPtr G_;
  std::vector<Matrix> mats_;
  std::vector<size_t> probes_;
  Echelon sig_;
};

// Der L as a restricted algebra (L centerless).
RestrictedAlgebra derivation_algebra(const AlgPtr& L, const std::vector<int>* degrees = nullptr);
// The restricted subalgebra generated by S inside G.
Subspace p_envelope(const RestrictedAlgebra& G, const Subspace& S);
// Smallest restricted G containing ad L; L_p of a centerless L.
RestrictedAlgebra envelope_of(const AlgPtr& L);
// p-map of a centerless L when ad(x)^p is inner for every basis vector.
std::optional<std::vector<Vec>> inner_pmap(const LieAlgebra& L);

}  // namespace modlie
