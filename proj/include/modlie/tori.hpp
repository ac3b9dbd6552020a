#pragma once

#include <memory>
#include <vector>

#include "modlie/restricted.hpp"

namespace modlie {

using GPtr = std::shared_ptr<const RestrictedAlgebra>;

struct Torus {
  GPtr G;
  Subspace space;               // in G coordinates
  std::vector<Vec> toral_basis;  // t^[p] = t
  size_t dim() const { return toral_basis.size(); }
  const FieldPtr& field() const { return G->field(); }
};

struct JordanParts {
  Vec semisimple, nilpotent;
  size_t exponent = 0;  // N with x_s = x^[p]^N
};
JordanParts toral_decompose(const RestrictedAlgebra& G, const Vec& x);

// F_p-basis of the toral elements in an abelian p-closed subspace, reduced to
// a basis over the working field. Empty optional when it does not split.
std::optional<std::vector<Vec>> toral_basis_of(const RestrictedAlgebra& G, const Subspace& T);

// Torus spanned by the given elements (closed under p-powers first). Escalates
// the field when needed and max_k allows it.
Torus make_torus(GPtr G, const std::vector<Vec>& elements, uint32_t max_k = 1);

struct MaximalTorusResult {
  Torus torus;
  bool certified = false;
  size_t escalations = 0;
};
// Greedy search plus certificate: c_G(T) nilpotent with all semisimple parts in T.
MaximalTorusResult maximal_torus(GPtr G, uint64_t seed = 1, uint32_t max_k = 4, const std::vector<Vec>& start = {});
// Certificate check alone.
bool is_maximal_torus(const Torus& T);

struct RootSpace {
  Vec gamma;  // values on the toral basis, in F_p
  Subspace space;
};
enum class RootTarget { L, G };
struct RootDatum {
  Torus torus;
  RootTarget target = RootTarget::L;
  size_t target_dim = 0;
  Subspace zero;  // H or H~
  std::vector<RootSpace> roots;  // nonzero gamma, sorted
  const RootSpace* find(const Vec& gamma) const;
  Subspace space_of(const Vec& gamma) const;  // zero space for gamma = 0
};
// Operators of the toral basis on the target.
std::vector<Matrix> toral_operators(const Torus& T, RootTarget target);
RootDatum root_decomposition(const Torus& T, RootTarget target = RootTarget::L);

bool is_standard(const Torus& T);
size_t toral_rank(const AlgPtr& L, uint64_t seed = 1, size_t tries = 12);

// gamma in F_p^d as integers.
bool is_zero_root(const Vec& g);

}  // namespace modlie
