#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modlie/sections.hpp"

namespace modlie {

struct Filtration {
  AlgPtr algebra;
  int depth = 0;                // steps[0] = L_(-depth)
  std::vector<Subspace> steps;  // L_(-depth) ... L_(height+1); the last one is the stable tail
  Subspace at(int i) const;
  int height() const { return static_cast<int>(steps.size()) - depth - 2; }
  std::vector<size_t> dims() const;
  size_t core_dim() const { return steps.back().dim(); }
};

// L_(0) = M, L_(-1) a minimal M-stable subspace over M, L_(-i-1) = [L_(-i), L_(-1)] + L_(-i),
// L_(i+1) = {x in L_(i) : [x, L_(-1)] in L_(i)}.
Filtration standard_filtration(const AlgPtr& L, const Subspace& M, uint64_t seed = 1);
// Filtration by degree >= i of a graded basis.
Filtration filtration_from_grading(const AlgPtr& L, const std::vector<int>& degrees);
// [L_(i), L_(j)] in L_(i+j) for all i, j.
bool filtration_compatible(const Filtration& F);

struct GradedAlgebra {
  AlgPtr total;
  std::vector<int> degrees;  // per basis vector, ascending
  Matrix adapted;            // columns: representatives in the filtered algebra
  std::map<int, std::pair<size_t, size_t>> components;  // degree -> [begin, end)
  bool compatible = false;
  bool jacobi = false;
  Subspace component(int i) const;
  std::vector<Matrix> projections() const;
};
GradedAlgebra associated_graded(const Filtration& F);

struct MinimalIdeal {
  Subspace ideal;
  bool abelian = false;
  std::optional<bool> unique;  // empty when it could not be decided
};
MinimalIdeal minimal_graded_ideal(const GradedAlgebra& G, uint64_t seed = 1);

struct SReport {
  AlgPtr S;
  size_t m = 0;
  bool graded = false;
  std::vector<int> degrees;  // of the S basis, when graded
  std::map<int, size_t> component_dims;
  int depth = 0, height = 0;
  // S_[0]
  size_t s0_dim = 0, s0_center_dim = 0, s0_derived_dim = 0;
  bool s0_simple = false;
  std::string s0_bucket;  // a, b, c, d or none
  std::string s0_note;
  bool restricted = false;
  bool simple = false;
  std::optional<bool> s3_nonzero, s_minus3_zero;
};
// degrees: per basis vector of A, which must then be homogeneous.
SReport extract_S(const AlgPtr& A, const std::vector<int>* degrees = nullptr, uint64_t seed = 1);

struct GradedPipeline {
  bool applicable = false;
  std::string note;
  Filtration filtration;  // on T + L inside the restricted envelope
  std::optional<std::vector<size_t>> filtration_L_dims;  // on L with M = Q
  std::string filtration_L_note;
  GradedAlgebra gr;
  MinimalIdeal A;
  SReport S;
};
GradedPipeline graded_pipeline(const RootDatum& RD, uint64_t seed = 1);

}  // namespace modlie
