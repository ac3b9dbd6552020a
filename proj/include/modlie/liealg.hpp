#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modlie/field.hpp"
#include "modlie/linalg.hpp"

namespace modlie {

using SparseVec = std::vector<std::pair<uint32_t, uint32_t>>;

class LieAlgebra {
 public:
  LieAlgebra() = default;
  // Abelian algebra of dimension n; fill with set_bracket, then finalize().
  LieAlgebra(FieldPtr f, size_t n);

  void set_bracket(size_t i, size_t j, const Vec& v);
  void set_bracket_sparse(size_t i, size_t j, SparseVec v);
  void set_pmap(std::vector<Vec> table) { pmap_ = std::move(table); }
  void clear_pmap() { pmap_.reset(); }
  void set_labels(std::vector<std::string> labels) { labels_ = std::move(labels); }
  // Checks Jacobi on all basis triples and the p-map law when present.
  void verify() const;
  bool jacobi_holds() const;
  bool pmap_law_holds() const;

  size_t dim() const { return n_; }
  const FieldPtr& field() const { return field_; }
  const Field& F() const { return *field_; }
  const SparseVec& sc(size_t i, size_t j) const { return sc_[index(i, j)]; }
  bool has_pmap() const { return pmap_.has_value(); }
  const std::vector<Vec>& pmap() const { return *pmap_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(size_t i) const;

  Vec bracket(const Vec& x, const Vec& y) const;
  // [e_i, y]
  Vec bracket_basis(size_t i, const Vec& y) const;
  Vec bracket_basis2(size_t i, size_t j) const;
  Matrix ad(const Vec& x) const;
  Matrix ad_basis(size_t i) const;
  size_t nnz() const;

  // Same structure constants over a larger field.
  LieAlgebra embedded(const FieldPtr& target) const;

 private:
  size_t index(size_t i, size_t j) const { return i * n_ - i * (i + 1) / 2 + (j - i - 1); }
  void add_scaled(Vec& acc, uint32_t c, size_t i, size_t j) const;

  FieldPtr field_;
  size_t n_ = 0;
  std::vector<SparseVec> sc_;
  std::optional<std::vector<Vec>> pmap_;
  std::vector<std::string> labels_;
};

using AlgPtr = std::shared_ptr<const LieAlgebra>;

class Homomorphism {
 public:
  Homomorphism() = default;
  // matrix columns are images of source basis vectors; checked unless check=false.
  Homomorphism(AlgPtr source, AlgPtr target, Matrix matrix, bool check = true);
  Vec operator()(const Vec& x) const { return matvec(matrix, x); }
  bool preserves_brackets() const;

  AlgPtr source, target;
  Matrix matrix;
};

// --- structure ---
bool is_subalgebra(const LieAlgebra& L, const Subspace& S);
bool is_ideal(const LieAlgebra& L, const Subspace& S);
Subspace bracket_space(const LieAlgebra& L, const Subspace& A, const Subspace& B);
Subspace subalgebra_closure(const LieAlgebra& L, const Subspace& S);
Subspace ideal_closure(const LieAlgebra& L, const Subspace& S);
// Basis indices generating L as a Lie algebra, greedy in basis order.
std::vector<size_t> lie_generators(const LieAlgebra& L);
class Rng;
// ad of a small generating set: two random elements when they suffice.
std::vector<Matrix> generating_ads(const LieAlgebra& L, Rng& rng);

enum class SeriesKind { derived, lower_central };
struct Series {
  std::vector<Subspace> terms;  // terms[0] = I
  Subspace stable() const { return terms.back(); }
};
Series series(const LieAlgebra& L, SeriesKind kind, const Subspace& I);
bool is_solvable(const LieAlgebra& L, const Subspace& I);
bool is_solvable(const LieAlgebra& L);
bool is_nilpotent(const LieAlgebra& L);
// Chain V, A.V, A.(A.V), ... reaches 0. Acting elements and V live in L.
bool is_nilpotent_action(const LieAlgebra& L, const Subspace& A, const Subspace& V);
// Same for an explicit list of operators on a module.
bool is_nilpotent_action(const std::vector<Matrix>& ops, const Subspace& V);

Subspace center(const LieAlgebra& L);
Subspace centralizer(const LieAlgebra& L, const Subspace& S);
Subspace normalizer(const LieAlgebra& L, const Subspace& S);

// --- derived algebras ---
struct SubalgebraResult {
  AlgPtr alg;
  Homomorphism incl;
};
// Basis = canonical rows of S.
SubalgebraResult extract_subalgebra(const AlgPtr& L, const Subspace& S, bool check = false);
// Basis = given independent vectors spanning a subalgebra.
SubalgebraResult algebra_from_basis(const AlgPtr& L, const std::vector<Vec>& basis,
                                    std::vector<std::string> labels = {}, bool check = false);

struct QuotientResult {
  AlgPtr alg;
  Homomorphism proj;
  std::vector<size_t> lift;  // basis vector j of the quotient lifts to e_{lift[j]}
};
QuotientResult quotient(const AlgPtr& L, const Subspace& I);
// Matrix of the map induced on L/I by an operator preserving I.
Matrix induced_on_quotient(const QuotientResult& Q, const Matrix& D);
// Matrix of the restriction of D to an invariant subspace, in canonical coordinates.
Matrix restrict_to(const Matrix& D, const Subspace& S);

// --- ideals ---
// Extra operators are derivations of L the ideals must be stable under.
// minimal_ideals stops at the first abelian one.
std::vector<Subspace> minimal_ideals(const AlgPtr& L, const std::vector<Matrix>& extra = {}, uint64_t seed = 1);
Subspace solvable_radical(const AlgPtr& L, const std::vector<Matrix>& extra = {}, uint64_t seed = 1);
bool is_simple(const AlgPtr& L, uint64_t seed = 1);

// --- centroid and tensor factors ---
struct Centroid {
  std::vector<Matrix> basis;       // C_0 = identity when nonzero
  std::vector<std::vector<Vec>> mult;  // mult[i][j] = coordinates of C_i C_j
  bool commutative = false;
  Subspace radical;                // coordinates in basis
  bool local = false;              // C / rad is the ground field
  size_t nilpotency_index = 0;     // smallest s with rad^s = 0
  size_t dim() const { return basis.size(); }
};
Centroid centroid(const LieAlgebra& L, uint64_t seed = 1);

struct TensorFactorization {
  AlgPtr S;
  size_t m = 0;
  // Matrix from S (x) C coordinates (index s*dimC + c) to A coordinates.
  Matrix iso;
  Centroid cent;
};
TensorFactorization tensor_factorize(const AlgPtr& A, uint64_t seed = 1);

}  // namespace modlie
