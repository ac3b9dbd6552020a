#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "modlie/field.hpp"

namespace modlie {

using Vec = std::vector<uint32_t>;

// Vector kernels; all codes belong to F.
void axpy(const Field& F, uint32_t* y, uint32_t c, const uint32_t* x, size_t n);
inline void axpy(const Field& F, Vec& y, uint32_t c, const Vec& x) { axpy(F, y.data(), c, x.data(), y.size()); }
void scale_in_place(const Field& F, Vec& v, uint32_t c);
Vec add(const Field& F, const Vec& a, const Vec& b);
Vec sub(const Field& F, const Vec& a, const Vec& b);
Vec scaled(const Field& F, const Vec& a, uint32_t c);
bool is_zero(const Vec& v);
Vec unit(size_t n, size_t i);
size_t first_nonzero(const Vec& v);

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr f, size_t rows, size_t cols) : field(std::move(f)), rows(rows), cols(cols), a(rows * cols, 0) {}

  static Matrix identity(FieldPtr f, size_t n);
  static Matrix from_rows(FieldPtr f, size_t cols, const std::vector<Vec>& rows);
  static Matrix from_cols(FieldPtr f, size_t rows, const std::vector<Vec>& cols);

  uint32_t& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  uint32_t operator()(size_t i, size_t j) const { return a[i * cols + j]; }
  uint32_t* row(size_t i) { return a.data() + i * cols; }
  const uint32_t* row(size_t i) const { return a.data() + i * cols; }
  Vec row_vec(size_t i) const { return Vec(row(i), row(i) + cols); }
  Vec col_vec(size_t j) const;
  void set_col(size_t j, const Vec& v);
  bool is_zero() const;
  bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  FieldPtr field;
  size_t rows = 0, cols = 0;
  std::vector<uint32_t> a;
};

Matrix mul(const Matrix& A, const Matrix& B);
Vec matvec(const Matrix& A, const Vec& v);           // A v
Vec apply_transpose(const Matrix& A, const Vec& v);  // A^T v
Matrix transpose(const Matrix& A);
Matrix add(const Matrix& A, const Matrix& B);
Matrix sub(const Matrix& A, const Matrix& B);
Matrix scaled(const Matrix& A, uint32_t c);
Matrix commutator(const Matrix& A, const Matrix& B);
Matrix power(const Matrix& A, uint64_t e);
// A - c I
Matrix shift(const Matrix& A, uint32_t c);

// Reduced row echelon form; pivots are leftmost columns, rows chosen top-down.
std::pair<Matrix, size_t> rref(Matrix M);
std::vector<size_t> rref_in_place(Matrix& M);
size_t rank(const Matrix& M);

// Canonical subspace: rows in RREF.
class Subspace {
 public:
  Subspace() = default;
  Subspace(FieldPtr f, size_t n) : field_(std::move(f)), n_(n) {}
  static Subspace span(FieldPtr f, size_t n, const std::vector<Vec>& vecs);
  static Subspace full(FieldPtr f, size_t n);

  size_t dim() const { return rows_.size(); }
  size_t ambient() const { return n_; }
  const FieldPtr& field() const { return field_; }
  const std::vector<Vec>& rows() const { return rows_; }
  const Vec& row(size_t i) const { return rows_[i]; }
  const std::vector<size_t>& pivots() const { return pivots_; }
  Matrix basis() const { return Matrix::from_rows(field_, n_, rows_); }

  Vec reduce(Vec v) const;
  bool member(const Vec& v) const;
  bool contains(const Subspace& o) const;
  // Coordinates of a member in the canonical basis (pivot entries).
  Vec coords(const Vec& v) const;
  Vec from_coords(const Vec& c) const;
  // Standard basis vectors completing the pivots, in column order.
  std::vector<size_t> nonpivots() const;
  bool operator==(const Subspace& o) const { return n_ == o.n_ && rows_ == o.rows_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  FieldPtr field_;
  size_t n_ = 0;
  std::vector<Vec> rows_;
  std::vector<size_t> pivots_;
  friend Subspace canonical(FieldPtr, size_t, Matrix);
};

Subspace canonical(FieldPtr f, size_t n, Matrix M);
Subspace kernel(const Matrix& M);
// Row space of M restricted to vectors v with M v = 0 is kernel; image is column space.
Subspace image(const Matrix& M);
Subspace sum(const Subspace& A, const Subspace& B);
Subspace intersect(const Subspace& A, const Subspace& B);
// { v : <v, w> = 0 for all w in A }
Subspace annihilator(const Subspace& A);
// Preimage of a subspace under a linear map given by M (cols = source dims).
Subspace preimage(const Matrix& M, const Subspace& target);
// Image of a subspace under M.
Subspace image_of(const Matrix& M, const Subspace& S);

enum class SubspaceOp { sum, intersect };
Subspace subspace_op(const Subspace& A, const Subspace& B, SubspaceOp op);

// Incremental semi-echelon basis. Each stored row has a pivot where it is 1
// and every later row is zero at earlier pivots, so reduction is one pass.
class Echelon {
 public:
  Echelon() = default;
  Echelon(FieldPtr f, size_t n, bool track = false) : field_(std::move(f)), n_(n), track_(track) {}

  // Returns true when v was independent and has been added.
  bool add(const Vec& v);
  Vec reduce(Vec v) const;
  bool member(const Vec& v) const;
  // Coefficients of v in terms of the independent vectors added so far.
  std::optional<Vec> express(const Vec& v) const;
  size_t rank() const { return rows_.size(); }
  size_t ambient() const { return n_; }
  const std::vector<Vec>& originals() const { return orig_; }
  Subspace span() const { return Subspace::span(field_, n_, rows_); }
  const FieldPtr& field() const { return field_; }

 private:
  FieldPtr field_;
  size_t n_ = 0;
  bool track_ = false;
  std::vector<Vec> rows_;
  std::vector<size_t> piv_;
  std::vector<Vec> trans_;
  std::vector<Vec> orig_;
};

// Coordinates of vectors with respect to a fixed independent list.
class Decomposer {
 public:
  Decomposer() = default;
  Decomposer(FieldPtr f, size_t n, const std::vector<Vec>& basis);
  std::optional<Vec> coords(const Vec& v) const { return ech_.express(v); }
  Vec coords_or_throw(const Vec& v) const;
  size_t size() const { return ech_.rank(); }

 private:
  Echelon ech_;
};

struct EigenBlock {
  std::vector<uint32_t> values;
  Subspace space;
};

// For each requested tuple, the common eigenspace; ops must commute.
// With no operators every tuple gets the whole space of dimension n over f.
std::vector<EigenBlock> simultaneous_eigenspaces(const std::vector<Matrix>& ops,
                                                 const std::vector<std::vector<uint32_t>>& values,
                                                 size_t n = 0, FieldPtr f = nullptr);
// All tuples over the prime field with nonzero common eigenspace.
std::vector<EigenBlock> prime_eigenspaces(const std::vector<Matrix>& ops, size_t n, const FieldPtr& f);

// Change of field on raw codes.
Vec embed_vec(const Vec& v, const FieldPtr& src, const FieldPtr& dst);
Matrix embed_matrix(const Matrix& M, const FieldPtr& dst);
Subspace embed_subspace(const Subspace& S, const FieldPtr& dst);

}  // namespace modlie
