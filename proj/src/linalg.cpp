#include "modlie/linalg.hpp"

#include <algorithm>
#include <map>

#include "modlie/error.hpp"

namespace modlie {

void axpy(const Field& F, uint32_t* y, uint32_t c, const uint32_t* x, size_t n) {
  if (c == 0) return;
  if (F.is_prime()) {
    const uint32_t p = F.p();
    for (size_t i = 0; i < n; ++i)
      if (x[i]) y[i] = (y[i] + c * x[i]) % p;
    return;
  }
  for (size_t i = 0; i < n; ++i)
    if (x[i]) y[i] = F.add(y[i], F.mul(c, x[i]));
}

void scale_in_place(const Field& F, Vec& v, uint32_t c) {
  for (auto& x : v)
    if (x) x = F.mul(x, c);
}

Vec add(const Field& F, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F.add(a[i], b[i]);
  return r;
}

Vec sub(const Field& F, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F.sub(a[i], b[i]);
  return r;
}

Vec scaled(const Field& F, const Vec& a, uint32_t c) {
  Vec r = a;
  scale_in_place(F, r, c);
  return r;
}

bool is_zero(const Vec& v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

Vec unit(size_t n, size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

size_t first_nonzero(const Vec& v) {
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i]) return i;
  return v.size();
}

Matrix Matrix::identity(FieldPtr f, size_t n) {
  Matrix M(std::move(f), n, n);
  for (size_t i = 0; i < n; ++i) M(i, i) = 1;
  return M;
}

Matrix Matrix::from_rows(FieldPtr f, size_t cols, const std::vector<Vec>& rows) {
  Matrix M(std::move(f), rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) std::copy(rows[i].begin(), rows[i].end(), M.row(i));
  return M;
}

Matrix Matrix::from_cols(FieldPtr f, size_t rows, const std::vector<Vec>& cols) {
  Matrix M(std::move(f), rows, cols.size());
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < rows; ++i) M(i, j) = cols[j][i];
  return M;
}

Vec Matrix::col_vec(size_t j) const {
  Vec v(rows);
  for (size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_col(size_t j, const Vec& v) {
  for (size_t i = 0; i < rows; ++i) (*this)(i, j) = v[i];
}

bool Matrix::is_zero() const {
  for (auto x : a)
    if (x) return false;
  return true;
}

Matrix mul(const Matrix& A, const Matrix& B) {
  if (A.cols != B.rows) throw ValidationError("matrix size mismatch in product");
  const Field& F = *A.field;
  Matrix C(A.field, A.rows, B.cols);
  if (F.is_prime()) {
    const uint64_t p = F.p();
    std::vector<uint64_t> acc(B.cols);
    for (size_t i = 0; i < A.rows; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (size_t k = 0; k < A.cols; ++k) {
        uint64_t a = A(i, k);
        if (!a) continue;
        const uint32_t* b = B.row(k);
        for (size_t j = 0; j < B.cols; ++j) acc[j] += a * b[j];
      }
      uint32_t* c = C.row(i);
      for (size_t j = 0; j < B.cols; ++j) c[j] = static_cast<uint32_t>(acc[j] % p);
    }
    return C;
  }
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t k = 0; k < A.cols; ++k) axpy(F, C.row(i), A(i, k), B.row(k), B.cols);
  return C;
}

Vec matvec(const Matrix& A, const Vec& v) {
  if (A.cols != v.size()) throw ValidationError("matrix-vector size mismatch");
  const Field& F = *A.field;
  Vec r(A.rows, 0);
  if (F.is_prime()) {
    const uint64_t p = F.p();
    for (size_t i = 0; i < A.rows; ++i) {
      const uint32_t* row = A.row(i);
      uint64_t s = 0;
      for (size_t j = 0; j < A.cols; ++j) s += static_cast<uint64_t>(row[j]) * v[j];
      r[i] = static_cast<uint32_t>(s % p);
    }
    return r;
  }
  for (size_t j = 0; j < A.cols; ++j) {
    if (!v[j]) continue;
    for (size_t i = 0; i < A.rows; ++i) {
      uint32_t a = A(i, j);
      if (a) r[i] = F.add(r[i], F.mul(a, v[j]));
    }
  }
  return r;
}

Vec apply_transpose(const Matrix& A, const Vec& v) {
  const Field& F = *A.field;
  Vec r(A.cols, 0);
  for (size_t i = 0; i < A.rows; ++i) axpy(F, r.data(), v[i], A.row(i), A.cols);
  return r;
}

Matrix transpose(const Matrix& A) {
  Matrix T(A.field, A.cols, A.rows);
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
  return T;
}

Matrix add(const Matrix& A, const Matrix& B) {
  Matrix C = A;
  const Field& F = *A.field;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.add(A.a[i], B.a[i]);
  return C;
}

Matrix sub(const Matrix& A, const Matrix& B) {
  Matrix C = A;
  const Field& F = *A.field;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.sub(A.a[i], B.a[i]);
  return C;
}

Matrix scaled(const Matrix& A, uint32_t c) {
  Matrix C = A;
  const Field& F = *A.field;
  for (auto& x : C.a)
    if (x) x = F.mul(x, c);
  return C;
}

Matrix commutator(const Matrix& A, const Matrix& B) { return sub(mul(A, B), mul(B, A)); }

Matrix power(const Matrix& A, uint64_t e) {
  Matrix R = Matrix::identity(A.field, A.rows);
  Matrix B = A;
  while (e) {
    if (e & 1) R = mul(R, B);
    e >>= 1;
    if (e) B = mul(B, B);
  }
  return R;
}

Matrix shift(const Matrix& A, uint32_t c) {
  Matrix C = A;
  const Field& F = *A.field;
  for (size_t i = 0; i < std::min(A.rows, A.cols); ++i) C(i, i) = F.sub(C(i, i), c);
  return C;
}

std::vector<size_t> rref_in_place(Matrix& M) {
  const Field& F = *M.field;
  std::vector<size_t> piv;
  size_t r = 0;
  for (size_t c = 0; c < M.cols && r < M.rows; ++c) {
    size_t s = r;
    while (s < M.rows && M(s, c) == 0) ++s;
    if (s == M.rows) continue;
    if (s != r)
      for (size_t j = 0; j < M.cols; ++j) std::swap(M(s, j), M(r, j));
    uint32_t iv = F.inv(M(r, c));
    if (iv != 1)
      for (size_t j = c; j < M.cols; ++j)
        if (M(r, j)) M(r, j) = F.mul(M(r, j), iv);
    for (size_t i = 0; i < M.rows; ++i) {
      if (i == r) continue;
      uint32_t f = M(i, c);
      if (f) axpy(F, M.row(i) + c, F.neg(f), M.row(r) + c, M.cols - c);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

std::pair<Matrix, size_t> rref(Matrix M) {
  auto piv = rref_in_place(M);
  return {std::move(M), piv.size()};
}

size_t rank(const Matrix& M) {
  Matrix C = M;
  return rref_in_place(C).size();
}

Subspace canonical(FieldPtr f, size_t n, Matrix M) {
  Subspace S(f, n);
  if (M.rows == 0) return S;
  auto piv = rref_in_place(M);
  S.pivots_ = piv;
  S.rows_.reserve(piv.size());
  for (size_t i = 0; i < piv.size(); ++i) S.rows_.push_back(M.row_vec(i));
  return S;
}

Subspace Subspace::span(FieldPtr f, size_t n, const std::vector<Vec>& vecs) {
  for (const auto& v : vecs)
    if (v.size() != n) throw ValidationError("vector length does not match ambient dimension");
  return canonical(f, n, Matrix::from_rows(f, n, vecs));
}

Subspace Subspace::full(FieldPtr f, size_t n) {
  std::vector<Vec> rows;
  for (size_t i = 0; i < n; ++i) rows.push_back(unit(n, i));
  return span(std::move(f), n, rows);
}

Vec Subspace::reduce(Vec v) const {
  const Field& F = *field_;
  for (size_t i = 0; i < rows_.size(); ++i) {
    uint32_t c = v[pivots_[i]];
    if (c) axpy(F, v, F.neg(c), rows_[i]);
  }
  return v;
}

bool Subspace::member(const Vec& v) const {
  if (v.size() != n_) throw ValidationError("ambient mismatch");
  return is_zero(reduce(v));
}

bool Subspace::contains(const Subspace& o) const {
  if (o.n_ != n_) throw ValidationError("ambient mismatch");
  for (const auto& r : o.rows_)
    if (!member(r)) return false;
  return true;
}

Vec Subspace::coords(const Vec& v) const {
  Vec c(rows_.size());
  for (size_t i = 0; i < rows_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Vec Subspace::from_coords(const Vec& c) const {
  Vec v(n_, 0);
  for (size_t i = 0; i < rows_.size(); ++i) axpy(*field_, v, c[i], rows_[i]);
  return v;
}

std::vector<size_t> Subspace::nonpivots() const {
  std::vector<size_t> out;
  size_t j = 0;
  for (size_t c = 0; c < n_; ++c) {
    if (j < pivots_.size() && pivots_[j] == c) {
      ++j;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

Subspace kernel(const Matrix& M) {
  Matrix R = M;
  auto piv = rref_in_place(R);
  const Field& F = *M.field;
  std::vector<char> is_piv(M.cols, 0);
  for (auto c : piv) is_piv[c] = 1;
  std::vector<Vec> basis;
  for (size_t fcol = 0; fcol < M.cols; ++fcol) {
    if (is_piv[fcol]) continue;
    Vec v(M.cols, 0);
    v[fcol] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F.neg(R(i, fcol));
    basis.push_back(std::move(v));
  }
  return Subspace::span(M.field, M.cols, basis);
}

Subspace image(const Matrix& M) { return canonical(M.field, M.rows, transpose(M)); }

Subspace sum(const Subspace& A, const Subspace& B) {
  if (A.ambient() != B.ambient()) throw ValidationError("ambient mismatch in sum");
  std::vector<Vec> rows = A.rows();
  rows.insert(rows.end(), B.rows().begin(), B.rows().end());
  return Subspace::span(A.field(), A.ambient(), rows);
}

Subspace intersect(const Subspace& A, const Subspace& B) {
  if (A.ambient() != B.ambient()) throw ValidationError("ambient mismatch in intersect");
  size_t n = A.ambient();
  if (A.dim() == 0 || B.dim() == 0) return Subspace(A.field(), n);
  // Zassenhaus: rows (a|a) and (b|0).
  Matrix Z(A.field(), A.dim() + B.dim(), 2 * n);
  for (size_t i = 0; i < A.dim(); ++i)
    for (size_t j = 0; j < n; ++j) Z(i, j) = Z(i, n + j) = A.row(i)[j];
  for (size_t i = 0; i < B.dim(); ++i)
    for (size_t j = 0; j < n; ++j) Z(A.dim() + i, j) = B.row(i)[j];
  auto piv = rref_in_place(Z);
  std::vector<Vec> out;
  for (size_t i = 0; i < piv.size(); ++i)
    if (piv[i] >= n) out.emplace_back(Z.row(i) + n, Z.row(i) + 2 * n);
  return Subspace::span(A.field(), n, out);
}

Subspace annihilator(const Subspace& A) {
  if (A.dim() == 0) return Subspace::full(A.field(), A.ambient());
  return kernel(A.basis());
}

Subspace preimage(const Matrix& M, const Subspace& target) {
  Matrix R(M.field, M.rows, M.cols);
  for (size_t j = 0; j < M.cols; ++j) R.set_col(j, target.reduce(M.col_vec(j)));
  return kernel(R);
}

Subspace image_of(const Matrix& M, const Subspace& S) {
  std::vector<Vec> v;
  for (const auto& r : S.rows()) v.push_back(matvec(M, r));
  return Subspace::span(M.field, M.rows, v);
}

Subspace subspace_op(const Subspace& A, const Subspace& B, SubspaceOp op) {
  return op == SubspaceOp::sum ? sum(A, B) : intersect(A, B);
}

Vec Echelon::reduce(Vec v) const {
  const Field& F = *field_;
  for (size_t k = 0; k < rows_.size(); ++k) {
    uint32_t c = v[piv_[k]];
    if (c) axpy(F, v, F.neg(c), rows_[k]);
  }
  return v;
}

bool Echelon::member(const Vec& v) const { return is_zero(reduce(v)); }

bool Echelon::add(const Vec& v) {
  const Field& F = *field_;
  Vec r = v;
  Vec t;
  if (track_) t.assign(orig_.size() + 1, 0), t[orig_.size()] = 1;
  for (size_t k = 0; k < rows_.size(); ++k) {
    uint32_t c = r[piv_[k]];
    if (!c) continue;
    uint32_t nc = F.neg(c);
    axpy(F, r, nc, rows_[k]);
    if (track_) axpy(F, t.data(), nc, trans_[k].data(), trans_[k].size());
  }
  size_t pv = first_nonzero(r);
  if (pv == r.size()) return false;
  uint32_t iv = F.inv(r[pv]);
  scale_in_place(F, r, iv);
  if (track_) {
    scale_in_place(F, t, iv);
    trans_.push_back(std::move(t));
  }
  rows_.push_back(std::move(r));
  piv_.push_back(pv);
  orig_.push_back(v);
  return true;
}

std::optional<Vec> Echelon::express(const Vec& v) const {
  if (!track_) throw ValidationError("Echelon::express needs tracking");
  const Field& F = *field_;
  Vec r = v;
  Vec out(orig_.size(), 0);
  for (size_t k = 0; k < rows_.size(); ++k) {
    uint32_t c = r[piv_[k]];
    if (!c) continue;
    axpy(F, r, F.neg(c), rows_[k]);
    axpy(F, out.data(), c, trans_[k].data(), trans_[k].size());
  }
  if (!is_zero(r)) return std::nullopt;
  return out;
}

Decomposer::Decomposer(FieldPtr f, size_t n, const std::vector<Vec>& basis) : ech_(f, n, true) {
  for (const auto& b : basis)
    if (!ech_.add(b)) throw ValidationError("Decomposer: basis is dependent");
}

Vec Decomposer::coords_or_throw(const Vec& v) const {
  auto c = ech_.express(v);
  if (!c) throw ValidationError("vector outside the span");
  return *c;
}

std::vector<EigenBlock> simultaneous_eigenspaces(const std::vector<Matrix>& ops,
                                                 const std::vector<std::vector<uint32_t>>& values, size_t n,
                                                 FieldPtr f) {
  for (size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].rows != ops[i].cols || ops[i].rows != ops[0].rows) throw ValidationError("eigenspaces: size mismatch");
    for (size_t j = i + 1; j < ops.size(); ++j)
      if (!commutator(ops[i], ops[j]).is_zero()) throw ValidationError("eigenspaces: operators do not commute");
  }
  std::map<std::pair<size_t, uint32_t>, Subspace> cache;
  std::vector<EigenBlock> out;
  for (const auto& tup : values) {
    if (tup.size() != ops.size()) throw ValidationError("eigenspaces: tuple length mismatch");
    if (ops.empty()) {
      if (!f) throw ValidationError("eigenspaces: no operators and no ambient space given");
      out.push_back({tup, Subspace::full(f, n)});
      continue;
    }
    Subspace S = Subspace::full(ops[0].field, ops[0].rows);
    for (size_t i = 0; i < ops.size(); ++i) {
      auto key = std::make_pair(i, tup[i]);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, kernel(shift(ops[i], tup[i]))).first;
      S = intersect(S, it->second);
    }
    out.push_back({tup, S});
  }
  return out;
}

std::vector<EigenBlock> prime_eigenspaces(const std::vector<Matrix>& ops, size_t n, const FieldPtr& f) {
  std::vector<EigenBlock> blocks{{{}, Subspace::full(f, n)}};
  const Field& F = *f;
  for (const auto& op : ops) {
    std::vector<EigenBlock> next;
    for (auto& b : blocks) {
      size_t d = b.space.dim();
      if (d == 0) continue;
      // Restrict op to the invariant block.
      Matrix R(f, d, d);
      for (size_t i = 0; i < d; ++i) {
        Vec img = matvec(op, b.space.row(i));
        Vec c = b.space.coords(img);
        for (size_t r = 0; r < d; ++r) R(r, i) = c[r];
      }
      for (uint32_t lam = 0; lam < F.p(); ++lam) {
        Subspace K = kernel(shift(R, lam));
        if (K.dim() == 0) continue;
        std::vector<Vec> vs;
        for (const auto& kv : K.rows()) vs.push_back(b.space.from_coords(kv));
        auto vals = b.values;
        vals.push_back(lam);
        next.push_back({vals, Subspace::span(f, n, vs)});
      }
    }
    blocks = std::move(next);
  }
  std::sort(blocks.begin(), blocks.end(), [](const EigenBlock& a, const EigenBlock& b) { return a.values < b.values; });
  return blocks;
}

Vec embed_vec(const Vec& v, const FieldPtr& src, const FieldPtr& dst) {
  if (src->same(*dst)) return v;
  const Embedding& e = embedding(src, dst);
  Vec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = e(v[i]);
  return r;
}

Matrix embed_matrix(const Matrix& M, const FieldPtr& dst) {
  Matrix R(dst, M.rows, M.cols);
  R.a = embed_vec(M.a, M.field, dst);
  return R;
}

Subspace embed_subspace(const Subspace& S, const FieldPtr& dst) {
  std::vector<Vec> rows;
  for (const auto& r : S.rows()) rows.push_back(embed_vec(r, S.field(), dst));
  return Subspace::span(dst, S.ambient(), rows);
}

}  // namespace modlie
