#include "modlie/liealg.hpp"

#include <algorithm>

#include "modlie/error.hpp"
#include "modlie/parallel.hpp"
#include "modlie/spin.hpp"

namespace modlie {

LieAlgebra::LieAlgebra(FieldPtr f, size_t n) : field_(std::move(f)), n_(n), sc_(n * (n ? n - 1 : 0) / 2) {}

void LieAlgebra::set_bracket(size_t i, size_t j, const Vec& v) {
  if (v.size() != n_) throw ValidationError("bracket vector has wrong length");
  SparseVec s;
  for (size_t k = 0; k < n_; ++k)
    if (v[k]) s.emplace_back(static_cast<uint32_t>(k), v[k]);
  set_bracket_sparse(i, j, std::move(s));
}

void LieAlgebra::set_bracket_sparse(size_t i, size_t j, SparseVec v) {
  if (i >= n_ || j >= n_) throw ValidationError("bracket index out of range");
  if (i == j) {
    if (!v.empty()) throw ValidationError("[e_i, e_i] must vanish");
    return;
  }
  std::sort(v.begin(), v.end());
  SparseVec clean;
  for (auto& [k, c] : v) {
    if (k >= n_) throw ValidationError("bracket coefficient index out of range");
    if (!clean.empty() && clean.back().first == k) {
      clean.back().second = F().add(clean.back().second, c);
    } else {
      clean.emplace_back(k, c);
    }
  }
  std::erase_if(clean, [](const auto& e) { return e.second == 0; });
  if (i > j) {
    for (auto& e : clean) e.second = F().neg(e.second);
    std::swap(i, j);
  }
  sc_[index(i, j)] = std::move(clean);
}

std::string LieAlgebra::label(size_t i) const {
  if (i < labels_.size()) return labels_[i];
  return "e" + std::to_string(i);
}

size_t LieAlgebra::nnz() const {
  size_t t = 0;
  for (const auto& s : sc_) t += s.size();
  return t;
}

void LieAlgebra::add_scaled(Vec& acc, uint32_t c, size_t i, size_t j) const {
  if (i == j || c == 0) return;
  const Field& Fd = F();
  if (i < j) {
    for (auto [k, v] : sc_[index(i, j)]) acc[k] = Fd.add(acc[k], Fd.mul(c, v));
  } else {
    for (auto [k, v] : sc_[index(j, i)]) acc[k] = Fd.sub(acc[k], Fd.mul(c, v));
  }
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != n_ || y.size() != n_) throw ValidationError("bracket: vector length mismatch");
  std::vector<uint32_t> nx, ny;
  for (size_t i = 0; i < n_; ++i) {
    if (x[i]) nx.push_back(static_cast<uint32_t>(i));
    if (y[i]) ny.push_back(static_cast<uint32_t>(i));
  }
  const Field& Fd = F();
  if (Fd.is_prime()) {
    const uint64_t p = Fd.p();
    std::vector<uint64_t> acc(n_, 0);
    for (uint32_t i : nx)
      for (uint32_t j : ny) {
        if (i == j) continue;
        uint64_t c = static_cast<uint64_t>(x[i]) * y[j] % p;
        if (i < j) {
          for (auto [k, v] : sc_[index(i, j)]) acc[k] += c * v;
        } else {
          c = p - c;
          for (auto [k, v] : sc_[index(j, i)]) acc[k] += c * v;
        }
      }
    Vec r(n_);
    for (size_t k = 0; k < n_; ++k) r[k] = static_cast<uint32_t>(acc[k] % p);
    return r;
  }
  Vec r(n_, 0);
  for (uint32_t i : nx)
    for (uint32_t j : ny) add_scaled(r, Fd.mul(x[i], y[j]), i, j);
  return r;
}

Vec LieAlgebra::bracket_basis(size_t i, const Vec& y) const {
  Vec r(n_, 0);
  for (size_t j = 0; j < n_; ++j)
    if (y[j]) add_scaled(r, y[j], i, j);
  return r;
}

Vec LieAlgebra::bracket_basis2(size_t i, size_t j) const {
  Vec r(n_, 0);
  add_scaled(r, 1, i, j);
  return r;
}

Matrix LieAlgebra::ad(const Vec& x) const {
  Matrix M(field_, n_, n_);
  const Field& Fd = F();
  for (size_t i = 0; i < n_; ++i) {
    if (!x[i]) continue;
    for (size_t j = 0; j < n_; ++j) {
      if (i == j) continue;
      if (i < j) {
        for (auto [k, v] : sc_[index(i, j)]) M(k, j) = Fd.add(M(k, j), Fd.mul(x[i], v));
      } else {
        for (auto [k, v] : sc_[index(j, i)]) M(k, j) = Fd.sub(M(k, j), Fd.mul(x[i], v));
      }
    }
  }
  return M;
}

Matrix LieAlgebra::ad_basis(size_t i) const { return ad(unit(n_, i)); }

bool LieAlgebra::jacobi_holds() const {
  size_t n = n_;
  std::vector<char> ok(n, 1);
  parallel_for(n, [&](size_t i) {
    Vec acc(n, 0);
    const Field& Fd = F();
    for (size_t j = i + 1; j < n && ok[i]; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        for (auto [l, c] : sc_[index(i, j)]) add_scaled(acc, c, l, k);
        for (auto [l, c] : sc_[index(j, k)]) add_scaled(acc, c, l, i);
        for (auto [l, c] : sc_[index(i, k)]) add_scaled(acc, Fd.neg(c), l, j);
        if (!is_zero(acc)) {
          ok[i] = 0;
          break;
        }
      }
  });
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

bool LieAlgebra::pmap_law_holds() const {
  if (!pmap_) return true;
  if (pmap_->size() != n_) return false;
  uint32_t p = F().p();
  for (size_t i = 0; i < n_; ++i) {
    Matrix A = ad((*pmap_)[i]);
    for (size_t j = 0; j < n_; ++j) {
      Vec v = unit(n_, j);
      for (uint32_t t = 0; t < p; ++t) v = bracket_basis(i, v);
      if (v != A.col_vec(j)) return false;
    }
  }
  return true;
}

void LieAlgebra::verify() const {
  if (!jacobi_holds()) throw AlarmError("structure constants violate the Jacobi identity");
  if (!pmap_law_holds()) throw AlarmError("p-map does not satisfy ad(x^[p]) = ad(x)^p");
}

LieAlgebra LieAlgebra::embedded(const FieldPtr& target) const {
  if (target->same(F())) return *this;
  const Embedding& e = embedding(field_, target);
  LieAlgebra R(target, n_);
  for (size_t t = 0; t < sc_.size(); ++t) {
    SparseVec s = sc_[t];
    for (auto& kv : s) kv.second = e(kv.second);
    R.sc_[t] = std::move(s);
  }
  if (pmap_) {
    std::vector<Vec> pm;
    for (const auto& v : *pmap_) pm.push_back(embed_vec(v, field_, target));
    R.pmap_ = std::move(pm);
  }
  R.labels_ = labels_;
  return R;
}

Homomorphism::Homomorphism(AlgPtr s, AlgPtr t, Matrix m, bool check)
    : source(std::move(s)), target(std::move(t)), matrix(std::move(m)) {
  if (matrix.rows != target->dim() || matrix.cols != source->dim())
    throw ValidationError("homomorphism matrix has wrong shape");
  if (check && !preserves_brackets()) throw ValidationError("map does not preserve brackets");
}

bool Homomorphism::preserves_brackets() const {
  size_t n = source->dim();
  std::vector<Vec> cols;
  for (size_t j = 0; j < n; ++j) cols.push_back(matrix.col_vec(j));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      Vec lhs = matvec(matrix, source->bracket_basis2(i, j));
      if (lhs != target->bracket(cols[i], cols[j])) return false;
    }
  return true;
}

bool is_subalgebra(const LieAlgebra& L, const Subspace& S) {
  for (size_t i = 0; i < S.dim(); ++i)
    for (size_t j = i + 1; j < S.dim(); ++j)
      if (!S.member(L.bracket(S.row(i), S.row(j)))) return false;
  return true;
}

bool is_ideal(const LieAlgebra& L, const Subspace& S) {
  for (size_t g = 0; g < L.dim(); ++g)
    for (const auto& s : S.rows())
      if (!S.member(L.bracket_basis(g, s))) return false;
  return true;
}

Subspace bracket_space(const LieAlgebra& L, const Subspace& A, const Subspace& B) {
  Echelon E(L.field(), L.dim());
  for (size_t i = 0; i < A.dim(); ++i)
    for (size_t j = 0; j < B.dim(); ++j) {
      if (E.rank() == L.dim()) break;
      E.add(L.bracket(A.row(i), B.row(j)));
    }
  return E.span();
}

namespace {

// Closure of seeds under x -> [g, x] for g in the operator list.
Subspace spin_under(const LieAlgebra& L, const std::vector<Vec>& seeds, const std::vector<Vec>& acting,
                    const std::vector<size_t>& acting_basis) {
  size_t n = L.dim();
  Echelon E(L.field(), n);
  std::vector<Vec> queue;
  for (const auto& s : seeds)
    if (E.add(s)) queue.push_back(s);
  for (size_t qi = 0; qi < queue.size() && E.rank() < n; ++qi) {
    for (const auto& a : acting) {
      Vec w = L.bracket(a, queue[qi]);
      if (E.add(w)) queue.push_back(std::move(w));
    }
    for (size_t g : acting_basis) {
      Vec w = L.bracket_basis(g, queue[qi]);
      if (E.add(w)) queue.push_back(std::move(w));
    }
  }
  if (E.rank() == n) return Subspace::full(L.field(), n);
  return E.span();
}

}  // namespace

Subspace subalgebra_closure(const LieAlgebra& L, const Subspace& S) {
  return spin_under(L, S.rows(), S.rows(), {});
}

Subspace ideal_closure(const LieAlgebra& L, const Subspace& S) {
  return spin_under(L, S.rows(), {}, lie_generators(L));
}

std::vector<size_t> lie_generators(const LieAlgebra& L) {
  size_t n = L.dim();
  std::vector<size_t> gens;
  Echelon E(L.field(), n);
  std::vector<Vec> vecs;
  std::vector<size_t> applied;
  for (size_t i = 0; i < n && E.rank() < n; ++i) {
    Vec ei = unit(n, i);
    if (E.member(ei)) continue;
    gens.push_back(i);
    E.add(ei);
    vecs.push_back(ei);
    applied.push_back(0);
    bool changed = true;
    while (changed && E.rank() < n) {
      changed = false;
      for (size_t v = 0; v < vecs.size(); ++v) {
        while (applied[v] < gens.size()) {
          Vec w = L.bracket_basis(gens[applied[v]], vecs[v]);
          ++applied[v];
          if (E.add(w)) {
            vecs.push_back(std::move(w));
            applied.push_back(0);
            changed = true;
          }
        }
      }
    }
  }
  return gens;
}

Series series(const LieAlgebra& L, SeriesKind kind, const Subspace& I) {
  if (!is_subalgebra(L, I)) throw ValidationError("series: subspace is not a subalgebra");
  Series s;
  s.terms.push_back(I);
  for (;;) {
    const Subspace& cur = s.terms.back();
    Subspace next = kind == SeriesKind::derived ? bracket_space(L, cur, cur) : bracket_space(L, I, cur);
    if (next == cur) break;
    s.terms.push_back(std::move(next));
    if (s.terms.back().dim() == 0) break;
  }
  return s;
}

bool is_solvable(const LieAlgebra& L, const Subspace& I) {
  return series(L, SeriesKind::derived, I).stable().dim() == 0;
}

bool is_solvable(const LieAlgebra& L) { return is_solvable(L, Subspace::full(L.field(), L.dim())); }

bool is_nilpotent(const LieAlgebra& L) {
  Subspace full = Subspace::full(L.field(), L.dim());
  return series(L, SeriesKind::lower_central, full).stable().dim() == 0;
}

bool is_nilpotent_action(const LieAlgebra& L, const Subspace& A, const Subspace& V) {
  Subspace cur = V;
  while (cur.dim() > 0) {
    Subspace next = bracket_space(L, A, cur);
    if (next.dim() >= cur.dim()) return false;
    cur = std::move(next);
  }
  return true;
}

bool is_nilpotent_action(const std::vector<Matrix>& ops, const Subspace& V) {
  Subspace cur = V;
  while (cur.dim() > 0) {
    std::vector<Vec> imgs;
    for (const auto& op : ops)
      for (const auto& r : cur.rows()) imgs.push_back(matvec(op, r));
    Subspace next = Subspace::span(V.field(), V.ambient(), imgs);
    if (next.dim() >= cur.dim()) return false;
    cur = std::move(next);
  }
  return true;
}

Subspace centralizer(const LieAlgebra& L, const Subspace& S) {
  size_t n = L.dim();
  std::vector<Vec> acting;
  if (S.dim() == n) {
    for (size_t g : lie_generators(L)) acting.push_back(unit(n, g));
  } else {
    acting = S.rows();
  }
  if (acting.empty()) return Subspace::full(L.field(), n);
  Matrix stack(L.field(), n * acting.size(), n);
  for (size_t a = 0; a < acting.size(); ++a) {
    Matrix A = L.ad(acting[a]);
    std::copy(A.a.begin(), A.a.end(), stack.a.begin() + a * n * n);
  }
  return kernel(stack);
}

Subspace center(const LieAlgebra& L) { return centralizer(L, Subspace::full(L.field(), L.dim())); }

Subspace normalizer(const LieAlgebra& L, const Subspace& S) {
  size_t n = L.dim();
  if (S.dim() == 0 || S.dim() == n) return Subspace::full(L.field(), n);
  Matrix stack(L.field(), n * S.dim(), n);
  for (size_t i = 0; i < S.dim(); ++i)
    for (size_t j = 0; j < n; ++j) {
      Vec r = S.reduce(L.bracket_basis(j, S.row(i)));
      for (size_t k = 0; k < n; ++k) stack(i * n + k, j) = r[k];
    }
  return kernel(stack);
}

SubalgebraResult extract_subalgebra(const AlgPtr& L, const Subspace& S, bool check) {
  size_t m = S.dim();
  auto A = std::make_shared<LieAlgebra>(L->field(), m);
  std::vector<std::string> labels;
  bool unit_rows = true;
  for (size_t i = 0; i < m; ++i) {
    size_t nz = 0;
    for (auto x : S.row(i)) nz += x != 0;
    if (nz != 1) unit_rows = false;
  }
  std::vector<Vec> prod(m * m);
  parallel_for(m, [&](size_t i) {
    for (size_t j = i + 1; j < m; ++j) prod[i * m + j] = L->bracket(S.row(i), S.row(j));
  });
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) {
      const Vec& b = prod[i * m + j];
      if (!S.member(b)) throw ValidationError("subspace is not a subalgebra");
      A->set_bracket(i, j, S.coords(b));
    }
  if (unit_rows && !L->labels().empty())
    for (size_t i = 0; i < m; ++i) labels.push_back(L->label(S.pivots()[i]));
  A->set_labels(labels);
  if (check) A->verify();
  Matrix inc = transpose(S.basis());
  return {A, Homomorphism(A, L, std::move(inc), false)};
}

SubalgebraResult algebra_from_basis(const AlgPtr& L, const std::vector<Vec>& basis, std::vector<std::string> labels,
                                    bool check) {
  size_t m = basis.size();
  Decomposer D(L->field(), L->dim(), basis);
  auto A = std::make_shared<LieAlgebra>(L->field(), m);
  std::vector<Vec> coords(m * m);
  parallel_for(m, [&](size_t i) {
    for (size_t j = i + 1; j < m; ++j) {
      Vec b = L->bracket(basis[i], basis[j]);
      auto c = D.coords(b);
      if (!c) throw ValidationError("basis does not span a subalgebra");
      coords[i * m + j] = std::move(*c);
    }
  });
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) A->set_bracket(i, j, coords[i * m + j]);
  A->set_labels(std::move(labels));
  if (check) A->verify();
  Matrix inc = Matrix::from_cols(L->field(), L->dim(), basis);
  return {A, Homomorphism(A, L, std::move(inc), false)};
}

QuotientResult quotient(const AlgPtr& L, const Subspace& I) {
  if (!is_ideal(*L, I)) throw ValidationError("quotient: subspace is not an ideal");
  std::vector<size_t> lift = I.nonpivots();
  size_t m = lift.size();
  size_t n = L->dim();
  auto Q = std::make_shared<LieAlgebra>(L->field(), m);
  for (size_t a = 0; a < m; ++a)
    for (size_t b = a + 1; b < m; ++b) {
      Vec r = I.reduce(L->bracket_basis2(lift[a], lift[b]));
      Vec c(m);
      for (size_t t = 0; t < m; ++t) c[t] = r[lift[t]];
      Q->set_bracket(a, b, c);
    }
  std::vector<std::string> labels;
  if (!L->labels().empty())
    for (size_t t : lift) labels.push_back(L->label(t));
  Q->set_labels(labels);
  Matrix P(L->field(), m, n);
  for (size_t j = 0; j < n; ++j) {
    Vec r = I.reduce(unit(n, j));
    for (size_t t = 0; t < m; ++t) P(t, j) = r[lift[t]];
  }
  return {Q, Homomorphism(L, Q, std::move(P), false), lift};
}

Matrix induced_on_quotient(const QuotientResult& Q, const Matrix& D) {
  size_t m = Q.lift.size();
  size_t n = Q.proj.matrix.cols;
  Matrix R(D.field, m, m);
  for (size_t j = 0; j < m; ++j) R.set_col(j, matvec(Q.proj.matrix, matvec(D, unit(n, Q.lift[j]))));
  return R;
}

Matrix restrict_to(const Matrix& D, const Subspace& S) {
  size_t d = S.dim();
  Matrix R(D.field, d, d);
  for (size_t i = 0; i < d; ++i) {
    Vec img = matvec(D, S.row(i));
    if (!S.member(img)) throw ValidationError("restrict_to: subspace is not invariant");
    R.set_col(i, S.coords(img));
  }
  return R;
}

std::vector<Matrix> generating_ads(const LieAlgebra& L, Rng& rng) {
  size_t n = L.dim();
  // Two random elements usually generate; fall back to basis generators.
  std::vector<Vec> xs;
  for (int t = 0; t < 2 && n > 0; ++t) xs.push_back(rng.vec(n, L.F().q()));
  Module probe{L.field(), n, {}, {}};
  for (const auto& x : xs) probe.gens.push_back(L.ad(x));
  if (n > 0 && spin(probe, xs).dim() == n) return probe.gens;
  std::vector<Matrix> out;
  for (size_t g : lie_generators(L)) out.push_back(L.ad_basis(g));
  return out;
}

namespace {

Module adjoint_module(const LieAlgebra& L, const std::vector<Matrix>& extra, Rng& rng) {
  Module M;
  M.field = L.field();
  M.dim = L.dim();
  M.gens = generating_ads(L, rng);
  for (const auto& e : extra) M.gens.push_back(e);
  for (int t = 0; t < 2 && L.dim() > 0; ++t) M.pool.push_back(L.ad(rng.vec(L.dim(), L.F().q())));
  return M;
}

bool is_abelian_subspace(const LieAlgebra& L, const Subspace& I) {
  for (size_t i = 0; i < I.dim(); ++i)
    for (size_t j = i + 1; j < I.dim(); ++j)
      if (!is_zero(L.bracket(I.row(i), I.row(j)))) return false;
  return true;
}

}  // namespace

std::vector<Subspace> minimal_ideals(const AlgPtr& L, const std::vector<Matrix>& extra, uint64_t seed) {
  Rng rng(seed);
  Module M = adjoint_module(*L, extra, rng);
  size_t n = L->dim();
  std::vector<Subspace> out;
  Subspace W = Subspace::full(L->field(), n);
  while (W.dim() > 0) {
    Subspace I = minimal_submodule(M, W, rng);
    out.push_back(I);
    // Abelian minimal ideals come in families; only nonabelian ones are separated.
    if (is_abelian_subspace(*L, I)) break;
    W = intersect(W, centralizer(*L, I));
  }
  return out;
}

Subspace solvable_radical(const AlgPtr& L, const std::vector<Matrix>& extra, uint64_t seed) {
  size_t n = L->dim();
  if (is_solvable(*L)) return Subspace::full(L->field(), n);
  Rng rng(seed);
  AlgPtr cur = L;
  std::vector<Matrix> ops = extra;
  // Composite projection L -> cur.
  Matrix proj = Matrix::identity(L->field(), n);
  for (;;) {
    Module M = adjoint_module(*cur, ops, rng);
    // Other minimal ideals centralize a nonabelian one; look there for an abelian one.
    Subspace W = Subspace::full(cur->field(), cur->dim());
    Subspace I;
    bool found = false;
    while (W.dim() > 0) {
      I = minimal_submodule(M, W, rng);
      if (is_abelian_subspace(*cur, I)) {
        found = true;
        break;
      }
      W = intersect(W, centralizer(*cur, I));
    }
    if (!found) break;
    QuotientResult Q = quotient(cur, I);
    std::vector<Matrix> nops;
    for (const auto& D : ops) nops.push_back(induced_on_quotient(Q, D));
    proj = mul(Q.proj.matrix, proj);
    cur = Q.alg;
    ops = std::move(nops);
    if (cur->dim() == 0) break;
  }
  return kernel(proj);
}

bool is_simple(const AlgPtr& L, uint64_t seed) {
  size_t n = L->dim();
  if (n == 0) return false;
  if (n == 1) return false;
  Rng rng(seed);
  Module M = adjoint_module(*L, {}, rng);
  if (L->nnz() == 0) return false;
  return is_irreducible(M, rng);
}

}  // namespace modlie
