#include <cmath>

#include "modlie/error.hpp"
#include "modlie/liealg.hpp"
#include "modlie/spin.hpp"

namespace modlie {

namespace {

// Commutant of the operators, via images of spin seeds.
std::vector<Matrix> commutant(const FieldPtr& f, size_t n, const std::vector<Matrix>& ops, Rng& rng) {
  const Field& F = *f;
  // Spin tree: w[k] = ops[opi[k]] w[parent[k]], or a seed.
  std::vector<Vec> w;
  std::vector<int> parent, opi, seed_of;
  std::vector<std::vector<int>> child;  // child[k][o] = index of ops[o] w[k] when it was added
  Echelon tracked(f, n, true);
  size_t nseeds = 0, next = 0;
  while (tracked.rank() < n) {
    Vec s;
    do s = rng.vec(n, F.q());
    while (tracked.member(s));
    tracked.add(s);
    w.push_back(s);
    parent.push_back(-1);
    opi.push_back(-1);
    seed_of.push_back(static_cast<int>(nseeds++));
    for (; next < w.size(); ++next) {
      child.emplace_back(ops.size(), -1);
      for (size_t o = 0; o < ops.size(); ++o) {
        Vec v = matvec(ops[o], w[next]);
        if (tracked.add(v)) {
          child[next][o] = static_cast<int>(w.size());
          w.push_back(std::move(v));
          parent.push_back(static_cast<int>(next));
          opi.push_back(static_cast<int>(o));
          seed_of.push_back(-1);
        }
      }
    }
  }
  size_t U = nseeds * n;
  // phi(w_k) = M_k u
  std::vector<Matrix> Mk(n);
  for (size_t k = 0; k < n; ++k) {
    if (parent[k] < 0) {
      Matrix M(f, n, U);
      size_t sidx = static_cast<size_t>(seed_of[k]);
      for (size_t i = 0; i < n; ++i) M(i, sidx * n + i) = 1;
      Mk[k] = std::move(M);
    } else {
      Mk[k] = mul(ops[static_cast<size_t>(opi[k])], Mk[static_cast<size_t>(parent[k])]);
    }
  }
  Echelon sys(f, U);
  for (size_t k = 0; k < n && sys.rank() < U; ++k)
    for (size_t o = 0; o < ops.size() && sys.rank() < U; ++o) {
      if (child[k][o] >= 0) continue;
      Vec c = *tracked.express(matvec(ops[o], w[k]));
      Matrix E = mul(ops[o], Mk[k]);
      for (size_t l = 0; l < n; ++l)
        if (c[l]) axpy(F, E.a, F.neg(c[l]), Mk[l].a);
      for (size_t r = 0; r < n && sys.rank() < U; ++r) sys.add(E.row_vec(r));
    }
  if (sys.rank() == U) return {};
  Subspace eqs = sys.span();
  Subspace sol = eqs.dim() == 0 ? Subspace::full(f, U) : kernel(eqs.basis());
  std::vector<Vec> coords(n);
  for (size_t j = 0; j < n; ++j) coords[j] = *tracked.express(unit(n, j));
  std::vector<Matrix> out;
  for (const auto& u : sol.rows()) {
    std::vector<Vec> phi_w(n);
    for (size_t k = 0; k < n; ++k) phi_w[k] = matvec(Mk[k], u);
    Matrix P(f, n, n);
    for (size_t j = 0; j < n; ++j) {
      Vec col(n, 0);
      for (size_t k = 0; k < n; ++k)
        if (coords[j][k]) axpy(F, col, coords[j][k], phi_w[k]);
      P.set_col(j, col);
    }
    out.push_back(std::move(P));
  }
  return out;
}

Subspace product_space(const Centroid& C, const Subspace& X, const Subspace& Y) {
  const Field& F = *C.basis[0].field;
  size_t d = C.dim();
  std::vector<Vec> out;
  for (const auto& x : X.rows())
    for (const auto& y : Y.rows()) {
      Vec z(d, 0);
      for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
          if (x[i] && y[j]) axpy(F, z, F.mul(x[i], y[j]), C.mult[i][j]);
      out.push_back(std::move(z));
    }
  return Subspace::span(C.basis[0].field, d, out);
}

Matrix combo(const Centroid& C, const Vec& c) {
  Matrix M(C.basis[0].field, C.basis[0].rows, C.basis[0].cols);
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i]) M = add(M, scaled(C.basis[i], c[i]));
  return M;
}

}  // namespace

Centroid centroid(const LieAlgebra& L, uint64_t seed) {
  Centroid C;
  size_t n = L.dim();
  if (n == 0) return C;
  const FieldPtr& f = L.field();
  const Field& F = *f;
  Rng rng(seed);
  std::vector<Matrix> ops = generating_ads(L, rng);
  auto sols = commutant(f, n, ops, rng);
  Echelon E(f, n * n);
  Matrix I = Matrix::identity(f, n);
  E.add(I.a);
  C.basis.push_back(I);
  for (auto& S : sols)
    if (E.add(S.a)) C.basis.push_back(std::move(S));
  size_t d = C.dim();
  std::vector<Vec> flat;
  for (const auto& B : C.basis) flat.push_back(B.a);
  Decomposer D(f, n * n, flat);
  C.mult.assign(d, std::vector<Vec>(d));
  C.commutative = true;
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      C.mult[i][j] = D.coords_or_throw(mul(C.basis[i], C.basis[j]).a);
      if (j < i && C.mult[i][j] != C.mult[j][i]) C.commutative = false;
    }
  if (!C.commutative) {
    C.radical = Subspace(f, d);
    return C;
  }
  // x nilpotent iff x^(p^N) = 0 with p^N >= d; Frobenius makes this linear in c^(p^N).
  uint64_t pn = F.p();
  size_t N = 1;
  while (pn < d + 1) pn *= F.p(), ++N;
  Matrix map(f, d, d);
  for (size_t i = 0; i < d; ++i) {
    Matrix P = power(C.basis[i], pn);
    map.set_col(i, D.coords_or_throw(P.a));
  }
  Subspace K = kernel(map);
  // Undo N Frobenius steps coordinatewise; Frobenius has order k.
  size_t back = (F.k() - N % F.k()) % F.k();
  std::vector<Vec> rows;
  for (auto r : K.rows()) {
    for (auto& x : r)
      for (size_t t = 0; t < back; ++t) x = F.frob(x);
    rows.push_back(r);
  }
  C.radical = Subspace::span(f, d, rows);
  C.local = C.radical.dim() + 1 == d;
  Subspace pw = C.radical;
  C.nilpotency_index = 1;
  while (pw.dim() > 0) {
    pw = product_space(C, pw, C.radical);
    ++C.nilpotency_index;
  }
  return C;
}

TensorFactorization tensor_factorize(const AlgPtr& A, uint64_t seed) {
  TensorFactorization T;
  const FieldPtr& f = A->field();
  const Field& F = *f;
  size_t n = A->dim();
  T.cent = centroid(*A, seed);
  const Centroid& C = T.cent;
  size_t d = C.dim();
  if (!C.commutative || !C.local) throw ValidationError("centroid is not a local commutative algebra");
  size_t m = 0;
  for (size_t t = d; t > 1; t /= F.p()) {
    if (t % F.p()) throw ValidationError("centroid dimension is not a power of p");
    ++m;
  }
  // m/m^2 has dimension m and every radical element has p-th power 0.
  Subspace m2 = product_space(C, C.radical, C.radical);
  if (C.radical.dim() - m2.dim() != m) throw ValidationError("centroid is not a divided power algebra");
  for (const auto& r : C.radical.rows())
    if (!power(combo(C, r), F.p()).is_zero()) throw ValidationError("centroid radical has nonzero p-th powers");
  T.m = m;
  // Filtration F_k = m^k A.
  std::vector<Matrix> rad_ops;
  for (const auto& r : C.radical.rows()) rad_ops.push_back(combo(C, r));
  std::vector<Subspace> filt{Subspace::full(f, n)};
  while (filt.back().dim() > 0) {
    std::vector<Vec> v;
    for (const auto& R : rad_ops)
      for (const auto& x : filt.back().rows()) v.push_back(matvec(R, x));
    filt.push_back(Subspace::span(f, n, v));
  }
  QuotientResult Q = quotient(A, filt[1]);
  T.S = Q.alg;
  size_t s = Q.alg->dim();
  if (s * d != n) throw ValidationError("dimension is not dim S times dim of the centroid");
  std::vector<Vec> sigma(s);
  for (size_t j = 0; j < s; ++j) sigma[j] = unit(n, Q.lift[j]);
  const LieAlgebra& S = *Q.alg;
  for (size_t k = 1; k + 1 < filt.size(); ++k) {
    const Subspace& Fk = filt[k];
    const Subspace& Fk1 = filt[k + 1];
    std::vector<Vec> comp;
    Echelon ech(f, n);
    for (const auto& r : Fk1.rows()) ech.add(r);
    for (const auto& r : Fk.rows())
      if (ech.add(r)) comp.push_back(r);
    size_t dk = comp.size();
    std::vector<Vec> dbasis = Fk1.rows();
    dbasis.insert(dbasis.end(), comp.begin(), comp.end());
    Decomposer dec(f, n, dbasis);
    auto gr = [&](const Vec& v) {
      Vec c = dec.coords_or_throw(v);
      return Vec(c.begin() + static_cast<long>(Fk1.dim()), c.end());
    };
    // [sigma s_i, comp_t] in gr coordinates
    std::vector<std::vector<Vec>> act(s, std::vector<Vec>(dk));
    for (size_t i = 0; i < s; ++i)
      for (size_t t = 0; t < dk; ++t) act[i][t] = gr(A->bracket(sigma[i], comp[t]));
    size_t U = s * dk;
    std::vector<Vec> rows;
    for (size_t i = 0; i < s; ++i)
      for (size_t j = i + 1; j < s; ++j) {
        Vec lhs(n, 0);
        Vec sij = S.bracket_basis2(i, j);
        for (size_t l = 0; l < s; ++l)
          if (sij[l]) axpy(F, lhs, sij[l], sigma[l]);
        Vec defect = sub(F, lhs, A->bracket(sigma[i], sigma[j]));
        if (!Fk.member(defect)) throw AlarmError("lifting lost the filtration level");
        Vec rhs = gr(defect);
        // tau([s_i,s_j]) - [sigma s_i, tau s_j] + [sigma s_j, tau s_i] = -defect
        for (size_t r = 0; r < dk; ++r) {
          Vec row(U + 1, 0);
          for (size_t l = 0; l < s; ++l)
            if (sij[l]) row[l * dk + r] = F.add(row[l * dk + r], sij[l]);
          for (size_t t = 0; t < dk; ++t) {
            if (act[i][t][r]) row[j * dk + t] = F.sub(row[j * dk + t], act[i][t][r]);
            if (act[j][t][r]) row[i * dk + t] = F.add(row[i * dk + t], act[j][t][r]);
          }
          row[U] = F.neg(rhs[r]);
          rows.push_back(std::move(row));
        }
      }
    if (rows.empty()) continue;
    Matrix Msys = Matrix::from_rows(f, U + 1, rows);
    auto piv = rref_in_place(Msys);
    if (!piv.empty() && piv.back() == U) throw AlarmError("tensor factorization: lifting obstruction");
    Vec y(U, 0);
    for (size_t r = 0; r < piv.size(); ++r) y[piv[r]] = Msys(r, U);
    for (size_t i = 0; i < s; ++i)
      for (size_t t = 0; t < dk; ++t)
        if (y[i * dk + t]) axpy(F, sigma[i], y[i * dk + t], comp[t]);
  }
  for (size_t i = 0; i < s; ++i)
    for (size_t j = i + 1; j < s; ++j) {
      Vec lhs(n, 0);
      Vec sij = S.bracket_basis2(i, j);
      for (size_t l = 0; l < s; ++l)
        if (sij[l]) axpy(F, lhs, sij[l], sigma[l]);
      if (lhs != A->bracket(sigma[i], sigma[j])) throw AlarmError("tensor factorization: section is not a homomorphism");
    }
  T.iso = Matrix(f, n, s * d);
  for (size_t i = 0; i < s; ++i)
    for (size_t c = 0; c < d; ++c) T.iso.set_col(i * d + c, matvec(C.basis[c], sigma[i]));
  if (rank(T.iso) != n) throw AlarmError("tensor factorization: map is not bijective");
  return T;
}

}  // namespace modlie
