#include "modlie/graded.hpp"

#include <algorithm>

#include "modlie/error.hpp"
#include "modlie/restricted.hpp"
#include "modlie/spin.hpp"

namespace modlie {

namespace {

// Coordinates of v modulo W, in the nonpivot positions of W.
Vec mod_coords(const Subspace& W, const Vec& v, const std::vector<size_t>& np) {
  Vec r = W.reduce(v);
  Vec out(np.size());
  for (size_t k = 0; k < np.size(); ++k) out[k] = r[np[k]];
  return out;
}

Subspace lift_mod(const Subspace& W, const Subspace& Q, const std::vector<size_t>& np) {
  std::vector<Vec> rows = W.rows();
  for (const auto& q : Q.rows()) {
    Vec v(W.ambient(), 0);
    for (size_t k = 0; k < np.size(); ++k) v[np[k]] = q[k];
    rows.push_back(v);
  }
  return Subspace::span(W.field(), W.ambient(), rows);
}

}  // namespace

Subspace Filtration::at(int i) const {
  if (i < -depth) return steps.front();
  size_t k = static_cast<size_t>(i + depth);
  if (k >= steps.size()) return steps.back();
  return steps[k];
}

std::vector<size_t> Filtration::dims() const {
  std::vector<size_t> d;
  for (const auto& s : steps) d.push_back(s.dim());
  return d;
}

Filtration standard_filtration(const AlgPtr& Lp, const Subspace& M, uint64_t seed) {
  const auto& L = *Lp;
  const auto& f = L.field();
  size_t n = L.dim();
  if (M.ambient() != n) throw ValidationError("subspace lives in the wrong space");
  if (!is_subalgebra(L, M)) throw ValidationError("M is not a subalgebra");
  if (M.dim() == n) throw ValidationError("M = L; the standard filtration needs a proper subalgebra");
  auto np = M.nonpivots();
  Module mod;
  mod.field = f;
  mod.dim = np.size();
  for (const auto& m : M.rows()) {
    Matrix A(f, np.size(), np.size());
    for (size_t c = 0; c < np.size(); ++c) {
      Vec col = mod_coords(M, L.bracket_basis(np[c], m), np);
      for (size_t r = 0; r < np.size(); ++r) A(r, c) = f->neg(col[r]);
    }
    mod.gens.push_back(std::move(A));
  }
  Rng rng(seed);
  Subspace Lm1;
  if (mod.gens.empty()) {
    Lm1 = lift_mod(M, Subspace::span(f, np.size(), {unit(np.size(), 0)}), np);
  } else {
    Lm1 = lift_mod(M, minimal_submodule(mod, Subspace::full(f, np.size()), rng), np);
  }
  // Negative part.
  std::vector<Subspace> neg{Lm1};
  while (true) {
    Subspace next = sum(neg.back(), bracket_space(L, neg.back(), Lm1));
    if (next == neg.back()) break;
    neg.push_back(next);
  }
  if (neg.back().dim() != n) throw ValidationError("negative steps stop short of L; M is not maximal");
  Filtration F;
  F.algebra = Lp;
  F.depth = static_cast<int>(neg.size());
  for (auto it = neg.rbegin(); it != neg.rend(); ++it) F.steps.push_back(*it);
  // Positive part: only representatives of L_(-1)/L_(0) matter.
  std::vector<Vec> reps;
  {
    Echelon E(f, n);
    for (const auto& r : M.rows()) E.add(r);
    for (const auto& r : Lm1.rows())
      if (E.add(r)) reps.push_back(r);
  }
  Subspace cur = M;
  while (true) {
    F.steps.push_back(cur);
    if (cur.dim() == 0) break;
    auto cnp = cur.nonpivots();
    Matrix C(f, reps.size() * cnp.size(), cur.dim());
    for (size_t k = 0; k < cur.dim(); ++k) {
      size_t off = 0;
      for (const auto& b : reps) {
        Vec v = mod_coords(cur, L.bracket(cur.row(k), b), cnp);
        for (size_t r = 0; r < v.size(); ++r) C(off + r, k) = v[r];
        off += v.size();
      }
    }
    Subspace ker = kernel(C);
    std::vector<Vec> rows;
    for (const auto& c : ker.rows()) rows.push_back(cur.from_coords(c));
    Subspace next = Subspace::span(f, n, rows);
    if (next == cur) break;  // nonzero stable tail: an ideal inside M
    cur = next;
  }
  return F;
}

Filtration filtration_from_grading(const AlgPtr& L, const std::vector<int>& degrees) {
  if (degrees.size() != L->dim()) throw ValidationError("one degree per basis vector expected");
  if (degrees.empty()) throw ValidationError("empty algebra");
  int lo = *std::min_element(degrees.begin(), degrees.end());
  int hi = *std::max_element(degrees.begin(), degrees.end());
  Filtration F;
  F.algebra = L;
  F.depth = -lo;
  for (int i = lo; i <= hi + 1; ++i) {
    std::vector<Vec> rows;
    for (size_t b = 0; b < degrees.size(); ++b)
      if (degrees[b] >= i) rows.push_back(unit(L->dim(), b));
    F.steps.push_back(Subspace::span(L->field(), L->dim(), rows));
  }
  return F;
}

namespace {

// Basis adapted to the filtration: core first, then degree height .. -depth.
struct Adapted {
  std::vector<Vec> vecs;
  std::vector<int> deg;  // kCore marks the stable tail
  size_t core = 0;
};

constexpr int kCore = -1000000;

Adapted adapted_basis(const Filtration& F) {
  Adapted A;
  const auto& f = F.algebra->field();
  size_t n = F.algebra->dim();
  Echelon E(f, n);
  for (const auto& r : F.steps.back().rows()) {
    E.add(r);
    A.vecs.push_back(r);
    A.deg.push_back(kCore);
  }
  A.core = A.vecs.size();
  for (int i = F.height(); i >= -F.depth; --i) {
    Subspace Li = F.at(i);
    for (const auto& r : Li.rows())
      if (E.add(r)) {
        A.vecs.push_back(r);
        A.deg.push_back(i);
      }
  }
  return A;
}

}  // namespace

bool filtration_compatible(const Filtration& F) {
  auto A = adapted_basis(F);
  const auto& L = *F.algebra;
  for (size_t a = 0; a < A.vecs.size(); ++a)
    for (size_t b = a + 1; b < A.vecs.size(); ++b) {
      Vec v = L.bracket(A.vecs[a], A.vecs[b]);
      if (is_zero(v)) continue;
      if (A.deg[a] == kCore || A.deg[b] == kCore) {
        if (!F.steps.back().member(v)) return false;
        continue;
      }
      if (!F.at(A.deg[a] + A.deg[b]).member(v)) return false;
    }
  return true;
}

Subspace GradedAlgebra::component(int i) const {
  size_t n = total->dim();
  std::vector<Vec> rows;
  auto it = components.find(i);
  if (it != components.end())
    for (size_t b = it->second.first; b < it->second.second; ++b) rows.push_back(unit(n, b));
  return Subspace::span(total->field(), n, rows);
}

std::vector<Matrix> GradedAlgebra::projections() const {
  std::vector<Matrix> out;
  size_t n = total->dim();
  for (const auto& [d, range] : components) {
    Matrix P(total->field(), n, n);
    for (size_t b = range.first; b < range.second; ++b) P(b, b) = 1;
    out.push_back(std::move(P));
  }
  return out;
}

GradedAlgebra associated_graded(const Filtration& F) {
  const auto& L = *F.algebra;
  const auto& f = L.field();
  size_t n = L.dim();
  auto A = adapted_basis(F);
  // Graded basis: the non-core part, ascending degree.
  std::vector<size_t> order;
  for (size_t i = A.core; i < A.vecs.size(); ++i) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return A.deg[a] < A.deg[b]; });
  size_t N = order.size();
  std::vector<size_t> pos(A.vecs.size(), N);
  for (size_t k = 0; k < N; ++k) pos[order[k]] = k;
  Decomposer dec(f, n, A.vecs);
  GradedAlgebra G;
  G.compatible = true;
  auto tot = std::make_shared<LieAlgebra>(f, N);
  for (size_t a = 0; a < N; ++a) {
    int da = A.deg[order[a]];
    G.degrees.push_back(da);
    for (size_t b = a + 1; b < N; ++b) {
      int db = A.deg[order[b]];
      Vec v = L.bracket(A.vecs[order[a]], A.vecs[order[b]]);
      if (is_zero(v)) continue;
      Vec c = dec.coords_or_throw(v);
      Vec out(N, 0);
      for (size_t t = 0; t < A.vecs.size(); ++t) {
        if (c[t] == 0) continue;
        if (t >= A.core && A.deg[t] < da + db) G.compatible = false;
        if (t >= A.core && A.deg[t] == da + db) out[pos[t]] = c[t];
      }
      if (!is_zero(out)) tot->set_bracket(a, b, out);
    }
  }
  G.total = tot;
  G.adapted = Matrix(f, n, N);
  for (size_t k = 0; k < N; ++k) G.adapted.set_col(k, A.vecs[order[k]]);
  for (size_t k = 0; k < N; ++k) {
    auto it = G.components.find(G.degrees[k]);
    if (it == G.components.end()) G.components[G.degrees[k]] = {k, k + 1};
    else it->second.second = k + 1;
  }
  G.jacobi = tot->jacobi_holds();
  return G;
}

MinimalIdeal minimal_graded_ideal(const GradedAlgebra& G, uint64_t seed) {
  MinimalIdeal out;
  if (G.total->dim() == 0) throw ValidationError("graded algebra is zero");
  out.ideal = minimal_ideals(G.total, G.projections(), seed).front();
  const auto& L = *G.total;
  out.abelian = true;
  for (size_t i = 0; i < out.ideal.dim() && out.abelian; ++i)
    for (size_t j = i + 1; j < out.ideal.dim() && out.abelian; ++j)
      if (!is_zero(L.bracket(out.ideal.row(i), out.ideal.row(j)))) out.abelian = false;
  // A second minimal graded ideal would centralize this one; for a
  // nonabelian one the centralizer is a graded ideal meeting it in 0.
  if (!out.abelian) out.unique = centralizer(L, out.ideal).dim() == 0;
  return out;
}

namespace {

bool derived_is(const AlgPtr& L, Subspace& D) {
  D = bracket_space(*L, Subspace::full(L->field(), L->dim()), Subspace::full(L->field(), L->dim()));
  return D.dim() == L->dim();
}

void classify_s0(SReport& R, const AlgPtr& S0, uint64_t seed) {
  uint32_t p = S0->field()->p();
  size_t d = S0->dim();
  R.s0_dim = d;
  if (d == 0) {
    R.s0_bucket = "none";
    R.s0_note = "S_[0] = 0";
    return;
  }
  Subspace Z = center(*S0);
  Subspace D;
  derived_is(S0, D);
  R.s0_center_dim = Z.dim();
  R.s0_derived_dim = D.dim();
  R.s0_simple = is_simple(S0, seed);
  if (d == 1) {
    R.s0_bucket = "a";
    R.s0_note = "one-dimensional";
    return;
  }
  if (R.s0_simple) {
    R.s0_bucket = "b";
    R.s0_note = "simple of dimension " + std::to_string(d);
    return;
  }
  // sl(n), gl(n), pgl(n) with p | n, by dimension, center and derived algebra.
  for (size_t nn = p; nn * nn <= d + 1; nn += p) {
    size_t sq = nn * nn;
    if (d == sq - 1 && Z.dim() == 1 && D.dim() == d && !R.s0_simple) {
      R.s0_bucket = "c";
      R.s0_note = "sl(" + std::to_string(nn) + ") shape";
      return;
    }
    if (d == sq && Z.dim() == 1 && D.dim() == sq - 1) {
      R.s0_bucket = "c";
      R.s0_note = "gl(" + std::to_string(nn) + ") shape";
      return;
    }
    if (d == sq - 1 && Z.dim() == 0 && D.dim() == sq - 2) {
      R.s0_bucket = "c";
      R.s0_note = "pgl(" + std::to_string(nn) + ") shape";
      return;
    }
  }
  if (Z.dim() == 1 && D.dim() == d - 1 && intersect(Z, D).dim() == 0) {
    auto Dalg = extract_subalgebra(S0, D).alg;
    if (is_simple(Dalg, seed)) {
      R.s0_bucket = "d";
      R.s0_note = "simple of dimension " + std::to_string(D.dim()) + " plus 1-dim center";
      return;
    }
    size_t dd = D.dim();
    for (size_t nn = p; nn * nn <= dd + 1; nn += p)
      if (dd == nn * nn - 1) {
        Subspace DD;
        derived_is(Dalg, DD);
        if (center(*Dalg).dim() == 0 && DD.dim() == dd - 1) {
          R.s0_bucket = "d";
          R.s0_note = "pgl(" + std::to_string(nn) + ") shape plus 1-dim center";
          return;
        }
      }
  }
  R.s0_bucket = "none";
  R.s0_note = "no listed shape matches";
}

}  // namespace

SReport extract_S(const AlgPtr& A, const std::vector<int>* degrees, uint64_t seed) {
  SReport R;
  auto tf = tensor_factorize(A, seed);
  R.m = tf.m;
  const auto& f = A->field();
  size_t n = A->dim();
  // S = A / rad(C) A.
  std::vector<Vec> rows;
  const auto& C = tf.cent;
  for (const auto& r : C.radical.rows()) {
    Matrix c(f, n, n);
    for (size_t i = 0; i < C.dim(); ++i)
      if (r[i]) c = add(c, scaled(C.basis[i], r[i]));
    for (size_t j = 0; j < n; ++j) rows.push_back(c.col_vec(j));
  }
  Subspace I = Subspace::span(f, n, rows);
  auto Q = quotient(A, I);
  R.S = Q.alg;
  if (R.S->dim() != tf.S->dim()) throw AlarmError("tensor factor and quotient by the centroid radical disagree");
  if (degrees) {
    if (degrees->size() != n) throw ValidationError("one degree per basis vector expected");
    bool graded = true;
    for (const auto& v : I.rows()) {
      std::map<int, Vec> parts;
      for (size_t j = 0; j < n; ++j)
        if (v[j]) {
          auto& w = parts[(*degrees)[j]];
          if (w.empty()) w.assign(n, 0);
          w[j] = v[j];
        }
      for (const auto& [dg, w] : parts)
        if (!I.member(w)) graded = false;
    }
    R.graded = graded;
    if (graded) {
      for (size_t j = 0; j < R.S->dim(); ++j) {
        int dg = (*degrees)[Q.lift[j]];
        R.degrees.push_back(dg);
        R.component_dims[dg]++;
      }
      R.depth = -R.component_dims.begin()->first;
      R.height = R.component_dims.rbegin()->first;
      std::vector<Vec> zero;
      for (size_t j = 0; j < R.S->dim(); ++j)
        if (R.degrees[j] == 0) zero.push_back(unit(R.S->dim(), j));
      auto S0 = extract_subalgebra(R.S, Subspace::span(f, R.S->dim(), zero)).alg;
      classify_s0(R, S0, seed);
      R.s3_nonzero = R.component_dims.count(3) > 0;
      R.s_minus3_zero = R.component_dims.count(-3) == 0;
    }
  }
  R.simple = is_simple(R.S, seed);
  R.restricted = R.simple && envelope_of(R.S).dim() == R.S->dim();
  return R;
}

GradedPipeline graded_pipeline(const RootDatum& RD, uint64_t seed) {
  GradedPipeline out;
  const auto& G = *RD.torus.G;
  const auto& f = G.field();
  auto sections = all_sections(RD, false);
  if (improper_count(sections, RD) > 0)
    throw ValidationError("torus has improper roots; optimize it before grading");
  bool all_easy = true;
  for (const auto& s : sections)
    if (s.verdict != Verdict::solvable && s.verdict != Verdict::classical) all_easy = false;
  auto QR = Q_subalgebra(RD, sections);
  if (QR.equals_L || all_easy) {
    out.note = "graded pipeline not applicable; all roots solvable/classical";
    return out;
  }
  // T + L and T + Q inside G.
  std::vector<Vec> tl = RD.torus.space.rows(), tq = RD.torus.space.rows();
  for (size_t i = 0; i < G.base_dim(); ++i) tl.push_back(G.from_L(unit(G.base_dim(), i)));
  for (const auto& q : QR.Q.rows()) tq.push_back(G.from_L(q));
  Subspace TL = Subspace::span(f, G.dim(), tl), TQ = Subspace::span(f, G.dim(), tq);
  auto sub = extract_subalgebra(G.lie(), TL).alg;
  std::vector<Vec> mrows;
  for (const auto& r : TQ.rows()) mrows.push_back(TL.coords(r));
  Subspace M = Subspace::span(f, TL.dim(), mrows);
  out.filtration = standard_filtration(sub, M, seed);
  try {
    auto FL = standard_filtration(G.base(), QR.Q, seed);
    out.filtration_L_dims = FL.dims();
  } catch (const ValidationError& e) {
    out.filtration_L_note = e.what();
  }
  out.gr = associated_graded(out.filtration);
  if (!out.gr.jacobi) throw AlarmError("associated graded algebra fails Jacobi");
  out.A = minimal_graded_ideal(out.gr, seed);
  if (out.A.abelian) throw AlarmError("minimal graded ideal is abelian");
  if (out.A.unique && !*out.A.unique) throw AlarmError("minimal graded ideal is not unique");
  auto Aalg = extract_subalgebra(out.gr.total, out.A.ideal).alg;
  std::vector<int> adeg;
  for (const auto& r : out.A.ideal.rows()) adeg.push_back(out.gr.degrees[first_nonzero(r)]);
  out.S = extract_S(Aalg, &adeg, seed);
  out.applicable = true;
  return out;
}

}  // namespace modlie
