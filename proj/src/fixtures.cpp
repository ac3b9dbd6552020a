#include "modlie/fixtures.hpp"

#include "modlie/error.hpp"
#include "modlie/restricted.hpp"
#include "modlie/sections.hpp"
#include "modlie/switching.hpp"

namespace modlie {

AlgPtr direct_sum(const AlgPtr& A, const AlgPtr& B) {
  if (!A->field()->same(*B->field())) throw ValidationError("direct sum over different fields");
  size_t a = A->dim(), b = B->dim();
  auto S = std::make_shared<LieAlgebra>(A->field(), a + b);
  for (size_t i = 0; i < a; ++i)
    for (size_t j = i + 1; j < a; ++j) S->set_bracket_sparse(i, j, A->sc(i, j));
  for (size_t i = 0; i < b; ++i)
    for (size_t j = i + 1; j < b; ++j) {
      SparseVec v = B->sc(i, j);
      for (auto& [k, c] : v) k += static_cast<uint32_t>(a);
      S->set_bracket_sparse(a + i, a + j, std::move(v));
    }
  std::vector<std::string> labels;
  for (size_t i = 0; i < a; ++i) labels.push_back(A->label(i) + "'");
  for (size_t i = 0; i < b; ++i) labels.push_back(B->label(i) + "''");
  S->set_labels(labels);
  return S;
}

AlgPtr nonabelian2(FieldPtr f) {
  auto L = std::make_shared<LieAlgebra>(f, 2);
  L->set_bracket(0, 1, Vec{0, 1});
  L->set_labels({"h", "e"});
  return L;
}

namespace {

constexpr uint32_t kP = 5;

FieldPtr F5() { return make_field(kP, 1); }

// W(2;1) indices: x^(a) d_i at a*2 + i, with x1 the leading exponent.
Vec w21(std::initializer_list<std::pair<size_t, uint32_t>> terms) {
  Vec v(50, 0);
  for (auto [i, c] : terms) v[i] = c;
  return v;
}
const size_t kD1 = 0, kD2 = 1, kX2D2 = 3, kX1D1 = 10;

// Element of a subalgebra of a Witt model given by its image there.
Vec element_in(const GradedMeta& g, const Vec& w) {
  std::vector<Vec> cols;
  for (size_t j = 0; j < g.embedding.cols; ++j) cols.push_back(g.embedding.col_vec(j));
  Decomposer dec(g.algebra->field(), g.embedding.rows, cols);
  return dec.coords_or_throw(w);
}

Vec in_G(const RestrictedAlgebra& G, const Matrix& D) {
  auto c = G.decompose(D);
  if (!c) throw AlarmError("derivation outside the restricted algebra");
  return *c;
}

std::vector<Vec> derivations_in_G(const GPtr& G, const GradedMeta& g, const std::vector<Vec>& ws) {
  std::vector<Vec> xs;
  for (const auto& w : ws) {
    auto D = induced_derivation(g, w);
    if (!D) throw AlarmError("vector field does not preserve the algebra");
    xs.push_back(in_G(*G, *D));
  }
  return xs;
}

Torus torus_of_dim(const GPtr& G, size_t d, uint32_t max_k = 2) {
  for (uint64_t s = 1; s <= 64; ++s) {
    auto r = maximal_torus(G, s, max_k);
    if (r.torus.dim() == d) return r.torus;
  }
  throw AlarmError("no maximal torus of the requested dimension found");
}

Vec independent_of(const RootDatum& RD, const Vec& a) {
  auto Fp = make_field(RD.torus.field()->p(), 1);
  for (const auto& r : RD.roots)
    if (rank(Matrix::from_rows(Fp, a.size(), {a, r.gamma})) == 2) return r.gamma;
  throw ValidationError("no root independent of the first one");
}

}  // namespace

std::vector<std::string> torus_fixture_names() {
  return {"W11_std", "W11_bad", "W12", "W21_std", "W21_switched", "H2", "DerH2_T0", "DerH2_T1", "DerH2_T2",
          "sl2", "sl3", "K31", "M11_nonstandard"};
}

TorusFixture torus_fixture(const std::string& name) {
  auto f = F5();
  TorusFixture X;
  X.name = name;
  if (name == "W11_std" || name == "W11_bad") {
    auto W = make_W(f, 1, {1});
    X.L = W.meta.algebra;
    auto G = std::make_shared<RestrictedAlgebra>(envelope_of(X.L));
    Vec t = G->from_L(unit(5, 1));
    if (name == "W11_bad") t = add(*f, t, G->from_L(unit(5, 0)));
    X.T = make_torus(G, {t});
    if (name == "W11_std") X.standard_zero = W.meta.standard_zero;
    X.note = name == "W11_std" ? "T = F x d" : "T = F (1+x) d";
  } else if (name == "W12") {
    X.L = make_W(f, 1, {2}).meta.algebra;
    auto G = std::make_shared<RestrictedAlgebra>(envelope_of(X.L));
    X.T = torus_of_dim(G, 2);
    X.note = "2-dim torus in the p-envelope";
  } else if (name == "W21_std" || name == "W21_switched") {
    auto W = make_W(f, 2, {1, 1});
    X.L = W.meta.algebra;
    auto G = std::make_shared<RestrictedAlgebra>(envelope_of(X.L));
    X.T = make_torus(G, {G->from_L(w21({{kX1D1, 1}})), G->from_L(w21({{kX2D2, 1}}))});
    if (name == "W21_std") {
      X.standard_zero = W.meta.standard_zero;
      X.note = "T = <x1 d1, x2 d2>";
    } else {
      auto RD = root_decomposition(X.T);
      Vec d1 = w21({{kD1, 1}});
      Vec alpha;
      for (const auto& r : RD.roots)
        if (r.space.member(d1)) alpha = r.gamma;
      X.T = elementary_switch(RD, alpha, d1, 1, false).new_torus;
      X.note = "standard torus switched along d1";
    }
  } else if (name == "H2") {
    auto H = make_H2(f, {1, 1}, HVariant::second_derived);
    X.L = H.algebra;
    auto G = std::make_shared<RestrictedAlgebra>(envelope_of(X.L));
    Vec h = element_in(H, w21({{kX1D1, 1}, {kX2D2, f->neg(1)}}));
    X.T = make_torus(G, {G->from_L(h)});
    X.standard_zero = H.standard_zero;
    X.note = "T = F(x1 d1 - x2 d2)";
  } else if (name == "DerH2_T0" || name == "DerH2_T1" || name == "DerH2_T2") {
    auto H = make_H2(f, {1, 1}, HVariant::second_derived);
    X.L = H.algebra;
    auto G = std::make_shared<RestrictedAlgebra>(derivation_algebra(X.L, &H.degrees));
    Vec a = w21({{kX1D1, 1}}), b = w21({{kX2D2, 1}});
    if (name != "DerH2_T0") a = w21({{kX1D1, 1}, {kD1, 1}});
    if (name == "DerH2_T2") b = w21({{kX2D2, 1}, {kD2, 1}});
    auto xs = derivations_in_G(G, H, {a, b});
    X.T = make_torus(G, xs);
    X.generators = {{name == "DerH2_T0" ? "x1d1" : "(1+x1)d1", xs[0]}, {name == "DerH2_T2" ? "(1+x2)d2" : "x2d2", xs[1]}};
    if (name == "DerH2_T0") X.standard_zero = H.standard_zero;
    X.note = name == "DerH2_T0" ? "<x1 d1, x2 d2>" : name == "DerH2_T1" ? "<(1+x1) d1, x2 d2>" : "<(1+x1) d1, (1+x2) d2>";
  } else if (name == "sl2" || name == "sl3") {
    X.L = make_classical(f, ClassicalKind::sl, name == "sl2" ? 2 : 3);
    auto G = std::make_shared<RestrictedAlgebra>(envelope_of(X.L));
    X.T = maximal_torus(G, 1, 2).torus;
    X.note = "maximal torus, seed 1";
  } else if (name == "K31") {
    auto K = make_K(f, 3, {1, 1, 1});
    X.L = K.algebra;
    auto G = std::make_shared<RestrictedAlgebra>(envelope_of(X.L));
    X.T = maximal_torus(G, 1, 2).torus;
    X.note = "maximal torus, seed 1";
  } else if (name == "M11_nonstandard") {
    auto M = make_melikian(f);
    X.L = M.algebra;
    auto G = std::make_shared<RestrictedAlgebra>(derivation_algebra(X.L, &M.degrees));
    X.T = maximal_torus(G, 4, 4).torus;
    X.note = "maximal torus in Der M(1,1), seed 4; nonstandard";
  } else {
    throw ValidationError("unknown torus fixture: " + name);
  }
  return X;
}

TwoSectionFixture two_section_fixture(int case_id) {
  auto f = F5();
  TwoSectionFixture X;
  X.expected_case = case_id;
  auto from_envelope = [&](const AlgPtr& L, size_t d) {
    auto G = std::make_shared<RestrictedAlgebra>(envelope_of(L));
    return torus_of_dim(G, d);
  };
  Torus T;
  switch (case_id) {
    case 1:
      X.name = "b2 + b2";
      T = from_envelope(direct_sum(nonabelian2(f), nonabelian2(f)), 2);
      break;
    case 2:
      X.name = "sl2 + b2";
      T = from_envelope(direct_sum(make_classical(f, ClassicalKind::sl, 2), nonabelian2(f)), 2);
      break;
    case 3:
      X.name = "sl2 + sl2";
      T = from_envelope(direct_sum(make_classical(f, ClassicalKind::sl, 2), make_classical(f, ClassicalKind::sl, 2)), 2);
      break;
    case 4:
      X.name = "H(2;1)^(2) with <x1 d1, x2 d2>";
      T = torus_fixture("DerH2_T0").T;
      break;
    case 5: {
      X.name = "sl2 (x) O(1;1) + W(1;1)";
      auto TM = make_tensor(make_classical(f, ClassicalKind::sl, 2), 1, {1});
      size_t amb = TM.ambient->dim(), N = TM.N, K = TM.der_S.size();
      std::vector<Vec> basis;
      for (size_t j = 0; j < TM.A->dim(); ++j) basis.push_back(TM.incl.matrix.col_vec(j));
      for (size_t j = 0; j < N; ++j) basis.push_back(unit(amb, K * N + j));
      auto sub = algebra_from_basis(TM.ambient, basis);
      Decomposer dec(f, amb, basis);
      auto G = std::make_shared<RestrictedAlgebra>(envelope_of(sub.alg));
      Vec t1 = TM.incl(unit(TM.A->dim(), 0));  // h (x) 1
      Vec t2 = unit(amb, K * N + 1);            // 1 (x) x d
      T = make_torus(G, {G->from_L(dec.coords_or_throw(t1)), G->from_L(dec.coords_or_throw(t2))});
      break;
    }
    case 6: {
      // K = sl2 (x) O(1;1); the torus adds Id (x) (1+x) d from outside.
      X.name = "sl2 (x) O(1;1) with Id (x) (1+x)d";
      auto TM = make_tensor(make_classical(f, ClassicalKind::sl, 2), 1, {1});
      size_t amb = TM.ambient->dim(), N = TM.N, K = TM.der_S.size();
      Vec y(amb, 0);
      y[K * N + 0] = 1;  // d
      y[K * N + 1] = 1;  // x d
      auto G = std::make_shared<RestrictedAlgebra>(TM.A, std::vector<Matrix>{TM.action(y)});
      auto D = G->decompose(TM.action(y));
      T = make_torus(G, {G->from_L(unit(TM.A->dim(), 0)), *D});
      break;
    }
    case 7:
      X.name = "W(1;2)";
      T = torus_fixture("W12").T;
      break;
    case 8:
      X.name = "W(2;1) standard torus";
      T = torus_fixture("W21_std").T;
      break;
    default:
      throw ValidationError("two-section fixtures exist for cases 1..8");
  }
  X.RD = root_decomposition(T);
  if (X.RD.roots.empty()) throw AlarmError("fixture torus has no roots");
  X.alpha = X.RD.roots.front().gamma;
  X.beta = independent_of(X.RD, X.alpha);
  return X;
}

uint32_t root_value(const RootDatum& RD, const Vec& gamma, const Vec& t) {
  const auto& F = *RD.torus.field();
  Decomposer dec(RD.torus.field(), RD.torus.G->dim(), RD.torus.toral_basis);
  Vec c = dec.coords_or_throw(t);
  uint32_t s = 0;
  for (size_t i = 0; i < c.size(); ++i) s = F.add(s, F.mul(c[i], gamma[i]));
  return s;
}

}  // namespace modlie
