#include "modlie/constructors.hpp"

#include <map>

#include "modlie/derivations.hpp"
#include "modlie/error.hpp"
#include "modlie/restricted.hpp"

namespace modlie {

namespace {

uint32_t binom_small(uint32_t n, uint32_t k, uint32_t p) {
  if (k > n) return 0;
  uint64_t num = 1, den = 1;
  for (uint32_t i = 0; i < k; ++i) {
    num = num * ((n - i) % p) % p;
    den = den * ((i + 1) % p) % p;
  }
  if (den == 0) return 0;
  // den invertible mod p since k < p
  uint64_t inv = 1, b = den, e = p - 2;
  while (e) {
    if (e & 1) inv = inv * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(num * inv % p);
}

// Lucas.
uint32_t binom_mod(uint32_t n, uint32_t k, uint32_t p) {
  uint64_t r = 1;
  while (n || k) {
    uint32_t a = n % p, b = k % p;
    if (b > a) return 0;
    r = r * binom_small(a, b, p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<uint32_t>(r);
}

void check_heights(uint32_t p, const std::vector<uint32_t>& n) {
  if (n.empty()) throw ValidationError("need at least one variable");
  for (auto h : n)
    if (h < 1) throw ValidationError("heights must be >= 1");
  if (divided_power_dim(p, n) > kSizeCap) throw ValidationError("size cap exceeded: p^|n| > 10^4");
}

}  // namespace

size_t divided_power_dim(uint32_t p, const std::vector<uint32_t>& n) {
  size_t d = 1;
  for (auto h : n)
    for (uint32_t t = 0; t < h; ++t) {
      d *= p;
      if (d > 100 * kSizeCap) return d;
    }
  return d;
}

DividedPowerAlgebra::DividedPowerAlgebra(FieldPtr f, std::vector<uint32_t> heights)
    : field_(std::move(f)), heights_(std::move(heights)) {
  uint32_t p = field_->p();
  check_heights(p, heights_);
  size_t m = heights_.size();
  bound_.resize(m);
  for (size_t i = 0; i < m; ++i) {
    bound_[i] = 1;
    for (uint32_t t = 0; t < heights_[i]; ++t) bound_[i] *= p;
  }
  stride_.assign(m, 1);
  for (size_t i = m - 1; i-- > 0;) stride_[i] = stride_[i + 1] * bound_[i + 1];
  dim_ = stride_[0] * bound_[0];
  exps_.resize(dim_);
  for (size_t idx = 0; idx < dim_; ++idx) {
    std::vector<uint32_t> a(m);
    for (size_t i = 0; i < m; ++i) a[i] = static_cast<uint32_t>((idx / stride_[i]) % bound_[i]);
    exps_[idx] = std::move(a);
  }
}

size_t DividedPowerAlgebra::index(const std::vector<uint32_t>& a) const {
  size_t idx = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] >= bound_[i]) return dim_;
    idx += a[i] * stride_[i];
  }
  return idx;
}

size_t DividedPowerAlgebra::degree(size_t idx) const {
  size_t d = 0;
  for (auto x : exps_[idx]) d += x;
  return d;
}

std::pair<size_t, uint32_t> DividedPowerAlgebra::mul_basis(size_t a, size_t b) const {
  uint32_t p = field_->p();
  const auto& ea = exps_[a];
  const auto& eb = exps_[b];
  uint64_t coef = 1;
  size_t idx = 0;
  for (size_t i = 0; i < ea.size(); ++i) {
    uint32_t s = ea[i] + eb[i];
    if (s >= bound_[i]) return {dim_, 0};
    coef = coef * binom_mod(s, ea[i], p) % p;
    if (!coef) return {dim_, 0};
    idx += s * stride_[i];
  }
  return {idx, static_cast<uint32_t>(coef)};
}

Vec DividedPowerAlgebra::mul(const Vec& f, const Vec& g) const {
  const Field& F = *field_;
  Vec r(dim_, 0);
  for (size_t a = 0; a < dim_; ++a) {
    if (!f[a]) continue;
    for (size_t b = 0; b < dim_; ++b) {
      if (!g[b]) continue;
      auto [idx, c] = mul_basis(a, b);
      if (c) r[idx] = F.add(r[idx], F.mul(c, F.mul(f[a], g[b])));
    }
  }
  return r;
}

Vec DividedPowerAlgebra::deriv(size_t i, const Vec& f) const {
  Vec r(dim_, 0);
  for (size_t a = 0; a < dim_; ++a)
    if (f[a] && exps_[a][i] > 0) r[a - stride_[i]] = f[a];
  return r;
}

std::string DividedPowerAlgebra::monomial(size_t idx) const {
  const auto& a = exps_[idx];
  bool zero = true;
  for (auto x : a) zero = zero && x == 0;
  if (zero) return "1";
  if (a.size() == 1) return "x^(" + std::to_string(a[0]) + ")";
  std::string s = "x^(";
  for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

DividedPowerAlgebra make_O(FieldPtr f, size_t m, const std::vector<uint32_t>& n) {
  if (n.size() != m) throw ValidationError("need one height per variable");
  return DividedPowerAlgebra(std::move(f), n);
}

VectorField WittModel::field_of(const Vec& x) const {
  size_t m = O->vars();
  VectorField v;
  v.f.assign(m, Vec(O->dim(), 0));
  for (size_t idx = 0; idx < x.size(); ++idx)
    if (x[idx]) v.f[idx % m][idx / m] = x[idx];
  return v;
}

Vec WittModel::vec_of(const VectorField& v) const {
  size_t m = O->vars();
  Vec x(O->dim() * m, 0);
  for (size_t i = 0; i < m; ++i)
    for (size_t a = 0; a < O->dim(); ++a) x[a * m + i] = v.f[i][a];
  return x;
}

Vec WittModel::basis_vec(size_t mono, size_t i) const { return unit(O->dim() * O->vars(), mono * O->vars() + i); }

Vec WittModel::divergence(const Vec& x) const {
  VectorField v = field_of(x);
  Vec r(O->dim(), 0);
  for (size_t i = 0; i < O->vars(); ++i) r = add(*O->field(), r, O->deriv(i, v.f[i]));
  return r;
}

Vec WittModel::apply_to(const Vec& x, const Vec& f) const {
  VectorField v = field_of(x);
  Vec r(O->dim(), 0);
  for (size_t i = 0; i < O->vars(); ++i) r = add(*O->field(), r, O->mul(v.f[i], O->deriv(i, f)));
  return r;
}

WittModel make_W(FieldPtr f, size_t m, const std::vector<uint32_t>& n) {
  if (n.size() != m) throw ValidationError("need one height per variable");
  auto O = std::make_shared<DividedPowerAlgebra>(f, n);
  size_t N = O->dim(), dim = N * m;
  const Field& F = *f;
  auto L = std::make_shared<LieAlgebra>(f, dim);
  std::vector<std::string> labels(dim);
  std::vector<int> degrees(dim);
  for (size_t a = 0; a < N; ++a)
    for (size_t i = 0; i < m; ++i) {
      std::string d = m == 1 ? "d" : "d" + std::to_string(i + 1);
      std::string mono = O->monomial(a);
      labels[a * m + i] = mono == "1" ? d : mono + d;
      degrees[a * m + i] = static_cast<int>(O->degree(a)) - 1;
    }
  auto lower = [&](size_t a, size_t i) -> size_t {
    if (O->exponent(a)[i] == 0) return N;
    auto e = O->exponent(a);
    --e[i];
    return O->index(e);
  };
  for (size_t u = 0; u < dim; ++u)
    for (size_t v = u + 1; v < dim; ++v) {
      size_t a = u / m, i = u % m, b = v / m, j = v % m;
      std::map<uint32_t, uint32_t> acc;
      size_t bl = lower(b, i);
      if (bl < N) {
        auto [idx, c] = O->mul_basis(a, bl);
        if (c) acc[static_cast<uint32_t>(idx * m + j)] = F.add(acc[static_cast<uint32_t>(idx * m + j)], c);
      }
      size_t al = lower(a, j);
      if (al < N) {
        auto [idx, c] = O->mul_basis(b, al);
        if (c) acc[static_cast<uint32_t>(idx * m + i)] = F.sub(acc[static_cast<uint32_t>(idx * m + i)], c);
      }
      SparseVec s(acc.begin(), acc.end());
      L->set_bracket_sparse(u, v, std::move(s));
    }
  L->set_labels(labels);
  WittModel W;
  W.O = O;
  bool restricted = true;
  for (auto h : n) restricted = restricted && h == 1;
  W.meta.algebra = L;
  if (restricted) {
    // x^[p] = x^p as an operator on O; its coefficients are x^p(x_i).
    std::vector<Vec> pm;
    for (size_t u = 0; u < dim; ++u) {
      VectorField vf;
      for (size_t i = 0; i < m; ++i) {
        std::vector<uint32_t> e(m, 0);
        e[i] = 1;
        Vec g = unit(N, O->index(e));
        for (uint32_t t = 0; t < F.p(); ++t) g = W.apply_to(unit(dim, u), g);
        vf.f.push_back(g);
      }
      pm.push_back(W.vec_of(vf));
    }
    L->set_pmap(std::move(pm));
  }
  W.meta.degrees = degrees;
  std::vector<Vec> zero;
  for (size_t u = 0; u < dim; ++u)
    if (degrees[u] >= 0) zero.push_back(unit(dim, u));
  W.meta.standard_zero = Subspace::span(f, dim, zero);
  std::string hn;
  for (size_t i = 0; i < n.size(); ++i) hn += (i ? "," : "") + std::to_string(n[i]);
  W.meta.name = "W(" + std::to_string(m) + ";" + (n.size() == 1 ? hn : "(" + hn + ")") + ")";
  return W;
}

namespace {

GradedMeta sub_meta(const WittModel& W, const std::vector<Vec>& basis, const std::vector<std::string>& labels,
                    const std::vector<int>& degrees, std::string name) {
  auto res = algebra_from_basis(W.meta.algebra, basis, labels);
  GradedMeta g;
  g.algebra = res.alg;
  g.degrees = degrees;
  std::vector<Vec> zero;
  for (size_t u = 0; u < basis.size(); ++u)
    if (degrees[u] >= 0) zero.push_back(unit(basis.size(), u));
  g.standard_zero = Subspace::span(W.meta.algebra->field(), basis.size(), zero);
  g.name = std::move(name);
  g.ambient = W.meta.algebra;
  g.embedding = Matrix::from_cols(W.meta.algebra->field(), W.meta.algebra->dim(), basis);
  return g;
}

}  // namespace

std::optional<Matrix> induced_derivation(const GradedMeta& g, const Vec& w) {
  if (!g.ambient) {
    if (w.size() != g.algebra->dim()) throw ValidationError("element has the wrong length");
    return g.algebra->ad(w);
  }
  const auto& A = *g.ambient;
  if (w.size() != A.dim()) throw ValidationError("element has the wrong length");
  size_t n = g.algebra->dim();
  std::vector<Vec> cols;
  for (size_t i = 0; i < n; ++i) cols.push_back(g.embedding.col_vec(i));
  Decomposer dec(A.field(), A.dim(), cols);
  Matrix D(A.field(), n, n);
  for (size_t i = 0; i < n; ++i) {
    auto c = dec.coords(A.bracket(w, cols[i]));
    if (!c) return std::nullopt;
    D.set_col(i, *c);
  }
  return D;
}

namespace {

void attach_inner_pmap(GradedMeta& g) {
  auto pm = inner_pmap(*g.algebra);
  if (pm) {
    auto A = std::make_shared<LieAlgebra>(*g.algebra);
    A->set_pmap(std::move(*pm));
    g.algebra = A;
  }
}

std::string heights_str(const std::vector<uint32_t>& n) {
  bool all_one = true;
  for (auto h : n) all_one = all_one && h == 1;
  if (all_one) return "1";
  std::string s = "(";
  for (size_t i = 0; i < n.size(); ++i) s += (i ? "," : "") + std::to_string(n[i]);
  return s + ")";
}

bool all_ones(const std::vector<uint32_t>& n) {
  for (auto h : n)
    if (h != 1) return false;
  return true;
}

}  // namespace

GradedMeta make_S1(FieldPtr f, size_t m, const std::vector<uint32_t>& n) {
  if (m < 3) throw ValidationError("S needs m >= 3");
  if (divided_power_dim(f->p(), n) * m > kSizeCap) throw ValidationError("size cap exceeded");
  WittModel W = make_W(f, m, n);
  const auto& O = *W.O;
  size_t N = O.dim();
  Echelon E(f, W.meta.algebra->dim());
  std::vector<Vec> basis;
  std::vector<std::string> labels;
  std::vector<int> degrees;
  const Field& F = *f;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      for (size_t a = 0; a < N; ++a) {
        Vec fa = unit(N, a);
        VectorField vf;
        vf.f.assign(m, Vec(N, 0));
        vf.f[i] = O.deriv(j, fa);
        Vec di = O.deriv(i, fa);
        for (auto& c : di) c = F.neg(c);
        vf.f[j] = di;
        Vec v = W.vec_of(vf);
        if (is_zero(v) || !E.add(v)) continue;
        basis.push_back(v);
        labels.push_back("D" + std::to_string(i + 1) + std::to_string(j + 1) + "(" + O.monomial(a) + ")");
        degrees.push_back(static_cast<int>(O.degree(a)) - 2);
      }
  size_t expect = (m - 1) * (N - 1);
  if (basis.size() != expect) throw AlarmError("S(m;n)^(1) has unexpected dimension " + std::to_string(basis.size()));
  GradedMeta g = sub_meta(W, basis, labels, degrees, "S(" + std::to_string(m) + ";" + heights_str(n) + ")^(1)");
  if (all_ones(n)) attach_inner_pmap(g);
  return g;
}

GradedMeta make_H2(FieldPtr f, const std::vector<uint32_t>& n, HVariant variant) {
  if (n.size() != 2) throw ValidationError("H(2;n) needs two heights");
  if (divided_power_dim(f->p(), n) * 2 > kSizeCap) throw ValidationError("size cap exceeded");
  WittModel W = make_W(f, 2, n);
  const auto& O = *W.O;
  size_t N = O.dim();
  const Field& F = *f;
  auto DH = [&](size_t a) {
    Vec fa = unit(N, a);
    VectorField vf;
    Vec d2 = O.deriv(1, fa);
    for (auto& c : d2) c = F.neg(c);
    vf.f = {d2, O.deriv(0, fa)};
    return W.vec_of(vf);
  };
  std::vector<Vec> basis;
  std::vector<std::string> labels;
  std::vector<int> degrees;
  size_t hi = variant == HVariant::second_derived ? N - 1 : N;
  for (size_t a = 1; a < hi; ++a) {
    basis.push_back(DH(a));
    labels.push_back("DH(" + O.monomial(a) + ")");
    degrees.push_back(static_cast<int>(O.degree(a)) - 2);
  }
  if (variant == HVariant::full) {
    // Divergence-free fields outside H^(1): x1^(top) d2 and x2^(top) d1.
    uint32_t t1 = O.exponent(O.top())[0], t2 = O.exponent(O.top())[1];
    size_t a1 = O.index({t1, 0}), a2 = O.index({0, t2});
    basis.push_back(W.basis_vec(a1, 1));
    labels.push_back(O.monomial(a1) + "d2");
    degrees.push_back(static_cast<int>(t1) - 1);
    basis.push_back(W.basis_vec(a2, 0));
    labels.push_back(O.monomial(a2) + "d1");
    degrees.push_back(static_cast<int>(t2) - 1);
  }
  std::string suffix = variant == HVariant::second_derived ? "^(2)" : variant == HVariant::first_derived ? "^(1)" : "";
  GradedMeta g = sub_meta(W, basis, labels, degrees, "H(2;" + heights_str(n) + ")" + suffix);
  if (all_ones(n)) attach_inner_pmap(g);
  return g;
}

GradedMeta make_K(FieldPtr f, size_t m, const std::vector<uint32_t>& n) {
  if (m != 3) throw ValidationError("K is implemented for m = 3");
  if (n.size() != 3) throw ValidationError("need one height per variable");
  DividedPowerAlgebra O(f, n);
  size_t N = O.dim();
  const Field& F = *f;
  // <f,g> = D(f) d3 g - d3 f D(g) + d1 f d2 g - d2 f d1 g, D(x^(a)) = (2 - a1 - a2) x^(a).
  auto Delta = [&](const Vec& v) {
    Vec r(N, 0);
    for (size_t a = 0; a < N; ++a)
      if (v[a]) {
        const auto& e = O.exponent(a);
        r[a] = F.mul(v[a], F.from_int(2 - static_cast<int64_t>(e[0]) - static_cast<int64_t>(e[1])));
      }
    return r;
  };
  std::vector<int> degrees(N);
  std::vector<std::string> labels(N);
  for (size_t a = 0; a < N; ++a) {
    const auto& e = O.exponent(a);
    degrees[a] = static_cast<int>(e[0] + e[1] + 2 * e[2]) - 2;
    labels[a] = O.monomial(a);
  }
  auto L = std::make_shared<LieAlgebra>(f, N);
  for (size_t a = 0; a < N; ++a) {
    Vec fa = unit(N, a);
    Vec Dfa = Delta(fa), d1f = O.deriv(0, fa), d2f = O.deriv(1, fa), d3f = O.deriv(2, fa);
    for (size_t b = a + 1; b < N; ++b) {
      Vec gb = unit(N, b);
      Vec r = O.mul(Dfa, O.deriv(2, gb));
      r = sub(F, r, O.mul(d3f, Delta(gb)));
      r = add(F, r, O.mul(d1f, O.deriv(1, gb)));
      r = sub(F, r, O.mul(d2f, O.deriv(0, gb)));
      L->set_bracket(a, b, r);
    }
  }
  L->set_labels(labels);
  GradedMeta g;
  g.algebra = L;
  g.degrees = degrees;
  std::vector<Vec> zero;
  for (size_t a = 0; a < N; ++a)
    if (degrees[a] >= 0) zero.push_back(unit(N, a));
  g.standard_zero = Subspace::span(f, N, zero);
  g.name = "K(3;" + heights_str(n) + ")";
  if (all_ones(n)) attach_inner_pmap(g);
  return g;
}

namespace {

// Melikian bracket on W(2;1) + O(2;1) + W~(2;1) with sign s in [f, E~] = s f E.
std::shared_ptr<LieAlgebra> melikian_table(const WittModel& W, int s) {
  const auto& O = *W.O;
  const Field& F = *O.field();
  size_t N = O.dim(), nw = 2 * N, dim = 2 * nw + N;
  auto two = F.from_int(2);
  auto L = std::make_shared<LieAlgebra>(O.field(), dim);
  struct Elt {
    Vec D, f, E;
  };
  auto zeroW = Vec(nw, 0), zeroO = Vec(N, 0);
  auto basis = [&](size_t u) {
    Elt e{zeroW, zeroO, zeroW};
    if (u < nw)
      e.D[u] = 1;
    else if (u < nw + N)
      e.f[u - nw] = 1;
    else
      e.E[u - nw - N] = 1;
    return e;
  };
  const LieAlgebra& WL = *W.meta.algebra;
  auto scaleO = [&](const Vec& v, uint32_t c) { return scaled(F, v, c); };
  auto mulFieldByFunc = [&](const Vec& f, const Vec& E) {
    VectorField vf = W.field_of(E);
    for (auto& comp : vf.f) comp = O.mul(f, comp);
    return W.vec_of(vf);
  };
  auto bracket = [&](const Elt& x, const Elt& y) {
    Elt r{zeroW, zeroO, zeroW};
    auto divx = W.divergence(x.D), divy = W.divergence(y.D);
    // W x W
    r.D = add(F, r.D, WL.bracket(x.D, y.D));
    // [D, E~] = ([D,E] + 2 div(D) E)~
    auto DE = [&](const Vec& D, const Vec& E, const Vec& divD) {
      Vec t = WL.bracket(D, E);
      return add(F, t, scaleO(mulFieldByFunc(divD, E), two));
    };
    r.E = add(F, r.E, DE(x.D, y.E, divx));
    r.E = sub(F, r.E, DE(y.D, x.E, divy));
    // [D, f] = D(f) - 2 div(D) f
    auto Df = [&](const Vec& D, const Vec& f, const Vec& divD) {
      return sub(F, W.apply_to(D, f), scaleO(O.mul(divD, f), two));
    };
    r.f = add(F, r.f, Df(x.D, y.f, divx));
    r.f = sub(F, r.f, Df(y.D, x.f, divy));
    // [f1 d1~ + f2 d2~, g1 d1~ + g2 d2~] = f1 g2 - f2 g1
    VectorField ex = W.field_of(x.E), ey = W.field_of(y.E);
    r.f = add(F, r.f, sub(F, O.mul(ex.f[0], ey.f[1]), O.mul(ex.f[1], ey.f[0])));
    // [f, E~] = s f E
    uint32_t sc = F.from_int(s);
    r.D = add(F, r.D, scaleO(mulFieldByFunc(x.f, y.E), sc));
    r.D = sub(F, r.D, scaleO(mulFieldByFunc(y.f, x.E), sc));
    // [f, g] = 2 (g d2 f - f d2 g) d1~ + 2 (f d1 g - g d1 f) d2~
    VectorField fg;
    fg.f = {scaleO(sub(F, O.mul(y.f, O.deriv(1, x.f)), O.mul(x.f, O.deriv(1, y.f))), two),
            scaleO(sub(F, O.mul(x.f, O.deriv(0, y.f)), O.mul(y.f, O.deriv(0, x.f))), two)};
    r.E = add(F, r.E, W.vec_of(fg));
    return r;
  };
  for (size_t u = 0; u < dim; ++u) {
    Elt x = basis(u);
    for (size_t v = u + 1; v < dim; ++v) {
      Elt r = bracket(x, basis(v));
      Vec out(dim, 0);
      std::copy(r.D.begin(), r.D.end(), out.begin());
      std::copy(r.f.begin(), r.f.end(), out.begin() + static_cast<long>(nw));
      std::copy(r.E.begin(), r.E.end(), out.begin() + static_cast<long>(nw + N));
      L->set_bracket(u, v, out);
    }
  }
  return L;
}

}  // namespace

GradedMeta make_melikian(FieldPtr f) {
  if (f->p() != 5) throw ValidationError("p must be 5");
  WittModel W = make_W(f, 2, {1, 1});
  const auto& O = *W.O;
  size_t N = O.dim(), nw = 2 * N, dim = 2 * nw + N;
  std::shared_ptr<LieAlgebra> L;
  for (int s : {1, -1}) {
    auto cand = melikian_table(W, s);
    if (cand->jacobi_holds()) {
      L = cand;
      break;
    }
  }
  if (!L) throw AlarmError("Melikian bracket fails the Jacobi identity for both sign choices");
  std::vector<std::string> labels(dim);
  std::vector<int> degrees(dim);
  const auto& wl = W.meta.algebra->labels();
  for (size_t u = 0; u < nw; ++u) {
    int deg = static_cast<int>(O.degree(u / 2));
    labels[u] = wl[u];
    degrees[u] = 3 * deg - 3;
    labels[nw + N + u] = wl[u] + "~";
    degrees[nw + N + u] = 3 * deg - 1;
  }
  for (size_t a = 0; a < N; ++a) {
    labels[nw + a] = O.monomial(a);
    degrees[nw + a] = 3 * static_cast<int>(O.degree(a)) - 2;
  }
  L->set_labels(labels);
  GradedMeta g;
  g.algebra = L;
  g.degrees = degrees;
  std::vector<Vec> zero;
  for (size_t u = 0; u < dim; ++u)
    if (degrees[u] >= 0) zero.push_back(unit(dim, u));
  g.standard_zero = Subspace::span(f, dim, zero);
  g.name = "M(1,1)";
  attach_inner_pmap(g);
  return g;
}

namespace {

std::shared_ptr<LieAlgebra> from_matrices(const FieldPtr& f, const std::vector<Matrix>& mats,
                                          std::vector<std::string> labels) {
  size_t d = mats.size();
  std::vector<Vec> flat;
  for (const auto& M : mats) flat.push_back(M.a);
  Decomposer D(f, mats[0].a.size(), flat);
  auto L = std::make_shared<LieAlgebra>(f, d);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = i + 1; j < d; ++j) L->set_bracket(i, j, D.coords_or_throw(commutator(mats[i], mats[j]).a));
  std::vector<Vec> pm;
  bool ok = true;
  for (const auto& M : mats) {
    auto c = D.coords(power(M, f->p()).a);
    if (!c) {
      ok = false;
      break;
    }
    pm.push_back(*c);
  }
  if (ok) L->set_pmap(std::move(pm));
  L->set_labels(std::move(labels));
  return L;
}

}  // namespace

AlgPtr make_classical(FieldPtr f, ClassicalKind kind, size_t n) {
  if (n < 2 || n > 5) throw ValidationError("classical algebras need 2 <= n <= 5");
  std::vector<Matrix> mats;
  std::vector<std::string> labels;
  auto E = [&](size_t i, size_t j) {
    Matrix M(f, n, n);
    M(i, j) = 1;
    return M;
  };
  if (kind == ClassicalKind::gl) {
    for (size_t i = 0; i < n; ++i) {
      mats.push_back(E(i, i));
      labels.push_back("e" + std::to_string(i + 1) + std::to_string(i + 1));
    }
  } else {
    for (size_t i = 0; i + 1 < n; ++i) {
      mats.push_back(sub(E(i, i), E(i + 1, i + 1)));
      labels.push_back("h" + std::to_string(i + 1));
    }
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j) {
        mats.push_back(E(i, j));
        labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
      }
  auto L = from_matrices(f, mats, labels);
  if (kind != ClassicalKind::psl || n % f->p() != 0) return L;
  // Identity lies in sl(n) when p | n: sum of i * h_i.
  Vec I(L->dim(), 0);
  for (size_t i = 0; i + 1 < n; ++i) I[i] = f->from_int(static_cast<int64_t>(i + 1));
  Subspace Z = Subspace::span(f, L->dim(), {I});
  auto Q = quotient(L, Z);
  auto P = std::make_shared<LieAlgebra>(*Q.alg);
  std::vector<Vec> pm;
  for (size_t j = 0; j < Q.lift.size(); ++j) pm.push_back(matvec(Q.proj.matrix, L->pmap()[Q.lift[j]]));
  P->set_pmap(std::move(pm));
  return P;
}

Matrix TensorModel::action(const Vec& y) const {
  size_t s = S->dim(), K = der_S.size(), dimA = A->dim();
  const auto& O = *W.O;
  const Field& F = *S->field();
  size_t m = O.vars();
  Matrix M(S->field(), dimA, dimA);
  for (size_t t = 0; t < s; ++t)
    for (size_t b = 0; b < N; ++b) {
      size_t col = t * N + b;
      for (size_t k = 0; k < K; ++k)
        for (size_t a = 0; a < N; ++a) {
          uint32_t c = y[k * N + a];
          if (!c) continue;
          auto [idx, cc] = O.mul_basis(a, b);
          if (!cc) continue;
          uint32_t coef = F.mul(c, cc);
          for (size_t r = 0; r < s; ++r) {
            uint32_t d = der_S[k](r, t);
            if (d) M(r * N + idx, col) = F.add(M(r * N + idx, col), F.mul(coef, d));
          }
        }
      for (size_t w = 0; w < N * m; ++w) {
        uint32_t c = y[K * N + w];
        if (!c) continue;
        Vec img = W.apply_to(unit(N * m, w), unit(N, b));
        for (size_t a = 0; a < N; ++a)
          if (img[a]) M(t * N + a, col) = F.add(M(t * N + a, col), F.mul(c, img[a]));
      }
    }
  return M;
}

TensorModel make_tensor(const AlgPtr& S, size_t m, const std::vector<uint32_t>& n) {
  const FieldPtr& f = S->field();
  const Field& F = *f;
  if (m == 0) {
    // O(0) is the ground field.
  } else if (n.size() != m) {
    throw ValidationError("need one height per variable");
  }
  TensorModel T;
  T.S = S;
  if (m > 0) {
    T.W = make_W(f, m, n);
  } else {
    T.W.O = nullptr;
  }
  size_t N = m > 0 ? T.W.O->dim() : 1;
  T.N = N;
  size_t s = S->dim();
  if (s * N > kSizeCap) throw ValidationError("size cap exceeded");
  if (center(*S).dim() != 0) throw ValidationError("tensor model needs a centerless S");
  auto mulb = [&](size_t a, size_t b) -> std::pair<size_t, uint32_t> {
    if (m == 0) return {0, 1};
    return T.W.O->mul_basis(a, b);
  };
  auto A = std::make_shared<LieAlgebra>(f, s * N);
  std::vector<std::string> labels(s * N);
  for (size_t x = 0; x < s; ++x)
    for (size_t a = 0; a < N; ++a) labels[x * N + a] = S->label(x) + (m ? "*" + T.W.O->monomial(a) : "");
  for (size_t x = 0; x < s; ++x)
    for (size_t y = x; y < s; ++y) {
      if (x == y) continue;
      const SparseVec& br = S->sc(x, y);
      for (size_t a = 0; a < N; ++a)
        for (size_t b = 0; b < N; ++b) {
          auto [idx, c] = mulb(a, b);
          SparseVec out;
          if (c)
            for (auto [k, v] : br) out.emplace_back(static_cast<uint32_t>(k * N + idx), F.mul(c, v));
          // pair (x,a),(y,b) with x < y; and (y,b),(x,a) is its negative
          A->set_bracket_sparse(x * N + a, y * N + b, std::move(out));
        }
    }
  A->set_labels(labels);
  T.A = A;
  // Der S with the inner part first.
  auto der = derivations(*S);
  std::vector<Matrix> ders;
  for (size_t i = 0; i < s; ++i) ders.push_back(S->ad_basis(i));
  for (auto& D : outer_derivations(*S, der)) ders.push_back(D);
  T.der_S = ders;
  size_t K = ders.size();
  std::vector<Vec> flat;
  for (const auto& D : ders) flat.push_back(D.a);
  Decomposer dec(f, s * s, flat);
  std::vector<std::vector<Vec>> dsc(K, std::vector<Vec>(K));
  for (size_t k = 0; k < K; ++k)
    for (size_t l = k + 1; l < K; ++l) dsc[k][l] = dec.coords_or_throw(commutator(ders[k], ders[l]).a);
  size_t nw = m > 0 ? N * m : 0;
  size_t amb = K * N + nw;
  auto G = std::make_shared<LieAlgebra>(f, amb);
  std::vector<std::string> glabels(amb);
  for (size_t k = 0; k < K; ++k)
    for (size_t a = 0; a < N; ++a)
      glabels[k * N + a] = (k < s ? "ad " + S->label(k) : "D" + std::to_string(k - s)) + (m ? "*" + T.W.O->monomial(a) : "");
  for (size_t w = 0; w < nw; ++w) glabels[K * N + w] = "Id*" + T.W.meta.algebra->label(w);
  for (size_t k = 0; k < K; ++k)
    for (size_t l = k + 1; l < K; ++l)
      for (size_t a = 0; a < N; ++a)
        for (size_t b = 0; b < N; ++b) {
          auto [idx, c] = mulb(a, b);
          Vec out(amb, 0);
          if (c)
            for (size_t r = 0; r < K; ++r)
              if (dsc[k][l][r]) out[r * N + idx] = F.mul(c, dsc[k][l][r]);
          G->set_bracket(k * N + a, l * N + b, out);
        }
  for (size_t w = 0; w < nw; ++w) {
    for (size_t k = 0; k < K; ++k)
      for (size_t a = 0; a < N; ++a) {
        // [D_k (x) f, Id (x) E] = -D_k (x) E(f)
        Vec img = T.W.apply_to(unit(nw, w), unit(N, a));
        Vec out(amb, 0);
        for (size_t b = 0; b < N; ++b)
          if (img[b]) out[k * N + b] = F.neg(img[b]);
        G->set_bracket(k * N + a, K * N + w, out);
      }
    for (size_t w2 = w + 1; w2 < nw; ++w2) {
      Vec br = T.W.meta.algebra->bracket_basis2(w, w2);
      Vec out(amb, 0);
      for (size_t t = 0; t < nw; ++t) out[K * N + t] = br[t];
      G->set_bracket(K * N + w, K * N + w2, out);
    }
  }
  G->set_labels(glabels);
  T.ambient = G;
  Matrix inc(f, amb, s * N);
  for (size_t i = 0; i < s * N; ++i) inc(i, i) = 1;
  T.incl = Homomorphism(A, G, std::move(inc), false);
  T.pi2 = Matrix(f, nw, amb);
  for (size_t w = 0; w < nw; ++w) T.pi2(w, K * N + w) = 1;
  return T;
}

}  // namespace modlie
