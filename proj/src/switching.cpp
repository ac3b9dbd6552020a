#include "modlie/switching.hpp"

#include <algorithm>
#include <limits>

#include "modlie/error.hpp"
#include "modlie/parallel.hpp"
#include "modlie/spin.hpp"

namespace modlie {

namespace {

constexpr size_t kMaxPowerSteps = 64;

struct PowerData {
  size_t m = 0;
  Vec sum;   // x + x^[p] + ... + x^[p]^(m-1)
  Vec last;  // x^[p]^m, inside T
};

PowerData p_powers_into_torus(const RestrictedAlgebra& G, const Subspace& T, const Vec& X) {
  PowerData d;
  d.sum = Vec(G.dim(), 0);
  Vec y = X;
  for (size_t j = 0; j <= kMaxPowerSteps; ++j) {
    if (T.member(y)) {
      d.m = j;
      d.last = y;
      return d;
    }
    d.sum = add(*G.field(), d.sum, y);
    y = G.p_power(y);
  }
  throw ValidationError("no p-power of the root vector lands in the torus");
}

Vec coords_in(const std::vector<Vec>& basis, const Vec& v, const FieldPtr& f) {
  Decomposer dec(f, v.size(), basis);
  return dec.coords_or_throw(v);
}

}  // namespace

Torus switched_torus(const RootDatum& RD, const Vec& alpha, const Vec& x, size_t* m, uint32_t max_k) {
  const auto& G = *RD.torus.G;
  const auto* rs = RD.find(alpha);
  if (!rs) throw ValidationError("alpha is not a root");
  if (!rs->space.member(x)) throw ValidationError("x is not a root vector for alpha");
  if (is_zero(x)) {
    if (m) *m = 0;
    return RD.torus;
  }
  auto pd = p_powers_into_torus(G, RD.torus.space, G.from_L(x));
  if (m) *m = pd.m;
  std::vector<Vec> tx;
  for (size_t i = 0; i < RD.torus.dim(); ++i) {
    Vec t = RD.torus.toral_basis[i];
    axpy(*G.field(), t, G.field()->neg(alpha[i]), pd.sum);
    tx.push_back(t);
  }
  Torus T = make_torus(RD.torus.G, tx, max_k);
  if (T.dim() != RD.torus.dim()) throw AlarmError("switched torus changed dimension");
  return T;
}

SwitchRecord elementary_switch(const RootDatum& RD, const Vec& alpha, const Vec& x, uint64_t seed,
                               bool build_exponential) {
  const auto& G = *RD.torus.G;
  const auto& f = G.field();
  const Field& F = *f;
  uint32_t p = F.p();
  size_t n = G.base_dim(), d = RD.torus.dim();
  SwitchRecord R;
  R.alpha = alpha;
  R.x = x;
  const auto* rs = RD.find(alpha);
  if (!rs) throw ValidationError("alpha is not a root");
  if (!rs->space.member(x)) throw ValidationError("x is not a root vector for alpha");
  Vec X = G.from_L(x);
  PowerData pd;
  if (is_zero(x)) {
    pd.sum = Vec(G.dim(), 0);
    pd.last = Vec(G.dim(), 0);
  } else {
    pd = p_powers_into_torus(G, RD.torus.space, X);
  }
  R.m = pd.m;
  for (size_t i = 0; i < d; ++i) {
    Vec t = RD.torus.toral_basis[i];
    axpy(F, t, F.neg(alpha[i]), pd.sum);
    R.t_x.push_back(t);
  }
  // gamma(x^[p]^m) needs the coordinates of x^[p]^m in the toral basis.
  Vec c = coords_in(RD.torus.toral_basis, pd.last, f);
  auto gamma_at = [&](const Vec& g) {
    uint32_t s = 0;
    for (size_t i = 0; i < d; ++i) s = F.add(s, F.mul(c[i], g[i]));
    return s;
  };
  bool any = false;
  for (const auto& r : RD.roots) any = any || gamma_at(r.gamma) != 0;
  if (!any) {
    R.value_field = f;
  } else if (F.k() == 1) {
    R.value_field = xi_field(p);
  } else if (F.k() % p == 0) {
    R.value_field = f;
  } else {
    throw ValidationError("switching with x^[p]^m outside the kernel of the roots needs GF(p^p)");
  }
  R.new_torus = is_zero(x) ? RD.torus : make_torus(RD.torus.G, R.t_x, (any ? p : 2) * F.k());
  const auto& V = R.value_field;
  const Field& FV = *V;
  auto xi = [&](uint32_t a) -> uint32_t {
    if (a == 0) return 0;
    if (!F.in_prime_subfield(a)) throw ValidationError("root value outside the prime field");
    if (FV.k() % p == 0) return FV.mul(a, xi_one_in(V));
    throw ValidationError("no room for xi in the value field");
  };
  std::vector<Matrix> ops;
  for (const auto& t : R.t_x) ops.push_back(embed_matrix(G.rho(t), V));
  // Old decomposition including H.
  std::vector<std::pair<Vec, Subspace>> old{{Vec(d, 0), RD.zero}};
  for (const auto& r : RD.roots) old.push_back({r.gamma, r.space});
  size_t total = 0;
  R.dims_preserved = true;
  for (const auto& [g, S] : old) {
    SwitchedRoot sr;
    sr.gamma = g;
    uint32_t shift = xi(gamma_at(g));
    for (size_t i = 0; i < d; ++i) sr.values.push_back(FV.sub(embed(Scalar(f, g[i]), V).code, FV.mul(shift, alpha[i])));
    sr.space = simultaneous_eigenspaces(ops, {sr.values}, n, V)[0].space;
    total += sr.space.dim();
    if (sr.space.dim() != S.dim()) R.dims_preserved = false;
    R.roots.push_back(std::move(sr));
  }
  R.formula_ok = R.dims_preserved && total == n;
  // Match eigenspaces with roots of the new toral basis.
  const auto& NF = R.new_torus.field();
  if (V->k() % NF->k() == 0) {
    auto RDx = root_decomposition(R.new_torus);
    std::vector<std::pair<Vec, Subspace>> fresh{{Vec(d, 0), RDx.zero}};
    for (const auto& r : RDx.roots) fresh.push_back({r.gamma, r.space});
    for (auto& sr : R.roots)
      for (const auto& [g2, S2] : fresh)
        if (embed_subspace(S2, V) == sr.space) {
          sr.new_gamma = g2;
          break;
        }
    if (NF->same(F)) {
      // Sections are unchanged as subspaces.
      auto section_of = [&](const std::vector<std::pair<Vec, Subspace>>& parts, const std::vector<Vec>& lattice) {
        std::vector<Vec> rows;
        auto Fp = make_field(p, 1);
        for (const auto& [g, S] : parts) {
          bool in = is_zero(g);
          for (uint32_t i = 0; i < p && !in && lattice.size() >= 1; ++i)
            for (uint32_t j = 0; j < (lattice.size() > 1 ? p : 1) && !in; ++j) {
              Vec v = scaled(*Fp, lattice[0], i);
              if (lattice.size() > 1) v = add(*Fp, v, scaled(*Fp, lattice[1], j));
              in = v == g;
            }
          if (in)
            for (const auto& r : S.rows()) rows.push_back(r);
        }
        return Subspace::span(f, n, rows);
      };
      bool ok = true;
      auto lines = root_lines(RD);
      auto mapped = [&](const Vec& g) -> std::optional<Vec> {
        for (const auto& sr : R.roots)
          if (sr.gamma == g) return sr.new_gamma;
        return std::nullopt;
      };
      // L(alpha) and every L(alpha, beta) keep their underlying spaces.
      auto ga = mapped(alpha);
      auto Fp = make_field(p, 1);
      if (!ga || section_of(old, {alpha}) != section_of(fresh, {*ga})) ok = false;
      for (size_t b = 0; b < lines.size() && ok; ++b) {
        if (rank(Matrix::from_rows(Fp, d, {alpha, lines[b]})) < 2) continue;
        auto gb = mapped(lines[b]);
        if (!gb || section_of(old, {alpha, lines[b]}) != section_of(fresh, {*ga, *gb})) ok = false;
      }
      R.sections_preserved = ok;
    }
  }
  if (!build_exponential) return R;
  // E_x as a polynomial in ad x: Krylov basis, then the linear conditions
  // (ad t_x - gamma_x(t_x)) E v = 0 for v in each old root space.
  Matrix A = embed_matrix(G.base()->ad(x), V);
  std::vector<Matrix> P{Matrix::identity(V, n)};
  Echelon kry(V, n * n);
  kry.add(P[0].a);
  while (true) {
    Matrix next = mul(A, P.back());
    if (!kry.add(next.a)) break;
    P.push_back(std::move(next));
  }
  size_t D = P.size();
  R.E_degree = D - 1;
  Echelon eqs(V, D);
  for (size_t r = 0; r < old.size(); ++r) {
    for (const auto& v0 : old[r].second.rows()) {
      Vec v = embed_vec(v0, f, V);
      std::vector<Vec> w;
      for (const auto& Pj : P) w.push_back(matvec(Pj, v));
      for (size_t i = 0; i < d; ++i) {
        Matrix B = shift(ops[i], R.roots[r].values[i]);
        std::vector<Vec> u;
        for (const auto& wj : w) u.push_back(matvec(B, wj));
        for (size_t coord = 0; coord < n; ++coord) {
          Vec row(D);
          for (size_t j = 0; j < D; ++j) row[j] = u[j][coord];
          if (!is_zero(row)) eqs.add(row);
          if (eqs.rank() == D) break;
        }
      }
    }
  }
  Subspace sol = kernel(Matrix::from_rows(V, D, eqs.span().rows()));
  Rng rng(seed);
  auto build = [&](const Vec& coef) {
    Matrix E(V, n, n);
    for (size_t j = 0; j < D; ++j)
      if (coef[j]) E = add(E, scaled(P[j], coef[j]));
    return E;
  };
  std::vector<Vec> tries = sol.rows();
  for (size_t t = 0; t < 20 && sol.dim() > 1; ++t) {
    Vec cvec(D, 0);
    for (const auto& r : sol.rows()) axpy(FV, cvec, rng.below(FV.q()), r);
    tries.push_back(cvec);
  }
  for (const auto& coef : tries) {
    Matrix E = build(coef);
    if (rank(E) != n) continue;
    bool ok = true;
    for (size_t r = 0; r < old.size() && ok; ++r)
      ok = image_of(E, embed_subspace(old[r].second, V)) == R.roots[r].space;
    if (ok) {
      R.E = std::move(E);
      R.exponential_ok = true;
      break;
    }
  }
  return R;
}

OptimizeResult optimize_torus(const RootDatum& RD0, size_t budget, uint64_t seed) {
  OptimizeResult out;
  out.final = RD0;
  auto secs = all_sections(out.final, false);
  out.r_initial = out.r_final = improper_count(secs, out.final);
  uint32_t p = RD0.torus.field()->p();
  auto Fp = make_field(p, 1);
  (void)seed;
  while (out.r_final > 0) {
    if (out.trace.size() >= budget) {
      out.budget_exhausted = true;
      break;
    }
    const auto& RD = out.final;
    // Candidate moves: root vectors in L_{i alpha} for improper alpha.
    struct Move {
      Vec alpha, x;
    };
    std::vector<Move> moves;
    for (const auto& s : secs) {
      if (s.proper) continue;
      for (uint32_t i = 1; i < p; ++i) {
        Vec a = scaled(*Fp, s.gamma, i);
        if (const auto* rs = RD.find(a))
          for (const auto& x : projective_points(rs->space, 3000)) moves.push_back({a, x});
      }
    }
    std::vector<size_t> score(moves.size(), std::numeric_limits<size_t>::max());
    std::vector<RootDatum> cand(moves.size());
    parallel_for(moves.size(), [&](size_t k) {
      try {
        Torus T = switched_torus(RD, moves[k].alpha, moves[k].x);
        cand[k] = root_decomposition(T);
        score[k] = improper_count(all_sections(cand[k], false), cand[k]);
      } catch (const ValidationError&) {
      }
    });
    out.evaluated += moves.size();
    size_t best = moves.size();
    for (size_t k = 0; k < moves.size(); ++k)
      if (score[k] < out.r_final && (best == moves.size() || score[k] < score[best])) best = k;
    if (best == moves.size()) break;
    out.trace.push_back({moves[best].alpha, moves[best].x, out.r_final, score[best]});
    out.final = cand[best];
    out.r_final = score[best];
    secs = all_sections(out.final, false);
  }
  return out;
}

}  // namespace modlie
