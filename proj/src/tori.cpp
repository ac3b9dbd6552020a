#include "modlie/tori.hpp"

#include <algorithm>
#include <map>

#include "modlie/error.hpp"
#include "modlie/spin.hpp"

namespace modlie {

namespace {

constexpr size_t kMaxIterates = 20000;

// x, x^[p], ... until the first repeat; returns the iterates and (preperiod, period).
std::vector<Vec> orbit(const RestrictedAlgebra& G, const Vec& x, size_t& pre, size_t& period) {
  std::map<Vec, size_t> seen;
  std::vector<Vec> ys;
  Vec y = x;
  while (true) {
    auto it = seen.find(y);
    if (it != seen.end()) {
      pre = it->second;
      period = ys.size() - it->second;
      return ys;
    }
    if (ys.size() > kMaxIterates) throw AlarmError("p-power orbit did not close");
    seen.emplace(y, ys.size());
    ys.push_back(y);
    y = G.p_power(y);
  }
}

bool abelian(const LieAlgebra& L, const std::vector<Vec>& xs) {
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = i + 1; j < xs.size(); ++j)
      if (!is_zero(L.bracket(xs[i], xs[j]))) return false;
  return true;
}

Subspace p_closed_span(const RestrictedAlgebra& G, const std::vector<Vec>& xs) {
  return p_envelope(G, Subspace::span(G.field(), G.dim(), xs));
}

}  // namespace

bool is_zero_root(const Vec& g) { return is_zero(g); }

JordanParts toral_decompose(const RestrictedAlgebra& G, const Vec& x) {
  if (x.size() != G.dim()) throw ValidationError("vector length does not match the restricted algebra");
  size_t pre = 0, period = 1;
  auto ys = orbit(G, x, pre, period);
  size_t N = period;
  while (N < pre) N += period;
  JordanParts out;
  out.exponent = N;
  // ys holds indices < pre + period; reduce N into that window.
  size_t idx = N < ys.size() ? N : pre + (N - pre) % period;
  out.semisimple = ys[idx];
  out.nilpotent = sub(*G.field(), x, out.semisimple);
  return out;
}

std::optional<std::vector<Vec>> toral_basis_of(const RestrictedAlgebra& G, const Subspace& T) {
  const Field& F = *G.field();
  size_t d = T.dim(), k = F.k();
  uint32_t p = F.p();
  if (d == 0) return std::vector<Vec>{};
  std::vector<Vec> P;
  for (const auto& b : T.rows()) {
    Vec img = G.p_power(b);
    if (!T.member(img)) throw ValidationError("subspace is not closed under the p-map");
    P.push_back(T.coords(img));
  }
  auto Fp = make_field(p, 1);
  Matrix M(Fp, k * d, k * d);
  for (size_t i = 0; i < d; ++i)
    for (size_t r = 0; r < k; ++r) {
      uint32_t w = 1;
      for (size_t t = 0; t < r; ++t) w *= p;
      uint32_t wp = F.frob(w);
      Vec col(d, 0);
      for (size_t j = 0; j < d; ++j) col[j] = F.mul(wp, P[i][j]);
      col[i] = F.sub(col[i], w);
      for (size_t j = 0; j < d; ++j) {
        auto dg = F.digits(col[j]);
        for (size_t s = 0; s < k; ++s) M(j * k + s, i * k + r) = dg[s];
      }
    }
  Subspace K = kernel(M);
  Echelon E(G.field(), d);
  std::vector<Vec> out;
  for (const auto& row : K.rows()) {
    Vec c(d);
    for (size_t i = 0; i < d; ++i) c[i] = F.from_digits(Vec(row.begin() + i * k, row.begin() + (i + 1) * k));
    if (E.add(c)) out.push_back(T.from_coords(c));
  }
  if (out.size() < d) return std::nullopt;
  return out;
}

namespace {

Torus torus_over(GPtr G, const Subspace& S) {
  auto tb = toral_basis_of(*G, S);
  if (!tb) throw ValidationError("torus does not split over the working field");
  return Torus{std::move(G), S, std::move(*tb)};
}

// Smallest multiple of k up to max_k over which the p-closed span of xs splits.
std::optional<std::pair<GPtr, Subspace>> escalate(const GPtr& G, const std::vector<Vec>& xs, uint32_t max_k) {
  uint32_t k = G->field()->k(), p = G->field()->p();
  for (uint32_t K = 2 * k; K <= max_k; K += k) {
    auto F2 = make_field(p, K);
    auto G2 = std::make_shared<RestrictedAlgebra>(G->change_field(F2));
    std::vector<Vec> ys;
    for (const auto& x : xs) ys.push_back(embed_vec(x, G->field(), F2));
    Subspace S = p_closed_span(*G2, ys);
    if (toral_basis_of(*G2, S)) return std::make_pair(GPtr(G2), S);
  }
  return std::nullopt;
}

}  // namespace

Torus make_torus(GPtr G, const std::vector<Vec>& elements, uint32_t max_k) {
  if (!abelian(*G->lie(), elements)) throw ValidationError("torus elements do not commute");
  Subspace S = p_closed_span(*G, elements);
  if (!abelian(*G->lie(), S.rows())) throw ValidationError("p-closure of the elements is not abelian");
  if (toral_basis_of(*G, S)) return torus_over(G, S);
  auto up = escalate(G, elements, max_k);
  if (!up) throw ValidationError("torus does not split over GF(p^k) for k up to the escalation limit");
  return torus_over(up->first, up->second);
}

namespace {

struct Search {
  GPtr G;
  std::vector<Vec> gens;  // elements whose p-closed span is T
  Subspace T;
  uint32_t max_k;
  size_t escalations = 0;

  // Adds the semisimple element s. False when escalation is exhausted.
  bool extend(const Vec& s) {
    std::vector<Vec> xs = T.rows();
    xs.push_back(s);
    Subspace S = p_closed_span(*G, xs);
    if (toral_basis_of(*G, S)) {
      T = S;
      return true;
    }
    auto up = escalate(G, xs, max_k);
    if (!up) return false;
    G = up->first;
    T = up->second;
    ++escalations;
    return true;
  }
};

bool certificate(const RestrictedAlgebra& G, const Subspace& T, std::optional<Vec>* witness) {
  Subspace C = centralizer(*G.lie(), T);
  for (const auto& b : C.rows()) {
    Vec s = toral_decompose(G, b).semisimple;
    if (!T.member(s)) {
      if (witness) *witness = s;
      return false;
    }
  }
  if (!is_nilpotent_action(*G.lie(), C, C)) return false;
  return true;
}

}  // namespace

bool is_maximal_torus(const Torus& T) { return certificate(*T.G, T.space, nullptr); }

MaximalTorusResult maximal_torus(GPtr G, uint64_t seed, uint32_t max_k, const std::vector<Vec>& start) {
  Search S{G, {}, Subspace(G->field(), G->dim()), max_k};
  Rng rng(seed);
  if (!start.empty()) {
    Torus T0 = make_torus(G, start, max_k);
    S.G = T0.G;
    S.T = T0.space;
  }
  bool stuck = false;
  while (!stuck) {
    GPtr hold = S.G;
    const auto& GA = *hold;
    Subspace C = centralizer(*GA.lie(), S.T);
    std::vector<Vec> cand;
    // A few random centralizer elements first when the seed asks for variety.
    size_t nrand = seed == 1 ? 0 : 3;
    auto random_elt = [&]() {
      Vec v(GA.dim(), 0);
      for (const auto& r : C.rows()) axpy(*GA.field(), v, rng.below(GA.field()->q()), r);
      return v;
    };
    for (size_t i = 0; i < nrand; ++i) cand.push_back(random_elt());
    for (const auto& r : C.rows()) cand.push_back(r);
    bool grew = false;
    for (const auto& x : cand) {
      Vec s = toral_decompose(GA, x).semisimple;
      if (S.T.member(s)) continue;
      if (S.extend(s)) {
        grew = true;
        break;
      }
    }
    if (grew) continue;
    if (is_nilpotent_action(*GA.lie(), C, C)) break;
    // Not nilpotent: some element has a semisimple part outside T.
    stuck = true;
    for (size_t attempt = 0; attempt < 200 && stuck; ++attempt) {
      Vec s = toral_decompose(GA, random_elt()).semisimple;
      if (!S.T.member(s) && S.extend(s)) stuck = false;
    }
  }
  MaximalTorusResult out{torus_over(S.G, S.T), false, S.escalations};
  out.certified = !stuck && certificate(*out.torus.G, out.torus.space, nullptr);
  return out;
}

const RootSpace* RootDatum::find(const Vec& gamma) const {
  for (const auto& r : roots)
    if (r.gamma == gamma) return &r;
  return nullptr;
}

Subspace RootDatum::space_of(const Vec& gamma) const {
  if (is_zero(gamma)) return zero;
  if (auto r = find(gamma)) return r->space;
  return Subspace(zero.field(), target_dim);
}

std::vector<Matrix> toral_operators(const Torus& T, RootTarget target) {
  std::vector<Matrix> ops;
  for (const auto& t : T.toral_basis) ops.push_back(target == RootTarget::L ? T.G->rho(t) : T.G->lie()->ad(t));
  return ops;
}

RootDatum root_decomposition(const Torus& T, RootTarget target) {
  RootDatum R;
  R.torus = T;
  R.target = target;
  R.target_dim = target == RootTarget::L ? T.G->base_dim() : T.G->dim();
  auto ops = toral_operators(T, target);
  for (size_t i = 0; i < ops.size(); ++i)
    for (size_t j = i + 1; j < ops.size(); ++j)
      if (!commutator(ops[i], ops[j]).is_zero()) throw ValidationError("toral operators do not commute");
  R.zero = Subspace::full(T.field(), R.target_dim);
  if (ops.empty()) return R;
  auto blocks = prime_eigenspaces(ops, R.target_dim, T.field());
  size_t total = 0;
  R.zero = Subspace(T.field(), R.target_dim);
  for (auto& b : blocks) {
    total += b.space.dim();
    if (is_zero(b.values)) R.zero = b.space;
    else R.roots.push_back({b.values, b.space});
  }
  if (total != R.target_dim) throw ValidationError("incomplete root decomposition; the torus does not split");
  std::sort(R.roots.begin(), R.roots.end(), [](const RootSpace& a, const RootSpace& b) { return a.gamma < b.gamma; });
  return R;
}

bool is_standard(const Torus& T) {
  const auto& L = *T.G->base();
  auto R = root_decomposition(T, RootTarget::L);
  Subspace H1 = bracket_space(L, R.zero, R.zero);
  return is_nilpotent_action(L, H1, Subspace::full(L.field(), L.dim()));
}

size_t toral_rank(const AlgPtr& L, uint64_t seed, size_t tries) {
  auto G = std::make_shared<RestrictedAlgebra>(envelope_of(L));
  size_t best = 0;
  for (size_t t = 0; t < tries; ++t) {
    auto r = maximal_torus(G, seed + t, 2);
    if (!r.certified) throw AlarmError("maximal torus search could not certify its result");
    best = std::max(best, r.torus.dim());
  }
  // The p-closed span of one semisimple part is a torus over the closure; no splitting needed.
  Rng rng(seed);
  for (size_t t = 0; t < 2 * tries; ++t) {
    Vec s = toral_decompose(*G, rng.vec(G->dim(), G->field()->q())).semisimple;
    best = std::max(best, p_envelope(*G, Subspace::span(G->field(), G->dim(), {s})).dim());
  }
  return best;
}

}  // namespace modlie
