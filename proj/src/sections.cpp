#include "modlie/sections.hpp"

#include <algorithm>
#include <map>

#include "modlie/error.hpp"
#include "modlie/parallel.hpp"

namespace modlie {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::solvable: return "solvable";
    case Verdict::classical: return "classical";
    case Verdict::witt: return "Witt";
    case Verdict::hamiltonian_eps2: return "Hamiltonian_eps2";
    case Verdict::hamiltonian_eps1: return "Hamiltonian_eps1";
    default: return "unclassified";
  }
}

Verdict verdict_from_dim(size_t dim, uint32_t p) {
  if (dim == 0) return Verdict::solvable;
  if (dim == 3) return Verdict::classical;
  if (dim == p) return Verdict::witt;
  if (dim == p * p - 2) return Verdict::hamiltonian_eps2;
  if (dim == p * p - 1) return Verdict::hamiltonian_eps1;
  return Verdict::unclassified;
}

Vec normalize_root(const Vec& g, uint32_t p) {
  size_t i = first_nonzero(g);
  if (i >= g.size()) return g;
  auto Fp = make_field(p, 1);
  uint32_t inv = Fp->inv(g[i]);
  return scaled(*Fp, g, inv);
}

std::vector<Vec> root_lines(const RootDatum& RD) {
  uint32_t p = RD.torus.field()->p();
  std::vector<Vec> out;
  for (const auto& r : RD.roots) {
    Vec n = normalize_root(r.gamma, p);
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vec> projective_points(const Subspace& V, size_t limit) {
  const Field& F = *V.field();
  size_t d = V.dim();
  uint32_t q = F.q();
  std::vector<Vec> out;
  for (size_t lead = 0; lead < d; ++lead) {
    size_t free = d - lead - 1;
    uint64_t count = 1;
    for (size_t i = 0; i < free; ++i) {
      count *= q;
      if (count > limit) break;
    }
    for (uint64_t c = 0; c < count; ++c) {
      if (out.size() >= limit) return out;
      Vec coef(d, 0);
      coef[lead] = 1;
      uint64_t r = c;
      for (size_t i = lead + 1; i < d; ++i) {
        coef[i] = static_cast<uint32_t>(r % q);
        r /= q;
      }
      out.push_back(V.from_coords(coef));
    }
  }
  return out;
}

// ---------------------------------------------------------------- quotients

Vec SectionQuotient::project(const Vec& g) const { return quot.proj(sumG.coords(g)); }

Subspace SectionQuotient::image(const Subspace& V) const {
  std::vector<Vec> rows;
  const auto& G = *Kalg;
  for (const auto& r : V.rows()) {
    Vec g(sumG.ambient(), 0);
    std::copy(r.begin(), r.end(), g.begin());
    rows.push_back(K.coords(project(g)));
  }
  return Subspace::span(G.field(), G.dim(), rows);
}

Subspace SectionQuotient::preimage(const Subspace& M) const {
  Subspace P = modlie::preimage(psi, M);
  std::vector<Vec> rows;
  for (const auto& c : P.rows()) rows.push_back(section.from_coords(c));
  return Subspace::span(section.field(), section.ambient(), rows);
}

SectionQuotient section_quotient(const RootDatum& RD, const std::vector<Vec>& lattice) {
  if (RD.target != RootTarget::L) throw ValidationError("sections are taken in L");
  const auto& G = *RD.torus.G;
  const auto& f = G.field();
  uint32_t p = f->p();
  size_t n = G.base_dim();
  SectionQuotient S;
  // Enumerate the F_p-span of the lattice generators.
  std::vector<Vec> span{Vec(RD.torus.dim(), 0)};
  auto Fp = make_field(p, 1);
  for (const auto& g : lattice) {
    std::vector<Vec> next;
    for (const auto& s : span)
      for (uint32_t i = 0; i < p; ++i) {
        Vec v = add(*Fp, s, scaled(*Fp, g, i));
        if (std::find(next.begin(), next.end(), v) == next.end()) next.push_back(v);
      }
    span = std::move(next);
  }
  std::sort(span.begin(), span.end());
  std::vector<Vec> rows;
  S.components.push_back({Vec(RD.torus.dim(), 0), RD.zero});
  for (const auto& r : RD.zero.rows()) rows.push_back(r);
  for (const auto& g : span) {
    if (is_zero(g)) continue;
    if (auto rs = RD.find(g)) {
      S.components.push_back({g, rs->space});
      for (const auto& r : rs->space.rows()) rows.push_back(r);
    }
  }
  S.section = Subspace::span(f, n, rows);
  std::vector<Vec> grows = RD.torus.space.rows();
  for (const auto& r : S.section.rows()) grows.push_back(G.from_L(r));
  S.sumG = Subspace::span(f, G.dim(), grows);
  auto sub = extract_subalgebra(G.lie(), S.sumG);
  S.sub = sub.alg;
  S.radical_sub = solvable_radical(S.sub);
  S.quot = quotient(S.sub, S.radical_sub);
  std::vector<Vec> kr, tr;
  for (const auto& r : S.section.rows()) kr.push_back(S.project(G.from_L(r)));
  for (const auto& t : RD.torus.toral_basis) tr.push_back(S.project(t));
  size_t qd = S.quot.alg->dim();
  S.K = Subspace::span(f, qd, kr);
  S.Tbar = Subspace::span(f, qd, tr);
  S.Kalg = extract_subalgebra(S.quot.alg, S.K).alg;
  S.psi = Matrix(f, S.K.dim(), S.section.dim());
  for (size_t j = 0; j < kr.size(); ++j) S.psi.set_col(j, S.K.coords(kr[j]));
  Subspace ker = kernel(S.psi);
  std::vector<Vec> rr;
  for (const auto& c : ker.rows()) rr.push_back(S.section.from_coords(c));
  S.radical = Subspace::span(f, n, rr);
  for (const auto& t : tr) S.tbar_ops.push_back(restrict_to(S.quot.alg->ad(t), S.K));
  return S;
}

Fingerprint fingerprint(const SectionQuotient& Q, bool with_toral_rank) {
  Fingerprint fp;
  const auto& K = *Q.Kalg;
  fp.dim = K.dim();
  auto full = Subspace::full(K.field(), K.dim());
  fp.derived_dim = bracket_space(K, full, full).dim();
  fp.perfect = fp.derived_dim == fp.dim;
  fp.torus_image_dim = Q.Tbar.dim();
  if (with_toral_rank && fp.dim > 0) {
    try {
      fp.toral_rank = toral_rank(Q.Kalg, 1, 3);
    } catch (const ValidationError&) {
      fp.toral_rank = 0;
    }
  }
  return fp;
}

// ------------------------------------------------------ standard maximal

namespace {

// Calls fn on hyperplanes of V (taken through functionals on its coordinates)
// until fn returns true. Returns whether it stopped early.
template <class Fn>
bool each_hyperplane(const Subspace& V, size_t limit, Fn&& fn) {
  size_t d = V.dim();
  if (d == 0) return false;
  for (const auto& f : projective_points(Subspace::full(V.field(), d), limit)) {
    Matrix M(V.field(), 1, d);
    for (size_t i = 0; i < d; ++i) M(0, i) = f[i];
    std::vector<Vec> rows;
    Subspace ker = kernel(M);
    for (const auto& c : ker.rows()) rows.push_back(V.from_coords(c));
    if (fn(Subspace::span(V.field(), V.ambient(), rows))) return true;
  }
  return false;
}

bool ad_square_zero(const LieAlgebra& K, const Vec& c) {
  for (size_t i = 0; i < K.dim(); ++i)
    if (!is_zero(K.bracket(c, K.bracket(c, unit(K.dim(), i))))) return false;
  return true;
}

Subspace normalizer_fixpoint(const LieAlgebra& K, Subspace M) {
  for (size_t it = 0; it < K.dim() + 1; ++it) {
    Subspace N = normalizer(K, M);
    if (N == M) break;
    M = N;
  }
  return M;
}

}  // namespace

StandardMaximal standard_maximal_subalgebra(const AlgPtr& Kp, const std::vector<Subspace>& weights, Verdict v) {
  const auto& K = *Kp;
  size_t n = K.dim();
  const auto& f = K.field();
  StandardMaximal out;
  if (v == Verdict::witt) {
    for (size_t i = 0; i < weights.size() && !out.found; ++i) {
      std::vector<Vec> rest;
      for (size_t j = 0; j < weights.size(); ++j)
        if (j != i)
          for (const auto& r : weights[j].rows()) rest.push_back(r);
      each_hyperplane(weights[i], 4096, [&](const Subspace& h) {
        std::vector<Vec> rows = rest;
        for (const auto& r : h.rows()) rows.push_back(r);
        Subspace C = Subspace::span(f, n, rows);
        if (C.dim() + 1 == n && is_subalgebra(K, C)) {
          out = {true, true, "homogeneous", C};
          return true;
        }
        return false;
      });
    }
    if (!out.found)
      each_hyperplane(Subspace::full(f, n), 5000000, [&](const Subspace& h) {
        if (!is_subalgebra(K, h)) return false;
        out = {true, false, "hyperplane scan", h};
        return true;
      });
    return out;
  }
  if (v == Verdict::hamiltonian_eps1 || v == Verdict::hamiltonian_eps2) {
    std::vector<Vec> sandwiches;
    for (const auto& W : weights)
      for (const auto& c : projective_points(W, 20000))
        if (ad_square_zero(K, c)) sandwiches.push_back(c);
    Subspace M = subalgebra_closure(K, Subspace::span(f, n, sandwiches));
    M = normalizer_fixpoint(K, M);
    if (M.dim() + 2 == n && is_subalgebra(K, M)) return {true, true, "sandwich", M};
    if (M.dim() + 2 > n) {
      out.method = "not found";
      return out;
    }
    // Homogeneous codimension-2 subspaces containing M.
    std::vector<Subspace> R;
    for (const auto& W : weights) {
      Echelon E(f, n);
      Subspace WM = intersect(W, M);
      for (const auto& r : WM.rows()) E.add(r);
      std::vector<Vec> c;
      for (const auto& r : W.rows())
        if (E.add(r)) c.push_back(r);
      R.push_back(Subspace::span(f, n, c));
    }
    auto assemble = [&](size_t skip1, size_t skip2, const std::vector<Vec>& extra) {
      std::vector<Vec> rows = M.rows();
      for (size_t t = 0; t < R.size(); ++t)
        if (t != skip1 && t != skip2)
          for (const auto& r : R[t].rows()) rows.push_back(r);
      rows.insert(rows.end(), extra.begin(), extra.end());
      return Subspace::span(f, n, rows);
    };
    auto test = [&](const Subspace& C) {
      if (C.dim() + 2 == n && is_subalgebra(K, C)) {
        out = {true, true, "sandwich + homogeneous completion", C};
        return true;
      }
      return false;
    };
    for (size_t i = 0; i < R.size() && !out.found; ++i)
      for (size_t j = i + 1; j < R.size() && !out.found; ++j)
        each_hyperplane(R[i], 100000, [&](const Subspace& hi) {
          return each_hyperplane(R[j], 100000, [&](const Subspace& hj) {
            std::vector<Vec> extra = hi.rows();
            for (const auto& r : hj.rows()) extra.push_back(r);
            return test(assemble(i, j, extra));
          });
        });
    for (size_t i = 0; i < R.size() && !out.found; ++i)
      each_hyperplane(R[i], 100000, [&](const Subspace& h1) {
        return each_hyperplane(h1, 100000, [&](const Subspace& h2) { return test(assemble(i, i, h2.rows())); });
      });
    if (!out.found) out.method = "not found";
    return out;
  }
  throw ValidationError("standard maximal subalgebra is defined for Witt and Hamiltonian quotients only");
}

// ------------------------------------------------------------ 1-sections

SectionReport one_section(const RootDatum& RD, const Vec& gamma, bool with_tr) {
  if (is_zero(gamma)) throw ValidationError("1-section needs a nonzero root");
  auto SQ = section_quotient(RD, {gamma});
  SectionReport R;
  R.gamma = gamma;
  R.section = SQ.section;
  R.radical = SQ.radical;
  R.fp = fingerprint(SQ, with_tr);
  uint32_t p = RD.torus.field()->p();
  R.verdict = verdict_from_dim(R.fp.dim, p);
  const auto& G = *RD.torus.G;
  if (R.verdict == Verdict::solvable || R.verdict == Verdict::classical) {
    R.q_found = true;
    R.q_method = "whole section";
    R.Q_gamma = SQ.section;
  } else if (R.verdict != Verdict::unclassified) {
    std::vector<Subspace> weights;
    for (const auto& c : SQ.components) weights.push_back(SQ.image(c.second));
    auto SM = standard_maximal_subalgebra(SQ.Kalg, weights, R.verdict);
    R.q_found = SM.found;
    R.q_method = SM.method;
    if (SM.found) R.Q_gamma = SQ.preimage(SM.M);
  }
  if (R.q_found) {
    R.proper = true;
    for (const auto& t : RD.torus.toral_basis) {
      for (const auto& r : R.Q_gamma.rows())
        if (!R.Q_gamma.member(G.act(t, r))) {
          R.proper = false;
          break;
        }
      if (!R.proper) break;
    }
    for (const auto& c : SQ.components)
      if (!is_zero(c.first)) R.Q_root.push_back({c.first, intersect(R.Q_gamma, c.second)});
  }
  return R;
}

std::vector<SectionReport> all_sections(const RootDatum& RD, bool with_tr) {
  auto lines = root_lines(RD);
  std::vector<SectionReport> out(lines.size());
  std::vector<std::string> errors(lines.size());
  parallel_for(lines.size(), [&](size_t i) {
    try {
      out[i] = one_section(RD, lines[i], with_tr);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (const auto& e : errors)
    if (!e.empty()) throw AlarmError("1-section failed: " + e);
  return out;
}

size_t improper_count(const std::vector<SectionReport>& sections, const RootDatum& RD) {
  uint32_t p = RD.torus.field()->p();
  size_t r = 0;
  for (const auto& root : RD.roots) {
    Vec n = normalize_root(root.gamma, p);
    for (const auto& s : sections)
      if (s.gamma == n) {
        if (!s.proper) ++r;
        break;
      }
  }
  return r;
}

// ------------------------------------------------------------ 2-sections

int classify_two_section(const TwoSectionEvidence& e) {
  if (e.K_dim == 0) return 1;
  if (e.r == 2) return 3;
  if (e.r != 1) return 0;
  if (e.m >= 1) return e.pi2_dim > 0 ? 5 : 6;
  if (e.tr_socle == 1) {
    if (e.tbar_dim == 1) return 2;
    if (e.tbar_dim == 2) return 4;
    return 0;
  }
  if (e.tr_socle == 2) return e.socle_restricted ? 8 : 7;
  return 0;
}

namespace {

// Flattened matrices; used to take spans of operator sets.
Vec flat(const Matrix& M) { return M.a; }

}  // namespace

TwoSectionResult two_section(const RootDatum& RD, const Vec& alpha, const Vec& beta, uint64_t seed) {
  uint32_t p = RD.torus.field()->p();
  {
    // independence over F_p
    auto Fp = make_field(p, 1);
    Matrix M = Matrix::from_rows(Fp, alpha.size(), {alpha, beta});
    if (rank(M) != 2) throw ValidationError("alpha and beta must be independent");
  }
  TwoSectionResult out;
  out.sq = section_quotient(RD, {alpha, beta});
  auto& SQ = out.sq;
  auto& e = out.cls.evidence;
  const auto& K = *SQ.Kalg;
  const auto& f = K.field();
  e.K_dim = K.dim();
  e.tbar_dim = SQ.Tbar.dim();
  if (e.K_dim == 0) {
    out.cls.case_id = 1;
    e.shape_check = e.tbar_dim == 0;
    e.shape_note = "torus image is zero";
    return out;
  }
  auto mins = minimal_ideals(SQ.Kalg, SQ.tbar_ops, seed);
  e.r = mins.size();
  Subspace soc(f, K.dim());
  for (const auto& I : mins) {
    e.minimal_ideal_dims.push_back(I.dim());
    soc = sum(soc, I);
  }
  e.socle_dim = soc.dim();
  // Socle and torus image in quotient coordinates.
  auto to_quot = [&](const Subspace& V) {
    std::vector<Vec> rows;
    for (const auto& r : V.rows()) rows.push_back(SQ.K.from_coords(r));
    return Subspace::span(f, SQ.quot.alg->dim(), rows);
  };
  if (e.r == 2) {
    Subspace s1 = to_quot(mins[0]), s2 = to_quot(mins[1]);
    e.shape_check = e.tbar_dim == 2 && sum(s1, s2).contains(SQ.Tbar);
    e.shape_note = "torus image inside S1 + S2";
    e.commuting_check = bracket_space(K, mins[0], mins[1]).dim() == 0;
  }
  if (e.r == 1) {
    auto socalg = extract_subalgebra(SQ.Kalg, soc).alg;
    auto C = centroid(*socalg, seed);
    e.centroid_dim = C.dim();
    size_t m = 0, d = C.dim();
    while (d > 1 && d % p == 0) {
      d /= p;
      ++m;
    }
    if (d != 1) throw AlarmError("centroid dimension is not a power of p");
    e.m = m;
    if (m >= 1) {
      // pi_2: elements of K act on the centroid through commutators.
      Echelon cent(f, socalg->dim() * socalg->dim(), true);
      for (const auto& c : C.basis) cent.add(flat(c));
      std::vector<Matrix> images;
      Echelon span(f, C.dim() * C.dim());
      for (size_t k = 0; k < K.dim(); ++k) {
        Matrix adk = restrict_to(K.ad_basis(k), soc);
        Matrix img(f, C.dim(), C.dim());
        for (size_t c = 0; c < C.dim(); ++c) {
          auto coords = cent.express(flat(commutator(adk, C.basis[c])));
          if (!coords) throw AlarmError("commutator with the centroid left the centroid");
          img.set_col(c, *coords);
        }
        if (span.add(flat(img))) images.push_back(img);
      }
      e.pi2_dim = images.size();
      Echelon der(f, C.dim() * C.dim());
      for (size_t i = 0; i < images.size(); ++i)
        for (size_t j = i + 1; j < images.size(); ++j) der.add(flat(commutator(images[i], images[j])));
      e.pi2_derived_dim = der.rank();
      Subspace sq = to_quot(soc);
      if (e.pi2_dim > 0) {
        e.shape_check = intersect(SQ.Tbar, sq).dim() >= 1;
        e.shape_note = "torus image meets the socle";
      } else {
        e.shape_check = e.tbar_dim == 2 && intersect(SQ.Tbar, sq).dim() == 1;
        e.shape_note = "two-dimensional torus image meeting the socle in a line";
      }
    } else {
      e.tr_socle = toral_rank(socalg, seed, 12);
      e.socle_restricted = inner_pmap(*socalg).has_value();
    }
  }
  out.cls.case_id = classify_two_section(e);
  switch (out.cls.case_id) {
    case 2: {
      // K is the image of a 1-section L(mu) for some mu in the lattice.
      bool ok = false;
      auto Fp = make_field(p, 1);
      std::vector<Vec> mus{alpha};
      for (uint32_t i = 0; i < p; ++i) mus.push_back(add(*Fp, scaled(*Fp, alpha, i), beta));
      for (const auto& mu : mus) {
        std::vector<Vec> rows = RD.zero.rows();
        for (uint32_t i = 1; i < p; ++i)
          if (auto rs = RD.find(scaled(*Fp, mu, i)))
            for (const auto& r : rs->space.rows()) rows.push_back(r);
        if (SQ.image(Subspace::span(f, RD.target_dim, rows)).dim() == K.dim()) ok = true;
      }
      e.shape_check = ok;
      e.shape_note = "K is the image of a 1-section";
      break;
    }
    case 4:
      e.shape_check = e.K_dim - e.socle_dim <= 1;
      e.shape_note = "K over its socle has dimension at most 1";
      break;
    case 8:
      e.shape_check = SQ.K.contains(SQ.Tbar);
      e.shape_note = "torus image inside K";
      break;
    default: break;
  }
  return out;
}

// ------------------------------------------------------------------- Q

QReport Q_subalgebra(const RootDatum& RD, const std::vector<SectionReport>& sections,
                     const std::optional<Subspace>& standard_zero) {
  uint32_t p = RD.torus.field()->p();
  const auto& G = *RD.torus.G;
  const auto& L = *G.base();
  std::vector<Vec> rows = RD.zero.rows();
  for (const auto& root : RD.roots) {
    Vec n = normalize_root(root.gamma, p);
    const SectionReport* s = nullptr;
    for (const auto& x : sections)
      if (x.gamma == n) s = &x;
    if (!s) throw ValidationError("missing 1-section for a root");
    if (!s->q_found || !s->proper) throw ValidationError("improper root; Q(L,T) is not assembled");
    for (const auto& qr : s->Q_root)
      if (qr.first == root.gamma)
        for (const auto& r : qr.second.rows()) rows.push_back(r);
  }
  QReport Q;
  Q.Q = Subspace::span(L.field(), L.dim(), rows);
  Q.closed = is_subalgebra(L, Q.Q);
  if (!Q.closed) throw AlarmError("Q(L,T) is not closed under the bracket");
  Q.t_invariant = true;
  for (const auto& t : RD.torus.toral_basis)
    for (const auto& r : Q.Q.rows())
      if (!Q.Q.member(G.act(t, r))) Q.t_invariant = false;
  Q.equals_L = Q.Q.dim() == L.dim();
  auto sub = extract_subalgebra(G.base(), Q.Q).alg;
  Q.solvable = is_solvable(*sub);
  if (standard_zero) Q.inside_standard_zero = standard_zero->contains(Q.Q);
  return Q;
}

MaximalityReport maximality_check(const RootDatum& RD, const Subspace& Q) {
  const auto& G = *RD.torus.G;
  const auto& f = G.field();
  if (Q.dim() == G.base_dim()) throw ValidationError("Q equals L; maximality is not defined");
  std::vector<Vec> base = RD.torus.space.rows();
  for (const auto& r : Q.rows()) base.push_back(G.from_L(r));
  std::vector<Vec> tl = RD.torus.space.rows();
  for (size_t i = 0; i < G.base_dim(); ++i) tl.push_back(unit(G.dim(), i));
  Subspace TL = Subspace::span(f, G.dim(), tl);
  MaximalityReport out;
  out.maximal = true;
  for (const auto& root : RD.roots) {
    Subspace inQ = intersect(root.space, Q);
    if (inQ.dim() == root.space.dim()) continue;
    // A complement of Q_gamma inside L_gamma.
    Echelon E(f, G.base_dim());
    for (const auto& r : inQ.rows()) E.add(r);
    std::vector<Vec> comp;
    for (const auto& r : root.space.rows())
      if (E.add(r)) comp.push_back(r);
    for (const auto& e : projective_points(Subspace::span(f, G.base_dim(), comp), 10000)) {
      std::vector<Vec> gens = base;
      gens.push_back(G.from_L(e));
      ++out.tested;
      Subspace C = subalgebra_closure(*G.lie(), Subspace::span(f, G.dim(), gens));
      if (!C.contains(TL)) {
        out.maximal = false;
        out.witness = e;
        return out;
      }
    }
  }
  return out;
}

}  // namespace modlie
