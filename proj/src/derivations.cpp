#include "modlie/derivations.hpp"

#include <map>

#include "modlie/error.hpp"

namespace modlie {

namespace {

// R[a][k] = list of (l, c) with [e_a, e_l] having coefficient c at e_k.
std::vector<std::vector<std::vector<std::pair<uint32_t, uint32_t>>>> left_table(const LieAlgebra& L) {
  size_t n = L.dim();
  const Field& F = L.F();
  std::vector<std::vector<std::vector<std::pair<uint32_t, uint32_t>>>> R(n, std::vector<std::vector<std::pair<uint32_t, uint32_t>>>(n));
  for (size_t a = 0; a < n; ++a)
    for (size_t l = a + 1; l < n; ++l)
      for (auto [k, c] : L.sc(a, l)) {
        R[a][k].emplace_back(static_cast<uint32_t>(l), c);
        R[l][k].emplace_back(static_cast<uint32_t>(a), F.neg(c));
      }
  return R;
}

}  // namespace

std::vector<Vec> diagonal_weights(const LieAlgebra& L) {
  size_t n = L.dim();
  const Field& F = L.F();
  Echelon E(L.field(), n);
  for (size_t g : lie_generators(L))
    for (size_t b = 0; b < n; ++b) {
      if (b == g) continue;
      Vec br = L.bracket_basis2(g, b);
      for (size_t k = 0; k < n; ++k) {
        if (!br[k]) continue;
        Vec row(n, 0);
        row[k] = F.add(row[k], 1);
        row[g] = F.sub(row[g], 1);
        row[b] = F.sub(row[b], 1);
        E.add(row);
      }
    }
  Subspace eq = E.span();
  Subspace sol = eq.dim() == 0 ? Subspace::full(L.field(), n) : kernel(eq.basis());
  std::vector<Vec> w(n, Vec(sol.dim()));
  for (size_t t = 0; t < sol.dim(); ++t)
    for (size_t k = 0; k < n; ++k) w[k][t] = sol.row(t)[k];
  return w;
}

std::vector<Matrix> derivations(const LieAlgebra& L, const std::vector<int>* degrees) {
  size_t n = L.dim();
  const Field& F = L.F();
  if (degrees && degrees->size() != n) throw ValidationError("degree list has wrong length");
  if (n == 0) return {};
  std::vector<Vec> w = diagonal_weights(L);
  auto key_of = [&](size_t k, size_t l) {
    std::vector<int64_t> key;
    key.push_back(degrees ? (*degrees)[k] - (*degrees)[l] : 0);
    for (size_t t = 0; t < w[k].size(); ++t) key.push_back(F.sub(w[k][t], w[l][t]));
    return key;
  };
  std::map<std::vector<int64_t>, uint32_t> class_id;
  std::vector<uint32_t> cls(n * n), loc(n * n);
  std::vector<std::vector<uint32_t>> members;
  for (size_t k = 0; k < n; ++k)
    for (size_t l = 0; l < n; ++l) {
      auto key = key_of(k, l);
      auto it = class_id.find(key);
      if (it == class_id.end()) {
        it = class_id.emplace(key, static_cast<uint32_t>(members.size())).first;
        members.emplace_back();
      }
      cls[k * n + l] = it->second;
      loc[k * n + l] = static_cast<uint32_t>(members[it->second].size());
      members[it->second].push_back(static_cast<uint32_t>(k * n + l));
    }
  auto R = left_table(L);
  std::vector<std::vector<std::vector<std::pair<uint32_t, uint32_t>>>> eqs(members.size());
  std::vector<size_t> gens = lie_generators(L);
  std::map<uint32_t, uint32_t> acc;
  for (size_t g : gens)
    for (size_t b = 0; b < n; ++b) {
      if (b == g) continue;
      Vec gb = L.bracket_basis2(g, b);
      std::vector<std::pair<uint32_t, uint32_t>> supp;
      for (size_t l = 0; l < n; ++l)
        if (gb[l]) supp.emplace_back(static_cast<uint32_t>(l), gb[l]);
      for (size_t k = 0; k < n; ++k) {
        acc.clear();
        auto put = [&](size_t kk, size_t ll, uint32_t c) {
          uint32_t u = static_cast<uint32_t>(kk * n + ll);
          acc[u] = F.add(acc[u], c);
        };
        for (auto [l, c] : supp) put(k, l, c);
        for (auto [l, c] : R[b][k]) put(l, g, c);
        for (auto [l, c] : R[g][k]) put(l, b, F.neg(c));
        std::vector<std::pair<uint32_t, uint32_t>> row;
        uint32_t c0 = UINT32_MAX;
        for (auto [u, c] : acc) {
          if (!c) continue;
          if (c0 == UINT32_MAX) c0 = cls[u];
          if (cls[u] != c0) throw ValidationError("degrees are not a grading of the algebra");
          row.emplace_back(loc[u], c);
        }
        if (!row.empty()) eqs[c0].push_back(std::move(row));
      }
    }
  std::vector<Matrix> out;
  for (size_t c = 0; c < members.size(); ++c) {
    size_t U = members[c].size();
    Matrix A(L.field(), eqs[c].size(), U);
    for (size_t r = 0; r < eqs[c].size(); ++r)
      for (auto [u, v] : eqs[c][r]) A(r, u) = v;
    Subspace K = eqs[c].empty() ? Subspace::full(L.field(), U) : kernel(A);
    for (const auto& kv : K.rows()) {
      Matrix D(L.field(), n, n);
      for (size_t u = 0; u < U; ++u) D.a[members[c][u]] = kv[u];
      out.push_back(std::move(D));
    }
  }
  return out;
}

bool is_derivation(const LieAlgebra& L, const Matrix& D) {
  size_t n = L.dim();
  std::vector<Vec> cols(n);
  for (size_t j = 0; j < n; ++j) cols[j] = D.col_vec(j);
  for (size_t g : lie_generators(L))
    for (size_t b = 0; b < n; ++b) {
      Vec lhs = matvec(D, L.bracket_basis2(g, b));
      Vec r1 = L.bracket(cols[g], unit(n, b));
      Vec r2 = L.bracket_basis(g, cols[b]);
      if (lhs != add(L.F(), r1, r2)) return false;
    }
  return true;
}

std::vector<Matrix> outer_derivations(const LieAlgebra& L, const std::vector<Matrix>& der) {
  size_t n = L.dim();
  Echelon E(L.field(), n * n);
  for (size_t i = 0; i < n; ++i) E.add(L.ad_basis(i).a);
  std::vector<Matrix> out;
  for (const auto& D : der)
    if (E.add(D.a)) out.push_back(D);
  return out;
}

}  // namespace modlie
