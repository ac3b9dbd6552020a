#include "modlie/restricted.hpp"

#include "modlie/derivations.hpp"
#include "modlie/error.hpp"

namespace modlie {

RestrictedAlgebra::RestrictedAlgebra(AlgPtr L, const std::vector<Matrix>& extra) : L_(std::move(L)) {
  size_t n = L_->dim();
  if (n == 0) throw ValidationError("restricted closure of the zero algebra");
  if (center(*L_).dim() != 0) throw ValidationError("algebra has a nonzero center; derivation model needs it centerless");
  probes_ = lie_generators(*L_);
  sig_ = Echelon(L_->field(), probes_.size() * n, true);
  for (size_t i = 0; i < n; ++i) {
    Matrix A = L_->ad_basis(i);
    if (!sig_.add(signature(A))) throw AlarmError("ad is not injective on a centerless algebra");
    mats_.push_back(std::move(A));
  }
  auto try_add = [&](const Matrix& D) {
    if (sig_.add(signature(D))) {
      mats_.push_back(D);
      return true;
    }
    return false;
  };
  for (const auto& E : extra) {
    if (E.rows != n || E.cols != n) throw ValidationError("extra operator has wrong size");
    try_add(E);
  }
  uint32_t p = L_->F().p();
  size_t br_done = n, pp_done = 0;
  while (br_done < mats_.size() || pp_done < mats_.size()) {
    while (br_done < mats_.size()) {
      size_t i = br_done;
      for (size_t j = n; j < i; ++j) try_add(commutator(mats_[i], mats_[j]));
      ++br_done;
    }
    while (pp_done < mats_.size()) {
      size_t i = pp_done;
      Vec sig;
      for (size_t g : probes_) {
        Vec v = unit(n, g);
        for (uint32_t t = 0; t < p; ++t) v = i < n ? L_->bracket_basis(i, v) : matvec(mats_[i], v);
        sig.insert(sig.end(), v.begin(), v.end());
      }
      if (!sig_.member(sig)) try_add(power(mats_[i], p));
      ++pp_done;
    }
  }
  build_lie();
}

Vec RestrictedAlgebra::signature(const Matrix& D) const {
  size_t n = L_->dim();
  Vec s;
  s.reserve(probes_.size() * n);
  for (size_t g : probes_) {
    Vec c = D.col_vec(g);
    s.insert(s.end(), c.begin(), c.end());
  }
  return s;
}

std::optional<Vec> RestrictedAlgebra::decompose_signature(const Vec& sig) const { return sig_.express(sig); }

std::optional<Vec> RestrictedAlgebra::decompose(const Matrix& D) const { return sig_.express(signature(D)); }

void RestrictedAlgebra::build_lie() {
  size_t n = L_->dim(), d = mats_.size();
  const Field& F = L_->F();
  auto G = std::make_shared<LieAlgebra>(L_->field(), d);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = i + 1; j < d; ++j) {
      Vec c(d, 0);
      if (j < n) {
        Vec b = L_->bracket_basis2(i, j);
        std::copy(b.begin(), b.end(), c.begin());
      } else if (i < n) {
        // [ad e_i, E] = -ad(E e_i)
        Vec b = mats_[j].col_vec(i);
        for (size_t k = 0; k < n; ++k) c[k] = F.neg(b[k]);
      } else {
        auto r = decompose(commutator(mats_[i], mats_[j]));
        if (!r) throw AlarmError("derivation algebra is not closed under brackets");
        c = *r;
      }
      G->set_bracket(i, j, c);
    }
  std::vector<std::string> labels;
  for (size_t i = 0; i < n; ++i) labels.push_back(L_->label(i));
  for (size_t i = n; i < d; ++i) labels.push_back("D" + std::to_string(i - n));
  G->set_labels(labels);
  G_ = G;
  std::vector<Vec> pm;
  for (size_t i = 0; i < d; ++i) pm.push_back(p_power(unit(d, i)));
  G->set_pmap(std::move(pm));
}

Matrix RestrictedAlgebra::rho(const Vec& x) const {
  size_t n = L_->dim();
  Matrix M = L_->ad(Vec(x.begin(), x.begin() + static_cast<long>(n)));
  for (size_t i = n; i < mats_.size(); ++i)
    if (x[i]) M = add(M, scaled(mats_[i], x[i]));
  return M;
}

Vec RestrictedAlgebra::act(const Vec& x, const Vec& v) const {
  size_t n = L_->dim();
  Vec r = L_->bracket(Vec(x.begin(), x.begin() + static_cast<long>(n)), v);
  for (size_t i = n; i < mats_.size(); ++i)
    if (x[i]) axpy(L_->F(), r, x[i], matvec(mats_[i], v));
  return r;
}

Vec RestrictedAlgebra::p_power(const Vec& x) const {
  size_t n = L_->dim();
  uint32_t p = L_->F().p();
  Vec sig;
  for (size_t g : probes_) {
    Vec v = unit(n, g);
    for (uint32_t t = 0; t < p; ++t) v = act(x, v);
    sig.insert(sig.end(), v.begin(), v.end());
  }
  auto c = sig_.express(sig);
  if (!c) throw AlarmError("p-th power left the restricted algebra");
  return *c;
}

Vec RestrictedAlgebra::p_power_iter(const Vec& x, size_t times) const {
  Vec y = x;
  for (size_t t = 0; t < times; ++t) y = p_power(y);
  return y;
}

Vec RestrictedAlgebra::from_L(const Vec& y) const {
  Vec x(dim(), 0);
  std::copy(y.begin(), y.end(), x.begin());
  return x;
}

Subspace RestrictedAlgebra::L_subspace() const {
  std::vector<Vec> rows;
  for (size_t i = 0; i < L_->dim(); ++i) rows.push_back(unit(dim(), i));
  return Subspace::span(field(), dim(), rows);
}

bool RestrictedAlgebra::is_p_closed(const Subspace& S) const {
  for (const auto& r : S.rows())
    if (!S.member(p_power(r))) return false;
  return true;
}

Homomorphism RestrictedAlgebra::ad_map() const {
  Matrix M(field(), dim(), L_->dim());
  for (size_t i = 0; i < L_->dim(); ++i) M(i, i) = 1;
  return Homomorphism(L_, G_, std::move(M), false);
}

RestrictedAlgebra RestrictedAlgebra::change_field(const FieldPtr& target) const {
  if (target->same(L_->F())) return *this;
  auto L2 = std::make_shared<LieAlgebra>(L_->embedded(target));
  std::vector<Matrix> extra;
  for (size_t i = L_->dim(); i < mats_.size(); ++i) extra.push_back(embed_matrix(mats_[i], target));
  RestrictedAlgebra R(L2, extra);
  if (R.dim() != dim()) throw AlarmError("field change altered the restricted closure");
  return R;
}

RestrictedAlgebra derivation_algebra(const AlgPtr& L, const std::vector<int>* degrees) {
  auto der = derivations(*L, degrees);
  return RestrictedAlgebra(L, outer_derivations(*L, der));
}

Subspace p_envelope(const RestrictedAlgebra& G, const Subspace& S) {
  Echelon E(G.field(), G.dim());
  std::vector<Vec> queue;
  for (const auto& r : S.rows())
    if (E.add(r)) queue.push_back(r);
  for (size_t i = 0; i < queue.size(); ++i) {
    Vec w = G.p_power(queue[i]);
    if (E.add(w)) queue.push_back(std::move(w));
  }
  Subspace out = E.span();
  if (!is_subalgebra(*G.lie(), out)) throw AlarmError("p-envelope is not a subalgebra");
  return out;
}

RestrictedAlgebra envelope_of(const AlgPtr& L) { return RestrictedAlgebra(L, {}); }

std::optional<std::vector<Vec>> inner_pmap(const LieAlgebra& L) {
  auto Lp = std::make_shared<LieAlgebra>(L);
  RestrictedAlgebra G(Lp, {});
  if (G.dim() != L.dim()) return std::nullopt;
  std::vector<Vec> out;
  for (size_t i = 0; i < L.dim(); ++i) out.push_back(G.p_power(unit(L.dim(), i)));
  return out;
}

}  // namespace modlie
