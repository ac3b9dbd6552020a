#include "modlie/spin.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "modlie/error.hpp"
#include "modlie/parallel.hpp"

namespace modlie {

size_t thread_count() {
  const char* env = std::getenv("MODLIE_THREADS");
  if (!env) return 1;
  long v = std::strtol(env, nullptr, 10);
  if (v < 1) return 1;
  return static_cast<size_t>(std::min<long>(v, 64));
}

void parallel_for(size_t n, const std::function<void(size_t)>& body) {
  size_t t = std::min(thread_count(), n);
  if (t <= 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (size_t w = 0; w < t; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

namespace {

Subspace spin_impl(const Module& M, const std::vector<Vec>& seeds, bool dual) {
  Echelon E(M.field, M.dim);
  std::vector<Vec> queue;
  for (const auto& s : seeds)
    if (E.add(s)) queue.push_back(s);
  for (size_t qi = 0; qi < queue.size() && E.rank() < M.dim; ++qi) {
    for (const auto& op : M.gens) {
      Vec w = dual ? apply_transpose(op, queue[qi]) : matvec(op, queue[qi]);
      if (E.add(w)) {
        queue.push_back(std::move(w));
        if (E.rank() == M.dim) break;
      }
    }
  }
  if (E.rank() == M.dim) return Subspace::full(M.field, M.dim);
  return E.span();
}

Matrix random_element(const Module& M, Rng& rng) {
  const Field& F = *M.field;
  uint32_t q = F.q();
  Matrix theta(M.field, M.dim, M.dim);
  std::vector<const Matrix*> all;
  for (const auto& g : M.gens) all.push_back(&g);
  for (const auto& g : M.pool) all.push_back(&g);
  for (const auto* g : all) {
    uint32_t c = rng.below(q);
    if (c) theta = add(theta, scaled(*g, c));
  }
  if (!all.empty()) {
    const Matrix* a = all[rng.below(static_cast<uint32_t>(all.size()))];
    const Matrix* b = all[rng.below(static_cast<uint32_t>(all.size()))];
    theta = add(theta, mul(*a, *b));
  }
  return theta;
}

uint64_t line_count(uint32_t q, size_t e) {
  uint64_t t = 1;
  for (size_t i = 0; i < e; ++i) {
    t *= q;
    if (t > (1ull << 40)) return t;
  }
  return (t - 1) / (q - 1);
}

// Normalised representatives of the lines of the span of rows (e rows).
std::vector<Vec> lines_of(const Subspace& N, uint32_t q, size_t cap) {
  size_t e = N.dim();
  std::vector<Vec> out;
  // coefficient vectors with first nonzero = 1
  for (size_t lead = 0; lead < e; ++lead) {
    size_t rest = e - lead - 1;
    uint64_t combos = 1;
    for (size_t i = 0; i < rest; ++i) combos *= q;
    for (uint64_t idx = 0; idx < combos; ++idx) {
      Vec c(e, 0);
      c[lead] = 1;
      uint64_t v = idx;
      for (size_t i = 0; i < rest; ++i) {
        c[lead + 1 + i] = static_cast<uint32_t>(v % q);
        v /= q;
      }
      out.push_back(N.from_coords(c));
      if (out.size() >= cap) return out;
    }
  }
  return out;
}

Subspace lift(const Subspace& local, const Subspace& W) {
  std::vector<Vec> vs;
  for (const auto& r : local.rows()) vs.push_back(W.from_coords(r));
  return Subspace::span(W.field(), W.ambient(), vs);
}

Subspace minimal_local(const Module& M, Rng& rng, int depth) {
  size_t d = M.dim;
  if (d <= 1) return Subspace::full(M.field, d);
  if (depth > 64) throw AlarmError("submodule recursion too deep");
  // Common kernel of all generators: any line there is a submodule.
  {
    Matrix stack(M.field, d * M.gens.size(), d);
    for (size_t g = 0; g < M.gens.size(); ++g)
      std::copy(M.gens[g].a.begin(), M.gens[g].a.end(), stack.a.begin() + g * d * d);
    Subspace K0 = M.gens.empty() ? Subspace::full(M.field, d) : kernel(stack);
    if (K0.dim() > 0) return Subspace::span(M.field, d, {K0.row(0)});
  }
  const Field& F = *M.field;
  uint32_t q = F.q();
  std::vector<uint32_t> lambdas;
  if (q <= 32)
    for (uint32_t c = 0; c < q; ++c) lambdas.push_back(c);
  else
    for (uint32_t c = 0; c < F.p(); ++c) lambdas.push_back(c);

  const size_t line_cap = 400;
  for (int attempt = 0; attempt < 80; ++attempt) {
    Matrix theta = attempt < static_cast<int>(M.gens.size()) && attempt % 2 == 1
                       ? M.gens[static_cast<size_t>(attempt)]
                       : random_element(M, rng);
    for (uint32_t lam : lambdas) {
      Matrix A = shift(theta, lam);
      Subspace N = kernel(A);
      size_t e = N.dim();
      if (e == 0 || e == d) continue;
      uint64_t lines = line_count(q, e);
      bool complete = lines <= line_cap;
      std::vector<Vec> cands;
      if (complete) {
        cands = lines_of(N, q, line_cap);
      } else {
        for (int s = 0; s < 12; ++s) {
          Vec c = rng.vec(e, q);
          if (is_zero(c)) continue;
          cands.push_back(N.from_coords(c));
        }
      }
      for (const auto& v : cands) {
        Subspace S = spin(M, {v});
        if (S.dim() < d) return lift(minimal_local(restrict_module(M, S), rng, depth + 1), S);
      }
      if (!complete) continue;
      Subspace Nt = kernel(transpose(A));
      Subspace St = spin_dual(M, {Nt.row(0)});
      if (St.dim() < d) {
        Subspace U = annihilator(St);
        return lift(minimal_local(restrict_module(M, U), rng, depth + 1), U);
      }
      return Subspace::full(M.field, d);
    }
  }
  throw AlarmError("spinning failed to decide irreducibility in dimension " + std::to_string(d));
}

}  // namespace

Subspace spin(const Module& M, const std::vector<Vec>& seeds) { return spin_impl(M, seeds, false); }
Subspace spin_dual(const Module& M, const std::vector<Vec>& seeds) { return spin_impl(M, seeds, true); }

Module restrict_module(const Module& M, const Subspace& W) {
  Module R;
  R.field = M.field;
  R.dim = W.dim();
  auto res = [&](const Matrix& op) {
    Matrix out(M.field, W.dim(), W.dim());
    for (size_t i = 0; i < W.dim(); ++i) {
      Vec img = matvec(op, W.row(i));
      Vec r = W.reduce(img);
      if (!is_zero(r)) throw ValidationError("restrict_module: subspace is not invariant");
      Vec c = W.coords(img);
      for (size_t j = 0; j < W.dim(); ++j) out(j, i) = c[j];
    }
    return out;
  };
  for (const auto& g : M.gens) R.gens.push_back(res(g));
  for (const auto& g : M.pool) R.pool.push_back(res(g));
  return R;
}

Subspace minimal_submodule(const Module& M, const Subspace& W, Rng& rng) {
  if (W.dim() == 0) throw ValidationError("minimal_submodule of the zero space");
  if (W.dim() == M.dim) return minimal_local(M, rng, 0);
  return lift(minimal_local(restrict_module(M, W), rng, 0), W);
}

bool is_irreducible(const Module& M, Rng& rng) {
  if (M.dim == 0) return false;
  return minimal_local(M, rng, 0).dim() == M.dim;
}

}  // namespace modlie
