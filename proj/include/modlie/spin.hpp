#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "modlie/linalg.hpp"

namespace modlie {

// Deterministic across platforms: raw engine output, reduced by modulo.
class Rng {
 public:
  explicit Rng(uint64_t seed) : g_(seed) {}
  uint64_t next() { return g_(); }
  uint32_t below(uint32_t n) { return static_cast<uint32_t>(g_() % n); }
  Vec vec(size_t n, uint32_t q) {
    Vec v(n);
    for (auto& x : v) x = below(q);
    return v;
  }

 private:
  std::mt19937_64 g_;
};

// A module given by operators generating the acting associative algebra.
// pool holds extra elements of that algebra used only to build random
// test operators.
struct Module {
  FieldPtr field;
  size_t dim = 0;
  std::vector<Matrix> gens;
  std::vector<Matrix> pool;
};

Subspace spin(const Module& M, const std::vector<Vec>& seeds);
Subspace spin_dual(const Module& M, const std::vector<Vec>& seeds);
// Action on an invariant subspace, in its canonical coordinates.
Module restrict_module(const Module& M, const Subspace& W);
// A minimal nonzero submodule contained in the invariant subspace W.
Subspace minimal_submodule(const Module& M, const Subspace& W, Rng& rng);
bool is_irreducible(const Module& M, Rng& rng);

}  // namespace modlie
