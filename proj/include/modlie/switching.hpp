#pragma once

#include <optional>
#include <vector>

#include "modlie/sections.hpp"

namespace modlie {

struct SwitchedRoot {
  Vec gamma;                      // old root (zero for H)
  Vec values;                     // gamma_x on the t_x, codes in the value field
  Subspace space;                 // common eigenspace of the t_x, over the value field
  std::optional<Vec> new_gamma;   // same space as a root of the new toral basis
};

struct SwitchRecord {
  Vec alpha, x;
  size_t m = 0;
  std::vector<Vec> t_x;  // in G, one per toral basis element
  Torus new_torus;
  FieldPtr value_field;
  std::vector<SwitchedRoot> roots;
  Matrix E;  // polynomial in ad x over the value field
  size_t E_degree = 0;
  bool dims_preserved = false;
  bool formula_ok = false;
  bool exponential_ok = false;
  std::optional<bool> sections_preserved;
};

// T_x alone; m receives the first exponent with x^[p]^m in T.
Torus switched_torus(const RootDatum& RD, const Vec& alpha, const Vec& x, size_t* m = nullptr, uint32_t max_k = 1);
SwitchRecord elementary_switch(const RootDatum& RD, const Vec& alpha, const Vec& x, uint64_t seed = 1,
                               bool build_exponential = true);

struct OptimizeStep {
  Vec alpha, x;
  size_t r_before = 0, r_after = 0;
};
struct OptimizeResult {
  RootDatum final;
  std::vector<OptimizeStep> trace;
  size_t r_initial = 0, r_final = 0;
  size_t evaluated = 0;
  bool budget_exhausted = false;
};
// Best-improvement hill climb over elementary switchings at improper roots.
OptimizeResult optimize_torus(const RootDatum& RD, size_t budget, uint64_t seed = 1);

}  // namespace modlie
