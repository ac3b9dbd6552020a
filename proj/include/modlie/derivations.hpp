#pragma once

#include <vector>

#include "modlie/liealg.hpp"

namespace modlie {

// Basis of Der L as n x n matrices. degrees, when given, must be an integer
// grading of L; it only splits the linear system into smaller blocks.
std::vector<Matrix> derivations(const LieAlgebra& L, const std::vector<int>* degrees = nullptr);

// Derivations of L that are independent modulo ad L (L centerless).
std::vector<Matrix> outer_derivations(const LieAlgebra& L, const std::vector<Matrix>& der);

bool is_derivation(const LieAlgebra& L, const Matrix& D);

// Weight vectors of the basis under the diagonal derivations (one entry per
// independent diagonal derivation).
std::vector<Vec> diagonal_weights(const LieAlgebra& L);

}  // namespace modlie
