#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modlie/constructors.hpp"
#include "modlie/tori.hpp"

namespace modlie {

AlgPtr direct_sum(const AlgPtr& A, const AlgPtr& B);
// Basis h, e with [h, e] = e.
AlgPtr nonabelian2(FieldPtr f);

// An algebra with a torus in some restricted algebra over it. All fixtures use p = 5.
struct TorusFixture {
  std::string name;
  AlgPtr L;
  Torus T;
  std::optional<Subspace> standard_zero;  // model L_(0) in L coordinates, when the torus is the grading torus
  std::string note;
  std::vector<std::pair<std::string, Vec>> generators;  // named torus generators, in G coordinates
};
std::vector<std::string> torus_fixture_names();
TorusFixture torus_fixture(const std::string& name);

struct TwoSectionFixture {
  std::string name;
  int expected_case = 0;
  RootDatum RD;
  Vec alpha, beta;
};
TwoSectionFixture two_section_fixture(int case_id);

// gamma(t) for t in the torus, t in G coordinates.
uint32_t root_value(const RootDatum& RD, const Vec& gamma, const Vec& t);

}  // namespace modlie
