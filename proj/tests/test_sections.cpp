#include <doctest.h>

#include "modlie/fixtures.hpp"
#include "modlie/switching.hpp"

using namespace modlie;

TEST_CASE("verdict names") {
  CHECK(to_string(Verdict::witt) == "Witt");
  CHECK(verdict_from_dim(5, 5) == Verdict::witt);
  CHECK(verdict_from_dim(3, 5) == Verdict::classical);
}

TEST_CASE("W(1;1) standard torus: Witt section, proper, Q solvable") {
  auto X = torus_fixture("W11_std");
  auto RD = root_decomposition(X.T);
  auto S = all_sections(RD);
  REQUIRE(S.size() == 1);
  CHECK(S[0].verdict == Verdict::witt);
  CHECK(S[0].proper);
  auto q = Q_subalgebra(RD, S, X.standard_zero);
  CHECK(q.closed);
  CHECK(q.solvable);
  CHECK(q.inside_standard_zero.value_or(false));
  CHECK(maximality_check(RD, q.Q).maximal);
}

TEST_CASE("improper torus on W(1;1) and the optimizer") {
  auto X = torus_fixture("W11_bad");
  auto RD = root_decomposition(X.T);
  auto S = all_sections(RD, false);
  CHECK(improper_count(S, RD) == 4);
  CHECK_THROWS(Q_subalgebra(RD, S));
  auto O = optimize_torus(RD, 20);
  CHECK(O.r_final == 0);
  CHECK(!O.trace.empty());
  CHECK(O.trace.front().r_before == 4);
}

TEST_CASE("elementary switch on W(2;1)") {
  auto X = torus_fixture("W21_std");
  auto RD = root_decomposition(X.T);
  const auto& r = RD.roots.front();
  auto s = elementary_switch(RD, r.gamma, r.space.row(0));
  CHECK(s.new_torus.dim() == 2);
  CHECK(s.dims_preserved);
  CHECK(s.formula_ok);
  CHECK(s.exponential_ok);
}

TEST_CASE("root lines") {
  CHECK(normalize_root(Vec{2, 4}, 5) == Vec{1, 2});
  auto X = torus_fixture("W21_std");
  auto RD = root_decomposition(X.T);
  CHECK(root_lines(RD).size() == 6);
}

TEST_CASE("two-section planted cases") {
  for (int c : {1, 2, 3, 8}) {
    CAPTURE(c);
    auto X = two_section_fixture(c);
    auto R = two_section(X.RD, X.alpha, X.beta);
    CHECK(R.cls.case_id == c);
    CHECK(R.cls.evidence.shape_check.value_or(true));
  }
}

TEST_CASE("classifier on hand-made evidence") {
  TwoSectionEvidence e;
  e.K_dim = 0;
  CHECK(classify_two_section(e) == 1);
}
