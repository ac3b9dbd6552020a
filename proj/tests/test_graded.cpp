#include <doctest.h>

#include "modlie/error.hpp"
#include "modlie/fixtures.hpp"
#include "modlie/graded.hpp"

using namespace modlie;

TEST_CASE("standard filtration of W(1;1)") {
  auto f = make_field(5, 1);
  auto W = make_W(f, 1, {1});
  auto F = standard_filtration(W.meta.algebra, W.meta.standard_zero);
  CHECK(F.depth == 1);
  CHECK(F.height() == 3);
  CHECK(F.dims() == std::vector<size_t>{5, 4, 3, 2, 1, 0});
  CHECK(filtration_compatible(F));
  CHECK_THROWS_AS(standard_filtration(W.meta.algebra, Subspace::full(f, 5)), ValidationError);
}

TEST_CASE("associated graded of a graded algebra is itself") {
  auto f = make_field(5, 1);
  auto H = make_H2(f, {1, 1}, HVariant::second_derived);
  auto F = filtration_from_grading(H.algebra, H.degrees);
  auto G = associated_graded(F);
  CHECK(G.jacobi);
  CHECK(G.compatible);
  CHECK(G.total->dim() == 23);
  Homomorphism phi(G.total, H.algebra, G.adapted, false);
  CHECK(phi.preserves_brackets());
  auto A = minimal_graded_ideal(G);
  CHECK(A.ideal.dim() == 23);
  CHECK(!A.abelian);
  CHECK(A.unique.value_or(false));
}

TEST_CASE("extract_S on a tensor product") {
  auto f = make_field(5, 1);
  auto T = make_tensor(make_W(f, 1, {1}).meta.algebra, 1, {1});
  auto R = extract_S(T.A);
  CHECK(R.S->dim() == 5);
  CHECK(R.m == 1);
  CHECK(R.simple);
  CHECK(R.restricted);
}

TEST_CASE("pipeline guard on classical algebras") {
  auto X = torus_fixture("sl2");
  auto P = graded_pipeline(root_decomposition(X.T));
  CHECK(!P.applicable);
  CHECK(P.note == "graded pipeline not applicable; all roots solvable/classical");
}

TEST_CASE("pipeline on W(2;1)") {
  auto X = torus_fixture("W21_std");
  auto P = graded_pipeline(root_decomposition(X.T));
  REQUIRE(P.applicable);
  CHECK(P.filtration.dims() == std::vector<size_t>{50, 48, 44, 38, 30, 20, 12, 6, 2, 0});
  CHECK(P.S.S->dim() == 50);
  CHECK(P.S.m == 0);
  CHECK(P.S.restricted);
  CHECK(P.S.simple);
}
