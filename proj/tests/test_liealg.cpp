#include <doctest.h>

#include "modlie/constructors.hpp"
#include "modlie/derivations.hpp"
#include "modlie/fixtures.hpp"
#include "modlie/spin.hpp"

using namespace modlie;

TEST_CASE("sl2 structure") {
  auto f = make_field(5, 1);
  auto L = make_classical(f, ClassicalKind::sl, 2);
  CHECK(L->dim() == 3);
  CHECK(L->jacobi_holds());
  CHECK(center(*L).dim() == 0);
  CHECK(is_simple(L));
  CHECK(!is_solvable(*L));
  CHECK(derivations(*L).size() == 3);
}

TEST_CASE("antisymmetry of the bracket") {
  auto f = make_field(5, 1);
  auto L = make_W(f, 1, {1}).meta.algebra;
  Rng rng(3);
  auto x = rng.vec(5, 5), y = rng.vec(5, 5);
  CHECK(L->bracket(x, y) == scaled(*f, L->bracket(y, x), f->neg(1)));
  CHECK(is_zero(L->bracket(x, x)));
  CHECK(mul(L->ad(x), L->ad(y)) == add(mul(L->ad(y), L->ad(x)), L->ad(L->bracket(x, y))));
}

TEST_CASE("solvable and nilpotent") {
  auto f = make_field(5, 1);
  auto b = nonabelian2(f);
  CHECK(is_solvable(*b));
  CHECK(!is_nilpotent(*b));
  auto L = direct_sum(make_classical(f, ClassicalKind::sl, 2), b);
  CHECK(L->dim() == 5);
  CHECK(solvable_radical(L).dim() == 2);
  CHECK(!is_simple(L));
}

TEST_CASE("ideals, quotients and subalgebras") {
  auto f = make_field(5, 1);
  auto L = make_classical(f, ClassicalKind::gl, 2);
  auto Z = center(*L);
  CHECK(Z.dim() == 1);
  CHECK(is_ideal(*L, Z));
  auto Q = quotient(L, Z);
  CHECK(Q.alg->dim() == 3);
  CHECK(Q.proj.preserves_brackets());
  CHECK(Q.alg->jacobi_holds());
  auto D = bracket_space(*L, Subspace::full(f, 4), Subspace::full(f, 4));
  CHECK(D.dim() == 3);
  auto S = extract_subalgebra(L, D, true);
  CHECK(S.incl.preserves_brackets());
  CHECK(is_simple(S.alg));
}

TEST_CASE("minimal ideals of a direct sum of simples") {
  auto f = make_field(5, 1);
  auto s = make_classical(f, ClassicalKind::sl, 2);
  auto L = direct_sum(s, s);
  auto mins = minimal_ideals(L);
  REQUIRE(!mins.empty());
  CHECK(mins[0].dim() == 3);
}

TEST_CASE("centroid and tensor factors") {
  auto f = make_field(5, 1);
  auto s = make_classical(f, ClassicalKind::sl, 2);
  auto T = make_tensor(s, 1, {1});
  CHECK(T.A->dim() == 15);
  auto C = centroid(*T.A);
  CHECK(C.dim() == 5);
  CHECK(C.commutative);
  CHECK(C.local);
  auto F = tensor_factorize(T.A);
  CHECK(F.S->dim() == 3);
  CHECK(F.m == 1);
}

TEST_CASE("derivations of W(1;1) are inner") {
  auto f = make_field(5, 1);
  auto W = make_W(f, 1, {1});
  auto der = derivations(*W.meta.algebra, &W.meta.degrees);
  CHECK(der.size() == 5);
  for (const auto& D : der) CHECK(is_derivation(*W.meta.algebra, D));
  CHECK(outer_derivations(*W.meta.algebra, der).empty());
}

TEST_CASE("verify throws on a broken table") {
  auto f = make_field(5, 1);
  auto L = std::make_shared<LieAlgebra>(f, 3);
  L->set_bracket(0, 1, Vec{0, 0, 1});
  L->set_bracket(0, 2, Vec{1, 0, 0});
  L->set_bracket(1, 2, Vec{0, 1, 0});
  CHECK(!L->jacobi_holds());
}
