#include <doctest.h>

#include "modlie/fixtures.hpp"
#include "modlie/tori.hpp"

using namespace modlie;

TEST_CASE("toral basis elements are toral and commute") {
  auto X = torus_fixture("W21_std");
  const auto& G = *X.T.G;
  CHECK(X.T.dim() == 2);
  for (const auto& t : X.T.toral_basis) CHECK(G.p_power(t) == t);
  auto a = G.rho(X.T.toral_basis[0]), b = G.rho(X.T.toral_basis[1]);
  CHECK(commutator(a, b).is_zero());
  CHECK(is_maximal_torus(X.T));
  CHECK(is_standard(X.T));
}

TEST_CASE("Jordan decomposition in the p-envelope") {
  auto f = make_field(5, 1);
  auto W = make_W(f, 1, {1}).meta.algebra;
  auto G = std::make_shared<RestrictedAlgebra>(envelope_of(W));
  Vec x = G->from_L(Vec{1, 1, 0, 0, 0});  // d + x d
  auto J = toral_decompose(*G, x);
  CHECK(add(*f, J.semisimple, J.nilpotent) == x);
  CHECK(commutator(G->rho(J.semisimple), G->rho(J.nilpotent)).is_zero());
}

TEST_CASE("root decomposition of W(1;1)") {
  auto X = torus_fixture("W11_std");
  auto RD = root_decomposition(X.T);
  CHECK(RD.zero.dim() == 1);
  CHECK(RD.roots.size() == 4);
  size_t total = RD.zero.dim();
  for (const auto& r : RD.roots) total += r.space.dim();
  CHECK(total == 5);
}

TEST_CASE("maximal torus search is reproducible") {
  auto f = make_field(5, 1);
  auto L = make_classical(f, ClassicalKind::sl, 3);
  auto G = std::make_shared<RestrictedAlgebra>(envelope_of(L));
  auto a = maximal_torus(G, 7, 2), b = maximal_torus(G, 7, 2);
  CHECK(a.torus.dim() == 2);
  CHECK(a.torus.space == b.torus.space);
  CHECK(a.certified);
}

TEST_CASE("toral rank") {
  auto f = make_field(5, 1);
  CHECK(toral_rank(make_classical(f, ClassicalKind::sl, 2)) == 1);
  CHECK(toral_rank(make_W(f, 1, {1}).meta.algebra) == 1);
  CHECK(toral_rank(make_W(f, 2, {1, 1}).meta.algebra) == 2);
}

TEST_CASE("H and H~ of the Hamiltonian fixture") {
  auto X = torus_fixture("H2");
  auto RL = root_decomposition(X.T, RootTarget::L);
  auto RG = root_decomposition(X.T, RootTarget::G);
  CHECK(RL.target_dim == 23);
  CHECK(RG.target_dim == X.T.G->dim());
  CHECK(RG.zero.dim() >= RL.zero.dim());
}
