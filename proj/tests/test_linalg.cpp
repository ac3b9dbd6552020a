#include <doctest.h>

#include "modlie/linalg.hpp"
#include "modlie/spin.hpp"

using namespace modlie;

namespace {
Matrix random_matrix(const FieldPtr& f, size_t r, size_t c, uint64_t seed) {
  Rng rng(seed);
  Matrix M(f, r, c);
  for (auto& x : M.a) x = rng.below(f->q());
  return M;
}
}  // namespace

TEST_CASE("rank plus nullity") {
  auto f = make_field(5, 1);
  for (uint64_t s = 1; s < 6; ++s) {
    auto M = random_matrix(f, 6, 9, s);
    auto K = kernel(M);
    CHECK(rank(M) + K.dim() == 9);
    for (const auto& v : K.rows()) CHECK(is_zero(matvec(M, v)));
  }
}

TEST_CASE("canonical subspaces compare by value") {
  auto f = make_field(3, 2);
  auto M = random_matrix(f, 3, 6, 7);
  std::vector<Vec> rows;
  for (size_t i = 0; i < 3; ++i) rows.push_back(M.row_vec(i));
  auto A = Subspace::span(f, 6, rows);
  std::vector<Vec> mixed = {add(*f, rows[0], rows[1]), rows[1], add(*f, rows[2], scaled(*f, rows[0], 4))};
  CHECK(A == Subspace::span(f, 6, mixed));
  for (const auto& r : rows) CHECK(A.member(r));
  CHECK(A.from_coords(A.coords(rows[2])) == rows[2]);
}

TEST_CASE("sum and intersection dimensions") {
  auto f = make_field(7, 1);
  auto A = Subspace::span(f, 5, {unit(5, 0), unit(5, 1), unit(5, 2)});
  auto B = Subspace::span(f, 5, {unit(5, 2), unit(5, 3)});
  CHECK(sum(A, B).dim() == 4);
  CHECK(intersect(A, B).dim() == 1);
  CHECK(annihilator(A).dim() == 2);
}

TEST_CASE("echelon expresses members") {
  auto f = make_field(5, 1);
  Echelon E(f, 4, true);
  CHECK(E.add(Vec{1, 2, 0, 0}));
  CHECK(E.add(Vec{0, 1, 1, 0}));
  CHECK(!E.add(Vec{1, 3, 1, 0}));
  auto c = E.express(Vec{2, 2, 3, 0});
  REQUIRE(c);
  CHECK(*c == Vec{2, 3});
  CHECK(!E.express(unit(4, 3)));
}

TEST_CASE("simultaneous eigenspaces of commuting diagonal matrices") {
  auto f = make_field(5, 1);
  Matrix A(f, 3, 3), B(f, 3, 3);
  A(0, 0) = 1; A(1, 1) = 1; A(2, 2) = 2;
  B(0, 0) = 0; B(1, 1) = 3; B(2, 2) = 3;
  auto blocks = prime_eigenspaces({A, B}, 3, f);
  CHECK(blocks.size() == 3);
  for (const auto& b : blocks) CHECK(b.space.dim() == 1);
}

TEST_CASE("spinning finds invariant subspaces") {
  auto f = make_field(5, 1);
  Matrix N(f, 3, 3);
  N(0, 1) = 1; N(1, 2) = 1;
  Module M{f, 3, {N}, {}};
  CHECK(spin(M, {unit(3, 2)}).dim() == 3);
  CHECK(spin(M, {unit(3, 1)}).dim() == 2);
  Rng rng(1);
  auto W = minimal_submodule(M, Subspace::full(f, 3), rng);
  CHECK(W.dim() == 1);
  CHECK(W.member(unit(3, 0)));
  CHECK(!is_irreducible(M, rng));
}
