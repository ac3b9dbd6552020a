#include <doctest.h>

#include "modlie/constructors.hpp"
#include "modlie/error.hpp"
#include "modlie/restricted.hpp"

using namespace modlie;

TEST_CASE("divided powers") {
  auto f = make_field(5, 1);
  auto O = make_O(f, 2, {1, 1});
  CHECK(O.dim() == 25);
  CHECK(divided_power_dim(5, {2, 1}) == 125);
  // x^(1) x^(1) = 2 x^(2)
  size_t x1 = O.index({1, 0}), x2 = O.index({2, 0});
  auto [idx, c] = O.mul_basis(x1, x1);
  CHECK(idx == x2);
  CHECK(c == 2);
  // x^(2) x^(3) = 10 x^(5) = 0 at height 1
  auto [i2, c2] = O.mul_basis(O.index({2, 0}), O.index({3, 0}));
  (void)i2;
  CHECK(c2 == 0);
}

TEST_CASE("dimensions of the graded Cartan type algebras") {
  auto f = make_field(5, 1);
  CHECK(make_W(f, 1, {1}).meta.algebra->dim() == 5);
  CHECK(make_W(f, 1, {2}).meta.algebra->dim() == 25);
  CHECK(make_W(f, 2, {1, 1}).meta.algebra->dim() == 50);
  CHECK(make_H2(f, {1, 1}, HVariant::second_derived).algebra->dim() == 23);
  CHECK(make_H2(f, {1, 1}, HVariant::first_derived).algebra->dim() == 24);
  CHECK(make_classical(f, ClassicalKind::psl, 5)->dim() == 23);
}

TEST_CASE("grading metadata is consistent") {
  auto f = make_field(5, 1);
  auto H = make_H2(f, {1, 1}, HVariant::second_derived);
  const auto& L = *H.algebra;
  REQUIRE(H.degrees.size() == L.dim());
  for (size_t i = 0; i < L.dim(); ++i)
    for (size_t j = i + 1; j < L.dim(); ++j)
      for (auto [k, c] : L.sc(i, j)) {
        (void)c;
        CHECK(H.degrees[k] == H.degrees[i] + H.degrees[j]);
      }
  CHECK(is_subalgebra(L, H.standard_zero));
}

TEST_CASE("Melikian needs p = 5") {
  CHECK_THROWS_AS(make_melikian(make_field(7, 1)), ValidationError);
}

TEST_CASE("p-envelope of W(1;2) has one extra dimension") {
  auto f = make_field(5, 1);
  auto W = make_W(f, 1, {2}).meta.algebra;
  CHECK(envelope_of(W).dim() == 26);
  CHECK(envelope_of(make_W(f, 1, {1}).meta.algebra).dim() == 5);
}

TEST_CASE("tensor model") {
  auto f = make_field(5, 1);
  auto T = make_tensor(make_W(f, 1, {1}).meta.algebra, 1, {1});
  CHECK(T.A->dim() == 25);
  CHECK(T.A->jacobi_holds());
  CHECK(T.incl.preserves_brackets());
}
