#include <doctest.h>

#include "modlie/field.hpp"

using namespace modlie;

TEST_CASE("prime field arithmetic") {
  auto F = make_field(7, 1);
  CHECK(F->add(5, 4) == 2);
  CHECK(F->mul(3, 5) == 1);
  CHECK(F->inv(3) == 5);
  CHECK(F->neg(0) == 0);
  CHECK(F->pow(3, 6) == 1);
  CHECK(F->from_int(-1) == 6);
  for (uint32_t a = 1; a < 7; ++a) CHECK(F->mul(a, F->inv(a)) == 1);
}

TEST_CASE("extension field is a field") {
  for (auto [p, k] : {std::pair{3u, 3u}, {5u, 2u}, {3u, 4u}, {5u, 4u}}) {
    auto F = make_field(p, k);
    CHECK(F->q() == [&] { uint32_t q = 1; for (uint32_t i = 0; i < k; ++i) q *= p; return q; }());
    CHECK(is_irreducible(p, F->modulus()));
    for (uint32_t a = 1; a < F->q(); ++a) {
      CHECK(F->mul(a, F->inv(a)) == 1);
      CHECK(F->pow(a, F->q() - 1) == 1);
    }
  }
}

TEST_CASE("distributivity and frobenius over GF(25)") {
  auto F = make_field(5, 2);
  for (uint32_t a = 0; a < 25; a += 3)
    for (uint32_t b = 0; b < 25; b += 2) {
      uint32_t c = 17;
      CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
      CHECK(F->frob(F->add(a, b)) == F->add(F->frob(a), F->frob(b)));
    }
}

TEST_CASE("modulus choice is deterministic") {
  auto a = make_field(3, 3), b = make_field(3, 3);
  CHECK(a == b);
  CHECK(a->modulus() == std::vector<uint32_t>(b->modulus()));
}

TEST_CASE("embedding respects operations") {
  auto S = make_field(5, 2), T = make_field(5, 4);
  const auto& e = embedding(S, T);
  for (uint32_t a = 0; a < 25; ++a)
    for (uint32_t b = 0; b < 25; b += 4) {
      CHECK(e(S->add(a, b)) == T->add(e(a), e(b)));
      CHECK(e(S->mul(a, b)) == T->mul(e(a), e(b)));
    }
}

TEST_CASE("xi solves the Artin-Schreier equation") {
  for (uint32_t p : {3u, 5u, 7u}) {
    auto F = make_field(p, 1);
    Scalar one = artin_schreier_xi(Scalar(F, 1));
    for (uint32_t a = 0; a < p; ++a) {
      Scalar x = artin_schreier_xi(Scalar(F, a));
      CHECK(power(x, p) - x == embed(Scalar(F, a), x.field));
      CHECK(artin_schreier_xi(Scalar(F, (a + 1) % p)) == x + one);
    }
  }
  auto K = make_field(5, 5);
  uint32_t x = xi_one_in(K);
  CHECK(K->sub(K->pow(x, 5), x) == 1);
}

TEST_CASE("scalar helpers") {
  auto F = make_field(5, 1);
  Scalar a(F, 2), b(F, 4);
  CHECK((a * b).code == 3);
  CHECK((a / b).code == 3);
  CHECK(power(a, -1).code == 3);
  CHECK(frobenius(a) == a);
  CHECK(!is_prime(1));
  CHECK(is_prime(97));
}
