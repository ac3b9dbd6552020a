#include <doctest.h>

#include "modlie/error.hpp"
#include "modlie/report.hpp"

using namespace modlie;

TEST_CASE("algebra JSON round trip") {
  auto f = make_field(5, 2);
  auto L = make_classical(f, ClassicalKind::sl, 3);
  Json j = algebra_to_json(*L);
  auto M = algebra_from_json(j);
  CHECK(M->dim() == 8);
  CHECK(canonical(algebra_to_json(*M)) == canonical(j));
}

TEST_CASE("dense coefficient vectors are accepted") {
  Json j = Json::parse(R"({"field": {"p": 5}, "dim": 3,
    "sc": [[0, 1, [0, 0, 1]], [0, 2, [0, 3, 0]], [1, 2, [2, 0, 0]]]})");
  auto L = algebra_from_json(j);
  CHECK(L->dim() == 3);
  CHECK(L->jacobi_holds());
}

TEST_CASE("bad inputs are validation errors") {
  CHECK_THROWS_AS(algebra_from_json(Json::parse(R"({"field": {"p": 4}, "dim": 1, "sc": []})")), ValidationError);
  CHECK_THROWS_AS(algebra_from_json(Json::parse(R"({"field": {"p": 5}, "dim": 2, "sc": [[0, 5, [[0, 1]]]]})")),
                  ValidationError);
  CHECK_THROWS_AS(algebra_from_json(Json::parse(R"({"field": {"p": 5}, "sc": []})")), ValidationError);
  CHECK_THROWS_AS(algebra_from_json(Json::parse(R"({"field": {"p": 5}, "dim": 3,
    "sc": [[0, 1, [[2, 1]]], [0, 2, [[0, 1]]], [1, 2, [[1, 1]]]]})")),
                  ValidationError);
  CHECK_THROWS_AS(field_from_json(Json::parse(R"({"p": 5, "k": 2, "modulus": [1, 0, 1]})")), ValidationError);
}

TEST_CASE("construct") {
  ConstructSpec s;
  s.type = "W";
  s.m = 1;
  s.n = {1};
  Json j = construct_json(s);
  CHECK(j["dim"] == 5);
  CHECK(j["degrees"].size() == 5);
  s.type = "M";
  s.p = 7;
  CHECK_THROWS_WITH_AS(construct_json(s), "p must be 5", ValidationError);
  s.type = "Q";
  s.p = 5;
  CHECK_THROWS_AS(construct_json(s), ValidationError);
}

TEST_CASE("content hash is stable") {
  CHECK(content_hash("") == "cbf29ce484222325");
  CHECK(content_hash("a") != content_hash("b"));
}

TEST_CASE("atlas payloads") {
  TorusSource src;
  src.fixture = "W11_bad";
  auto P = prepare_torus(src);
  Json a = atlas_payload(P, 20, 1);
  CHECK(a["r"] == 4);
  CHECK(a["optimizer"]["r_final"] == 0);
  CHECK(a["alarms"].empty());
  CHECK(a.contains("Q"));
  src.fixture = "M11_nonstandard";
  Json b = atlas_payload(prepare_torus(src), 20, 1);
  CHECK(b["standard"] == false);
  CHECK(!b["warnings"].empty());
  CHECK(!b.contains("sections"));
}

TEST_CASE("envelope fields") {
  Json e = envelope("atlas", Json{{"p", 5}}, "00", 3, Json::object());
  for (const char* k : {"tool", "version", "command", "field", "input_hash", "seed", "payload"}) CHECK(e.contains(k));
  CHECK(!e.contains("timings"));
}

TEST_CASE("twosection payload rejects bad roots") {
  TorusSource src;
  src.fixture = "W21_std";
  auto P = prepare_torus(src);
  CHECK_THROWS_AS(twosection_payload(P, Vec{0, 0}, Vec{1, 0}, 1), ValidationError);
  CHECK_THROWS_AS(twosection_payload(P, Vec{1}, Vec{1, 0}, 1), ValidationError);
  CHECK_THROWS_AS(twosection_payload(P, Vec{1, 0}, Vec{2, 0}, 1), ValidationError);
  Json j = twosection_payload(P, Vec{1, 0}, Vec{0, 1}, 1);
  CHECK(j["two_sections"].size() == 1);
}
