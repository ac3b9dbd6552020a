#include "modlie/serialize.hpp"

#include <cstdio>

#include "modlie/error.hpp"

namespace modlie {

Json field_to_json(const Field& F) {
  return Json{{"p", F.p()}, {"k", F.k()}, {"modulus", F.modulus()}};
}

FieldPtr field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("p")) throw ValidationError("field descriptor needs p");
  uint32_t p = j.at("p").get<uint32_t>();
  uint32_t k = j.value("k", 1u);
  if (!is_prime(p)) throw ValidationError("p must be prime");
  auto f = make_field(p, k);
  if (j.contains("modulus") && !j.at("modulus").is_null()) {
    auto m = j.at("modulus").get<std::vector<uint32_t>>();
    if (m != f->modulus()) {
      if (!is_irreducible(p, m)) throw ValidationError("field modulus is not irreducible");
      f = std::make_shared<Field>(p, k, m);
    }
  }
  return f;
}

Json algebra_to_json(const LieAlgebra& L) {
  Json j;
  j["field"] = field_to_json(L.F());
  j["dim"] = L.dim();
  Json labels = Json::array();
  for (size_t i = 0; i < L.dim(); ++i) labels.push_back(L.label(i));
  j["labels"] = labels;
  Json sc = Json::array();
  for (size_t a = 0; a < L.dim(); ++a)
    for (size_t b = a + 1; b < L.dim(); ++b) {
      const auto& v = L.sc(a, b);
      if (v.empty()) continue;
      Json terms = Json::array();
      for (auto [k, c] : v) terms.push_back(Json::array({k, c}));
      sc.push_back(Json::array({a, b, terms}));
    }
  j["sc"] = sc;
  if (L.has_pmap()) {
    Json pm = Json::array();
    for (size_t i = 0; i < L.dim(); ++i) pm.push_back(Json::array({i, vec_to_json(L.pmap()[i])}));
    j["pmap"] = pm;
  }
  return j;
}

Json vec_to_json(const Vec& v) { return Json(v); }

Vec vec_from_json(const Json& j, size_t n) {
  auto v = j.get<Vec>();
  if (v.size() != n) throw ValidationError("vector has the wrong length");
  return v;
}

AlgPtr algebra_from_json(const Json& j, bool verify) {
  try {
    auto f = field_from_json(j.at("field"));
    size_t n = j.at("dim").get<size_t>();
    if (n > kSizeCap) throw ValidationError("size cap exceeded");
    auto L = std::make_shared<LieAlgebra>(f, n);
    auto code = [&](const Json& c) {
      auto x = c.get<int64_t>();
      if (x < 0 || x >= static_cast<int64_t>(f->q())) throw ValidationError("coefficient is not a field code");
      return static_cast<uint32_t>(x);
    };
    for (const auto& e : j.at("sc")) {
      size_t a = e.at(0).get<size_t>(), b = e.at(1).get<size_t>();
      if (a >= n || b >= n || a == b) throw ValidationError("bad structure constant index");
      const auto& t = e.at(2);
      Vec v(n, 0);
      if (!t.empty() && t.at(0).is_array()) {
        for (const auto& kc : t) {
          size_t k = kc.at(0).get<size_t>();
          if (k >= n) throw ValidationError("bad structure constant index");
          v[k] = code(kc.at(1));
        }
      } else {
        if (t.size() != n) throw ValidationError("dense coefficient vector has the wrong length");
        for (size_t k = 0; k < n; ++k) v[k] = code(t.at(k));
      }
      if (a < b) {
        L->set_bracket(a, b, v);
      } else {
        for (auto& x : v) x = f->neg(x);
        L->set_bracket(b, a, v);
      }
    }
    if (j.contains("labels") && !j.at("labels").is_null()) {
      auto labels = j.at("labels").get<std::vector<std::string>>();
      if (labels.size() != n) throw ValidationError("one label per basis vector expected");
      L->set_labels(labels);
    }
    if (j.contains("pmap") && !j.at("pmap").is_null()) {
      std::vector<Vec> pm(n, Vec(n, 0));
      for (const auto& e : j.at("pmap")) {
        size_t i = e.at(0).get<size_t>();
        if (i >= n) throw ValidationError("bad p-map index");
        pm[i] = vec_from_json(e.at(1), n);
      }
      L->set_pmap(pm);
    }
    if (verify && !L->jacobi_holds()) throw ValidationError("input violates the Jacobi identity");
    if (verify && !L->pmap_law_holds()) throw ValidationError("input p-map violates ad(x^[p]) = ad(x)^p");
    return L;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed algebra JSON: ") + e.what());
  }
}

Json graded_to_json(const GradedMeta& g) {
  Json j = algebra_to_json(*g.algebra);
  j["name"] = g.name;
  j["degrees"] = g.degrees;
  j["standard_zero"] = subspace_to_json(g.standard_zero);
  return j;
}

Json subspace_to_json(const Subspace& S) {
  Json rows = Json::array();
  for (const auto& r : S.rows()) rows.push_back(vec_to_json(r));
  return Json{{"dim", S.dim()}, {"basis", rows}};
}

std::string canonical(const Json& j) { return j.dump(1); }

std::string content_hash(const std::string& s) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace modlie
