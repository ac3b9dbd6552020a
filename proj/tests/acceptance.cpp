// One PASS/FAIL line per criterion; exit status is the number of failures.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <algorithm>

#include <unistd.h>

#include "modlie/derivations.hpp"
#include "modlie/error.hpp"
#include "modlie/report.hpp"

using namespace modlie;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void need(bool c, const std::string& what) {
    if (!c) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_s, const std::function<void(Outcome&)>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > budget_s) o.need(false, "over time budget");
  if (!o.ok) ++failures;
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (o.ok ? "PASS" : "FAIL") << "  " << id << ". " << name << "  (" << dt << " s of " << budget_s << ")";
  if (!o.detail.empty()) line << "  " << o.detail;
  std::cout << line.str() << std::endl;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  auto f = make_field(5, 1);

  criterion(1, "constructor dimensions, Jacobi, simplicity", 60, [&](Outcome& o) {
    struct Row {
      std::string name;
      AlgPtr L;
      size_t dim;
      bool simple;
    };
    std::vector<Row> rows = {
        {"W(1;1)", make_W(f, 1, {1}).meta.algebra, 5, true},
        {"W(1;2)", make_W(f, 1, {2}).meta.algebra, 25, true},
        {"W(2;1)", make_W(f, 2, {1, 1}).meta.algebra, 50, true},
        {"H(2;1)^(2)", make_H2(f, {1, 1}, HVariant::second_derived).algebra, 23, true},
        {"H(2;1)^(1)", make_H2(f, {1, 1}, HVariant::first_derived).algebra, 24, false},
        {"H(2;(2,1))^(2)", make_H2(f, {2, 1}, HVariant::second_derived).algebra, 123, true},
        {"S(3;1)^(1)", make_S1(f, 3, {1, 1, 1}).algebra, 248, true},
        {"K(3;1)", make_K(f, 3, {1, 1, 1}).algebra, 125, true},
        {"M(1,1)", make_melikian(f).algebra, 125, true},
        {"sl(2)", make_classical(f, ClassicalKind::sl, 2), 3, true},
    };
    for (const auto& r : rows) {
      o.need(r.L->dim() == r.dim, r.name + " dim " + std::to_string(r.L->dim()));
      o.need(r.L->jacobi_holds(), r.name + " Jacobi");
      if (r.simple) o.need(is_simple(r.L), r.name + " not simple");
    }
  });

  criterion(2, "p-envelope codimension facts", 30, [&](Outcome& o) {
    auto H = make_H2(f, {2, 1}, HVariant::second_derived);
    auto G = envelope_of(H.algebra);
    o.need(G.dim() == H.algebra->dim() + 1, "H(2;(2,1))^(2)_p dim " + std::to_string(G.dim()));
    // The extra direction is a p-th power of an element of degree -1.
    auto Lsub = G.L_subspace();
    bool found = false;
    for (size_t i = 0; i < H.algebra->dim(); ++i) {
      if (H.degrees[i] != -1) continue;
      Vec y = G.p_power(G.from_L(unit(H.algebra->dim(), i)));
      if (!Lsub.member(y)) {
        found = sum(Lsub, Subspace::span(G.field(), G.dim(), {y})).dim() == G.dim();
        if (found) break;
      }
    }
    o.need(found, "no degree -1 element with p-th power outside L");
    auto W = make_W(f, 1, {2}).meta.algebra;
    o.need(envelope_of(W).dim() == W->dim() + 1, "W(1;2)_p overgrowth is not 1");
  });

  criterion(3, "xi law over F_5 and F_7", 1, [&](Outcome& o) {
    for (uint32_t p : {5u, 7u}) {
      auto Fp = make_field(p, 1);
      for (uint32_t a = 0; a < p; ++a)
        for (uint32_t b = 0; b < p; ++b) {
          Scalar xa = artin_schreier_xi(Scalar(Fp, a)), xb = artin_schreier_xi(Scalar(Fp, b));
          o.need(power(xa, p) - xa == embed(Scalar(Fp, a), xa.field), "xi^p - xi != a");
          o.need(artin_schreier_xi(Scalar(Fp, (a + b) % p)) == xa + xb, "xi not additive");
        }
    }
  });

  criterion(4, "1-section verdicts stay inside the table", 600, [&](Outcome& o) {
    for (const std::string name : {"W11_std", "W21_std", "H2", "K31", "sl3"}) {
      auto X = torus_fixture(name);
      o.need(is_maximal_torus(X.T), name + " torus not certified maximal");
      o.need(is_standard(X.T), name + " torus not standard");
      auto RD = root_decomposition(X.T);
      for (const auto& s : all_sections(RD, false))
        o.need(s.verdict != Verdict::unclassified, name + " escapes the table");
    }
  });

  criterion(5, "switching invariants", 300, [&](Outcome& o) {
    size_t total = 0, xi = 0;
    for (const std::string name : {"W11_bad", "W21_std", "W21_switched"}) {
      auto X = torus_fixture(name);
      auto RD = root_decomposition(X.T);
      for (const auto& r : RD.roots)
        for (const auto& x : projective_points(r.space)) {
          if (name == "W21_switched" && total >= 200) break;
          auto s = elementary_switch(RD, r.gamma, x);
          ++total;
          if (s.value_field->k() > 1) ++xi;
          o.need(s.new_torus.dim() == X.T.dim(), name + " torus dim changed");
          o.need(s.dims_preserved, name + " root multiset changed");
          o.need(s.exponential_ok, name + " E_x(L_gamma) mismatch");
          o.need(s.formula_ok, name + " gamma_x formula mismatch");
        }
    }
    o.need(total >= 20, "fewer than 20 switches");
    o.need(xi > 0, "no switch needed the field escalation");
    if (o.ok) o.detail = std::to_string(total) + " switches, " + std::to_string(xi) + " over GF(p^p)";
  });

  criterion(6, "optimizer reaches r = 0 within budget 20", 600, [&](Outcome& o) {
    for (const std::string name : {"W11_bad", "W21_switched"}) {
      auto X = torus_fixture(name);
      auto RD = root_decomposition(X.T);
      auto O = optimize_torus(RD, 20);
      o.need(O.r_initial > 0, name + " starts proper");
      o.need(O.r_final == 0, name + " ends at r = " + std::to_string(O.r_final));
      if (name == "W11_bad") o.need(O.r_initial == 4, "W(1;1) bad torus r != 4");
    }
  });

  criterion(7, "Der H(2;1)^(2) fixtures", 300, [&](Outcome& o) {
    uint32_t p = 5;
    {
      auto X = torus_fixture("DerH2_T1");
      auto RD = root_decomposition(X.T);
      const Vec& t = X.generators.at(1).second;
      size_t hits = 0;
      for (const auto& g : root_lines(RD)) {
        if (root_value(RD, g, t) != 0) continue;
        ++hits;
        auto s = one_section(RD, g);
        o.need(s.fp.dim == p, "section dim " + std::to_string(s.fp.dim));
        o.need(s.verdict == Verdict::witt, "verdict " + to_string(s.verdict));
      }
      o.need(hits > 0, "no root vanishes on x2 d2");
    }
    {
      auto X = torus_fixture("DerH2_T2");
      auto RD = root_decomposition(X.T);
      size_t proper = 0;
      for (const auto& s : all_sections(RD, false))
        if (s.proper) ++proper;
      o.need(proper <= p - 1, std::to_string(proper) + " proper lines");
    }
  });

  criterion(8, "Q closes; T+Q maximal; W(1;1) Q solvable inside L_(0)", 600, [&](Outcome& o) {
    for (const std::string name : {"W11_std", "W12", "W21_std", "H2", "DerH2_T0", "K31", "sl2", "sl3"}) {
      auto X = torus_fixture(name);
      auto RD = root_decomposition(X.T);
      auto S = all_sections(RD, false);
      auto q = Q_subalgebra(RD, S, X.standard_zero);
      o.need(q.closed && q.t_invariant, name + " Q not closed");
      if (!q.equals_L) o.need(maximality_check(RD, q.Q).maximal, name + " T+Q not maximal");
      if (name == "W11_std") {
        o.need(q.solvable, "W(1;1) Q not solvable");
        o.need(q.inside_standard_zero.value_or(false), "W(1;1) Q not inside L_(0)");
      }
    }
  });

  criterion(9, "two-section case coverage, no 'no case'", 900, [&](Outcome& o) {
    std::vector<int> seen;
    for (int c = 1; c <= 8; ++c) {
      auto X = two_section_fixture(c);
      auto R = two_section(X.RD, X.alpha, X.beta);
      o.need(R.cls.case_id == c, "case " + std::to_string(c) + " read as " + std::to_string(R.cls.case_id));
      o.need(R.cls.evidence.shape_check.value_or(true), "case " + std::to_string(c) + " shape check");
      if (R.cls.evidence.commuting_check) o.need(*R.cls.evidence.commuting_check, "commuting check");
      if (R.cls.case_id == c) seen.push_back(c);
    }
    for (const std::string name : {"W21_std", "DerH2_T0"}) {
      auto X = torus_fixture(name);
      auto RD = root_decomposition(X.T);
      auto lines = root_lines(RD);
      for (size_t i = 0; i < lines.size(); ++i)
        for (size_t k = i + 1; k < lines.size(); ++k)
          o.need(two_section(RD, lines[i], lines[k]).cls.case_id != 0, name + " gives no case");
    }
    for (int c : {1, 2, 3, 5, 8})
      o.need(std::find(seen.begin(), seen.end(), c) != seen.end(), "case " + std::to_string(c) + " missing");
  });

  criterion(10, "graded pipeline, minimal ideal, tensor round trips", 900, [&](Outcome& o) {
    auto W = make_W(f, 2, {1, 1});
    auto G = associated_graded(filtration_from_grading(W.meta.algebra, W.meta.degrees));
    Homomorphism phi(G.total, W.meta.algebra, G.adapted, false);
    o.need(G.jacobi && phi.preserves_brackets(), "gr(W(2;1)) not isomorphic to W(2;1)");
    o.need(G.total->dim() == 50 && is_simple(G.total), "gr fingerprint");
    for (const std::string name : {"W21_std", "H2"}) {
      auto X = torus_fixture(name);
      auto P = graded_pipeline(root_decomposition(X.T));
      o.need(P.applicable, name + " pipeline not applicable");
      o.need(P.A.unique.value_or(false) && !P.A.abelian, name + " minimal graded ideal not unique");
      if (name == "W21_std") {
        o.need(P.S.restricted && P.S.simple, "S(L,T) not restricted simple");
        o.need(P.S.S->dim() == 50 && P.S.m == 0, "(S, m) for W(2;1)");
      }
    }
    std::vector<std::pair<std::string, AlgPtr>> algs = {
        {"sl2", make_classical(f, ClassicalKind::sl, 2)},
        {"W11", make_W(f, 1, {1}).meta.algebra},
        {"H2", make_H2(f, {1, 1}, HVariant::second_derived).algebra}};
    for (const auto& [nm, S] : algs)
      for (size_t m : {0, 1}) {
        AlgPtr A = m ? make_tensor(S, m, std::vector<uint32_t>(m, 1)).A : S;
        auto R = extract_S(A);
        o.need(R.S->dim() == S->dim() && R.m == m, nm + " round trip m=" + std::to_string(m));
      }
  });

  criterion(11, "verify-fixtures is byte-identical across runs", 600, [&](Outcome& o) {
    auto base = std::filesystem::temp_directory_path() / ("modlie_accept_" + std::to_string(::getpid()));
    auto a = base / "a", b = base / "b";
    verify_fixtures(1, a.string());
    verify_fixtures(1, b.string());
    size_t files = 0;
    for (const auto& e : std::filesystem::directory_iterator(a)) {
      ++files;
      auto other = b / e.path().filename();
      o.need(std::filesystem::exists(other) && slurp(e.path()) == slurp(other),
             e.path().filename().string() + " differs");
    }
    size_t files_b = std::distance(std::filesystem::directory_iterator(b), std::filesystem::directory_iterator{});
    o.need(files > 0 && files == files_b, "file sets differ");
    std::filesystem::remove_all(base);
  });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
