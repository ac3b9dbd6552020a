#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modlie/fixtures.hpp"
#include "modlie/graded.hpp"
#include "modlie/serialize.hpp"
#include "modlie/switching.hpp"

namespace modlie {

Json torus_json(const Torus& T);
Json root_datum_json(const RootDatum& RD);
Json section_json(const SectionReport& s);
Json two_section_json(const TwoSectionResult& r, const Vec& alpha, const Vec& beta);
Json switch_json(const SwitchRecord& s);
Json optimize_json(const OptimizeResult& o);
Json graded_json(const GradedPipeline& g);

// construct: type in W, S, H, K, M, sl, gl, psl.
struct ConstructSpec {
  std::string type;
  uint32_t p = 5, k = 1;
  size_t m = 1;
  std::vector<uint32_t> n;
  std::string variant = "second_derived";  // H only
};
Json construct_json(const ConstructSpec& spec);

// Where the torus comes from: a fixture, or a maximal torus of an algebra's p-envelope.
struct TorusSource {
  std::string fixture;
  AlgPtr algebra;
  std::optional<Subspace> standard_zero;
  std::vector<Vec> torus;  // forced torus generators in L coordinates; empty = search
  uint64_t seed = 1;
};
struct PreparedTorus {
  RootDatum RD;
  std::optional<Subspace> standard_zero;
  bool certified = true;
  std::string origin;
};
PreparedTorus prepare_torus(const TorusSource& src);

// Payloads. Alarms (table escapes, missing cases) are listed under "alarms".
Json atlas_payload(const PreparedTorus& P, size_t budget, uint64_t seed);
Json sections_payload(const PreparedTorus& P);
Json twosection_payload(const PreparedTorus& P, const std::optional<Vec>& alpha, const std::optional<Vec>& beta,
                        uint64_t seed);
Json optimize_payload(const PreparedTorus& P, size_t budget, uint64_t seed);
Json grade_payload(const PreparedTorus& P, size_t budget, uint64_t seed);

Json envelope(const std::string& command, const Json& field, const std::string& input_hash, uint64_t seed,
              Json payload);

// Runs every fixture check; writes one file per fixture plus summary.json when out_dir is set.
Json verify_fixtures(uint64_t seed, const std::string& out_dir);

}  // namespace modlie
