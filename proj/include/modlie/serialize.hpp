#pragma once

#include <string>

#include <json.hpp>

#include "modlie/constructors.hpp"

namespace modlie {

using Json = nlohmann::json;

Json field_to_json(const Field& F);
FieldPtr field_from_json(const Json& j);

// {field, dim, labels, sc: [[i, j, [[k, c], ...]], ...], pmap?}; i < j, zero brackets omitted.
Json algebra_to_json(const LieAlgebra& L);
// Also reads dense coefficient vectors in place of the [k, c] pairs. Verifies Jacobi when asked.
AlgPtr algebra_from_json(const Json& j, bool verify = true);
// Algebra plus grading metadata.
Json graded_to_json(const GradedMeta& g);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j, size_t n);
Json subspace_to_json(const Subspace& S);

// Stable text form used for hashing and byte comparisons.
std::string canonical(const Json& j);
// FNV-1a, 64 bit, hex.
std::string content_hash(const std::string& s);

}  // namespace modlie
