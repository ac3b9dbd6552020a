#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modlie/tori.hpp"

namespace modlie {

enum class Verdict { solvable, classical, witt, hamiltonian_eps2, hamiltonian_eps1, unclassified };
std::string to_string(Verdict v);
Verdict verdict_from_dim(size_t dim, uint32_t p);

struct Fingerprint {
  size_t dim = 0, derived_dim = 0;
  bool perfect = false;
  size_t toral_rank = 0;
  size_t torus_image_dim = 0;
};

// T + S inside G modulo its maximal solvable ideal; K is the image of S.
struct SectionQuotient {
  Subspace section;  // in L
  std::vector<std::pair<Vec, Subspace>> components;  // (gamma, L_gamma) making up the section
  Subspace sumG;     // T + S in G
  AlgPtr sub;        // basis = rows of sumG
  Subspace radical_sub;
  QuotientResult quot;
  Subspace K, Tbar;  // in quotient coordinates
  AlgPtr Kalg;       // basis = rows of K
  Matrix psi;        // section coordinates -> Kalg coordinates
  Subspace radical;  // kernel of psi, in L
  std::vector<Matrix> tbar_ops;  // toral basis acting on Kalg
  Vec project(const Vec& g) const;
  // Image of an L-subspace of the section in Kalg coordinates.
  Subspace image(const Subspace& V) const;
  // Preimage in L of a Kalg subspace, intersected with the section.
  Subspace preimage(const Subspace& M) const;
};
SectionQuotient section_quotient(const RootDatum& RD, const std::vector<Vec>& lattice_gens);

Fingerprint fingerprint(const SectionQuotient& Q, bool with_toral_rank = true);

struct StandardMaximal {
  bool found = false;
  bool invariant = false;  // torus-homogeneous
  std::string method;
  Subspace M;  // in Kalg coordinates
};
// Witt: codimension 1; Hamiltonian: codimension 2.
StandardMaximal standard_maximal_subalgebra(const AlgPtr& K, const std::vector<Subspace>& weight_spaces, Verdict v);

struct SectionReport {
  Vec gamma;
  Subspace section;
  Subspace radical;
  Fingerprint fp;
  Verdict verdict = Verdict::unclassified;
  bool proper = false;
  bool q_found = false;
  std::string q_method;
  Subspace Q_gamma;  // Q(gamma) in L
  std::vector<std::pair<Vec, Subspace>> Q_root;  // Q(gamma) meet L_{i gamma}, nonzero i
};
SectionReport one_section(const RootDatum& RD, const Vec& gamma, bool with_toral_rank = true);

// One representative per line F_p^* gamma, the one whose first nonzero entry is 1.
std::vector<Vec> root_lines(const RootDatum& RD);
Vec normalize_root(const Vec& g, uint32_t p);

struct TwoSectionEvidence {
  size_t K_dim = 0;
  size_t r = 0;
  size_t socle_dim = 0;
  size_t centroid_dim = 0;
  size_t m = 0;
  size_t pi2_dim = 0;
  size_t pi2_derived_dim = 0;
  size_t tr_socle = 0;
  bool socle_restricted = false;
  size_t tbar_dim = 0;
  std::vector<size_t> minimal_ideal_dims;
  std::optional<bool> shape_check;
  std::string shape_note;
  std::optional<bool> commuting_check;
};
struct TwoSectionClass {
  int case_id = 0;  // 0 = no case
  TwoSectionEvidence evidence;
};
struct TwoSectionResult {
  SectionQuotient sq;
  TwoSectionClass cls;
};
TwoSectionResult two_section(const RootDatum& RD, const Vec& alpha, const Vec& beta, uint64_t seed = 1);
int classify_two_section(const TwoSectionEvidence& e);

// Q(L,T); throws ValidationError when a root is improper.
struct QReport {
  Subspace Q;  // in L
  bool closed = false;
  bool t_invariant = false;
  bool equals_L = false;
  bool solvable = false;
  std::optional<bool> inside_standard_zero;
};
QReport Q_subalgebra(const RootDatum& RD, const std::vector<SectionReport>& sections,
                     const std::optional<Subspace>& standard_zero = std::nullopt);
std::vector<SectionReport> all_sections(const RootDatum& RD, bool with_toral_rank = true);
size_t improper_count(const std::vector<SectionReport>& sections, const RootDatum& RD);

struct MaximalityReport {
  bool maximal = false;
  size_t tested = 0;
  std::optional<Vec> witness;  // root vector whose closure falls short
};
MaximalityReport maximality_check(const RootDatum& RD, const Subspace& Q);

// Projective points of V over its field, as vectors of the ambient space.
std::vector<Vec> projective_points(const Subspace& V, size_t limit = 1000000);

}  // namespace modlie
