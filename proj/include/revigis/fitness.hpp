#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revigis/grades.hpp"

namespace revigis::fitness {

/// The quality parameter names plus "class_quality".
bool is_known_parameter(std::string_view parameter);

/// What the producer states about its product: one grade per (subject, parameter).
struct ProductStatement {
  std::string subject;    // class code, feature kind or theme
  std::string parameter;  // quality parameter name or "class_quality"
  Grade grade;
  friend bool operator==(const ProductStatement&, const ProductStatement&) = default;
};

struct ProductOntology {
  std::string product;
  GradeLattice lattice = GradeLattice::default_chain();
  std::vector<ProductStatement> statements;
  std::string provenance;
  friend bool operator==(const ProductOntology&, const ProductOntology&) = default;
};

/// What the user needs. A bottom relevance declares the requirement irrelevant.
struct Requirement {
  std::string subject;
  std::string parameter;
  Grade required;
  Grade relevance;
  friend bool operator==(const Requirement&, const Requirement&) = default;
};

struct ProblemOntology {
  std::string problem;
  GradeLattice lattice = GradeLattice::default_chain();
  std::vector<Requirement> requirements;
  friend bool operator==(const ProblemOntology&, const ProblemOntology&) = default;
};

/// Throws ValidationError on unknown parameters, duplicate keys or grades
/// outside the lattice.
void validate(const ProductOntology& product);
void validate(const ProblemOntology& problem);

/// Rejects subjects outside `known_subjects`.
void validate_subjects(const ProductOntology& product, const std::vector<std::string>& known_subjects);

enum class Verdict { fit, unfit, unknown, incomparable };

std::string_view to_string(Verdict v);

struct RequirementVerdict {
  Requirement requirement;
  std::optional<Grade> offered;  // product grade, if stated
  Verdict verdict = Verdict::unknown;
  friend bool operator==(const RequirementVerdict&, const RequirementVerdict&) = default;
};

enum class UnknownPolicy { strict, lenient };

struct FitnessReport {
  std::string product;
  std::string problem;
  UnknownPolicy policy = UnknownPolicy::strict;
  /// Relevant requirements only, in the problem's order.
  std::vector<RequirementVerdict> verdicts;
  bool fit = true;
  /// Meet of the offered grades over the relevant requirements, if any.
  std::optional<Grade> weakest;

  std::size_t count(Verdict v) const;
  friend bool operator==(const FitnessReport&, const FitnessReport&) = default;
};

/// Per-requirement threshold comparison on the shared lattice. Overall fit iff
/// nothing is unfit or incomparable and, under the strict policy, nothing is
/// unknown. Throws LatticeMismatch when the lattices differ.
FitnessReport conflate(const ProductOntology& product, const ProblemOntology& problem,
                       UnknownPolicy policy = UnknownPolicy::strict);

struct RankedProduct {
  std::size_t input_index;
  FitnessReport report;
};

/// Stable sort by (unfit + incomparable, unknown, product name).
std::vector<RankedProduct> rank_products(const std::vector<ProductOntology>& products,
                                         const ProblemOntology& problem,
                                         UnknownPolicy policy = UnknownPolicy::strict);

}  // namespace revigis::fitness
