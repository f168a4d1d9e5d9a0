#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "revigis/grades.hpp"

namespace revigis::translation {

struct TaxonomyClass {
  std::string code;
  std::string label;
  std::string level;
  std::optional<std::string> parent;
  friend bool operator==(const TaxonomyClass&, const TaxonomyClass&) = default;
};

/// A class hierarchy. Levels run from the coarsest down; every class below the
/// first level has exactly one parent on the level directly above.
class Taxonomy {
 public:
  /// Throws ValidationError naming the offending entry (duplicate code,
  /// unknown level, dangling or misplaced parent).
  Taxonomy(std::string name, std::vector<std::string> levels, std::vector<TaxonomyClass> classes);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& levels() const { return levels_; }
  const std::vector<TaxonomyClass>& classes() const { return classes_; }

  const TaxonomyClass* find(std::string_view code) const;
  bool contains(std::string_view code) const { return find(code) != nullptr; }
  std::size_t count_at(std::string_view level) const;

  friend bool operator==(const Taxonomy&, const Taxonomy&) = default;

 private:
  std::string name_;
  std::vector<std::string> levels_;
  std::vector<TaxonomyClass> classes_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Graded relation between the classes of a source and a target taxonomy.
/// Unlisted pairs have the bottom grade; bottom-graded entries are not stored.
class TranslationRelation {
 public:
  struct Entry {
    std::string from;
    std::string to;
    Grade grade;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  /// Throws ValidationError on a repeated (from, to) pair, DomainError on a
  /// grade outside the lattice.
  TranslationRelation(std::string source, std::string target, GradeLattice lattice,
                      const std::vector<Entry>& entries);

  /// Top grade on the diagonal of `codes`.
  static TranslationRelation identity(const std::string& taxonomy, const std::vector<std::string>& codes,
                                      GradeLattice lattice);

  const std::string& source() const { return source_; }
  const std::string& target() const { return target_; }
  const GradeLattice& lattice() const { return lattice_; }

  Grade grade(std::string_view from, std::string_view to) const;
  /// Sorted by (from, to).
  std::vector<Entry> entries() const;

  /// Join of the grades of entries leaving `from` (bottom if none).
  Grade best_from(std::string_view from) const;
  /// Join of the grades of entries reaching `to` (bottom if none).
  Grade best_to(std::string_view to) const;

  friend bool operator==(const TranslationRelation&, const TranslationRelation&) = default;

 private:
  std::string source_;
  std::string target_;
  GradeLattice lattice_;
  std::map<std::pair<std::string, std::string>, Grade, std::less<>> grades_;
};

/// Every code of `r` must resolve in its taxonomy and the names must agree.
void validate(const TranslationRelation& r, const Taxonomy& source, const Taxonomy& target);

/// grade(a, c) = join over b of meet(r1(a, b), r2(b, c)).
/// Throws ValidationError if r1.target != r2.source, LatticeMismatch if the
/// grade lattices differ.
TranslationRelation compose_relations(const TranslationRelation& r1, const TranslationRelation& r2);

/// Row-major grid of class codes.
struct LabelGrid {
  std::size_t width = 0;
  std::size_t height = 0;
  std::string taxonomy;
  std::vector<std::string> cells;
  friend bool operator==(const LabelGrid&, const LabelGrid&) = default;
};

struct NumericGrid {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> values;
  friend bool operator==(const NumericGrid&, const NumericGrid&) = default;
};

void validate(const LabelGrid& grid);
void validate(const LabelGrid& grid, const Taxonomy& taxonomy);
void validate(const NumericGrid& grid);

/// Cellwise |b - a|.
NumericGrid numeric_difference(const NumericGrid& a, const NumericGrid& b);

/// Explicit distance between code pairs of one taxonomy. Not assumed symmetric.
class DistanceTable {
 public:
  DistanceTable() = default;
  explicit DistanceTable(std::string taxonomy) : taxonomy_(std::move(taxonomy)) {}

  const std::string& taxonomy() const { return taxonomy_; }
  void set(const std::string& from, const std::string& to, double distance);
  std::optional<double> lookup(std::string_view from, std::string_view to) const;
  const std::map<std::pair<std::string, std::string>, double, std::less<>>& entries() const { return table_; }

  friend bool operator==(const DistanceTable&, const DistanceTable&) = default;

 private:
  std::string taxonomy_;
  std::map<std::pair<std::string, std::string>, double, std::less<>> table_;
};

/// Cellwise lut[a][b]. A missing pair is an error naming the pair.
NumericGrid contextual_compare(const LabelGrid& a, const LabelGrid& b, const DistanceTable& lut);

/// The common ontology of two taxonomies and the total maps into it.
struct CommonOntology {
  Taxonomy third;
  std::map<std::string, std::string, std::less<>> from_source;  // source code -> third code
  std::map<std::string, std::string, std::less<>> from_target;  // target code -> third code
  /// Third code -> member codes, as "<taxonomy>:<code>".
  std::map<std::string, std::vector<std::string>> members;
};

/// Third classes are the connected components of the bipartite graph linking
/// source and target classes whose grade is above bottom (and at least
/// `threshold` when given).
CommonOntology build_common_ontology(const Taxonomy& source, const Taxonomy& target,
                                     const TranslationRelation& r,
                                     const std::optional<Grade>& threshold = std::nullopt);

struct ChangeCell {
  std::string first_third;                 // Third class of the first-date label
  std::optional<std::string> third_class;  // Third class now; nullopt marks a conflict cell
  bool changed = false;
  Grade confidence;
  bool conflict() const { return !third_class.has_value(); }
  friend bool operator==(const ChangeCell&, const ChangeCell&) = default;
};

struct ChangeMap {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<ChangeCell> cells;
  friend bool operator==(const ChangeMap&, const ChangeMap&) = default;
};

/// First x Second -> Third. A cell changed when its two labels fall in
/// different Third classes; its confidence is the meet of the best translation
/// grades of both labels, and a bottom confidence marks it as a conflict.
ChangeMap ontological_compare(const LabelGrid& a, const LabelGrid& b, const TranslationRelation& r,
                              const Taxonomy& source, const Taxonomy& target);

/// Overload reusing a prebuilt common ontology.
ChangeMap ontological_compare(const LabelGrid& a, const LabelGrid& b, const TranslationRelation& r,
                              const CommonOntology& common);

}  // namespace revigis::translation
