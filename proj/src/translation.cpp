#include "revigis/translation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "revigis/errors.hpp"

namespace revigis::translation {

Taxonomy::Taxonomy(std::string name, std::vector<std::string> levels, std::vector<TaxonomyClass> classes)
    : name_(std::move(name)), levels_(std::move(levels)), classes_(std::move(classes)) {
  if (name_.empty()) throw ValidationError("taxonomy without a name");
  if (levels_.empty()) throw ValidationError("taxonomy '" + name_ + "' declares no levels");
  std::map<std::string, std::size_t, std::less<>> depth;
  for (std::size_t i = 0; i < levels_.size(); ++i)
    if (!depth.emplace(levels_[i], i).second)
      throw ValidationError("taxonomy '" + name_ + "' repeats level '" + levels_[i] + "'");

  for (std::size_t i = 0; i < classes_.size(); ++i) {
    const auto& c = classes_[i];
    if (c.code.empty()) throw ValidationError("taxonomy '" + name_ + "' has a class with an empty code");
    if (!index_.emplace(c.code, i).second)
      throw ValidationError("taxonomy '" + name_ + "': duplicate code '" + c.code + "'");
    if (!depth.contains(c.level))
      throw ValidationError("taxonomy '" + name_ + "': class '" + c.code + "' has unknown level '" + c.level + "'");
  }
  for (const auto& c : classes_) {
    const std::size_t d = depth.at(c.level);
    if (d == 0) {
      if (c.parent)
        throw ValidationError("taxonomy '" + name_ + "': top-level class '" + c.code + "' has a parent");
      continue;
    }
    if (!c.parent)
      throw ValidationError("taxonomy '" + name_ + "': class '" + c.code + "' has no parent");
    auto p = index_.find(*c.parent);
    if (p == index_.end())
      throw ValidationError("taxonomy '" + name_ + "': class '" + c.code + "' has dangling parent '" +
                            *c.parent + "'");
    if (depth.at(classes_[p->second].level) + 1 != d)
      throw ValidationError("taxonomy '" + name_ + "': parent '" + *c.parent + "' of class '" + c.code +
                            "' is not on the level directly above");
  }
}

const TaxonomyClass* Taxonomy::find(std::string_view code) const {
  auto it = index_.find(code);
  return it == index_.end() ? nullptr : &classes_[it->second];
}

std::size_t Taxonomy::count_at(std::string_view level) const {
  return static_cast<std::size_t>(
      std::count_if(classes_.begin(), classes_.end(), [&](const TaxonomyClass& c) { return c.level == level; }));
}

TranslationRelation::TranslationRelation(std::string source, std::string target, GradeLattice lattice,
                                         const std::vector<Entry>& entries)
    : source_(std::move(source)), target_(std::move(target)), lattice_(std::move(lattice)) {
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& e : entries) {
    if (!lattice_.contains(e.grade))
      throw DomainError("grade '" + e.grade.name() + "' of entry (" + e.from + ", " + e.to +
                        ") is not in the relation's lattice");
    if (!seen.emplace(e.from, e.to).second)
      throw ValidationError("relation lists (" + e.from + ", " + e.to + ") more than once");
    if (!lattice_.is_bottom(e.grade)) grades_.emplace(std::pair{e.from, e.to}, e.grade);
  }
}

TranslationRelation TranslationRelation::identity(const std::string& taxonomy,
                                                  const std::vector<std::string>& codes, GradeLattice lattice) {
  std::vector<Entry> entries;
  for (const auto& c : codes) entries.push_back({c, c, lattice.top()});
  return TranslationRelation(taxonomy, taxonomy, std::move(lattice), entries);
}

Grade TranslationRelation::grade(std::string_view from, std::string_view to) const {
  auto it = grades_.find(std::pair{std::string(from), std::string(to)});
  return it == grades_.end() ? lattice_.bottom() : it->second;
}

std::vector<TranslationRelation::Entry> TranslationRelation::entries() const {
  std::vector<Entry> out;
  for (const auto& [key, g] : grades_) out.push_back({key.first, key.second, g});
  return out;
}

Grade TranslationRelation::best_from(std::string_view from) const {
  Grade best = lattice_.bottom();
  for (auto it = grades_.lower_bound(std::pair{std::string(from), std::string()});
       it != grades_.end() && it->first.first == from; ++it)
    best = lattice_.join(best, it->second);
  return best;
}

Grade TranslationRelation::best_to(std::string_view to) const {
  Grade best = lattice_.bottom();
  for (const auto& [key, g] : grades_)
    if (key.second == to) best = lattice_.join(best, g);
  return best;
}

void validate(const TranslationRelation& r, const Taxonomy& source, const Taxonomy& target) {
  if (r.source() != source.name())
    throw ValidationError("relation source '" + r.source() + "' does not match taxonomy '" + source.name() + "'");
  if (r.target() != target.name())
    throw ValidationError("relation target '" + r.target() + "' does not match taxonomy '" + target.name() + "'");
  for (const auto& e : r.entries()) {
    if (!source.contains(e.from))
      throw ValidationError("relation code '" + e.from + "' not found in taxonomy '" + source.name() + "'");
    if (!target.contains(e.to))
      throw ValidationError("relation code '" + e.to + "' not found in taxonomy '" + target.name() + "'");
  }
}

TranslationRelation compose_relations(const TranslationRelation& r1, const TranslationRelation& r2) {
  if (r1.target() != r2.source())
    throw ValidationError("cannot compose: '" + r1.target() + "' is not '" + r2.source() + "'");
  if (!(r1.lattice() == r2.lattice())) throw LatticeMismatch("cannot compose relations over different grade lattices");
  const GradeLattice& l = r1.lattice();

  std::map<std::string, std::vector<std::pair<std::string, Grade>>> out_of_middle;
  for (const auto& e : r2.entries()) out_of_middle[e.from].emplace_back(e.to, e.grade);

  std::map<std::pair<std::string, std::string>, Grade> acc;
  for (const auto& e1 : r1.entries()) {
    auto it = out_of_middle.find(e1.to);
    if (it == out_of_middle.end()) continue;
    for (const auto& [c, g2] : it->second) {
      Grade through = l.meet(e1.grade, g2);
      auto [slot, fresh] = acc.emplace(std::pair{e1.from, c}, through);
      if (!fresh) slot->second = l.join(slot->second, through);
    }
  }
  std::vector<TranslationRelation::Entry> entries;
  for (const auto& [key, g] : acc)
    if (!l.is_bottom(g)) entries.push_back({key.first, key.second, g});
  return TranslationRelation(r1.source(), r2.target(), l, entries);
}

void validate(const LabelGrid& grid) {
  if (grid.width == 0 || grid.height == 0) throw ValidationError("grid dimensions must be positive");
  if (grid.width * grid.height != grid.cells.size())
    throw ValidationError("grid has " + std::to_string(grid.cells.size()) + " cells, expected " +
                          std::to_string(grid.width * grid.height));
}

void validate(const LabelGrid& grid, const Taxonomy& taxonomy) {
  validate(grid);
  if (grid.taxonomy != taxonomy.name())
    throw ValidationError("grid uses taxonomy '" + grid.taxonomy + "', not '" + taxonomy.name() + "'");
  for (std::size_t i = 0; i < grid.cells.size(); ++i)
    if (!taxonomy.contains(grid.cells[i]))
      throw ValidationError("cell " + std::to_string(i) + " holds code '" + grid.cells[i] +
                            "' unknown to taxonomy '" + taxonomy.name() + "'");
}

void validate(const NumericGrid& grid) {
  if (grid.width == 0 || grid.height == 0) throw ValidationError("grid dimensions must be positive");
  if (grid.width * grid.height != grid.values.size())
    throw ValidationError("grid has " + std::to_string(grid.values.size()) + " values, expected " +
                          std::to_string(grid.width * grid.height));
  for (double v : grid.values)
    if (!std::isfinite(v)) throw ValidationError("grid holds a non-finite value");
}

namespace {

template <typename A, typename B>
void require_same_shape(const A& a, const B& b) {
  if (a.width != b.width || a.height != b.height)
    throw ValidationError("grid dimensions differ: " + std::to_string(a.width) + "x" + std::to_string(a.height) +
                          " vs " + std::to_string(b.width) + "x" + std::to_string(b.height));
}

}  // namespace

NumericGrid numeric_difference(const NumericGrid& a, const NumericGrid& b) {
  validate(a);
  validate(b);
  require_same_shape(a, b);
  NumericGrid out{a.width, a.height, std::vector<double>(a.values.size())};
  for (std::size_t i = 0; i < a.values.size(); ++i) out.values[i] = std::abs(b.values[i] - a.values[i]);
  return out;
}

void DistanceTable::set(const std::string& from, const std::string& to, double distance) {
  if (!std::isfinite(distance)) throw ValidationError("distance for (" + from + ", " + to + ") is not finite");
  table_[{from, to}] = distance;
}

std::optional<double> DistanceTable::lookup(std::string_view from, std::string_view to) const {
  auto it = table_.find(std::pair{std::string(from), std::string(to)});
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

NumericGrid contextual_compare(const LabelGrid& a, const LabelGrid& b, const DistanceTable& lut) {
  validate(a);
  validate(b);
  require_same_shape(a, b);
  if (a.taxonomy != b.taxonomy)
    throw ValidationError("contextual comparison needs one shared taxonomy, got '" + a.taxonomy + "' and '" +
                          b.taxonomy + "'");
  if (!lut.taxonomy().empty() && lut.taxonomy() != a.taxonomy)
    throw ValidationError("look-up table is for taxonomy '" + lut.taxonomy() + "', grids use '" + a.taxonomy + "'");
  NumericGrid out{a.width, a.height, std::vector<double>(a.cells.size())};
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    auto d = lut.lookup(a.cells[i], b.cells[i]);
    if (!d) throw DomainError("look-up table has no entry for pair (" + a.cells[i] + ", " + b.cells[i] + ")");
    out.values[i] = *d;
  }
  return out;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::string joined(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

CommonOntology build_common_ontology(const Taxonomy& source, const Taxonomy& target,
                                     const TranslationRelation& r, const std::optional<Grade>& threshold) {
  validate(r, source, target);
  const GradeLattice& l = r.lattice();
  if (threshold && !l.contains(*threshold))
    throw DomainError("threshold grade '" + threshold->name() + "' is not in the relation's lattice");

  // Nodes: source classes first, then target classes.
  const std::size_t ns = source.classes().size();
  const std::size_t nt = target.classes().size();
  std::map<std::string, std::size_t, std::less<>> src_index, tgt_index;
  for (std::size_t i = 0; i < ns; ++i) src_index[source.classes()[i].code] = i;
  for (std::size_t j = 0; j < nt; ++j) tgt_index[target.classes()[j].code] = ns + j;

  DisjointSets sets(ns + nt);
  for (const auto& e : r.entries()) {
    if (threshold && !l.leq(*threshold, e.grade)) continue;
    sets.unite(src_index.at(e.from), tgt_index.at(e.to));
  }

  std::map<std::size_t, std::vector<std::size_t>> components;  // ordered by smallest node
  for (std::size_t n = 0; n < ns + nt; ++n) components[sets.find(n)].push_back(n);

  auto qualified = [&](std::size_t n) {
    return n < ns ? source.name() + ":" + source.classes()[n].code
                  : target.name() + ":" + target.classes()[n - ns].code;
  };
  auto label_of = [&](std::size_t n) {
    return n < ns ? source.classes()[n].label : target.classes()[n - ns].label;
  };

  CommonOntology out{Taxonomy(source.name() + "+" + target.name(), {"third"}, {}), {}, {}, {}};
  std::vector<TaxonomyClass> classes;
  for (const auto& [_, nodes] : components) {
    std::vector<std::string> names, labels;
    for (std::size_t n : nodes) {
      names.push_back(qualified(n));
      labels.push_back(label_of(n));
    }
    const std::string code = joined(names, " + ");
    classes.push_back({code, joined(labels, " / "), "third", std::nullopt});
    out.members[code] = names;
    for (std::size_t n : nodes) {
      if (n < ns) out.from_source[source.classes()[n].code] = code;
      else out.from_target[target.classes()[n - ns].code] = code;
    }
  }
  out.third = Taxonomy(source.name() + "+" + target.name(), {"third"}, std::move(classes));
  return out;
}

ChangeMap ontological_compare(const LabelGrid& a, const LabelGrid& b, const TranslationRelation& r,
                              const Taxonomy& source, const Taxonomy& target) {
  validate(a, source);
  validate(b, target);
  return ontological_compare(a, b, r, build_common_ontology(source, target, r));
}

ChangeMap ontological_compare(const LabelGrid& a, const LabelGrid& b, const TranslationRelation& r,
                              const CommonOntology& common) {
  validate(a);
  validate(b);
  require_same_shape(a, b);
  if (a.taxonomy != r.source() || b.taxonomy != r.target())
    throw ValidationError("grids use '" + a.taxonomy + "' and '" + b.taxonomy + "', relation maps '" + r.source() +
                          "' to '" + r.target() + "'");
  const GradeLattice& l = r.lattice();
  ChangeMap out{a.width, a.height, {}};
  out.cells.reserve(a.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    auto ta = common.from_source.find(a.cells[i]);
    auto tb = common.from_target.find(b.cells[i]);
    if (ta == common.from_source.end())
      throw ValidationError("code '" + a.cells[i] + "' does not resolve in '" + r.source() + "'");
    if (tb == common.from_target.end())
      throw ValidationError("code '" + b.cells[i] + "' does not resolve in '" + r.target() + "'");
    ChangeCell cell;
    cell.first_third = ta->second;
    cell.changed = ta->second != tb->second;
    cell.confidence = l.meet(r.best_from(a.cells[i]), r.best_to(b.cells[i]));
    if (!l.is_bottom(cell.confidence)) cell.third_class = tb->second;
    out.cells.push_back(std::move(cell));
  }
  return out;
}

}  // namespace revigis::translation
