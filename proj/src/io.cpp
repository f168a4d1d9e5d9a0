#include "revigis/io.hpp"

#include <fstream>
#include <sstream>

#include "revigis/errors.hpp"

namespace revigis::io {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LoadError(path.string() + ": cannot open file for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw LoadError(path.string() + ": write failed");
}

std::string canonical(const Json& doc) { return doc.dump(2) + "\n"; }

Json parse(std::string_view text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw LoadError(origin + ": " + e.what());
  }
}

namespace {

void check_format(const Json& j) {
  if (!j.is_object()) throw LoadError("document must be a JSON object");
  if (auto it = j.find("format"); it != j.end() && *it != kFormat)
    throw LoadError("unsupported format '" + it->dump() + "', expected \"" + std::string(kFormat) + "\"");
}

Json with_header(Json j) {
  j["format"] = kFormat;
  return j;
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw LoadError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw LoadError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw LoadError(std::string("field \"") + key + "\" must be an array");
  return v;
}

const Json* optional_array(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return nullptr;
  if (!it->is_array()) throw LoadError(std::string("field \"") + key + "\" must be an array");
  return &*it;
}

double number(const Json& v, const char* what) {
  if (!v.is_number()) throw LoadError(std::string(what) + " must be a number");
  return v.get<double>();
}

fusion::Point point_from_json(const Json& v) {
  if (!v.is_array() || v.size() != 2) throw LoadError("coordinate must be an [x, y] pair");
  return {number(v[0], "x"), number(v[1], "y")};
}

Json point_to_json(const fusion::Point& p) { return Json::array({p.x, p.y}); }

std::size_t dimension(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() <= 0)
    throw LoadError(std::string("field \"") + key + "\" must be a positive integer");
  return v.get<std::size_t>();
}

template <typename Decode>
auto load_with(const std::filesystem::path& path, Decode decode) {
  const std::string text = read_file(path);
  try {
    return decode(parse(text, path.string()));
  } catch (const LoadError& e) {
    std::string msg = e.what();
    if (msg.rfind(path.string(), 0) == 0) throw;
    throw LoadError(path.string() + ": " + msg);
  } catch (const std::exception& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

}  // namespace

GradeLattice lattice_from_json(const Json& j) {
  if (j.is_array()) {
    std::vector<std::string> names;
    for (const auto& n : j) {
      if (!n.is_string()) throw LoadError("grade names must be strings");
      names.push_back(n.get<std::string>());
    }
    return GradeLattice::chain(std::move(names));
  }
  if (!j.is_object()) throw LoadError("grade scale must be an array or an {elements, order} object");
  std::vector<std::string> elements;
  for (const auto& n : array_field(j, "elements")) {
    if (!n.is_string()) throw LoadError("grade names must be strings");
    elements.push_back(n.get<std::string>());
  }
  std::vector<GradeLattice::OrderPair> order;
  for (const auto& p : array_field(j, "order")) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
      throw LoadError("order entries must be [lower, higher] name pairs");
    order.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return GradeLattice::from_order(std::move(elements), order);
}

Json to_json(const GradeLattice& lattice) {
  if (lattice.is_chain()) return lattice.names();
  Json order = Json::array();
  for (const auto& [lo, hi] : lattice.covering_pairs()) order.push_back({lo, hi});
  return {{"elements", lattice.names()}, {"order", order}};
}

namespace {

std::optional<flood::Height> height(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) throw LoadError(std::string("interval bound \"") + key + "\" must be an integer");
  return it->get<flood::Height>();
}

flood::HeightInterval interval_from_json(const Json& j) {
  if (!j.is_object()) throw LoadError("interval must be an object with lo/hi");
  return flood::HeightInterval(height(j, "lo"), height(j, "hi"));
}

}  // namespace

Json to_json(const flood::HeightInterval& interval) {
  Json j = Json::object();
  if (interval.lo) j["lo"] = *interval.lo;
  if (interval.hi) j["hi"] = *interval.hi;
  return j;
}

flood::FloodScene flood_scene_from_json(const Json& j) {
  check_format(j);
  flood::FloodScene scene;
  scene.global_bounds = interval_from_json(field(j, "global_bounds"));
  if (!scene.global_bounds.bounded()) throw LoadError("global_bounds needs both lo and hi");
  for (const auto& p : array_field(j, "parcels")) {
    flood::Parcel parcel;
    parcel.id = string_field(p, "id");
    if (auto it = p.find("interval"); it != p.end() && !it->is_null())
      parcel.observed = flood::clamp_open_ends(interval_from_json(*it), scene.global_bounds);
    if (auto it = p.find("retracted"); it != p.end()) parcel.retracted = it->get<bool>();
    scene.parcels.push_back(std::move(parcel));
  }
  if (const Json* flows = optional_array(j, "flows"))
    for (const auto& f : *flows) scene.flows.push_back({string_field(f, "from"), string_field(f, "to")});
  if (const Json* neighbors = optional_array(j, "neighbors"))
    for (const auto& n : *neighbors) {
      if (!n.is_array() || n.size() != 2 || !n[0].is_string() || !n[1].is_string())
        throw LoadError("neighbors entries must be [id, id] pairs");
      scene.neighbors.emplace_back(n[0].get<std::string>(), n[1].get<std::string>());
    }
  flood::validate(scene);
  return flood::reset_working_intervals(std::move(scene));
}

Json to_json(const flood::FloodScene& scene) {
  Json parcels = Json::array();
  for (const auto& p : scene.parcels) {
    Json jp{{"id", p.id}};
    if (p.observed) jp["interval"] = to_json(*p.observed);
    if (p.retracted) jp["retracted"] = true;
    parcels.push_back(std::move(jp));
  }
  Json flows = Json::array();
  for (const auto& f : scene.flows) flows.push_back({{"from", f.from}, {"to", f.to}});
  Json neighbors = Json::array();
  for (const auto& [a, b] : scene.neighbors) neighbors.push_back({a, b});
  return with_header({{"global_bounds", to_json(scene.global_bounds)},
                      {"parcels", parcels},
                      {"flows", flows},
                      {"neighbors", neighbors}});
}

fusion::FeatureSet feature_set_from_json(const Json& j) {
  check_format(j);
  fusion::FeatureSet set;
  if (const Json* features = optional_array(j, "features"))
    for (const auto& f : *features) {
      fusion::LineFeature feature;
      feature.id = string_field(f, "id");
      const std::string kind = string_field(f, "kind");
      auto parsed = fusion::parse_feature_kind(kind);
      if (!parsed) throw LoadError("feature '" + feature.id + "' has unknown kind '" + kind + "'");
      feature.kind = *parsed;
      for (const auto& v : array_field(f, "polyline")) feature.polyline.push_back(point_from_json(v));
      fusion::validate(feature);
      set.features.push_back(std::move(feature));
    }
  if (const Json* bridges = optional_array(j, "bridges"))
    for (const auto& b : *bridges) {
      fusion::BridgePoint bridge{string_field(b, "id"), point_from_json(field(b, "xy")), false};
      if (auto it = b.find("inferred"); it != b.end()) bridge.inferred = it->get<bool>();
      set.bridges.push_back(std::move(bridge));
    }
  return set;
}

Json to_json(const fusion::FeatureSet& set) {
  Json features = Json::array();
  for (const auto& f : set.features) {
    Json line = Json::array();
    for (const auto& p : f.polyline) line.push_back(point_to_json(p));
    features.push_back({{"id", f.id}, {"kind", fusion::to_string(f.kind)}, {"polyline", line}});
  }
  Json bridges = Json::array();
  for (const auto& b : set.bridges) {
    Json jb{{"id", b.id}, {"xy", point_to_json(b.location)}};
    if (b.inferred) jb["inferred"] = true;
    bridges.push_back(std::move(jb));
  }
  return with_header({{"features", features}, {"bridges", bridges}});
}

translation::Taxonomy taxonomy_from_json(const Json& j) {
  check_format(j);
  std::vector<std::string> levels;
  for (const auto& l : array_field(j, "levels")) {
    if (!l.is_string()) throw LoadError("level names must be strings");
    levels.push_back(l.get<std::string>());
  }
  std::vector<translation::TaxonomyClass> classes;
  for (const auto& c : array_field(j, "classes")) {
    translation::TaxonomyClass tc{string_field(c, "code"), string_field(c, "label"), string_field(c, "level"),
                                  std::nullopt};
    if (auto it = c.find("parent"); it != c.end() && !it->is_null()) tc.parent = string_field(c, "parent");
    classes.push_back(std::move(tc));
  }
  return translation::Taxonomy(string_field(j, "name"), std::move(levels), std::move(classes));
}

Json to_json(const translation::Taxonomy& taxonomy) {
  Json classes = Json::array();
  for (const auto& c : taxonomy.classes()) {
    Json jc{{"code", c.code}, {"label", c.label}, {"level", c.level}};
    if (c.parent) jc["parent"] = *c.parent;
    classes.push_back(std::move(jc));
  }
  return with_header({{"name", taxonomy.name()}, {"levels", taxonomy.levels()}, {"classes", classes}});
}

translation::TranslationRelation relation_from_json(const Json& j) {
  check_format(j);
  GradeLattice lattice = lattice_from_json(field(j, "grades"));
  std::vector<translation::TranslationRelation::Entry> entries;
  for (const auto& e : array_field(j, "entries"))
    entries.push_back({string_field(e, "from"), string_field(e, "to"), lattice.grade(string_field(e, "grade"))});
  return translation::TranslationRelation(string_field(j, "source"), string_field(j, "target"), std::move(lattice),
                                          entries);
}

Json to_json(const translation::TranslationRelation& relation) {
  Json entries = Json::array();
  for (const auto& e : relation.entries())
    entries.push_back({{"from", e.from}, {"to", e.to}, {"grade", e.grade.name()}});
  return with_header({{"source", relation.source()},
                      {"target", relation.target()},
                      {"grades", to_json(relation.lattice())},
                      {"entries", entries}});
}

translation::LabelGrid label_grid_from_json(const Json& j) {
  check_format(j);
  translation::LabelGrid grid{dimension(j, "width"), dimension(j, "height"), string_field(j, "taxonomy"), {}};
  for (const auto& c : array_field(j, "cells")) {
    if (!c.is_string()) throw LoadError("label grid cells must be class code strings");
    grid.cells.push_back(c.get<std::string>());
  }
  translation::validate(grid);
  return grid;
}

Json to_json(const translation::LabelGrid& grid) {
  return with_header(
      {{"width", grid.width}, {"height", grid.height}, {"taxonomy", grid.taxonomy}, {"cells", grid.cells}});
}

translation::NumericGrid numeric_grid_from_json(const Json& j) {
  check_format(j);
  translation::NumericGrid grid{dimension(j, "width"), dimension(j, "height"), {}};
  for (const auto& v : array_field(j, "values")) grid.values.push_back(number(v, "grid value"));
  translation::validate(grid);
  return grid;
}

Json to_json(const translation::NumericGrid& grid) {
  return with_header({{"width", grid.width}, {"height", grid.height}, {"values", grid.values}});
}

translation::DistanceTable distance_table_from_json(const Json& j) {
  check_format(j);
  translation::DistanceTable table(string_field(j, "taxonomy"));
  for (const auto& e : array_field(j, "entries")) {
    const std::string from = string_field(e, "from");
    const std::string to = string_field(e, "to");
    if (table.lookup(from, to)) throw LoadError("look-up table lists (" + from + ", " + to + ") twice");
    table.set(from, to, number(field(e, "distance"), "distance"));
  }
  return table;
}

Json to_json(const translation::DistanceTable& table) {
  Json entries = Json::array();
  for (const auto& [key, d] : table.entries())
    entries.push_back({{"from", key.first}, {"to", key.second}, {"distance", d}});
  return with_header({{"taxonomy", table.taxonomy()}, {"entries", entries}});
}

fitness::ProductOntology product_from_json(const Json& j) {
  check_format(j);
  fitness::ProductOntology product;
  product.product = string_field(j, "product");
  product.lattice = lattice_from_json(field(j, "grades"));
  for (const auto& s : array_field(j, "statements"))
    product.statements.push_back(
        {string_field(s, "subject"), string_field(s, "parameter"), product.lattice.grade(string_field(s, "grade"))});
  if (j.contains("provenance")) product.provenance = string_field(j, "provenance");
  fitness::validate(product);
  return product;
}

Json to_json(const fitness::ProductOntology& product) {
  Json statements = Json::array();
  for (const auto& s : product.statements)
    statements.push_back({{"subject", s.subject}, {"parameter", s.parameter}, {"grade", s.grade.name()}});
  Json j{{"product", product.product}, {"grades", to_json(product.lattice)}, {"statements", statements}};
  if (!product.provenance.empty()) j["provenance"] = product.provenance;
  return with_header(std::move(j));
}

fitness::ProblemOntology problem_from_json(const Json& j) {
  check_format(j);
  fitness::ProblemOntology problem;
  problem.problem = string_field(j, "problem");
  problem.lattice = lattice_from_json(field(j, "grades"));
  for (const auto& r : array_field(j, "requirements"))
    problem.requirements.push_back({string_field(r, "subject"), string_field(r, "parameter"),
                                    problem.lattice.grade(string_field(r, "required")),
                                    problem.lattice.grade(string_field(r, "relevance"))});
  fitness::validate(problem);
  return problem;
}

Json to_json(const fitness::ProblemOntology& problem) {
  Json requirements = Json::array();
  for (const auto& r : problem.requirements)
    requirements.push_back({{"subject", r.subject},
                            {"parameter", r.parameter},
                            {"required", r.required.name()},
                            {"relevance", r.relevance.name()}});
  return with_header(
      {{"problem", problem.problem}, {"grades", to_json(problem.lattice)}, {"requirements", requirements}});
}

flood::FloodScene load_flood_scene(const std::filesystem::path& path) {
  return load_with(path, flood_scene_from_json);
}
fusion::FeatureSet load_feature_set(const std::filesystem::path& path) {
  return load_with(path, feature_set_from_json);
}
translation::Taxonomy load_taxonomy(const std::filesystem::path& path) {
  return load_with(path, taxonomy_from_json);
}
translation::TranslationRelation load_relation(const std::filesystem::path& path) {
  return load_with(path, relation_from_json);
}
translation::LabelGrid load_label_grid(const std::filesystem::path& path) {
  return load_with(path, label_grid_from_json);
}
translation::NumericGrid load_numeric_grid(const std::filesystem::path& path) {
  return load_with(path, numeric_grid_from_json);
}
translation::DistanceTable load_distance_table(const std::filesystem::path& path) {
  return load_with(path, distance_table_from_json);
}
fitness::ProductOntology load_product(const std::filesystem::path& path) {
  return load_with(path, product_from_json);
}
fitness::ProblemOntology load_problem(const std::filesystem::path& path) {
  return load_with(path, problem_from_json);
}

}  // namespace revigis::io
