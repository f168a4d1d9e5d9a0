#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "revigis/fitness.hpp"
#include "revigis/flood.hpp"
#include "revigis/fusion.hpp"
#include "revigis/grades.hpp"
#include "revigis/translation.hpp"

// JSON file formats. Every writer emits `"format": "revigis/1"`; readers accept
// a missing header and reject any other version. Canonical text is the
// two-space indented dump with sorted keys and a trailing newline.
//
// *_from_json throws LoadError for malformed documents and ValidationError for
// well-formed content that breaks a model invariant. The load_* functions wrap
// both in a LoadError prefixed with the path.
namespace revigis::io {

using Json = nlohmann::json;

inline constexpr std::string_view kFormat = "revigis/1";

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);
std::string canonical(const Json& doc);
Json parse(std::string_view text, const std::string& origin = "<input>");

/// Chain: array of names, lowest first. Other lattices:
/// {"elements": [...], "order": [[lower, higher], ...]}.
GradeLattice lattice_from_json(const Json& j);
Json to_json(const GradeLattice& lattice);

flood::FloodScene flood_scene_from_json(const Json& j);
Json to_json(const flood::FloodScene& scene);
Json to_json(const flood::HeightInterval& interval);

fusion::FeatureSet feature_set_from_json(const Json& j);
Json to_json(const fusion::FeatureSet& set);

translation::Taxonomy taxonomy_from_json(const Json& j);
Json to_json(const translation::Taxonomy& taxonomy);

translation::TranslationRelation relation_from_json(const Json& j);
Json to_json(const translation::TranslationRelation& relation);

translation::LabelGrid label_grid_from_json(const Json& j);
Json to_json(const translation::LabelGrid& grid);

translation::NumericGrid numeric_grid_from_json(const Json& j);
Json to_json(const translation::NumericGrid& grid);

translation::DistanceTable distance_table_from_json(const Json& j);
Json to_json(const translation::DistanceTable& table);

fitness::ProductOntology product_from_json(const Json& j);
Json to_json(const fitness::ProductOntology& product);

fitness::ProblemOntology problem_from_json(const Json& j);
Json to_json(const fitness::ProblemOntology& problem);

// Loaders read and decode a file; any failure becomes a LoadError naming the path.
flood::FloodScene load_flood_scene(const std::filesystem::path& path);
fusion::FeatureSet load_feature_set(const std::filesystem::path& path);
translation::Taxonomy load_taxonomy(const std::filesystem::path& path);
translation::TranslationRelation load_relation(const std::filesystem::path& path);
translation::LabelGrid load_label_grid(const std::filesystem::path& path);
translation::NumericGrid load_numeric_grid(const std::filesystem::path& path);
translation::DistanceTable load_distance_table(const std::filesystem::path& path);
fitness::ProductOntology load_product(const std::filesystem::path& path);
fitness::ProblemOntology load_problem(const std::filesystem::path& path);

}  // namespace revigis::io
