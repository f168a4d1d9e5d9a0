#include "revigis/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>

#include "revigis/errors.hpp"
#include "revigis/io.hpp"
#include "revigis/report.hpp"
#include "revigis/svg.hpp"

#ifndef REVIGIS_DEFAULT_DATA_DIR
#define REVIGIS_DEFAULT_DATA_DIR "data"
#endif

namespace revigis::cli {

namespace fs = std::filesystem;
using report::RunReport;

namespace {

struct Common {
  std::string out = "-";
  std::string svg;
  bool timing = false;
};

void add_common(CLI::App& cmd, Common& c) {
  cmd.add_option("--out", c.out, "Report path, '-' for standard output")->capture_default_str();
  cmd.add_option("--svg", c.svg, "Write an SVG figure to this path");
  cmd.add_flag("--timing", c.timing, "Include wall-clock timing in the report");
}

fs::path data_dir() {
  if (const char* env = std::getenv("REVIGIS_DATA"); env && *env) return env;
  return REVIGIS_DEFAULT_DATA_DIR;
}

void digest(RunReport& r, std::string role, const fs::path& path) {
  r.inputs.push_back({std::move(role), path.string(), report::sha256_hex(io::read_file(path))});
}

void emit(const RunReport& r, const Common& c, std::ostream& out) {
  const auto text = io::canonical(r.to_json());
  if (c.out == "-")
    out << text;
  else
    io::write_file(c.out, text);
}

void emit_svg(const Common& c, const std::string& figure) {
  if (!c.svg.empty()) io::write_file(c.svg, figure);
}

// ---- flood ----

int cmd_flood(const std::string& scene_path, const std::string& strategy_name, RunReport& r,
              flood::FloodScene& filled) {
  const auto strategy =
      strategy_name == "greedy" ? flood::RevisionStrategy::greedy : flood::RevisionStrategy::exact;
  digest(r, "scene", scene_path);
  const auto scene = io::load_flood_scene(scene_path);

  const auto check = flood::check_consistency(scene);
  r.results["consistency"] = report::to_json(check);
  flood::FloodScene consistent = scene;
  int code = kExitOk;
  if (!check.consistent()) {
    const auto revision = flood::revise(scene, strategy);
    r.results["revision"] = report::to_json(revision, strategy);
    consistent = revision.revised_scene;
    code = kExitFindings;
  }
  filled = flood::extrapolate(consistent);
  r.results["parcels"] = report::parcels_to_json(filled);
  return code;
}

// ---- fuse ----

int cmd_fuse(const std::string& roads, const std::string& streams, const std::string& bridges,
             const std::string& trust_text, double tolerance, RunReport& r, fusion::FusionResult& result) {
  const auto trust = fusion::parse_trust(trust_text);
  if (!(tolerance >= 0.0)) throw ValidationError("tolerance must be non-negative");
  digest(r, "roads", roads);
  digest(r, "streams", streams);
  digest(r, "bridges", bridges);

  fusion::OverlayScene scene;
  scene.tolerance = tolerance;
  for (const auto* path : {&roads, &streams, &bridges}) {
    auto set = io::load_feature_set(*path);
    for (auto& f : set.features)
      (f.kind == fusion::FeatureKind::road ? scene.roads : scene.streams).push_back(std::move(f));
    for (auto& b : set.bridges) scene.bridges.push_back(std::move(b));
  }
  fusion::validate(scene);

  result = fusion::fuse(scene, trust);
  std::string order;
  for (auto l : trust) order += (order.empty() ? "" : ",") + std::string(fusion::to_string(l));
  r.results["trust"] = order;
  r.results["tolerance"] = tolerance;
  r.results["fusion"] = report::to_json(result);
  if (!result.unresolved.empty())
    r.warnings.push_back(std::to_string(result.unresolved.size()) + " violation(s) left unresolved");
  return result.violations.empty() ? kExitOk : kExitFindings;
}

// ---- change ----

struct ChangeArgs {
  std::string grid_a, grid_b, mode, relation, lut;
};

int cmd_change(const ChangeArgs& a, RunReport& r, std::string& figure) {
  r.results["mode"] = a.mode;
  if (a.mode == "numeric") {
    if (!a.relation.empty() || !a.lut.empty())
      throw ValidationError("numeric mode takes neither --relation nor --lut");
    digest(r, "first", a.grid_a);
    digest(r, "second", a.grid_b);
    const auto diff = translation::numeric_difference(io::load_numeric_grid(a.grid_a), io::load_numeric_grid(a.grid_b));
    r.results["difference"] = report::to_json(diff);
    figure = svg::render_numeric(diff);
    return std::any_of(diff.values.begin(), diff.values.end(), [](double v) { return v != 0.0; }) ? kExitFindings
                                                                                                 : kExitOk;
  }
  if (a.mode == "lut") {
    if (a.lut.empty()) throw ValidationError("lut mode requires --lut");
    if (!a.relation.empty()) throw ValidationError("lut mode does not take --relation");
    digest(r, "first", a.grid_a);
    digest(r, "second", a.grid_b);
    digest(r, "lut", a.lut);
    const auto diff = translation::contextual_compare(io::load_label_grid(a.grid_a), io::load_label_grid(a.grid_b),
                                                      io::load_distance_table(a.lut));
    r.results["difference"] = report::to_json(diff);
    figure = svg::render_numeric(diff);
    return std::any_of(diff.values.begin(), diff.values.end(), [](double v) { return v != 0.0; }) ? kExitFindings
                                                                                                 : kExitOk;
  }
  if (a.mode != "onto") throw ValidationError("unknown mode '" + a.mode + "'");
  if (!a.lut.empty()) throw ValidationError("onto mode does not take --lut");

  digest(r, "first", a.grid_a);
  digest(r, "second", a.grid_b);
  const auto first = io::load_label_grid(a.grid_a);
  const auto second = io::load_label_grid(a.grid_b);
  const auto dir = data_dir();
  const fs::path relation_path =
      a.relation.empty() ? dir / "relations" / (first.taxonomy + "-" + second.taxonomy + ".json") : fs::path(a.relation);
  digest(r, "relation", relation_path);
  const auto relation = io::load_relation(relation_path);
  if (relation.source() != first.taxonomy || relation.target() != second.taxonomy)
    throw ValidationError("relation maps " + relation.source() + " to " + relation.target() + ", grids are " +
                          first.taxonomy + " and " + second.taxonomy);
  const auto src_path = dir / "taxonomies" / (first.taxonomy + ".json");
  const auto tgt_path = dir / "taxonomies" / (second.taxonomy + ".json");
  digest(r, "source_taxonomy", src_path);
  digest(r, "target_taxonomy", tgt_path);
  const auto source = io::load_taxonomy(src_path);
  const auto target = io::load_taxonomy(tgt_path);

  const auto map = translation::ontological_compare(first, second, relation, source, target);
  r.results["change"] = report::to_json(map);
  figure = svg::render_change(map);
  const bool findings =
      std::any_of(map.cells.begin(), map.cells.end(), [](const auto& c) { return c.changed || c.conflict(); });
  return findings ? kExitFindings : kExitOk;
}

// ---- fitness ----

int cmd_fitness(const std::vector<std::string>& files, bool lenient, RunReport& r) {
  const auto policy = lenient ? fitness::UnknownPolicy::lenient : fitness::UnknownPolicy::strict;
  std::vector<fitness::ProductOntology> products;
  for (std::size_t i = 0; i + 1 < files.size(); ++i) {
    digest(r, "product", files[i]);
    products.push_back(io::load_product(files[i]));
  }
  digest(r, "problem", files.back());
  const auto problem = io::load_problem(files.back());

  const auto ranked = fitness::rank_products(products, problem, policy);
  auto ranking = io::Json::array();
  for (std::size_t i = 0; i < ranked.size(); ++i)
    ranking.push_back({{"rank", i + 1}, {"input", ranked[i].input_index}, {"report", report::to_json(ranked[i].report)}});
  r.results["policy"] = lenient ? "lenient" : "strict";
  r.results["ranking"] = std::move(ranking);
  return !ranked.empty() && ranked.front().report.fit ? kExitOk : kExitFindings;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Revision, fusion, translation and fitness analysis of geographic data", "revigis"};
  app.require_subcommand(1);

  Common common;
  RunReport report;

  std::string scene_path, strategy = "exact";
  auto* flood_cmd = app.add_subcommand("flood", "Propagate, check, revise and extrapolate a flood scene");
  flood_cmd->add_option("scene", scene_path, "Flood scene file")->required();
  flood_cmd->add_option("--revise", strategy, "Revision strategy")
      ->check(CLI::IsMember({"exact", "greedy"}))
      ->capture_default_str();
  add_common(*flood_cmd, common);

  std::string roads, streams, bridges, trust = "roads,streams,bridges";
  double tolerance = fusion::kDefaultTolerance;
  auto* fuse_cmd = app.add_subcommand("fuse", "Enforce the bridge rule across roads, streams and bridges");
  fuse_cmd->add_option("roads", roads, "Road feature file")->required();
  fuse_cmd->add_option("streams", streams, "Stream feature file")->required();
  fuse_cmd->add_option("bridges", bridges, "Bridge feature file")->required();
  fuse_cmd->add_option("--trust", trust, "Layers from most to least trusted")->capture_default_str();
  fuse_cmd->add_option("--tolerance", tolerance, "Matching tolerance in map units")->capture_default_str();
  add_common(*fuse_cmd, common);

  ChangeArgs change;
  auto* change_cmd = app.add_subcommand("change", "Compare two classified grids");
  change_cmd->add_option("grid_a", change.grid_a, "First-date grid")->required();
  change_cmd->add_option("grid_b", change.grid_b, "Second-date grid")->required();
  change_cmd->add_option("--mode", change.mode, "numeric, lut or onto")->required();
  change_cmd->add_option("--relation", change.relation, "Translation relation (onto mode)");
  change_cmd->add_option("--lut", change.lut, "Distance table (lut mode)");
  add_common(*change_cmd, common);

  std::vector<std::string> fitness_files;
  bool lenient = false, strict = false;
  auto* fitness_cmd = app.add_subcommand("fitness", "Assess product ontologies against a problem ontology");
  fitness_cmd->add_option("files", fitness_files, "Product file(s) followed by the problem file")
      ->required()
      ->expected(2, -1);
  auto* lenient_flag = fitness_cmd->add_flag("--lenient", lenient, "Unknown qualities do not block fitness");
  fitness_cmd->add_flag("--strict", strict, "Unknown qualities block fitness (default)")->excludes(lenient_flag);
  add_common(*fitness_cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  const auto started = std::chrono::steady_clock::now();
  int code = kExitError;
  std::string figure;
  try {
    if (flood_cmd->parsed()) {
      report.command = "flood";
      flood::FloodScene filled;
      code = cmd_flood(scene_path, strategy, report, filled);
      figure = svg::render_flood(filled);
    } else if (fuse_cmd->parsed()) {
      report.command = "fuse";
      fusion::FusionResult result;
      code = cmd_fuse(roads, streams, bridges, trust, tolerance, report, result);
      figure = svg::render_fusion(result);
    } else if (change_cmd->parsed()) {
      report.command = "change";
      code = cmd_change(change, report, figure);
    } else if (fitness_cmd->parsed()) {
      report.command = "fitness";
      code = cmd_fitness(fitness_files, lenient, report);
    }
    if (common.timing)
      report.elapsed_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    emit(report, common, out);
    if (report.command != "fitness") emit_svg(common, figure);
  } catch (const std::exception& e) {
    err << "revigis " << report.command << ": " << e.what() << '\n';
    return kExitError;
  }
  return code;
}

}  // namespace revigis::cli
