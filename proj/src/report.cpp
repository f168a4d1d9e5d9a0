#include "revigis/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <memory>
#include <stdexcept>

namespace revigis::report {

std::string sha256_hex(std::string_view content) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), content.data(), content.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1)
    throw std::runtime_error("sha256 digest failed");
  std::string hex;
  hex.reserve(2 * len);
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

Json RunReport::to_json() const {
  Json inputs_json = Json::array();
  for (const auto& in : inputs) inputs_json.push_back({{"role", in.role}, {"path", in.path}, {"sha256", in.sha256}});
  Json j{{"format", io::kFormat},
         {"command", command},
         {"inputs", inputs_json},
         {"results", results},
         {"warnings", warnings}};
  if (elapsed_ms) j["timing"] = {{"elapsed_ms", *elapsed_ms}};
  return j;
}

Json to_json(const flood::ConsistencyReport& report) {
  Json conflicts = Json::array();
  for (const auto& c : report.conflicts) conflicts.push_back({{"observations", c.observations}, {"path", c.path}});
  return {{"consistent", report.consistent()}, {"conflicts", conflicts}};
}

Json to_json(const flood::RevisionResult& revision, flood::RevisionStrategy strategy) {
  return {{"strategy", strategy == flood::RevisionStrategy::exact ? "exact" : "greedy"},
          {"retracted", revision.retracted},
          {"minimal", revision.minimal}};
}

Json parcels_to_json(const flood::FloodScene& scene) {
  Json parcels = Json::array();
  for (const auto& p : scene.parcels) {
    Json jp{{"id", p.id}, {"interval", io::to_json(p.current)}, {"retracted", p.retracted}};
    jp["observed"] = p.observed ? io::to_json(*p.observed) : Json(nullptr);
    parcels.push_back(std::move(jp));
  }
  return parcels;
}

Json to_json(const fusion::DifferenceRecord& record) {
  Json implicated = Json::array();
  for (auto p : record.implicated) implicated.push_back(fusion::to_string(p));
  Json j{{"category", fusion::to_string(record.category)},
         {"first_ids", record.first_ids},
         {"second_ids", record.second_ids},
         {"implicated", implicated}};
  if (record.magnitude) j["magnitude"] = *record.magnitude;
  if (record.counts) j["counts"] = {record.counts->first, record.counts->second};
  if (record.location) j["location"] = {record.location->x, record.location->y};
  return j;
}

Json to_json(const std::vector<fusion::DifferenceRecord>& records) {
  Json out = Json::array();
  for (const auto& r : records) out.push_back(to_json(r));
  return out;
}

Json to_json(const fusion::FusionResult& result) {
  Json log = Json::array();
  for (const auto& a : result.log)
    log.push_back({{"action", fusion::to_string(a.kind)},
                   {"bridge", a.bridge_id},
                   {"location", {a.location.x, a.location.y}}});
  Json bridges = Json::array();
  for (const auto& b : result.fused.bridges) {
    Json jb{{"id", b.id}, {"xy", {b.location.x, b.location.y}}};
    if (b.inferred) jb["inferred"] = true;
    bridges.push_back(std::move(jb));
  }
  return {{"violations", to_json(result.violations)},
          {"log", log},
          {"unresolved", to_json(result.unresolved)},
          {"fused_bridges", bridges},
          {"road_count", result.fused.roads.size()},
          {"stream_count", result.fused.streams.size()}};
}

Json to_json(const translation::ChangeMap& map) {
  Json cells = Json::array();
  std::size_t changed = 0, conflicts = 0;
  for (const auto& c : map.cells) {
    Json jc{{"changed", c.changed}, {"confidence", c.confidence.name()}, {"from_third", c.first_third}};
    jc["third_class"] = c.third_class ? Json(*c.third_class) : Json("conflict");
    jc["conflict"] = c.conflict();
    cells.push_back(std::move(jc));
    changed += c.changed && !c.conflict();
    conflicts += c.conflict();
  }
  return {{"width", map.width},
          {"height", map.height},
          {"cells", cells},
          {"changed_cells", changed},
          {"conflict_cells", conflicts}};
}

Json to_json(const translation::NumericGrid& grid) {
  return {{"width", grid.width}, {"height", grid.height}, {"values", grid.values}};
}

Json to_json(const fitness::FitnessReport& report) {
  Json verdicts = Json::array();
  for (const auto& v : report.verdicts) {
    Json jv{{"subject", v.requirement.subject},
            {"parameter", v.requirement.parameter},
            {"required", v.requirement.required.name()},
            {"relevance", v.requirement.relevance.name()},
            {"verdict", fitness::to_string(v.verdict)}};
    jv["offered"] = v.offered ? Json(v.offered->name()) : Json(nullptr);
    verdicts.push_back(std::move(jv));
  }
  Json j{{"product", report.product},
         {"problem", report.problem},
         {"policy", report.policy == fitness::UnknownPolicy::strict ? "strict" : "lenient"},
         {"verdicts", verdicts},
         {"overall", report.fit ? "fit" : "unfit"}};
  j["weakest_grade"] = report.weakest ? Json(report.weakest->name()) : Json(nullptr);
  return j;
}

}  // namespace revigis::report
