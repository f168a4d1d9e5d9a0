#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revigis/fitness.hpp"
#include "revigis/flood.hpp"
#include "revigis/fusion.hpp"
#include "revigis/io.hpp"
#include "revigis/translation.hpp"

namespace revigis::report {

using io::Json;

std::string sha256_hex(std::string_view content);

struct InputDigest {
  std::string role;
  std::string path;
  std::string sha256;
};

/// Structured outcome of one CLI run. The serialized form is a pure function
/// of the inputs; timing is only emitted when explicitly requested.
struct RunReport {
  std::string command;
  std::vector<InputDigest> inputs;
  Json results = Json::object();
  std::vector<std::string> warnings;
  std::optional<double> elapsed_ms;

  Json to_json() const;
};

Json to_json(const flood::ConsistencyReport& report);
Json to_json(const flood::RevisionResult& revision, flood::RevisionStrategy strategy);
Json parcels_to_json(const flood::FloodScene& scene);

Json to_json(const fusion::DifferenceRecord& record);
Json to_json(const std::vector<fusion::DifferenceRecord>& records);
Json to_json(const fusion::FusionResult& result);

Json to_json(const translation::ChangeMap& map);
Json to_json(const translation::NumericGrid& grid);

Json to_json(const fitness::FitnessReport& report);

}  // namespace revigis::report
