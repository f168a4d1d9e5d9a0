#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "revigis/geometry.hpp"

namespace revigis::fusion {

using geometry::Point;

inline constexpr double kDefaultTolerance = 1.0;

enum class FeatureKind { road, stream };

std::string_view to_string(FeatureKind kind);
std::optional<FeatureKind> parse_feature_kind(std::string_view text);

struct LineFeature {
  std::string id;
  FeatureKind kind = FeatureKind::road;
  std::vector<Point> polyline;
  friend bool operator==(const LineFeature&, const LineFeature&) = default;
};

/// At least two vertices, consecutive vertices distinct, finite coordinates.
void validate(const LineFeature& feature);

struct BridgePoint {
  std::string id;
  Point location;
  /// Synthesized by fusion rather than observed.
  bool inferred = false;
  friend bool operator==(const BridgePoint&, const BridgePoint&) = default;
};

/// Content of one feature file: line features of any kind plus bridges.
struct FeatureSet {
  std::vector<LineFeature> features;
  std::vector<BridgePoint> bridges;
  friend bool operator==(const FeatureSet&, const FeatureSet&) = default;
};

/// The five core data quality parameters.
enum class QualityParameter {
  geometric_accuracy,
  thematic_accuracy,
  logical_consistency,
  completeness,
  semantic_accuracy,
};

inline constexpr std::array<QualityParameter, 5> kQualityParameters{
    QualityParameter::geometric_accuracy, QualityParameter::thematic_accuracy,
    QualityParameter::logical_consistency, QualityParameter::completeness,
    QualityParameter::semantic_accuracy};

std::string_view to_string(QualityParameter p);
std::optional<QualityParameter> parse_quality_parameter(std::string_view text);

enum class DifferenceCategory { displacement, complex_merge, cardinality, missing, spurious };

std::string_view to_string(DifferenceCategory c);

/// One categorized discrepancy. `first_ids`/`second_ids` name the elements
/// involved on each side (versions A/B, or crossings/bridges for the bridge
/// rule). Displacements carry a magnitude; cardinality records carry counts.
struct DifferenceRecord {
  DifferenceCategory category = DifferenceCategory::missing;
  std::vector<std::string> first_ids;
  std::vector<std::string> second_ids;
  std::set<QualityParameter> implicated;
  std::optional<double> magnitude;
  std::optional<std::pair<std::size_t, std::size_t>> counts;
  std::optional<Point> location;
  friend bool operator==(const DifferenceRecord&, const DifferenceRecord&) = default;
};

struct OverlayScene {
  std::vector<LineFeature> roads;
  std::vector<LineFeature> streams;
  std::vector<BridgePoint> bridges;
  double tolerance = kDefaultTolerance;
  friend bool operator==(const OverlayScene&, const OverlayScene&) = default;
};

/// Throws ValidationError on bad polylines, misfiled kinds, duplicate ids or a
/// negative tolerance.
void validate(const OverlayScene& scene);

struct UnionResult {
  OverlayScene scene;
  /// (original id, new id) for every id that clashed across the inputs.
  std::vector<std::pair<std::string, std::string>> renamed;
};

/// Plain set union. Identical elements appear once; distinct elements sharing
/// an id are renamed "first:<id>" and "second:<id>".
UnionResult union_overlay(const FeatureSet& first, const FeatureSet& second,
                          double tolerance = kDefaultTolerance);

struct Intersection {
  Point at;
  /// (road id, stream id) pairs crossing here, sorted.
  std::vector<std::pair<std::string, std::string>> crossings;
  friend bool operator==(const Intersection&, const Intersection&) = default;
};

/// Collinear road/stream overlap; not a point intersection.
struct Overlap {
  std::string road;
  std::string stream;
  Point from;
  Point to;
  friend bool operator==(const Overlap&, const Overlap&) = default;
};

struct IntersectionSet {
  std::vector<Intersection> points;  // sorted by (x, y)
  std::vector<Overlap> overlaps;
};

/// All road/stream segment crossings; points closer than the scene tolerance
/// are merged into their centroid.
IntersectionSet compute_intersections(const OverlayScene& scene);

/// Bridges must be in bijection with intersections. Greedy nearest matching
/// within tolerance; leftovers become missing, spurious or cardinality records.
std::vector<DifferenceRecord> check_bridge_bijection(const OverlayScene& scene);

/// Compares two versions of the same theme. Line features of each kind are
/// matched by discrete Frechet distance on resampled polylines.
std::vector<DifferenceRecord> classify_differences(const FeatureSet& version_a,
                                                   const FeatureSet& version_b, double tolerance);

enum class Layer { roads, streams, bridges };

std::string_view to_string(Layer layer);

/// Layers from most to least trusted.
using TrustOrder = std::array<Layer, 3>;

/// Parses "roads,streams,bridges"; throws ValidationError unless it is a
/// permutation of the three layers.
TrustOrder parse_trust(std::string_view text);

struct FusionAction {
  enum class Kind { synthesized_bridge, dropped_bridge };
  Kind kind = Kind::synthesized_bridge;
  std::string bridge_id;
  Point location;
  friend bool operator==(const FusionAction&, const FusionAction&) = default;
};

std::string_view to_string(FusionAction::Kind kind);

struct FusionResult {
  OverlayScene fused;
  /// Bridge-rule violations in the input.
  std::vector<DifferenceRecord> violations;
  std::vector<FusionAction> log;
  /// Violations that no single-source retraction could repair.
  std::vector<DifferenceRecord> unresolved;
};

/// Closes the scene under the bridge rule by editing the least trusted layer.
/// Only the bridge layer is editable: when it is the least trusted, missing
/// bridges are synthesized at the intersection and unmatched bridges dropped;
/// otherwise every violation is returned as unresolved.
FusionResult fuse(const OverlayScene& scene, const TrustOrder& trust);

}  // namespace revigis::fusion
