#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace revigis::flood {

/// Water height in integer centimeters above datum.
using Height = std::int64_t;

/// Closed interval of heights; an absent end is unbounded. An empty interval is
/// never represented by lo > hi, construction rejects it.
struct HeightInterval {
  std::optional<Height> lo;
  std::optional<Height> hi;

  HeightInterval() = default;
  HeightInterval(std::optional<Height> lo_, std::optional<Height> hi_);

  bool bounded() const { return lo.has_value() && hi.has_value(); }
  bool contains(Height h) const;
  bool subset_of(const HeightInterval& other) const;
  /// hi - lo for bounded intervals.
  std::optional<Height> width() const;

  friend bool operator==(const HeightInterval&, const HeightInterval&) = default;
};

/// Intersection, or nullopt when empty.
std::optional<HeightInterval> intersect(const HeightInterval& a, const HeightInterval& b);

struct Parcel {
  std::string id;
  /// Observation from the parcel map; retractable by revision.
  std::optional<HeightInterval> observed;
  bool retracted = false;
  /// Working value narrowed by propagation.
  HeightInterval current;

  /// The observation if present and not retracted.
  std::optional<HeightInterval> active_observation() const {
    return retracted ? std::nullopt : observed;
  }

  friend bool operator==(const Parcel&, const Parcel&) = default;
};

/// Visible flow from upstream `from` to downstream `to`: level(from) >= level(to).
struct FlowEdge {
  std::string from;
  std::string to;
  friend bool operator==(const FlowEdge&, const FlowEdge&) = default;
};

struct FloodScene {
  std::vector<Parcel> parcels;
  std::vector<FlowEdge> flows;
  /// Undirected physical adjacency.
  std::vector<std::pair<std::string, std::string>> neighbors;
  HeightInterval global_bounds;

  const Parcel* find(std::string_view id) const;
  Parcel* find(std::string_view id);

  friend bool operator==(const FloodScene&, const FloodScene&) = default;
};

/// Throws ValidationError on duplicate ids, dangling references, self-loops or
/// unbounded global bounds.
void validate(const FloodScene& scene);

/// Observation ends left open are replaced by the matching global bound.
HeightInterval clamp_open_ends(const HeightInterval& observed, const HeightInterval& global_bounds);

/// Sets every parcel's working interval to its active observation intersected
/// with the global bounds, or to the global bounds when that is empty or absent.
FloodScene reset_working_intervals(FloodScene scene);

/// Propagation outcome naming the first parcel, in scene order, whose interval
/// is empty at the fixpoint.
struct Inconsistency {
  std::string parcel;
  friend bool operator==(const Inconsistency&, const Inconsistency&) = default;
};

using PropagationResult = std::variant<FloodScene, Inconsistency>;

class InconsistencyError : public std::runtime_error {
 public:
  explicit InconsistencyError(Inconsistency what);
  const Inconsistency& inconsistency() const { return what_; }

 private:
  Inconsistency what_;
};

/// Worklist fixpoint of the flow narrowing rules. For each edge u->v:
///   hi(v) <- min(hi(v), hi(u)),  lo(u) <- max(lo(u), lo(v)).
/// Working intervals are first intersected with active observations and the
/// global bounds.
PropagationResult propagate(const FloodScene& scene);

/// Same fixpoint with the worklist seeded (and re-filled) in `edge_order`, a
/// permutation of flow indices.
PropagationResult propagate(const FloodScene& scene, std::span<const std::size_t> edge_order);

/// A minimal set of active observations that cannot hold together: one parcel
/// whose observation misses the global bounds, or an upstream/downstream pair
/// joined by a flow path with hi(upstream) < lo(downstream).
struct Conflict {
  std::vector<std::string> observations;
  /// Flow path from the upstream to the downstream parcel.
  std::vector<std::string> path;
  friend bool operator==(const Conflict&, const Conflict&) = default;
};

struct ConsistencyReport {
  std::vector<Conflict> conflicts;
  bool consistent() const { return conflicts.empty(); }
};

ConsistencyReport check_consistency(const FloodScene& scene);

enum class RevisionStrategy { exact, greedy };

struct RevisionResult {
  std::vector<std::string> retracted;  // sorted
  FloodScene revised_scene;            // propagated
  bool minimal = false;
};

/// Removal-based revision: retract observations until the scene propagates.
/// `exact` returns a minimum-cardinality retraction set, lexicographically
/// smallest among ties; `greedy` repeatedly drops the observation involved in
/// the most remaining conflicts.
RevisionResult revise(const FloodScene& scene, RevisionStrategy strategy);

/// Fills unobserved parcels with the tightest entailed interval. Throws
/// InconsistencyError on an inconsistent scene.
FloodScene extrapolate(const FloodScene& scene);

/// Flow-blind mean of the neighbors' observed bounds, rounded to nearest.
/// Throws DomainError when the target has no observed neighbor.
HeightInterval baseline_interpolate(const FloodScene& scene, std::string_view target);

}  // namespace revigis::flood
