#include "revigis/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

#include "revigis/errors.hpp"

namespace revigis::fusion {

using geometry::distance;

std::string_view to_string(FeatureKind kind) {
  return kind == FeatureKind::road ? "road" : "stream";
}

std::optional<FeatureKind> parse_feature_kind(std::string_view text) {
  if (text == "road") return FeatureKind::road;
  if (text == "stream") return FeatureKind::stream;
  return std::nullopt;
}

std::string_view to_string(QualityParameter p) {
  switch (p) {
    case QualityParameter::geometric_accuracy: return "geometric_accuracy";
    case QualityParameter::thematic_accuracy: return "thematic_accuracy";
    case QualityParameter::logical_consistency: return "logical_consistency";
    case QualityParameter::completeness: return "completeness";
    case QualityParameter::semantic_accuracy: return "semantic_accuracy";
  }
  return "?";
}

std::optional<QualityParameter> parse_quality_parameter(std::string_view text) {
  for (auto p : kQualityParameters)
    if (to_string(p) == text) return p;
  return std::nullopt;
}

std::string_view to_string(DifferenceCategory c) {
  switch (c) {
    case DifferenceCategory::displacement: return "displacement";
    case DifferenceCategory::complex_merge: return "complex_merge";
    case DifferenceCategory::cardinality: return "cardinality";
    case DifferenceCategory::missing: return "missing";
    case DifferenceCategory::spurious: return "spurious";
  }
  return "?";
}

std::string_view to_string(Layer layer) {
  switch (layer) {
    case Layer::roads: return "roads";
    case Layer::streams: return "streams";
    case Layer::bridges: return "bridges";
  }
  return "?";
}

std::string_view to_string(FusionAction::Kind kind) {
  return kind == FusionAction::Kind::synthesized_bridge ? "synthesized_bridge" : "dropped_bridge";
}

void validate(const LineFeature& feature) {
  if (feature.id.empty()) throw ValidationError("line feature with empty id");
  if (feature.polyline.size() < 2)
    throw ValidationError("feature '" + feature.id + "' needs at least 2 vertices");
  for (std::size_t i = 0; i < feature.polyline.size(); ++i) {
    const auto& p = feature.polyline[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw ValidationError("feature '" + feature.id + "' has a non-finite coordinate");
    if (i > 0 && p == feature.polyline[i - 1])
      throw ValidationError("feature '" + feature.id + "' repeats vertex " + std::to_string(i));
  }
}

namespace {

void validate_bridges(const std::vector<BridgePoint>& bridges) {
  std::set<std::string> ids;
  for (const auto& b : bridges) {
    if (b.id.empty()) throw ValidationError("bridge with empty id");
    if (!std::isfinite(b.location.x) || !std::isfinite(b.location.y))
      throw ValidationError("bridge '" + b.id + "' has a non-finite coordinate");
    if (!ids.insert(b.id).second) throw ValidationError("duplicate bridge id '" + b.id + "'");
  }
}

void validate_features(const std::vector<LineFeature>& features) {
  std::set<std::string> ids;
  for (const auto& f : features) {
    validate(f);
    if (!ids.insert(f.id).second) throw ValidationError("duplicate feature id '" + f.id + "'");
  }
}

}  // namespace

void validate(const OverlayScene& scene) {
  if (!(scene.tolerance >= 0.0) || !std::isfinite(scene.tolerance))
    throw ValidationError("tolerance must be a finite non-negative distance");
  for (const auto& r : scene.roads)
    if (r.kind != FeatureKind::road) throw ValidationError("feature '" + r.id + "' filed as road");
  for (const auto& s : scene.streams)
    if (s.kind != FeatureKind::stream) throw ValidationError("feature '" + s.id + "' filed as stream");
  std::vector<LineFeature> all = scene.roads;
  all.insert(all.end(), scene.streams.begin(), scene.streams.end());
  validate_features(all);
  validate_bridges(scene.bridges);
}

namespace {

template <typename T>
std::vector<T> merge_by_id(const std::vector<T>& first, const std::vector<T>& second,
                           std::vector<std::pair<std::string, std::string>>& renamed) {
  std::map<std::string, const T*> in_second;
  for (const auto& e : second) in_second[e.id] = &e;
  std::map<std::string, const T*> in_first;
  for (const auto& e : first) in_first[e.id] = &e;

  std::vector<T> out;
  for (const auto& e : first) {
    auto it = in_second.find(e.id);
    if (it != in_second.end() && !(*it->second == e)) {
      T copy = e;
      copy.id = "first:" + e.id;
      renamed.emplace_back(e.id, copy.id);
      out.push_back(std::move(copy));
    } else {
      out.push_back(e);
    }
  }
  for (const auto& e : second) {
    auto it = in_first.find(e.id);
    if (it == in_first.end()) {
      out.push_back(e);
    } else if (!(*it->second == e)) {
      T copy = e;
      copy.id = "second:" + e.id;
      renamed.emplace_back(e.id, copy.id);
      out.push_back(std::move(copy));
    }
  }
  return out;
}

}  // namespace

UnionResult union_overlay(const FeatureSet& first, const FeatureSet& second, double tolerance) {
  for (const FeatureSet* set : {&first, &second}) {
    validate_features(set->features);
    validate_bridges(set->bridges);
  }
  UnionResult result;
  result.scene.tolerance = tolerance;
  for (auto& f : merge_by_id(first.features, second.features, result.renamed))
    (f.kind == FeatureKind::road ? result.scene.roads : result.scene.streams).push_back(std::move(f));
  result.scene.bridges = merge_by_id(first.bridges, second.bridges, result.renamed);
  validate(result.scene);
  return result;
}

namespace {

struct Cluster {
  double sx = 0.0;
  double sy = 0.0;
  std::size_t n = 0;
  std::set<std::pair<std::string, std::string>> crossings;
  Point centroid() const { return {sx / static_cast<double>(n), sy / static_cast<double>(n)}; }
};

bool collapses(double d, double tolerance) { return d == 0.0 || d < tolerance; }

}  // namespace

IntersectionSet compute_intersections(const OverlayScene& scene) {
  validate(scene);
  IntersectionSet out;
  std::vector<Cluster> clusters;
  for (const auto& road : scene.roads)
    for (const auto& stream : scene.streams)
      for (std::size_t i = 1; i < road.polyline.size(); ++i)
        for (std::size_t j = 1; j < stream.polyline.size(); ++j) {
          auto hit = geometry::intersect_segments(road.polyline[i - 1], road.polyline[i],
                                                  stream.polyline[j - 1], stream.polyline[j]);
          if (hit.kind == geometry::SegmentHit::Kind::overlap) {
            out.overlaps.push_back({road.id, stream.id, hit.at, hit.until});
          } else if (hit.kind == geometry::SegmentHit::Kind::point) {
            Cluster c{hit.at.x, hit.at.y, 1, {{road.id, stream.id}}};
            clusters.push_back(std::move(c));
          }
        }

  // Agglomerative merge of the closest pair until all centroids are apart.
  for (;;) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        double d = distance(clusters[i].centroid(), clusters[j].centroid());
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    if (clusters.size() < 2 || !collapses(best, scene.tolerance)) break;
    clusters[bi].sx += clusters[bj].sx;
    clusters[bi].sy += clusters[bj].sy;
    clusters[bi].n += clusters[bj].n;
    clusters[bi].crossings.insert(clusters[bj].crossings.begin(), clusters[bj].crossings.end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
  }

  for (const auto& c : clusters)
    out.points.push_back({c.centroid(), {c.crossings.begin(), c.crossings.end()}});
  std::sort(out.points.begin(), out.points.end(), [](const Intersection& a, const Intersection& b) {
    return std::tie(a.at.x, a.at.y, a.crossings) < std::tie(b.at.x, b.at.y, b.crossings);
  });
  return out;
}

namespace {

struct BridgeMatching {
  std::vector<std::optional<std::size_t>> bridge_to;        // bridge -> intersection
  std::vector<std::optional<std::size_t>> intersection_to;  // intersection -> bridge
};

BridgeMatching match_bridges(const std::vector<BridgePoint>& bridges,
                             const std::vector<Intersection>& points, double tolerance) {
  struct Candidate {
    double d;
    std::size_t bridge;
    std::size_t point;
  };
  std::vector<Candidate> candidates;
  for (std::size_t b = 0; b < bridges.size(); ++b)
    for (std::size_t p = 0; p < points.size(); ++p) {
      double d = distance(bridges[b].location, points[p].at);
      if (d <= tolerance) candidates.push_back({d, b, p});
    }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.d, a.bridge, a.point) < std::tie(b.d, b.bridge, b.point);
  });
  BridgeMatching m{std::vector<std::optional<std::size_t>>(bridges.size()),
                   std::vector<std::optional<std::size_t>>(points.size())};
  for (const auto& c : candidates) {
    if (m.bridge_to[c.bridge] || m.intersection_to[c.point]) continue;
    m.bridge_to[c.bridge] = c.point;
    m.intersection_to[c.point] = c.bridge;
  }
  return m;
}

std::vector<std::string> crossing_ids(const Intersection& p) {
  std::set<std::string> ids;
  for (const auto& [r, s] : p.crossings) {
    ids.insert(r);
    ids.insert(s);
  }
  return {ids.begin(), ids.end()};
}

std::vector<std::string> crossing_ids(const std::vector<const Intersection*>& points) {
  std::set<std::string> ids;
  for (const auto* p : points)
    for (auto& id : crossing_ids(*p)) ids.insert(id);
  return {ids.begin(), ids.end()};
}

struct BijectionAnalysis {
  std::vector<DifferenceRecord> records;
  std::vector<std::size_t> unmatched_points;   // every intersection lacking a bridge
  std::vector<std::size_t> unmatched_bridges;  // every bridge lacking an intersection
};

BijectionAnalysis analyse_bijection(const OverlayScene& scene, const std::vector<Intersection>& points) {
  const auto& bridges = scene.bridges;
  const double tol = scene.tolerance;
  const BridgeMatching m = match_bridges(bridges, points, tol);

  BijectionAnalysis out;
  // Leftovers near an already matched partner form many-to-one groups.
  std::map<std::size_t, std::vector<std::size_t>> extra_points_of_bridge;
  std::map<std::size_t, std::vector<std::size_t>> extra_bridges_of_point;
  std::vector<std::size_t> missing, spurious;

  for (std::size_t p = 0; p < points.size(); ++p) {
    if (m.intersection_to[p]) continue;
    out.unmatched_points.push_back(p);
    std::optional<std::size_t> host;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < bridges.size(); ++b) {
      double d = distance(bridges[b].location, points[p].at);
      if (m.bridge_to[b] && d <= tol && d < best) {
        best = d;
        host = b;
      }
    }
    if (host) extra_points_of_bridge[*host].push_back(p);
    else missing.push_back(p);
  }
  for (std::size_t b = 0; b < bridges.size(); ++b) {
    if (m.bridge_to[b]) continue;
    out.unmatched_bridges.push_back(b);
    std::optional<std::size_t> host;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < points.size(); ++p) {
      double d = distance(bridges[b].location, points[p].at);
      if (m.intersection_to[p] && d <= tol && d < best) {
        best = d;
        host = p;
      }
    }
    if (host) extra_bridges_of_point[*host].push_back(b);
    else spurious.push_back(b);
  }

  for (const auto& [b, extras] : extra_points_of_bridge) {
    std::vector<const Intersection*> group{&points[*m.bridge_to[b]]};
    for (std::size_t p : extras) group.push_back(&points[p]);
    DifferenceRecord r;
    r.category = DifferenceCategory::cardinality;
    r.first_ids = crossing_ids(group);
    r.second_ids = {bridges[b].id};
    r.implicated = {QualityParameter::logical_consistency, QualityParameter::completeness};
    r.counts = std::pair{group.size(), std::size_t{1}};
    r.location = bridges[b].location;
    out.records.push_back(std::move(r));
  }
  for (const auto& [p, extras] : extra_bridges_of_point) {
    DifferenceRecord r;
    r.category = DifferenceCategory::cardinality;
    r.first_ids = crossing_ids(points[p]);
    r.second_ids = {bridges[*m.intersection_to[p]].id};
    for (std::size_t b : extras) r.second_ids.push_back(bridges[b].id);
    std::sort(r.second_ids.begin(), r.second_ids.end());
    r.implicated = {QualityParameter::logical_consistency, QualityParameter::thematic_accuracy};
    r.counts = std::pair{std::size_t{1}, 1 + extras.size()};
    r.location = points[p].at;
    out.records.push_back(std::move(r));
  }
  for (std::size_t p : missing) {
    DifferenceRecord r;
    r.category = DifferenceCategory::missing;
    r.first_ids = crossing_ids(points[p]);
    r.implicated = {QualityParameter::logical_consistency, QualityParameter::completeness};
    r.location = points[p].at;
    out.records.push_back(std::move(r));
  }
  for (std::size_t b : spurious) {
    DifferenceRecord r;
    r.category = DifferenceCategory::spurious;
    r.second_ids = {bridges[b].id};
    r.implicated = {QualityParameter::thematic_accuracy};
    r.location = bridges[b].location;
    out.records.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<DifferenceRecord> check_bridge_bijection(const OverlayScene& scene) {
  const auto points = compute_intersections(scene).points;
  return analyse_bijection(scene, points).records;
}

TrustOrder parse_trust(std::string_view text) {
  TrustOrder order{};
  std::size_t n = 0;
  std::set<Layer> seen;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view token = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    Layer layer;
    if (token == "roads") layer = Layer::roads;
    else if (token == "streams") layer = Layer::streams;
    else if (token == "bridges") layer = Layer::bridges;
    else throw ValidationError("unknown layer '" + std::string(token) + "' in trust order");
    if (n == 3 || !seen.insert(layer).second)
      throw ValidationError("trust order must list roads, streams and bridges once each");
    order[n++] = layer;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (n != 3) throw ValidationError("trust order must list roads, streams and bridges once each");
  return order;
}

FusionResult fuse(const OverlayScene& scene, const TrustOrder& trust) {
  {
    std::set<Layer> layers(trust.begin(), trust.end());
    if (layers.size() != 3) throw ValidationError("trust order must be a permutation of the three layers");
  }
  FusionResult result;
  result.fused = scene;
  const auto points = compute_intersections(scene).points;
  const BijectionAnalysis analysis = analyse_bijection(scene, points);
  result.violations = analysis.records;
  if (analysis.records.empty()) return result;

  if (trust.back() != Layer::bridges) {
    result.unresolved = analysis.records;
    return result;
  }

  std::set<std::string> taken;
  for (const auto& b : scene.bridges) taken.insert(b.id);
  std::size_t counter = 0;
  auto fresh_id = [&] {
    std::string id;
    do id = "inferred-" + std::to_string(++counter);
    while (taken.contains(id));
    taken.insert(id);
    return id;
  };

  std::vector<bool> drop(scene.bridges.size(), false);
  for (std::size_t b : analysis.unmatched_bridges) {
    drop[b] = true;
    result.log.push_back({FusionAction::Kind::dropped_bridge, scene.bridges[b].id, scene.bridges[b].location});
  }
  result.fused.bridges.clear();
  for (std::size_t b = 0; b < scene.bridges.size(); ++b)
    if (!drop[b]) result.fused.bridges.push_back(scene.bridges[b]);
  for (std::size_t p : analysis.unmatched_points) {
    BridgePoint bridge{fresh_id(), points[p].at, true};
    result.log.push_back({FusionAction::Kind::synthesized_bridge, bridge.id, bridge.location});
    result.fused.bridges.push_back(std::move(bridge));
  }

  result.unresolved = check_bridge_bijection(result.fused);
  return result;
}

namespace {

constexpr double kSameGeometry = 1e-9;

double feature_distance(const LineFeature& a, const LineFeature& b, double tolerance) {
  const double spacing = tolerance > 0 ? tolerance / 4.0 : 0.25;
  const double longest = std::max(geometry::polyline_length(a.polyline), geometry::polyline_length(b.polyline));
  const auto steps = static_cast<std::size_t>(std::clamp(std::ceil(longest / spacing), 1.0, 512.0));
  const auto ra = geometry::resample(a.polyline, steps + 1);
  auto rb = geometry::resample(b.polyline, steps + 1);
  const double forward = geometry::discrete_frechet(ra, rb);
  std::reverse(rb.begin(), rb.end());
  return std::min(forward, geometry::discrete_frechet(ra, rb));
}

std::size_t crossing_count(const LineFeature& f, const std::vector<LineFeature>& others, double tolerance) {
  OverlayScene probe;
  probe.tolerance = tolerance;
  (f.kind == FeatureKind::road ? probe.roads : probe.streams).push_back(f);
  for (const auto& o : others)
    if (o.kind != f.kind) (o.kind == FeatureKind::road ? probe.roads : probe.streams).push_back(o);
  return compute_intersections(probe).points.size();
}

}  // namespace

std::vector<DifferenceRecord> classify_differences(const FeatureSet& version_a,
                                                   const FeatureSet& version_b, double tolerance) {
  if (!(tolerance >= 0.0) || !std::isfinite(tolerance))
    throw ValidationError("tolerance must be a finite non-negative distance");
  validate_features(version_a.features);
  validate_features(version_b.features);
  const double point_tolerance = std::min(tolerance, kDefaultTolerance);

  std::vector<DifferenceRecord> records;
  for (FeatureKind kind : {FeatureKind::road, FeatureKind::stream}) {
    std::vector<const LineFeature*> a, b;
    for (const auto& f : version_a.features)
      if (f.kind == kind) a.push_back(&f);
    for (const auto& f : version_b.features)
      if (f.kind == kind) b.push_back(&f);

    struct Candidate {
      double d;
      std::size_t ia;
      std::size_t ib;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) {
        double d = feature_distance(*a[i], *b[j], tolerance);
        if (d <= tolerance) candidates.push_back({d, i, j});
      }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
      return std::tie(x.d, x.ia, x.ib) < std::tie(y.d, y.ia, y.ib);
    });
    std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
    for (const auto& c : candidates) {
      if (used_a[c.ia] || used_b[c.ib]) continue;
      used_a[c.ia] = used_b[c.ib] = true;
      if (c.d <= kSameGeometry) continue;
      const std::size_t before = crossing_count(*a[c.ia], version_a.features, point_tolerance);
      const std::size_t after = crossing_count(*b[c.ib], version_b.features, point_tolerance);
      DifferenceRecord r;
      r.first_ids = {a[c.ia]->id};
      r.second_ids = {b[c.ib]->id};
      r.magnitude = c.d;
      if (before != after) {
        r.category = DifferenceCategory::complex_merge;
        r.implicated = {QualityParameter::thematic_accuracy, QualityParameter::logical_consistency,
                        QualityParameter::geometric_accuracy};
        r.counts = std::pair{before, after};
      } else {
        r.category = DifferenceCategory::displacement;
        r.implicated = {QualityParameter::geometric_accuracy};
      }
      records.push_back(std::move(r));
    }

    std::vector<std::string> only_a, only_b;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!used_a[i]) only_a.push_back(a[i]->id);
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!used_b[j]) only_b.push_back(b[j]->id);
    std::sort(only_a.begin(), only_a.end());
    std::sort(only_b.begin(), only_b.end());

    if (a.size() != b.size()) {
      DifferenceRecord r;
      r.category = DifferenceCategory::cardinality;
      r.first_ids = only_a;
      r.second_ids = only_b;
      r.implicated = {QualityParameter::completeness};
      r.counts = std::pair{a.size(), b.size()};
      records.push_back(std::move(r));
      continue;
    }
    for (const auto& id : only_a) {
      DifferenceRecord r;
      r.category = DifferenceCategory::missing;
      r.first_ids = {id};
      r.implicated = {QualityParameter::completeness};
      records.push_back(std::move(r));
    }
    for (const auto& id : only_b) {
      DifferenceRecord r;
      r.category = DifferenceCategory::spurious;
      r.second_ids = {id};
      r.implicated = {QualityParameter::thematic_accuracy};
      records.push_back(std::move(r));
    }
  }
  return records;
}

}  // namespace revigis::fusion
