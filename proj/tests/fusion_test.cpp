#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "generators.hpp"
#include "revigis/errors.hpp"
#include "revigis/fusion.hpp"
#include "scenes.hpp"

using namespace revigis::fusion;
using scenes::base_road;
using scenes::road;
using scenes::stream;

namespace {

using Params = std::set<QualityParameter>;
const auto kGeo = QualityParameter::geometric_accuracy;
const auto kTheme = QualityParameter::thematic_accuracy;
const auto kLogic = QualityParameter::logical_consistency;
const auto kComplete = QualityParameter::completeness;

OverlayScene overlay(std::vector<LineFeature> roads, std::vector<LineFeature> streams,
                     std::vector<BridgePoint> bridges = {}, double tolerance = 1.0) {
  return {std::move(roads), std::move(streams), std::move(bridges), tolerance};
}

std::map<DifferenceCategory, int> categories(const std::vector<DifferenceRecord>& records) {
  std::map<DifferenceCategory, int> out;
  for (const auto& r : records) ++out[r.category];
  return out;
}

const TrustOrder kBridgesLast{Layer::roads, Layer::streams, Layer::bridges};

}  // namespace

TEST(Validate, RejectsBadFeatures) {
  EXPECT_THROW(validate(road("r", {{0, 0}})), revigis::ValidationError);
  EXPECT_THROW(validate(road("r", {{0, 0}, {0, 0}})), revigis::ValidationError);
  EXPECT_THROW(validate(road("", {{0, 0}, {1, 0}})), revigis::ValidationError);
  EXPECT_THROW(validate(overlay({scenes::straight_stream("s", 0)}, {})), revigis::ValidationError);
  EXPECT_THROW(validate(overlay({base_road(), base_road()}, {})), revigis::ValidationError);
  EXPECT_THROW(validate(overlay({}, {}, {}, -1.0)), revigis::ValidationError);
}

TEST(UnionOverlay, DisjointUnion) {
  FeatureSet first{{road("r1", {{0, 0}, {1, 0}}), road("r2", {{0, 1}, {1, 1}}), road("r3", {{0, 2}, {1, 2}})}, {}};
  FeatureSet second{{scenes::straight_stream("s1", 0.5), scenes::straight_stream("s2", 0.7)}, {}};
  auto u = union_overlay(first, second);
  EXPECT_EQ(u.scene.roads.size() + u.scene.streams.size(), 5u);
  EXPECT_TRUE(u.renamed.empty());
}

TEST(UnionOverlay, IdenticalFeatureAppearsOnce) {
  FeatureSet a{{base_road()}, {{"b1", {50, 0}, false}}};
  auto u = union_overlay(a, a);
  EXPECT_EQ(u.scene.roads.size(), 1u);
  EXPECT_EQ(u.scene.bridges.size(), 1u);
  auto empty = union_overlay({}, a);
  EXPECT_EQ(empty.scene.roads, a.features);
  EXPECT_EQ(empty.scene.bridges, a.bridges);
}

TEST(UnionOverlay, ClashingIdsAreRenamed) {
  FeatureSet a{{road("x", {{0, 0}, {1, 0}})}, {}};
  FeatureSet b{{road("x", {{0, 5}, {1, 5}})}, {}};
  auto u = union_overlay(a, b);
  ASSERT_EQ(u.scene.roads.size(), 2u);
  std::vector<std::string> ids{u.scene.roads[0].id, u.scene.roads[1].id};
  std::sort(ids.begin(), ids.end());
  EXPECT_EQ(ids, (std::vector<std::string>{"first:x", "second:x"}));
  EXPECT_EQ(u.renamed.size(), 2u);
}

TEST(UnionOverlay, OutputContainsBothInputs) {
  gen::Rng rng(41);
  for (int round = 0; round < 50; ++round) {
    FeatureSet a, b;
    for (int i = 0, n = gen::uniform(rng, 0, 4); i < n; ++i)
      a.features.push_back(road("a" + std::to_string(i), {{0, double(i)}, {5, double(i) + 1}}));
    for (int i = 0, n = gen::uniform(rng, 0, 4); i < n; ++i)
      b.features.push_back(scenes::straight_stream("b" + std::to_string(i), gen::uniform(rng, 0, 9)));
    if (gen::coin(rng, 0.5) && !a.features.empty()) b.features.push_back(a.features.front());
    auto u = union_overlay(a, b);
    auto contains = [&](const LineFeature& f) {
      const auto& pool = f.kind == FeatureKind::road ? u.scene.roads : u.scene.streams;
      return std::find(pool.begin(), pool.end(), f) != pool.end();
    };
    for (const auto& f : a.features) EXPECT_TRUE(contains(f));
    for (const auto& f : b.features) EXPECT_TRUE(contains(f));
  }
}

TEST(Intersections, PerpendicularAndParallel) {
  auto s = overlay({road("r", {{0, 0}, {2, 0}})}, {stream("s", {{1, -1}, {1, 1}})});
  auto hits = compute_intersections(s);
  ASSERT_EQ(hits.points.size(), 1u);
  EXPECT_EQ(hits.points[0].at, (Point{1, 0}));
  EXPECT_EQ(hits.points[0].crossings, (std::vector<std::pair<std::string, std::string>>{{"r", "s"}}));
  EXPECT_TRUE(compute_intersections(overlay({road("r", {{0, 0}, {2, 0}})}, {stream("s", {{0, 1}, {2, 1}})})).points.empty());
}

TEST(Intersections, XShapedPairCrossesTwice) {
  auto s = overlay({base_road()}, {scenes::v_stream()});
  auto hits = compute_intersections(s);
  ASSERT_EQ(hits.points.size(), 2u);
  EXPECT_NEAR(hits.points[0].at.x, 48 - 3.0 * 8 / 13, 1e-9);
  EXPECT_NEAR(hits.points[1].at.x, 52 + 3.0 * 8 / 13, 1e-9);
}

TEST(Intersections, NearbyCrossingsCollapseToCentroid) {
  auto s = overlay({base_road()}, {scenes::straight_stream("s1", 50.0), scenes::straight_stream("s2", 50.4)});
  auto hits = compute_intersections(s);
  ASSERT_EQ(hits.points.size(), 1u);
  EXPECT_NEAR(hits.points[0].at.x, 50.2, 1e-12);
  EXPECT_EQ(hits.points[0].crossings.size(), 2u);
}

TEST(Intersections, CollinearOverlapIsNotAPoint) {
  auto s = overlay({road("r", {{0, 0}, {10, 0}})}, {stream("s", {{5, 0}, {15, 0}})});
  auto hits = compute_intersections(s);
  EXPECT_TRUE(hits.points.empty());
  ASSERT_EQ(hits.overlaps.size(), 1u);
  EXPECT_EQ(hits.overlaps[0].from, (Point{5, 0}));
  EXPECT_EQ(hits.overlaps[0].to, (Point{10, 0}));
}

TEST(Intersections, InvariantUnderTranslation) {
  gen::Rng rng(42);
  for (int round = 0; round < 50; ++round) {
    auto g = gen::crossing_grid(rng, 3, 3);
    g.scene.streams.push_back(stream("diag", {{0, 0}, {70, 75}}));
    const double dx = gen::uniform(rng, -1000, 1000) / 8.0, dy = gen::uniform(rng, -1000, 1000) / 8.0;
    auto moved = g.scene;
    for (auto* layer : {&moved.roads, &moved.streams})
      for (auto& f : *layer) f = scenes::translate(f, dx, dy);
    auto a = compute_intersections(g.scene).points, b = compute_intersections(moved).points;
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_NEAR(a[i].at.x + dx, b[i].at.x, 1e-9);
      EXPECT_NEAR(a[i].at.y + dy, b[i].at.y, 1e-9);
      EXPECT_EQ(a[i].crossings, b[i].crossings);
    }
  }
}

TEST(BridgeBijection, ExactMatchIsClean) {
  auto s = overlay({road("r", {{0, 0}, {2, 0}})}, {stream("s", {{1, -1}, {1, 1}})}, {{"b", {1.3, 0}, false}});
  EXPECT_TRUE(check_bridge_bijection(s).empty());
}

TEST(BridgeBijection, TwoCrossingsOneBridge) {
  auto s = overlay({base_road()}, {scenes::straight_stream("s1", 49.4), scenes::straight_stream("s2", 50.6)},
                   {{"b", {50, 0}, false}});
  auto records = check_bridge_bijection(s);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].category, DifferenceCategory::cardinality);
  EXPECT_EQ(records[0].counts, (std::pair<std::size_t, std::size_t>{2, 1}));
  EXPECT_EQ(records[0].second_ids, (std::vector<std::string>{"b"}));
  EXPECT_EQ(records[0].implicated, (Params{kLogic, kComplete}));
}

TEST(BridgeBijection, CrossingWithoutBridgeIsMissing) {
  auto records = check_bridge_bijection(overlay({base_road()}, {scenes::straight_stream("s1", 30)}));
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].category, DifferenceCategory::missing);
  EXPECT_EQ(records[0].first_ids, (std::vector<std::string>{"r1", "s1"}));
  EXPECT_EQ(records[0].implicated, (Params{kLogic, kComplete}));
}

TEST(BridgeBijection, BridgeWithoutCrossingIsSpurious) {
  auto records = check_bridge_bijection(overlay({base_road()}, {}, {{"b9", {5, 5}, false}}));
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].category, DifferenceCategory::spurious);
  EXPECT_EQ(records[0].implicated, (Params{kTheme}));
  EXPECT_EQ(records[0].second_ids, (std::vector<std::string>{"b9"}));
}

TEST(BridgeBijection, TwoBridgesOnOneCrossing) {
  auto s = overlay({base_road()}, {scenes::straight_stream("s1", 30)}, {{"a", {30, 0}, false}, {"b", {30.5, 0}, false}});
  auto records = check_bridge_bijection(s);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].category, DifferenceCategory::cardinality);
  EXPECT_EQ(records[0].counts, (std::pair<std::size_t, std::size_t>{1, 2}));
  EXPECT_EQ(records[0].second_ids, (std::vector<std::string>{"a", "b"}));
}

TEST(Classify, IdenticalVersionsAgree) {
  FeatureSet a{{base_road(), scenes::v_stream()}, {}};
  EXPECT_TRUE(classify_differences(a, a, 10.0).empty());
}

TEST(Classify, TranslationIsDisplacement) {
  FeatureSet a{{base_road(), scenes::straight_stream("s1", 30)}, {}};
  FeatureSet b{{base_road(), scenes::translate(scenes::straight_stream("s1", 30), 3, 0)}, {}};
  auto records = classify_differences(a, b, 10.0);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].category, DifferenceCategory::displacement);
  EXPECT_NEAR(*records[0].magnitude, 3.0, 0.01);
  EXPECT_EQ(records[0].implicated, (Params{kGeo}));
}

TEST(Classify, MergedCrossingsAreComplex) {
  FeatureSet a{{base_road(), scenes::v_stream()}, {}};
  FeatureSet b{{base_road(), scenes::touching_stream()}, {}};
  auto records = classify_differences(a, b, 10.0);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].category, DifferenceCategory::complex_merge);
  EXPECT_EQ(records[0].implicated, (Params{kTheme, kLogic, kGeo}));
  EXPECT_EQ(records[0].counts, (std::pair<std::size_t, std::size_t>{2, 1}));
}

TEST(Classify, FeatureCountChangeIsCardinality) {
  FeatureSet a{{base_road(), scenes::straight_stream("s1", 30), scenes::straight_stream("s2", 70)}, {}};
  FeatureSet b{{base_road(), scenes::straight_stream("s1", 30)}, {}};
  auto records = classify_differences(a, b, 10.0);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].category, DifferenceCategory::cardinality);
  EXPECT_EQ(records[0].counts, (std::pair<std::size_t, std::size_t>{2, 1}));
  EXPECT_EQ(records[0].first_ids, (std::vector<std::string>{"s2"}));
}

TEST(Classify, FarApartFeaturesAreMissingAndSpurious) {
  FeatureSet a{{scenes::straight_stream("s1", 30)}, {}};
  FeatureSet b{{scenes::straight_stream("s9", 90)}, {}};
  auto records = classify_differences(a, b, 10.0);
  EXPECT_EQ(categories(records),
            (std::map<DifferenceCategory, int>{{DifferenceCategory::missing, 1}, {DifferenceCategory::spurious, 1}}));
}

TEST(Classify, SwappingVersionsMirrorsRecords) {
  gen::Rng rng(43);
  for (int round = 0; round < 40; ++round) {
    FeatureSet a{{base_road()}, {}}, b{{base_road()}, {}};
    for (int i = 0, n = gen::uniform(rng, 0, 3); i < n; ++i)
      a.features.push_back(scenes::straight_stream("a" + std::to_string(i), 15.0 + 25 * i));
    for (int i = 0, n = gen::uniform(rng, 0, 3); i < n; ++i)
      b.features.push_back(scenes::straight_stream("b" + std::to_string(i), 15.0 + 25 * i + gen::uniform(rng, 0, 8)));
    auto ab = classify_differences(a, b, 5.0), ba = classify_differences(b, a, 5.0);
    auto cab = categories(ab), cba = categories(ba);
    std::swap(cba[DifferenceCategory::missing], cba[DifferenceCategory::spurious]);
    std::erase_if(cab, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(cba, [](const auto& kv) { return kv.second == 0; });
    EXPECT_EQ(cab, cba) << round;
    std::vector<double> ma, mb;
    for (const auto& r : ab)
      if (r.magnitude) ma.push_back(*r.magnitude);
    for (const auto& r : ba)
      if (r.magnitude) mb.push_back(*r.magnitude);
    std::sort(ma.begin(), ma.end());
    std::sort(mb.begin(), mb.end());
    ASSERT_EQ(ma.size(), mb.size());
    for (std::size_t i = 0; i < ma.size(); ++i) EXPECT_NEAR(ma[i], mb[i], 1e-9);
  }
}

TEST(ParseTrust, Permutations) {
  EXPECT_EQ(parse_trust("streams,bridges,roads"), (TrustOrder{Layer::streams, Layer::bridges, Layer::roads}));
  EXPECT_THROW(parse_trust("roads,streams"), revigis::ValidationError);
  EXPECT_THROW(parse_trust("roads,roads,bridges"), revigis::ValidationError);
  EXPECT_THROW(parse_trust("roads,streams,bridges,roads"), revigis::ValidationError);
  EXPECT_THROW(parse_trust("roads,streams,ferries"), revigis::ValidationError);
}

TEST(Fuse, ConsistentInputIsUnchanged) {
  auto s = overlay({base_road()}, {scenes::straight_stream("s1", 30)}, {{"b", {30, 0}, false}});
  auto r = fuse(s, kBridgesLast);
  EXPECT_EQ(r.fused, s);
  EXPECT_TRUE(r.log.empty());
  EXPECT_TRUE(r.violations.empty());
  EXPECT_TRUE(r.unresolved.empty());
}

TEST(Fuse, SynthesizesMissingBridge) {
  auto r = fuse(overlay({base_road()}, {scenes::straight_stream("s1", 30)}), kBridgesLast);
  ASSERT_EQ(r.log.size(), 1u);
  EXPECT_EQ(r.log[0].kind, FusionAction::Kind::synthesized_bridge);
  ASSERT_EQ(r.fused.bridges.size(), 1u);
  EXPECT_TRUE(r.fused.bridges[0].inferred);
  EXPECT_EQ(r.fused.bridges[0].location, (Point{30, 0}));
  EXPECT_TRUE(r.unresolved.empty());
  EXPECT_TRUE(check_bridge_bijection(r.fused).empty());
}

TEST(Fuse, DropsSpuriousBridge) {
  auto r = fuse(overlay({base_road()}, {}, {{"b", {5, 5}, false}}), kBridgesLast);
  ASSERT_EQ(r.log.size(), 1u);
  EXPECT_EQ(r.log[0].kind, FusionAction::Kind::dropped_bridge);
  EXPECT_EQ(r.log[0].bridge_id, "b");
  EXPECT_TRUE(r.fused.bridges.empty());
  EXPECT_TRUE(r.unresolved.empty());
}

TEST(Fuse, ClosesRandomRepairableScenes) {
  gen::Rng rng(44);
  for (int round = 0; round < 100; ++round) {
    auto scene = gen::repairable_bridge_scene(rng);
    auto r = fuse(scene, kBridgesLast);
    EXPECT_TRUE(check_bridge_bijection(r.fused).empty()) << round;
    EXPECT_TRUE(r.unresolved.empty()) << round;
    EXPECT_EQ(r.violations.empty(), r.log.empty()) << round;
  }
}

TEST(Fuse, TrustedBridgesLeaveViolationsUnresolved) {
  gen::Rng rng(45);
  const TrustOrder bridges_first{Layer::bridges, Layer::roads, Layer::streams};
  for (int round = 0; round < 100; ++round) {
    auto scene = gen::repairable_bridge_scene(rng);
    auto r = fuse(scene, bridges_first);
    const bool residual = !check_bridge_bijection(r.fused).empty();
    EXPECT_EQ(residual, !r.unresolved.empty()) << round;
    EXPECT_FALSE(residual && r.log.empty() && r.unresolved.empty());
    EXPECT_EQ(r.fused, scene);
  }
}
