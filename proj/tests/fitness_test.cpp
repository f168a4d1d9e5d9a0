#include <gtest/gtest.h>

#include <algorithm>

#include "generators.hpp"
#include "revigis/errors.hpp"
#include "revigis/fitness.hpp"

using namespace revigis;
using namespace revigis::fitness;

namespace {

const GradeLattice kChain = GradeLattice::default_chain();
Grade g(const char* name) { return kChain.grade(name); }

ProductOntology bridges_product() {
  return {"bridges-survey", kChain,
          {{"bridge", "logical_consistency", g("very_reliable")}, {"bridge", "geometric_accuracy", g("tentative")}},
          ""};
}

ProblemOntology navigation() {
  return {"navigation", kChain,
          {{"bridge", "logical_consistency", g("reliable"), g("very_reliable")},
           {"bridge", "geometric_accuracy", g("reliable"), g("none")}}};
}

ProblemOntology damage() {
  return {"damage-assessment", kChain,
          {{"bridge", "geometric_accuracy", g("very_reliable"), g("very_reliable")},
           {"bridge", "logical_consistency", g("tentative"), g("reliable")}}};
}

const std::vector<std::string> kSubjects{"bridge", "road", "stream"};
const std::vector<std::string> kParams{"geometric_accuracy", "thematic_accuracy", "logical_consistency",
                                       "completeness", "semantic_accuracy", "class_quality"};

ProductOntology random_product(gen::Rng& rng, const std::string& name) {
  ProductOntology p{name, kChain, {}, ""};
  for (const auto& s : kSubjects)
    for (const auto& q : kParams)
      if (gen::coin(rng, 0.6)) p.statements.push_back({s, q, kChain.at(static_cast<std::size_t>(gen::uniform(rng, 0, 3)))});
  return p;
}

ProblemOntology random_problem(gen::Rng& rng) {
  ProblemOntology p{"random", kChain, {}};
  for (const auto& s : kSubjects)
    for (const auto& q : kParams)
      if (gen::coin(rng, 0.4))
        p.requirements.push_back({s, q, kChain.at(static_cast<std::size_t>(gen::uniform(rng, 0, 3))),
                                  kChain.at(static_cast<std::size_t>(gen::uniform(rng, 0, 3)))});
  return p;
}

}  // namespace

TEST(Conflate, NavigationIsFit) {
  auto r = conflate(bridges_product(), navigation());
  EXPECT_TRUE(r.fit);
  ASSERT_EQ(r.verdicts.size(), 1u);  // geometric accuracy is irrelevant here
  EXPECT_EQ(r.verdicts[0].verdict, Verdict::fit);
  EXPECT_EQ(r.verdicts[0].offered, g("very_reliable"));
}

TEST(Conflate, DamageAssessmentIsUnfit) {
  auto r = conflate(bridges_product(), damage());
  EXPECT_FALSE(r.fit);
  EXPECT_EQ(r.count(Verdict::unfit), 1u);
  EXPECT_EQ(r.count(Verdict::fit), 1u);
  EXPECT_EQ(r.weakest, g("tentative"));
}

TEST(Conflate, EmptyProblemIsVacuouslyFit) {
  auto r = conflate(bridges_product(), {"nothing", kChain, {}});
  EXPECT_TRUE(r.fit);
  EXPECT_TRUE(r.verdicts.empty());
  EXPECT_FALSE(r.weakest.has_value());
}

TEST(Conflate, UnknownDependsOnPolicy) {
  ProblemOntology p{"p", kChain, {{"road", "completeness", g("tentative"), g("reliable")}}};
  auto strict = conflate(bridges_product(), p, UnknownPolicy::strict);
  EXPECT_EQ(strict.verdicts[0].verdict, Verdict::unknown);
  EXPECT_FALSE(strict.fit);
  EXPECT_TRUE(conflate(bridges_product(), p, UnknownPolicy::lenient).fit);
}

TEST(Conflate, IncomparableGradesStayDistinct) {
  auto diamond = GradeLattice::from_order({"0", "x", "y", "1"}, {{"0", "x"}, {"0", "y"}, {"x", "1"}, {"y", "1"}});
  ProductOntology prod{"p", diamond, {{"bridge", "completeness", diamond.grade("x")}}, ""};
  ProblemOntology prob{"q", diamond, {{"bridge", "completeness", diamond.grade("y"), diamond.grade("1")}}};
  auto r = conflate(prod, prob, UnknownPolicy::lenient);
  EXPECT_EQ(r.verdicts[0].verdict, Verdict::incomparable);
  EXPECT_FALSE(r.fit);
}

TEST(Conflate, LatticeMismatchIsAnError) {
  ProblemOntology p{"p", GradeLattice::chain({"low", "medium", "high"}), {}};
  EXPECT_THROW(conflate(bridges_product(), p), LatticeMismatch);
}

TEST(Validate, RejectsBadStatements) {
  auto p = bridges_product();
  p.statements.push_back(p.statements.front());
  EXPECT_THROW(validate(p), ValidationError);
  p = bridges_product();
  p.statements.push_back({"bridge", "prettiness", g("reliable")});
  EXPECT_THROW(validate(p), ValidationError);
  p = bridges_product();
  p.statements.push_back({"bridge", "completeness", GradeLattice::chain({"a", "b"}).grade("b")});
  EXPECT_THROW(validate(p), ValidationError);
  EXPECT_NO_THROW(validate_subjects(bridges_product(), {"bridge"}));
  EXPECT_THROW(validate_subjects(bridges_product(), {"road"}), ValidationError);
}

TEST(Conflate, RaisingAGradeNeverBreaksAFit) {
  gen::Rng rng(61);
  for (int round = 0; round < 200; ++round) {
    auto prod = random_product(rng, "p");
    auto prob = random_problem(rng);
    if (prod.statements.empty()) continue;
    auto before = conflate(prod, prob, UnknownPolicy::lenient);
    auto raised = prod;
    auto& st = raised.statements[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(raised.statements.size()) - 1))];
    st.grade = kChain.at(static_cast<std::size_t>(gen::uniform(rng, static_cast<int>(st.grade.rank()), 3)));
    auto after = conflate(raised, prob, UnknownPolicy::lenient);
    ASSERT_EQ(before.verdicts.size(), after.verdicts.size());
    for (std::size_t i = 0; i < before.verdicts.size(); ++i)
      if (before.verdicts[i].verdict == Verdict::fit) { EXPECT_EQ(after.verdicts[i].verdict, Verdict::fit); }
    if (before.fit) { EXPECT_TRUE(after.fit); }
  }
}

TEST(Conflate, IrrelevantRequirementsNeverMatter) {
  gen::Rng rng(62);
  for (int round = 0; round < 200; ++round) {
    auto prod = random_product(rng, "p");
    auto prob = random_problem(rng);
    auto pruned = prob;
    std::erase_if(pruned.requirements, [](const Requirement& r) { return kChain.is_bottom(r.relevance); });
    for (auto policy : {UnknownPolicy::strict, UnknownPolicy::lenient}) {
      auto a = conflate(prod, prob, policy), b = conflate(prod, pruned, policy);
      EXPECT_EQ(a.verdicts, b.verdicts);
      EXPECT_EQ(a.fit, b.fit);
      EXPECT_EQ(a.weakest, b.weakest);
    }
  }
}

TEST(Conflate, StatementOrderDoesNotMatter) {
  gen::Rng rng(63);
  for (int round = 0; round < 100; ++round) {
    auto prod = random_product(rng, "p");
    auto prob = random_problem(rng);
    auto shuffled = prod;
    std::shuffle(shuffled.statements.begin(), shuffled.statements.end(), rng);
    EXPECT_EQ(conflate(prod, prob), conflate(shuffled, prob));
  }
}

TEST(Rank, FitProductFirst) {
  auto weak = bridges_product();
  weak.product = "a-weak";
  weak.statements[0].grade = g("tentative");
  auto ranked = rank_products({weak, bridges_product()}, navigation());
  ASSERT_EQ(ranked.size(), 2u);
  EXPECT_EQ(ranked[0].input_index, 1u);
  EXPECT_TRUE(ranked[0].report.fit);
}

TEST(Rank, StableForIdenticalProducts) {
  auto ranked = rank_products({bridges_product(), bridges_product(), bridges_product()}, damage());
  for (std::size_t i = 0; i < ranked.size(); ++i) EXPECT_EQ(ranked[i].input_index, i);
}

TEST(Rank, OrdersByUnfitCount) {
  ProblemOntology nav{"nav", kChain,
                      {{"bridge", "logical_consistency", g("reliable"), g("very_reliable")},
                       {"road", "logical_consistency", g("reliable"), g("reliable")}}};
  auto make = [&](const char* name, const char* bridge, const char* road) {
    return ProductOntology{name, kChain,
                           {{"bridge", "logical_consistency", g(bridge)}, {"road", "logical_consistency", g(road)}}, ""};
  };
  auto ranked = rank_products({make("two", "none", "none"), make("zero", "reliable", "reliable"),
                               make("one", "reliable", "none")},
                              nav);
  EXPECT_EQ(ranked[0].report.product, "zero");
  EXPECT_EQ(ranked[1].report.product, "one");
  EXPECT_EQ(ranked[2].report.product, "two");
}
