#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "oracles.hpp"
#include "revigis/errors.hpp"
#include "revigis/grades.hpp"

using revigis::GradeLattice;
using revigis::ValidationError;

namespace {

GradeLattice diamond() {  // M3
  return GradeLattice::from_order({"top", "x", "y", "z", "bot"},
                                  {{"bot", "x"}, {"bot", "y"}, {"bot", "z"}, {"x", "top"}, {"y", "top"}, {"z", "top"}});
}

GradeLattice pentagon() {  // N5
  return GradeLattice::from_order({"0", "a", "b", "c", "1"}, {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}});
}

GradeLattice powerset3() {
  std::vector<std::string> names;
  for (int m = 0; m < 8; ++m) names.push_back("s" + std::to_string(m));
  std::vector<GradeLattice::OrderPair> order;
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      if (a != b && (a & b) == a) order.emplace_back(names[a], names[b]);
  return GradeLattice::from_order(names, order);
}

GradeLattice divisors12() {
  const std::vector<int> d{1, 2, 3, 4, 6, 12};
  std::vector<std::string> names;
  for (int x : d) names.push_back(std::to_string(x));
  std::vector<GradeLattice::OrderPair> order;
  for (int a : d)
    for (int b : d)
      if (a != b && b % a == 0) order.emplace_back(std::to_string(a), std::to_string(b));
  return GradeLattice::from_order(names, order);
}

std::vector<GradeLattice> samples() {
  return {GradeLattice::default_chain(), GradeLattice::chain({"only"}), GradeLattice::chain({"lo", "mid", "hi"}),
          diamond(), pentagon(), powerset3(), divisors12()};
}

}  // namespace

TEST(GradeLattice, DefaultChainOrder) {
  auto l = GradeLattice::default_chain();
  EXPECT_EQ(l.names(), (std::vector<std::string>{"none", "tentative", "reliable", "very_reliable"}));
  EXPECT_TRUE(l.is_chain());
  EXPECT_EQ(l.bottom().name(), "none");
  EXPECT_EQ(l.top().name(), "very_reliable");
  EXPECT_TRUE(l.leq(l.grade("tentative"), l.grade("reliable")));
  EXPECT_FALSE(l.leq(l.grade("very_reliable"), l.grade("reliable")));
  EXPECT_EQ(l.meet(l.grade("very_reliable"), l.grade("tentative")).name(), "tentative");
  EXPECT_EQ(l.join(l.grade("none"), l.grade("reliable")).name(), "reliable");
}

TEST(GradeLattice, UnknownGradeIsDomainError) {
  EXPECT_THROW(GradeLattice::default_chain().grade("strong"), revigis::DomainError);
  auto other = GradeLattice::chain({"low", "high"});
  EXPECT_THROW(GradeLattice::default_chain().leq(other.grade("high"), other.grade("low")), revigis::DomainError);
}

TEST(GradeLattice, RejectsMalformedOrders) {
  EXPECT_THROW(GradeLattice::from_order({}, {}), ValidationError);
  EXPECT_THROW(GradeLattice::from_order({"a", "a"}, {}), ValidationError);
  EXPECT_THROW(GradeLattice::from_order({"a", "b"}, {{"a", "c"}}), ValidationError);
  EXPECT_THROW(GradeLattice::from_order({"a", "b"}, {{"a", "b"}, {"b", "a"}}), ValidationError);
  EXPECT_THROW(GradeLattice::from_order({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}), ValidationError);
}

TEST(GradeLattice, RejectsPosetsThatAreNotLattices) {
  // Two incomparable minima: no meet.
  EXPECT_THROW(GradeLattice::from_order({"a", "b", "t"}, {{"a", "t"}, {"b", "t"}}), ValidationError);
  // Bowtie: a, b both below c and d, no least upper bound.
  EXPECT_THROW(GradeLattice::from_order({"a", "b", "c", "d", "0", "1"},
                                        {{"0", "a"}, {"0", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"},
                                         {"c", "1"}, {"d", "1"}}),
               ValidationError);
}

TEST(GradeLattice, MeetJoinMatchBruteForceBounds) {
  for (const auto& l : samples()) {
    auto p = oracle::poset_of(l);
    for (std::size_t i = 0; i < l.size(); ++i)
      for (std::size_t j = 0; j < l.size(); ++j) {
        auto a = l.at(i), b = l.at(j);
        ASSERT_EQ(l.meet(a, b).rank(), *p.glb(i, j));
        ASSERT_EQ(l.join(a, b).rank(), *p.lub(i, j));
      }
  }
}

TEST(GradeLattice, AlgebraicLaws) {
  for (const auto& l : samples()) {
    const std::size_t n = l.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto a = l.at(i), b = l.at(j);
        EXPECT_EQ(l.meet(a, b), l.meet(b, a));
        EXPECT_EQ(l.join(a, b), l.join(b, a));
        EXPECT_EQ(l.meet(a, l.join(a, b)), a);
        EXPECT_EQ(l.join(a, l.meet(a, b)), a);
        EXPECT_EQ(l.leq(a, b), l.meet(a, b) == a);
        EXPECT_EQ(l.leq(a, b), l.join(a, b) == b);
        EXPECT_EQ(l.comparable(a, b), l.leq(a, b) || l.leq(b, a));
        if (l.leq(a, b) && !(a == b)) { EXPECT_LT(a.rank(), b.rank()); }
        for (std::size_t k = 0; k < n; ++k) {
          auto c = l.at(k);
          EXPECT_EQ(l.meet(a, l.meet(b, c)), l.meet(l.meet(a, b), c));
          EXPECT_EQ(l.join(a, l.join(b, c)), l.join(l.join(a, b), c));
        }
      }
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_TRUE(l.leq(l.bottom(), l.at(i)));
      EXPECT_TRUE(l.leq(l.at(i), l.top()));
    }
  }
}

TEST(GradeLattice, CoveringPairsRebuildTheSameLattice) {
  for (const auto& l : samples()) {
    auto rebuilt = GradeLattice::from_order(l.names(), l.covering_pairs());
    EXPECT_EQ(rebuilt, l);
  }
}

TEST(GradeLattice, ChainDetection) {
  EXPECT_TRUE(GradeLattice::from_order({"b", "a"}, {{"a", "b"}}).is_chain());
  EXPECT_FALSE(diamond().is_chain());
  EXPECT_FALSE(pentagon().is_chain());
}

TEST(GradeLattice, IncomparableElementsInDiamond) {
  auto l = diamond();
  auto x = l.grade("x"), y = l.grade("y");
  EXPECT_FALSE(l.comparable(x, y));
  EXPECT_EQ(l.meet(x, y).name(), "bot");
  EXPECT_EQ(l.join(x, y).name(), "top");
}
