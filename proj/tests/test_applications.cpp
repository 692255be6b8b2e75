#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "support.hpp"

using namespace dsmatch;
using testsupport::skydemo;

namespace {

std::map<std::string, IntervalProbability> by_label(const RankedList& l) {
  std::map<std::string, IntervalProbability> out;
  for (const auto& e : l.entries) out.emplace(e.label, e.interval);
  return out;
}

std::vector<std::string> labels(const RankedList& l) {
  std::vector<std::string> out;
  for (const auto& e : l.entries) out.push_back(e.label);
  return out;
}

// Users (or items) that share liked partners, counted from the id pairs.
Rational oracle_similarity(const Dataset& d, const std::string& a, const std::string& b, Side side) {
  std::set<std::string> pa;
  std::set<std::string> pb;
  for (const auto& [item, user] : d.like_ids()) {
    const auto& self = side == Side::user ? user : item;
    const auto& other = side == Side::user ? item : user;
    if (self == a) pa.insert(other);
    if (self == b) pb.insert(other);
  }
  std::int64_t common = 0;
  for (const auto& p : pa) common += static_cast<std::int64_t>(pb.count(p));
  return Rational(common, static_cast<std::int64_t>(d.likes().size()));
}

}  // namespace

TEST(Recommend, SingleDimensionMatchesMassFunction) {
  const auto list = recommend(skydemo(), {"Genre"}, RankStrategy::midpoint());
  const auto m = mass_for_dimension(skydemo(), "Genre");
  ASSERT_EQ(list.entries.size(), m.focal_count());
  for (const auto& [bits, w] : m.focals()) {
    const ValueSubset f(m.frame(), bits);
    const auto found = by_label(list).at(f.to_string());
    EXPECT_EQ(found, interval(m, f)) << f.to_string();
  }
  for (std::size_t i = 1; i < list.entries.size(); ++i) {
    EXPECT_GE(list.entries[i - 1].interval.midpoint(), list.entries[i].interval.midpoint());
  }
}

TEST(Recommend, DirectorIsAPointRanking) {
  const auto list = recommend(skydemo(), {"Director"}, RankStrategy::belief_only());
  EXPECT_EQ(labels(list).front(), "Boyle");
  EXPECT_EQ(list.entries.front().interval, IntervalProbability::point(Rational(4, 15)));
  EXPECT_EQ(labels(list).back(), "Scott");
}

TEST(Recommend, ByClassRanksCoreMinimalRepresentatives) {
  const auto list = recommend(skydemo(), {"Director"}, RankStrategy::midpoint(), true);
  const auto m = mass_for_dimension(skydemo(), "Director");
  std::size_t nonempty = 0;
  for (const auto& c : cr_classes(m)) nonempty += c.defining_set.empty() ? 0 : 1;
  EXPECT_EQ(list.entries.size(), nonempty);
  EXPECT_EQ(list.entries.front().interval, IntervalProbability::point(Rational(1)));
}

TEST(Recommend, RejectsUserDimensionsAndEmpty) {
  EXPECT_THROW(recommend(skydemo(), {"Age"}, RankStrategy::midpoint()), Error);
  EXPECT_THROW(recommend(skydemo(), {}, RankStrategy::midpoint()), Error);
  EXPECT_THROW(recommend(skydemo(), {"Nope"}, RankStrategy::midpoint()), UnknownDimensionError);
}

TEST(Recommend, JointTuplesSumToOne) {
  const auto list = recommend(skydemo(), {"Director", "Year"}, RankStrategy::midpoint());
  Rational sum;
  for (const auto& e : list.entries) {
    EXPECT_TRUE(e.interval.is_point());
    sum += e.interval.belief();
  }
  EXPECT_EQ(sum, Rational(1));
}

TEST(Target, DramaToAge) {
  const auto list = target_audience(skydemo(), {skydemo().query("Genre", {"Drama"})}, {"Age"}, RankStrategy::midpoint());
  EXPECT_EQ(labels(list), (std::vector<std::string>{"30s", "20s", "40s"}));
  const auto m = by_label(list);
  EXPECT_EQ(m.at("30s"), IntervalProbability::point(Rational(6, 15)));
  EXPECT_EQ(m.at("20s"), IntervalProbability::point(Rational(3, 15)));
  EXPECT_EQ(m.at("40s"), IntervalProbability::point(Rational(2, 15)));
}

TEST(Target, LocalNormalization) {
  QueryOptions opts;
  opts.normalization = Normalization::local;
  const auto list =
      target_audience(skydemo(), {skydemo().query("Genre", {"Drama"})}, {"Age"}, RankStrategy::midpoint(), opts);
  EXPECT_EQ(by_label(list).at("30s"), IntervalProbability::point(Rational(6, 11)));
}

TEST(Target, SingleItem) {
  const auto list = target_audience(skydemo(), std::string("0"), {"Age"}, RankStrategy::midpoint());
  const auto m = by_label(list);
  EXPECT_EQ(m.at("30s"), IntervalProbability::point(Rational(2, 15)));
  EXPECT_EQ(m.at("20s"), IntervalProbability::point(Rational(1, 15)));
  EXPECT_THROW(target_audience(skydemo(), std::string("99"), {"Age"}, RankStrategy::midpoint()), DatasetError);
}

TEST(Target, ProfileOrderDoesNotChangeTheRanking) {
  const std::vector<FeatureQuery> content{skydemo().query("Genre", {"Drama"})};
  const std::vector<std::vector<std::string>> orders{
      {"Age", "Gender", "Interests"}, {"Interests", "Age", "Gender"}, {"Gender", "Interests", "Age"}};
  std::vector<std::multiset<std::pair<Rational, Rational>>> seen;
  std::vector<std::size_t> sizes;
  for (const auto& profile : orders) {
    const auto list = target_audience(skydemo(), content, profile, RankStrategy::midpoint());
    std::multiset<std::pair<Rational, Rational>> s;
    for (const auto& e : list.entries) s.emplace(e.interval.belief(), e.interval.plausibility());
    seen.push_back(s);
  }
  EXPECT_EQ(seen[0], seen[1]);
  EXPECT_EQ(seen[0], seen[2]);
}

TEST(Target, Errors) {
  EXPECT_THROW(target_audience(skydemo(), {skydemo().query("Age", {"20s"})}, {"Age"}, RankStrategy::midpoint()), Error);
  EXPECT_THROW(target_audience(skydemo(), {skydemo().query("Genre", {"Drama"})}, {"Genre"}, RankStrategy::midpoint()),
               Error);
  EXPECT_THROW(target_audience(skydemo(), {skydemo().query("Director", {"Scott"}), skydemo().query("Year", {"1996"})},
                               {"Age"}, RankStrategy::midpoint()),
               NoEvidenceError);
}

TEST(Bundle, DramaInTheNinetiesToUsers) {
  const std::vector<FeatureQuery> sel{skydemo().query("Genre", {"Drama"}),
                                      skydemo().query("Year", {"1990", "1994", "1995", "1996"})};
  const auto p = bundle(skydemo(), sel, BundleDirection::contents_to_users, RankStrategy::midpoint());
  // Oracle: drama items from the nineties are 0, 1, 3, 5, 6.
  std::map<std::string, std::int64_t> counts{{"1", 0}, {"2", 0}, {"3", 0}, {"4", 0}};
  const std::set<std::string> chosen{"0", "1", "3", "5", "6"};
  for (const auto& [item, user] : skydemo().dataset().like_ids()) {
    if (chosen.count(item)) ++counts[user];
  }
  const auto m = by_label(p.result);
  for (const auto& [user, c] : counts) EXPECT_EQ(m.at(user), IntervalProbability::point(Rational(c, 15))) << user;
  EXPECT_EQ(labels(p.result).front(), "1");
  EXPECT_EQ(m.at("1").belief(), Rational(3, 15));
}

TEST(Bundle, TwentiesIntoBooksToItems) {
  const std::vector<FeatureQuery> sel{skydemo().query("Age", {"20s"}), skydemo().query("Interests", {"Books"})};
  const auto p = bundle(skydemo(), sel, BundleDirection::users_to_contents, RankStrategy::midpoint());
  const auto l = labels(p.result);
  ASSERT_EQ(l.size(), 10u);
  EXPECT_EQ(std::vector<std::string>(l.begin(), l.begin() + 4), (std::vector<std::string>{"0", "3", "4", "8"}));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(p.result.entries[i].score, Rational(1, 15));
  for (std::size_t i = 4; i < 10; ++i) EXPECT_EQ(p.result.entries[i].score, Rational(0));
}

TEST(Bundle, TargetDimensions) {
  const std::vector<FeatureQuery> sel{skydemo().query("Age", {"20s"})};
  const auto p = bundle(skydemo(), sel, BundleDirection::users_to_contents, RankStrategy::midpoint(), {"Director"});
  Rational sum;
  for (const auto& e : p.result.entries) sum += e.interval.belief();
  EXPECT_EQ(sum, Rational(4, 15));
}

TEST(Bundle, MixedSidesThrow) {
  const std::vector<FeatureQuery> sel{skydemo().query("Genre", {"Drama"}), skydemo().query("Age", {"20s"})};
  EXPECT_THROW(bundle(skydemo(), sel, BundleDirection::contents_to_users, RankStrategy::midpoint()), Error);
  EXPECT_THROW(bundle(skydemo(), {skydemo().query("Genre", {"Drama"})}, BundleDirection::contents_to_users,
                      RankStrategy::midpoint(), {"Director"}),
               Error);
}

TEST(Segment, SimilarityMatchesOracle) {
  const auto& d = skydemo().dataset();
  for (const auto side : {Side::user, Side::item}) {
    const auto sim = shared_like_similarity(skydemo(), side);
    const auto& es = d.entities(side);
    for (std::size_t i = 0; i < es.size(); ++i) {
      for (std::size_t j = 0; j < es.size(); ++j) {
        ASSERT_EQ(sim[i][j], oracle_similarity(d, es[i].id, es[j].id, side));
      }
    }
  }
  EXPECT_EQ(oracle_similarity(d, "2", "3", Side::user), Rational(2, 15));
}

TEST(Segment, SingleBlockDensity) {
  const auto seg = segment(skydemo(), 1, 1, RankStrategy::midpoint());
  EXPECT_EQ(seg.within_score, Rational(15, 40));
  EXPECT_EQ(seg.between_score, Rational(0));
  EXPECT_EQ(seg.user_merges.size(), 3u);
  EXPECT_EQ(seg.item_merges.size(), 9u);
}

TEST(Segment, PartitionsAndWithinDominates) {
  for (std::size_t ku = 1; ku <= 4; ++ku) {
    for (std::size_t ki = 1; ki <= 10; ++ki) {
      const auto seg = segment(skydemo(), ku, ki, RankStrategy::midpoint());
      ASSERT_EQ(seg.user_clusters.size(), ku);
      ASSERT_EQ(seg.item_clusters.size(), ki);
      std::size_t users = 0;
      for (const auto& c : seg.user_clusters) users += c.size();
      std::size_t items = 0;
      for (const auto& c : seg.item_clusters) items += c.size();
      ASSERT_EQ(users, 4u);
      ASSERT_EQ(items, 10u);
      ASSERT_GE(seg.within_score, seg.between_score);
    }
  }
}

// Each greedy step merges a pair whose average linkage is maximal among the
// clusters present at that step, recomputed here from the oracle similarity.
TEST(Segment, GreedyStepsTakeTheMaximumLinkage) {
  const auto& d = skydemo().dataset();
  const auto seg = segment(skydemo(), 1, 1, RankStrategy::midpoint());
  for (const auto side : {Side::user, Side::item}) {
    std::vector<std::vector<std::string>> clusters;
    for (const auto& e : d.entities(side)) clusters.push_back({e.id});
    auto link = [&](const std::vector<std::string>& a, const std::vector<std::string>& b) {
      Rational s;
      for (const auto& x : a) {
        for (const auto& y : b) s += oracle_similarity(d, x, y, side);
      }
      return s / static_cast<std::int64_t>(a.size() * b.size());
    };
    auto label = [](const std::vector<std::string>& c) { return *std::min_element(c.begin(), c.end()); };
    for (const auto& step : side == Side::user ? seg.user_merges : seg.item_merges) {
      Rational best;
      for (std::size_t a = 0; a < clusters.size(); ++a) {
        for (std::size_t b = a + 1; b < clusters.size(); ++b) best = std::max(best, link(clusters[a], clusters[b]));
      }
      ASSERT_EQ(step.linkage, best);
      auto find = [&](const std::string& l) {
        return std::find_if(clusters.begin(), clusters.end(), [&](const auto& c) { return label(c) == l; });
      };
      auto left = find(step.left);
      auto right = find(step.right);
      ASSERT_NE(left, clusters.end());
      ASSERT_NE(right, clusters.end());
      ASSERT_EQ(link(*left, *right), best);
      left->insert(left->end(), right->begin(), right->end());
      clusters.erase(right);
    }
    ASSERT_EQ(clusters.size(), 1u);
  }
}

TEST(Segment, RejectsOutOfRangeK) {
  EXPECT_THROW(segment(skydemo(), 0, 1, RankStrategy::midpoint()), Error);
  EXPECT_THROW(segment(skydemo(), 5, 1, RankStrategy::midpoint()), Error);
  EXPECT_THROW(segment(skydemo(), 1, 11, RankStrategy::midpoint()), Error);
}

TEST(Applications, DeterministicAcrossRuns) {
  const auto s = RankStrategy::sampled_majority(101, 42);
  const auto a = recommend(skydemo(), {"Genre"}, s);
  const auto b = recommend(skydemo(), {"Genre"}, s);
  EXPECT_EQ(a.entries, b.entries);
  const auto sa = segment(skydemo(), 2, 3, s);
  const auto sb = segment(skydemo(), 2, 3, s);
  EXPECT_EQ(sa.user_clusters, sb.user_clusters);
  EXPECT_EQ(sa.item_clusters, sb.item_clusters);
}
