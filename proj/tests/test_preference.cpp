#include <gtest/gtest.h>

#include <map>
#include <set>

#include "support.hpp"

using namespace dsmatch;
using testsupport::skydemo;

namespace {

// m(K) by counting like pairs whose entity carries exactly the value set K,
// straight from the dataset strings.
std::map<std::vector<std::string>, std::int64_t> oracle_counts(const Dataset& d, const std::string& dim) {
  const Side side = d.dimension(dim).side;
  std::map<std::vector<std::string>, std::int64_t> out;
  for (const auto& [item, user] : d.like_ids()) {
    const Entity& e = side == Side::item ? d.items()[*d.item_index(item)] : d.users()[*d.user_index(user)];
    ++out[e.values.at(dim)];
  }
  return out;
}

Rational m_of(const std::string& dim, const std::vector<std::string>& values) {
  return mass_for_dimension(skydemo(), dim).mass_of(ValueSubset::of(skydemo().dimension(dim).frame, values));
}

std::set<std::string> items_of(const LikeSet& likes) {
  std::set<std::string> out;
  for (const auto l : likes) out.insert(skydemo().dataset().items()[skydemo().dataset().likes()[l].item].id);
  return out;
}

}  // namespace

TEST(Preference, SkydemoShape) {
  const auto& d = skydemo().dataset();
  EXPECT_EQ(d.items().size(), 10u);
  EXPECT_EQ(d.users().size(), 4u);
  EXPECT_EQ(skydemo().like_count(), 15u);
  EXPECT_EQ(skydemo().dimensions().size(), 8u);
}

TEST(Preference, MassesEqualCountingOracleOnEveryDimension) {
  const auto& d = skydemo().dataset();
  for (const auto& spec : d.dimensions()) {
    const auto m = mass_for_dimension(skydemo(), spec.name);
    const auto counts = oracle_counts(d, spec.name);
    ASSERT_EQ(m.focal_count(), counts.size()) << spec.name;
    for (const auto& [values, c] : counts) {
      EXPECT_EQ(m.mass_of(ValueSubset::of(skydemo().dimension(spec.name).frame, values)), Rational(c, 15))
          << spec.name;
    }
  }
}

TEST(Preference, DirectorMasses) {
  EXPECT_EQ(m_of("Director", {"Boyle"}), Rational(4, 15));
  for (const char* d : {"Levinson", "Scorsese", "Howard", "Zemeckis", "Edwards"}) {
    EXPECT_EQ(m_of("Director", {d}), Rational(2, 15)) << d;
  }
  EXPECT_EQ(m_of("Director", {"Scott"}), Rational(1, 15));
  EXPECT_TRUE(mass_for_dimension(skydemo(), "Director").singleton_only());
}

TEST(Preference, PublishedMasses) {
  EXPECT_EQ(m_of("Year", {"1996"}), Rational(5, 15));
  EXPECT_EQ(m_of("Genre", {"Drama"}), Rational(3, 15));
  EXPECT_EQ(m_of("Stars", {"Robert De Niro", "Kevin Bacon", "Brad Pitt"}), Rational(2, 15));
  EXPECT_EQ(m_of("Age", {"30s"}), Rational(8, 15));
  EXPECT_EQ(m_of("Gender", {"F"}), Rational(5, 15));
  EXPECT_EQ(m_of("Location", {"IT"}), Rational(11, 15));
  EXPECT_EQ(m_of("Interests", {"Movies", "Books"}), Rational(3, 15));
}

TEST(Preference, SingleValuedDimensionsAreAdditive) {
  for (const auto& dim : skydemo().dimensions()) {
    if (dim.spec.arity != Arity::single) continue;
    const auto m = mass_for_dimension(skydemo(), dim.name());
    const Mask full = dim.frame->full_mask();
    for (Mask a = 0; a <= full; ++a) ASSERT_TRUE(interval(m, ValueSubset(dim.frame, a)).is_point()) << dim.name();
  }
}

TEST(Preference, GenreIsNotAdditive) {
  const auto m = mass_for_dimension(skydemo(), "Genre");
  const auto iv = interval(m, skydemo().query("Genre", {"Adventure", "Comedy", "Sci-Fi", "Drama"}).values);
  EXPECT_EQ(iv.belief(), Rational(8, 15));
  EXPECT_EQ(iv.plausibility(), Rational(1));
}

TEST(Preference, LikesOfMatchModes) {
  const auto drama = skydemo().query("Genre", {"Drama"});
  EXPECT_EQ(items_of(likes_of(skydemo(), drama)), (std::set<std::string>{"0", "1", "3", "4", "5", "6", "9"}));
  EXPECT_EQ(items_of(likes_of(skydemo(), drama, MatchMode::exact)), (std::set<std::string>{"0"}));
  EXPECT_EQ(likes_of(skydemo(), drama, MatchMode::exact).size(), 3u);
}

TEST(Preference, QueryErrors) {
  EXPECT_THROW(skydemo().query("Nope", {"x"}), UnknownDimensionError);
  EXPECT_THROW(skydemo().query("Genre", {"Western"}), FrameError);
  EXPECT_THROW(skydemo().query("Genre", {}), Error);
}

TEST(Fusion, ZemeckisAdventureSciFi) {
  const auto k1 = skydemo().query("Director", {"Zemeckis"});
  const auto k2 = skydemo().query("Genre", {"Adventure", "Sci-Fi"});
  EXPECT_EQ(conjoin(skydemo(), k1, k2).query_mass(), Rational(1, 15));
  EXPECT_EQ(conjoin(skydemo(), k1, k2, MatchMode::exact).query_mass(), Rational(1, 15));
}

TEST(Fusion, ZemeckisDramaReadings) {
  const auto k1 = skydemo().query("Director", {"Zemeckis"});
  const auto k2 = skydemo().query("Genre", {"Drama"});
  const auto fi = conjoin(skydemo(), k1, k2, MatchMode::intersection);
  EXPECT_EQ(fi.query_mass(), Rational(1, 15));
  EXPECT_EQ(conjoin(skydemo(), k1, k2, MatchMode::exact).query_mass(), Rational(0));
  EXPECT_EQ(fi.query_interval(), IntervalProbability(Rational(0), Rational(1, 15)));
}

TEST(Fusion, TwentiesOrSportReadings) {
  const auto k1 = skydemo().query("Age", {"20s"});
  const auto k2 = skydemo().query("Interests", {"Sport"});
  const auto fe = disjoin(skydemo(), k1, k2, MatchMode::exact);
  EXPECT_EQ(fe.query_pairs, 9);
  EXPECT_EQ(fe.query_items, 7);
  EXPECT_EQ(fe.query_mass(), Rational(9, 15));
  const auto fi = disjoin(skydemo(), k1, k2, MatchMode::intersection);
  EXPECT_EQ(fi.query_pairs, 12);
  EXPECT_EQ(fi.query_items, 9);
}

TEST(Fusion, SameDimensionTwiceThrows) {
  const auto k = skydemo().query("Genre", {"Drama"});
  EXPECT_THROW(conjoin(skydemo(), k, k), Error);
}

TEST(FusionProperty, ConjunctionBelowDisjunctionAndInclusionExclusion) {
  const auto& dims = skydemo().dimensions();
  for (std::size_t i = 0; i < dims.size(); ++i) {
    for (std::size_t j = 0; j < dims.size(); ++j) {
      if (i == j) continue;
      for (std::size_t a = 0; a < dims[i].frame->size(); ++a) {
        for (std::size_t b = 0; b < dims[j].frame->size(); ++b) {
          const FeatureQuery q1(dims[i].name(), ValueSubset(dims[i].frame, Mask{1} << a));
          const FeatureQuery q2(dims[j].name(), ValueSubset(dims[j].frame, Mask{1} << b));
          const auto c = conjoin(skydemo(), q1, q2);
          const auto d = disjoin(skydemo(), q1, q2);
          const Rational m1(static_cast<std::int64_t>(likes_of(skydemo(), q1).size()), 15);
          const Rational m2(static_cast<std::int64_t>(likes_of(skydemo(), q2).size()), 15);
          ASSERT_LE(c.query_mass(), d.query_mass());
          ASSERT_EQ(c.query_mass() + d.query_mass(), m1 + m2);
          ASSERT_EQ(c.query_mass(), conjoin(skydemo(), q2, q1).query_mass());
        }
      }
    }
  }
}

TEST(JointMass, SumsToOneAndReducesToTheMarginal) {
  const auto joint = joint_mass(skydemo(), {"Director", "Genre"}, skydemo().all_likes(), 15);
  EXPECT_EQ(joint.total(), Rational(1));
  EXPECT_THROW(joint.as_mass_function(), Error);
  const auto single = joint_mass(skydemo(), {"Genre"}, skydemo().all_likes(), 15);
  EXPECT_EQ(single.as_mass_function(), mass_for_dimension(skydemo(), "Genre"));
}

TEST(JointMass, IntervalIsComponentWise) {
  const auto joint = joint_mass(skydemo(), {"Director", "Genre"}, skydemo().all_likes(), 15);
  const auto& dims = joint.dimensions();
  const Mask zem = ValueSubset::of(dims[0].frame, {"Zemeckis"}).bits();
  const Mask drama = ValueSubset::of(dims[1].frame, {"Drama"}).bits();
  // Item 6 (Zemeckis; Comedy, Drama) has one like: it is plausible but not certain.
  EXPECT_EQ(joint.interval({zem, drama}), IntervalProbability(Rational(0), Rational(1, 15)));
}

TEST(Dataset, ValidationErrors) {
  const std::vector<DimensionSpec> dims{{"G", Side::item, Arity::single}, {"A", Side::user, Arity::single}};
  const std::vector<Item> items{{"i1", {{"G", {"x"}}}}};
  const std::vector<User> users{{"u1", {{"A", {"20s"}}}}};
  EXPECT_NO_THROW(Dataset(dims, items, users, {{"i1", "u1"}}));
  EXPECT_THROW(Dataset(dims, items, users, {{"i2", "u1"}}), DatasetError);
  EXPECT_THROW(Dataset(dims, items, users, {{"i1", "u1"}, {"i1", "u1"}}), DatasetError);
  EXPECT_THROW(Dataset(dims, {{"i1", {{"G", {"x", "y"}}}}}, users, {}), DatasetError);
  EXPECT_THROW(Dataset(dims, {{"i1", {}}}, users, {}), DatasetError);
  EXPECT_THROW(Dataset(dims, {{"i1", {{"G", {"x"}}, {"A", {"20s"}}}}}, users, {}), DatasetError);
  EXPECT_THROW(Dataset(dims, {items[0], items[0]}, users, {}), DatasetError);
  EXPECT_THROW(Dataset({dims[0], dims[0]}, items, {}, {}), DatasetError);
}

TEST(Dataset, NoLikesMeansNoEvidence) {
  const std::vector<DimensionSpec> dims{{"G", Side::item, Arity::single}};
  const PreferenceModel model(Dataset(dims, {{"i1", {{"G", {"x"}}}}}, {}, {}));
  EXPECT_THROW(mass_for_dimension(model, "G"), NoEvidenceError);
}
