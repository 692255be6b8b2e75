#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "support.hpp"

using namespace dsmatch;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const DatasetError& e) {
    return e.what();
  }
  return "(no error)";
}

json minimal() {
  return json::parse(R"({
    "schema_version": 1,
    "dimensions": [{"name": "Genre", "side": "item", "arity": "multi"},
                   {"name": "Age", "side": "user", "arity": "single"}],
    "items": [{"id": "i1", "values": {"Genre": "Drama, Crime"}}],
    "users": [{"id": "u1", "values": {"Age": ["30s"]}}],
    "likes": [{"item": "i1", "user": "u1"}]
  })");
}

}  // namespace

TEST(Io, ShippedFilesEqualTheBuiltInCatalog) {
  const auto builtin = skydemo_dataset();
  EXPECT_EQ(ingest(testsupport::source_dir() + "/data/skydemo/skydemo.json"), builtin);
  EXPECT_EQ(ingest(testsupport::source_dir() + "/data/skydemo/skydemo.csv"), builtin);
}

TEST(Io, EmbeddedTextIsTheShippedFile) {
  EXPECT_EQ(json::parse(kSkydemoJson), json::parse(read_file(testsupport::source_dir() + "/data/skydemo/skydemo.json")));
}

TEST(Io, JsonRoundTrip) {
  const auto d = skydemo_dataset();
  EXPECT_EQ(dataset_from_json(dataset_to_json(d)), d);
  EXPECT_EQ(dataset_from_json_text(dataset_to_json(d).dump()), d);
}

TEST(Io, CsvRoundTrip) {
  const auto d = skydemo_dataset();
  EXPECT_EQ(dataset_from_csv_text(dataset_to_csv(d)), d);
  const auto small = dataset_from_json(minimal());
  EXPECT_EQ(dataset_from_csv_text(dataset_to_csv(small)), small);
}

TEST(Io, StringCellsAreCommaSplit) {
  const auto d = dataset_from_json(minimal());
  EXPECT_EQ(d.items()[0].values.at("Genre"), (ValueSet{"Crime", "Drama"}));
}

TEST(Io, JsonErrorsNameThePath) {
  auto doc = minimal();
  doc["items"][0]["values"]["Genre"] = 3;
  EXPECT_NE(error_of([&] { dataset_from_json(doc); }).find("$.items[0].values.Genre"), std::string::npos);

  doc = minimal();
  doc["dimensions"][1]["side"] = "both";
  EXPECT_NE(error_of([&] { dataset_from_json(doc); }).find("side"), std::string::npos);

  doc = minimal();
  doc["schema_version"] = 2;
  EXPECT_NE(error_of([&] { dataset_from_json(doc); }).find("schema_version"), std::string::npos);

  doc = minimal();
  doc.erase("likes");
  EXPECT_NE(error_of([&] { dataset_from_json(doc); }).find("likes"), std::string::npos);

  EXPECT_NE(error_of([] { dataset_from_json_text("{not json"); }).find("malformed JSON"), std::string::npos);
  doc = minimal();
  doc["likes"].push_back({{"item", "i9"}, {"user", "u1"}});
  EXPECT_THROW(dataset_from_json(doc), DatasetError);
}

TEST(Io, CsvErrorsNameTheCell) {
  EXPECT_NE(error_of([] { dataset_from_csv_text("a,b\n1,2\n"); }).find("I\\U"), std::string::npos);
  const std::string bad_single = "G,I\\U,u1\nx|y,i1,x\n";
  EXPECT_NO_THROW(dataset_from_csv_text(bad_single));
  const std::string two_values = "G,I\\U,u1\n\"x, y\",i1,x\n";
  EXPECT_NE(error_of([&] { dataset_from_csv_text(two_values); }).find("CSV row 2, column 1"), std::string::npos);
  EXPECT_NE(error_of([] { dataset_from_csv_text("G,I\\U,u1\n\"x,i1,x\n"); }).find("unterminated"), std::string::npos);
  EXPECT_NE(error_of([] { dataset_from_csv_text("G,I\\U,u1\nx,i1,x,x\n"); }).find("more marks"), std::string::npos);
}

TEST(Io, CsvMarks) {
  const auto d = dataset_from_csv_text("G,I\\U,u1,u2,u3\nx,i1,1,0,\n");
  ASSERT_EQ(d.likes().size(), 1u);
  EXPECT_EQ(d.like_ids().front(), (std::pair<std::string, std::string>{"i1", "u1"}));
}

TEST(Io, FormatDetection) {
  EXPECT_EQ(format_from_path("a/b.JSON"), DataFormat::json);
  EXPECT_EQ(format_from_path("x.csv"), DataFormat::csv);
  EXPECT_FALSE(format_from_path("x.txt").has_value());
  EXPECT_THROW(ingest("/nonexistent/file.json"), DatasetError);
  EXPECT_THROW(ingest("x.txt"), DatasetError);
}

TEST(Config, ParsersAndDefaults) {
  const RunConfig c;
  EXPECT_EQ(c.rank_strategy(), RankStrategy::midpoint());
  EXPECT_EQ(parse_match_mode("exact"), MatchMode::exact);
  EXPECT_EQ(parse_strategy("sampled"), StrategyKind::sampled_majority);
  EXPECT_EQ(parse_strategy("belief_only"), StrategyKind::belief_only);
  EXPECT_EQ(parse_normalization("local"), Normalization::local);
  EXPECT_EQ(parse_output_format("dot"), OutputFormat::dot);
  EXPECT_THROW(parse_match_mode("fuzzy"), Error);
  EXPECT_THROW(parse_strategy("random"), Error);
  RunConfig s;
  s.strategy = StrategyKind::sampled_majority;
  s.samples = 7;
  s.seed = 9;
  EXPECT_EQ(s.rank_strategy(), RankStrategy::sampled_majority(7, 9));
  s.samples = 8;
  EXPECT_THROW(s.rank_strategy(), Error);
}

TEST(Format, Fractions) {
  const FractionStyle over15{15, false};
  EXPECT_EQ(format_fraction(Rational(1, 3), over15), "5/15");
  EXPECT_EQ(format_fraction(Rational(1, 3), FractionStyle{15, true}), "1/3");
  EXPECT_EQ(format_fraction(Rational(1, 4), over15), "1/4");
  EXPECT_EQ(format_fraction(Rational(1), over15), "1");
  EXPECT_EQ(format_value(Rational(4, 15), over15), "4/15 (0.266667)");
  EXPECT_EQ(format_interval(IntervalProbability(Rational(8, 15), Rational(1)), over15), "[8/15, 1] (0.533333, 1.000000)");
}
