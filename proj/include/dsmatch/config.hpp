#pragma once

#include <cstdint>
#include <string>

#include "dsmatch/applications.hpp"
#include "dsmatch/error.hpp"
#include "dsmatch/lattice.hpp"
#include "dsmatch/preference.hpp"
#include "dsmatch/ranking.hpp"

namespace dsmatch {

enum class OutputFormat { table, json, dot };

inline const char* to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::table: return "table";
    case OutputFormat::json: return "json";
    case OutputFormat::dot: return "dot";
  }
  return "?";
}

// Every knob of a CLI run, with defaults. Flags override the config file,
// which overrides these defaults.
struct RunConfig {
  MatchMode match = MatchMode::intersection;
  StrategyKind strategy = StrategyKind::midpoint;
  std::uint32_t samples = 101;
  std::uint64_t seed = 42;
  Normalization normalization = Normalization::global;
  std::size_t bound = kDefaultEnumerationBound;
  OutputFormat output = OutputFormat::table;
  bool reduced = false;

  RankStrategy rank_strategy() const {
    switch (strategy) {
      case StrategyKind::midpoint: return RankStrategy::midpoint();
      case StrategyKind::belief_only: return RankStrategy::belief_only();
      case StrategyKind::plausibility_only: return RankStrategy::plausibility_only();
      case StrategyKind::sampled_majority: return RankStrategy::sampled_majority(samples, seed);
    }
    throw Error("unknown strategy");
  }

  QueryOptions query_options() const { return {match, normalization, LatticeOptions{bound}}; }
};

inline MatchMode parse_match_mode(const std::string& s) {
  if (s == "intersection") return MatchMode::intersection;
  if (s == "exact") return MatchMode::exact;
  throw Error("unknown match mode '" + s + "' (expected intersection|exact)");
}

inline StrategyKind parse_strategy(const std::string& s) {
  if (s == "midpoint") return StrategyKind::midpoint;
  if (s == "belief" || s == "belief_only") return StrategyKind::belief_only;
  if (s == "plausibility" || s == "plausibility_only") return StrategyKind::plausibility_only;
  if (s == "sampled" || s == "sampled_majority") return StrategyKind::sampled_majority;
  throw Error("unknown strategy '" + s + "' (expected midpoint|belief|plausibility|sampled)");
}

inline Normalization parse_normalization(const std::string& s) {
  if (s == "global") return Normalization::global;
  if (s == "local") return Normalization::local;
  throw Error("unknown normalization '" + s + "' (expected global|local)");
}

inline OutputFormat parse_output_format(const std::string& s) {
  if (s == "table") return OutputFormat::table;
  if (s == "json") return OutputFormat::json;
  if (s == "dot") return OutputFormat::dot;
  throw Error("unknown output format '" + s + "' (expected table|json|dot)");
}

}  // namespace dsmatch
