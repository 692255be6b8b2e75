#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dsmatch/error.hpp"
#include "dsmatch/evidence.hpp"
#include "dsmatch/rational.hpp"

namespace dsmatch {

enum class StrategyKind { midpoint, belief_only, plausibility_only, sampled_majority };

inline const char* to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::midpoint: return "midpoint";
    case StrategyKind::belief_only: return "belief";
    case StrategyKind::plausibility_only: return "plausibility";
    case StrategyKind::sampled_majority: return "sampled";
  }
  return "?";
}

// How two interval probabilities are ordered.
class RankStrategy {
 public:
  static RankStrategy midpoint() { return RankStrategy(StrategyKind::midpoint, 1, 0); }
  static RankStrategy belief_only() { return RankStrategy(StrategyKind::belief_only, 1, 0); }
  static RankStrategy plausibility_only() { return RankStrategy(StrategyKind::plausibility_only, 1, 0); }

  // Majority vote over `samples` draws; `samples` must be odd.
  static RankStrategy sampled_majority(std::uint32_t samples, std::uint64_t seed) {
    return RankStrategy(StrategyKind::sampled_majority, samples, seed);
  }

  StrategyKind kind() const { return kind_; }
  std::uint32_t sample_count() const { return samples_; }
  std::uint64_t seed() const { return seed_; }

  friend bool operator==(const RankStrategy&, const RankStrategy&) = default;

 private:
  RankStrategy(StrategyKind kind, std::uint32_t samples, std::uint64_t seed)
      : kind_(kind), samples_(samples), seed_(seed) {
    if (samples_ == 0 || samples_ % 2 == 0) {
      throw Error("sample count must be a positive odd number, got " + std::to_string(samples_));
    }
  }

  StrategyKind kind_;
  std::uint32_t samples_;
  std::uint64_t seed_;
};

namespace detail {

// Uniform double in [0, 1) from the top 53 bits of one std::mt19937_64
// output. Both the engine and this mapping are fully specified, so the draws
// are identical on every conforming platform.
inline double unit_draw(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

inline double sample_point(const IntervalProbability& p, double u) {
  const double lo = p.belief().to_double();
  return lo + u * (p.plausibility().to_double() - lo);
}

}  // namespace detail

// Orders a against b. The sampled strategy draws (x, y) pairs uniformly from
// the two intervals, alternating x then y, from an engine seeded with the
// strategy's seed; pointwise ties count for neither side.
inline std::weak_ordering compare(const IntervalProbability& a, const IntervalProbability& b, const RankStrategy& s) {
  switch (s.kind()) {
    case StrategyKind::midpoint: return a.midpoint() <=> b.midpoint();
    case StrategyKind::belief_only: return a.belief() <=> b.belief();
    case StrategyKind::plausibility_only: return a.plausibility() <=> b.plausibility();
    case StrategyKind::sampled_majority: break;
  }
  std::mt19937_64 gen(s.seed());
  std::uint32_t greater = 0;
  std::uint32_t less = 0;
  for (std::uint32_t i = 0; i < s.sample_count(); ++i) {
    const double x = detail::sample_point(a, detail::unit_draw(gen));
    const double y = detail::sample_point(b, detail::unit_draw(gen));
    if (x > y) ++greater;
    if (x < y) ++less;
  }
  if (greater > less) return std::weak_ordering::greater;
  if (less > greater) return std::weak_ordering::less;
  return std::weak_ordering::equivalent;
}

struct RankedEntry {
  std::string label;
  IntervalProbability interval;
  Rational score;

  friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

struct RankedList {
  std::vector<RankedEntry> entries;  // score non-increasing, ties by label
  RankStrategy strategy;
};

// Scalar score used for sorting. For the sampled strategy the majority vote is
// pairwise and need not be transitive, so each entry is scored by its wins
// against every other entry (a tie is worth half a win).
inline RankedList rank(const std::vector<std::pair<std::string, IntervalProbability>>& labeled,
                       const RankStrategy& s) {
  std::set<std::string> seen;
  for (const auto& [label, iv] : labeled) {
    if (!seen.insert(label).second) throw Error("duplicate label '" + label + "' in ranking input");
  }

  RankedList out{{}, s};
  out.entries.reserve(labeled.size());
  for (const auto& [label, iv] : labeled) {
    Rational score;
    switch (s.kind()) {
      case StrategyKind::midpoint: score = iv.midpoint(); break;
      case StrategyKind::belief_only: score = iv.belief(); break;
      case StrategyKind::plausibility_only: score = iv.plausibility(); break;
      case StrategyKind::sampled_majority: score = 0; break;
    }
    out.entries.push_back({label, iv, score});
  }

  if (s.kind() == StrategyKind::sampled_majority) {
    // Pairs are visited in label order so the result does not depend on the
    // input order.
    std::sort(out.entries.begin(), out.entries.end(),
              [](const RankedEntry& a, const RankedEntry& b) { return a.label < b.label; });
    const Rational half(1, 2);
    for (std::size_t i = 0; i < out.entries.size(); ++i) {
      for (std::size_t j = i + 1; j < out.entries.size(); ++j) {
        const auto c = compare(out.entries[i].interval, out.entries[j].interval, s);
        if (c > 0) {
          out.entries[i].score += 1;
        } else if (c < 0) {
          out.entries[j].score += 1;
        } else {
          out.entries[i].score += half;
          out.entries[j].score += half;
        }
      }
    }
  }

  std::sort(out.entries.begin(), out.entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.label < b.label;
  });
  return out;
}

}  // namespace dsmatch
