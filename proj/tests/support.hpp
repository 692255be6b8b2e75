#pragma once

// Random generators and brute-force oracles shared by the test binaries.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "dsmatch/dsmatch.hpp"

namespace testsupport {

using dsmatch::FramePtr;
using dsmatch::Mask;
using dsmatch::MassFunction;
using dsmatch::Rational;

inline FramePtr letters(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('A' + i)));
  return dsmatch::make_frame(labels);
}

// Parses "ABD" into a mask over a letters() frame.
inline Mask bits(const std::string& s) {
  Mask m = 0;
  for (const char c : s) m |= Mask{1} << (c - 'A');
  return m;
}

// A random mass function: between 1 and `max_focals` distinct non-empty
// subsets with integer weights, normalized exactly.
inline MassFunction random_mass(std::mt19937_64& gen, const FramePtr& frame, std::size_t max_focals = 6) {
  const Mask full = frame->full_mask();
  std::uniform_int_distribution<Mask> subset(1, full);
  std::uniform_int_distribution<std::size_t> how_many(1, max_focals);
  std::uniform_int_distribution<std::int64_t> weight(1, 9);
  std::map<Mask, std::int64_t> raw;
  const std::size_t k = how_many(gen);
  while (raw.size() < k && raw.size() < full) raw[subset(gen)] = weight(gen);
  std::int64_t total = 0;
  for (const auto& [m, w] : raw) total += w;
  std::map<Mask, Rational> masses;
  for (const auto& [m, w] : raw) masses[m] = Rational(w, total);
  return MassFunction(frame, masses);
}

inline std::vector<Mask> random_focal_masks(std::mt19937_64& gen, const FramePtr& frame, std::size_t max_focals = 6) {
  const MassFunction mass = random_mass(gen, frame, max_focals);
  std::vector<Mask> out;
  for (const auto& [m, w] : mass.focals()) out.push_back(m);
  return out;
}

// "Sum of m(B) over every B ⊆ A": walks the whole power set and asks the mass
// function only for point masses.
inline Rational literal_belief(const MassFunction& m, Mask a) {
  Rational sum;
  const Mask full = m.frame()->full_mask();
  for (Mask b = 1; b <= full && b != 0; ++b) {
    if ((b & ~a) == 0) sum += m.mass_of(dsmatch::ValueSubset(m.frame(), b));
    if (b == full) break;
  }
  return sum;
}

inline Rational literal_plausibility(const MassFunction& m, Mask a) {
  Rational sum;
  const Mask full = m.frame()->full_mask();
  for (Mask b = 1; b <= full && b != 0; ++b) {
    if ((b & a) != 0) sum += m.mass_of(dsmatch::ValueSubset(m.frame(), b));
    if (b == full) break;
  }
  return sum;
}

inline const dsmatch::PreferenceModel& skydemo() {
  static const dsmatch::PreferenceModel model(dsmatch::skydemo_dataset());
  return model;
}

inline std::string source_dir() { return DSMATCH_SOURCE_DIR; }

}  // namespace testsupport
