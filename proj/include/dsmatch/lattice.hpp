#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dsmatch/error.hpp"
#include "dsmatch/evidence.hpp"
#include "dsmatch/frame.hpp"
#include "dsmatch/rational.hpp"

namespace dsmatch {

inline constexpr std::size_t kDefaultEnumerationBound = 20;

struct LatticeOptions {
  // Largest frame for which the whole power set may be enumerated.
  std::size_t max_frame_size = kDefaultEnumerationBound;
};

enum class Measure { belief, plausibility };
enum class ClassKind { core, support };

inline const char* to_string(Measure m) { return m == Measure::belief ? "belief" : "plausibility"; }
inline const char* to_string(ClassKind k) { return k == ClassKind::core ? "Cr" : "Su"; }

// The focal elements of a mass function, without their masses.
class FocalSet {
 public:
  FocalSet(FramePtr frame, const std::vector<ValueSubset>& focals) : frame_(std::move(frame)) {
    for (const auto& f : focals) {
      require_same_frame(frame_, f.frame());
      if (f.is_empty()) throw MassError("focal elements must be non-empty");
      if (std::find(masks_.begin(), masks_.end(), f.bits()) != masks_.end()) {
        throw MassError("duplicate focal element {" + f.to_string() + "}");
      }
      masks_.push_back(f.bits());
    }
  }

  explicit FocalSet(const MassFunction& m) : frame_(m.frame()) {
    for (const auto& [bits, mass] : m.focals()) masks_.push_back(bits);
  }

  const FramePtr& frame() const { return frame_; }
  const std::vector<Mask>& masks() const { return masks_; }
  std::size_t size() const { return masks_.size(); }
  ValueSubset at(std::size_t i) const { return {frame_, masks_.at(i)}; }

 private:
  FramePtr frame_;
  std::vector<Mask> masks_;
};

// Cr(A): focal elements contained in A.
inline std::vector<ValueSubset> core_of(const FocalSet& f, const ValueSubset& a) {
  require_same_frame(f.frame(), a.frame());
  std::vector<ValueSubset> out;
  for (const Mask b : f.masks()) {
    if ((b & ~a.bits()) == 0) out.emplace_back(f.frame(), b);
  }
  return out;
}

// Su(A): focal elements intersecting A.
inline std::vector<ValueSubset> support_of(const FocalSet& f, const ValueSubset& a) {
  require_same_frame(f.frame(), a.frame());
  std::vector<ValueSubset> out;
  for (const Mask b : f.masks()) {
    if ((b & a.bits()) != 0) out.emplace_back(f.frame(), b);
  }
  return out;
}

struct EquivalenceClass {
  ClassKind kind;
  std::vector<ValueSubset> defining_set;  // shared core (Cr) or support (Su)
  ValueSubset representative;             // Cr-minimal or Su-maximal
  std::vector<Mask> members;              // ascending
  std::optional<Rational> value;          // shared Bel (Cr) or Pl (Su), when masses are known
};

namespace detail {

inline void check_bound(const FramePtr& frame, const LatticeOptions& opts) {
  if (frame->size() > opts.max_frame_size) throw EnumerationBoundError(frame->size(), opts.max_frame_size);
}

// Which focal elements (by index) relate to `a`, packed into words.
using Signature = std::vector<Mask>;

inline void signature_of(const std::vector<Mask>& focals, Mask a, ClassKind kind, Signature& out) {
  std::fill(out.begin(), out.end(), 0);
  for (std::size_t i = 0; i < focals.size(); ++i) {
    const bool in = kind == ClassKind::core ? (focals[i] & ~a) == 0 : (focals[i] & a) != 0;
    if (in) out[i / 64] |= Mask{1} << (i % 64);
  }
}

inline bool signature_has(const Signature& sig, std::size_t i) { return ((sig[i / 64] >> (i % 64)) & 1u) != 0; }

inline std::vector<EquivalenceClass> partition(const FocalSet& f, ClassKind kind, const MassFunction* masses,
                                               const LatticeOptions& opts) {
  check_bound(f.frame(), opts);
  const auto& focals = f.masks();
  const Mask full = f.frame()->full_mask();
  const std::size_t words = std::max<std::size_t>(1, (focals.size() + 63) / 64);

  std::map<Signature, std::size_t> index;
  std::vector<Signature> signatures;
  std::vector<EquivalenceClass> classes;
  Signature sig(words);
  const std::uint64_t count = std::uint64_t{1} << f.frame()->size();
  for (std::uint64_t a = 0; a < count; ++a) {
    signature_of(focals, a, kind, sig);
    auto [it, inserted] = index.emplace(sig, classes.size());
    if (inserted) {
      classes.push_back({kind, {}, ValueSubset(f.frame(), 0), {}, std::nullopt});
      signatures.push_back(sig);
    }
    classes[it->second].members.push_back(a);
  }

  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto& cls = classes[c];
    const auto& s = signatures[c];
    Mask inside = 0;
    Mask outside = 0;
    for (std::size_t i = 0; i < focals.size(); ++i) {
      if (signature_has(s, i)) {
        cls.defining_set.emplace_back(f.frame(), focals[i]);
        inside |= focals[i];
      } else {
        outside |= focals[i];
      }
    }
    // Cr-minimal is the union of the core; Su-maximal is everything not
    // covered by a focal element outside the support.
    const Mask rep = kind == ClassKind::core ? inside : full & ~outside;
    Signature check(words);
    signature_of(focals, rep, kind, check);
    if (check != s) throw std::logic_error("equivalence class representative is not a member of its class");
    cls.representative = ValueSubset(f.frame(), rep);

    if (masses != nullptr) {
      Rational v = 0;
      for (const auto& [bits, mass] : masses->focals()) {
        const bool in = kind == ClassKind::core ? (bits & ~rep) == 0 : (bits & rep) != 0;
        if (in) v += mass;
      }
      cls.value = v;
    }
  }
  return classes;
}

}  // namespace detail

// Partition of 2^Ω by core. Classes are ordered by their smallest member.
inline std::vector<EquivalenceClass> cr_classes(const FocalSet& f, const LatticeOptions& opts = {}) {
  return detail::partition(f, ClassKind::core, nullptr, opts);
}

inline std::vector<EquivalenceClass> cr_classes(const MassFunction& m, const LatticeOptions& opts = {}) {
  return detail::partition(FocalSet(m), ClassKind::core, &m, opts);
}

// Partition of 2^Ω by support. Classes are ordered by their smallest member.
inline std::vector<EquivalenceClass> su_classes(const FocalSet& f, const LatticeOptions& opts = {}) {
  return detail::partition(f, ClassKind::support, nullptr, opts);
}

inline std::vector<EquivalenceClass> su_classes(const MassFunction& m, const LatticeOptions& opts = {}) {
  return detail::partition(FocalSet(m), ClassKind::support, &m, opts);
}

struct Level {
  Rational value;
  std::vector<std::size_t> classes;  // indices into LevelStructure::classes
};

struct LevelStructure {
  Measure measure;
  std::vector<EquivalenceClass> classes;
  std::vector<Level> levels;  // strictly ascending values, 0 first and 1 last

  // Splits 2^Ω into subsets strictly below levels[level] and those at or above it.
  std::pair<std::vector<Mask>, std::vector<Mask>> cut(std::size_t level) const {
    const Rational threshold = levels.at(level).value;
    std::pair<std::vector<Mask>, std::vector<Mask>> out;
    for (const auto& cls : classes) {
      auto& side = *cls.value < threshold ? out.first : out.second;
      side.insert(side.end(), cls.members.begin(), cls.members.end());
    }
    std::sort(out.first.begin(), out.first.end());
    std::sort(out.second.begin(), out.second.end());
    return out;
  }
};

// Distinct Bel (or Pl) values in ascending order, each listing the classes at
// that level. Classes with different cores that happen to share a value stay
// separate and share the level.
inline LevelStructure levels(const MassFunction& m, Measure measure, const LatticeOptions& opts = {}) {
  LevelStructure out{measure, measure == Measure::belief ? cr_classes(m, opts) : su_classes(m, opts), {}};
  std::map<Rational, std::vector<std::size_t>> by_value;
  for (std::size_t i = 0; i < out.classes.size(); ++i) by_value[*out.classes[i].value].push_back(i);
  for (auto& [value, idx] : by_value) out.levels.push_back({value, std::move(idx)});
  return out;
}

namespace detail {

inline std::string regions_dot(const FramePtr& frame, const std::vector<EquivalenceClass>& classes, Measure measure) {
  const std::size_t n = frame->size();
  auto node_name = [](Mask a) { return "n" + std::to_string(a); };
  auto escape = [](const std::string& s) {
    std::string out;
    for (const char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out;
  };

  std::ostringstream os;
  os << "digraph lattice {\n";
  os << "  rankdir=BT;\n";
  os << "  label=\"" << to_string(measure) << " regions\";\n";
  os << "  node [shape=box, style=filled, colorscheme=set312];\n";
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& cls = classes[c];
    const std::string value = cls.value ? cls.value->str() : std::string("?");
    os << "  subgraph cluster_r" << c << " {\n";
    os << "    label=\"" << to_string(cls.kind) << " region " << c << ": " << value << "\";\n";
    for (const Mask a : cls.members) {
      os << "    " << node_name(a) << " [label=\"" << escape(ValueSubset(frame, a).to_string()) << "\\n" << value
         << "\", fillcolor=" << (c % 12) + 1 << "];\n";
    }
    os << "  }\n";
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t a = 0; a < count; ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      if (((a >> i) & 1u) == 0) os << "  " << node_name(a) << " -> " << node_name(a | (Mask{1} << i)) << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace detail

// Hasse diagram of 2^Ω in DOT, rendered bottom-up. Each equivalence class of
// the measure (Cr for belief, Su for plausibility) becomes one cluster, and
// every covering pair A ⊂ A∪{x} becomes one edge.
inline std::string export_regions(const MassFunction& m, Measure measure, const LatticeOptions& opts = {}) {
  return detail::regions_dot(m.frame(), levels(m, measure, opts).classes, measure);
}

// Same diagram for a bare focal set; nodes are labelled without values.
inline std::string export_regions(const FocalSet& f, Measure measure, const LatticeOptions& opts = {}) {
  const auto classes = measure == Measure::belief ? cr_classes(f, opts) : su_classes(f, opts);
  return detail::regions_dot(f.frame(), classes, measure);
}

}  // namespace dsmatch
