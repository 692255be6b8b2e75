#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "dsmatch/error.hpp"
#include "dsmatch/frame.hpp"
#include "dsmatch/rational.hpp"

namespace dsmatch {

// [belief, plausibility] bounds on the probability of a query.
class IntervalProbability {
 public:
  IntervalProbability(Rational belief, Rational plausibility) : belief_(belief), plausibility_(plausibility) {
    if (belief_ < 0 || plausibility_ > 1 || belief_ > plausibility_) {
      throw Error("invalid interval probability [" + belief_.str() + ", " + plausibility_.str() + "]");
    }
  }

  static IntervalProbability point(Rational p) { return {p, p}; }

  const Rational& belief() const { return belief_; }
  const Rational& plausibility() const { return plausibility_; }
  Rational midpoint() const { return (belief_ + plausibility_) / 2; }
  Rational width() const { return plausibility_ - belief_; }
  bool is_point() const { return belief_ == plausibility_; }

  friend bool operator==(const IntervalProbability&, const IntervalProbability&) = default;

 private:
  Rational belief_;
  Rational plausibility_;
};

// A basic probability assignment: strictly positive rational masses on
// non-empty subsets of one frame, summing exactly to one.
class MassFunction {
 public:
  using Focal = std::pair<Mask, Rational>;

  MassFunction(FramePtr frame, const std::vector<std::pair<ValueSubset, Rational>>& assignments)
      : frame_(std::move(frame)) {
    std::map<Mask, Rational> acc;
    for (const auto& [subset, mass] : assignments) {
      require_same_frame(frame_, subset.frame());
      if (subset.is_empty()) throw MassError("mass assigned to the empty set");
      if (mass <= 0 || mass > 1) throw MassError("mass " + mass.str() + " outside (0, 1]");
      if (!acc.emplace(subset.bits(), mass).second) {
        throw MassError("duplicate focal element {" + subset.to_string() + "}");
      }
    }
    init(acc);
  }

  // Masses keyed by raw bit pattern; used by code that already works on masks.
  MassFunction(FramePtr frame, const std::map<Mask, Rational>& assignments) : frame_(std::move(frame)) {
    for (const auto& [bits, mass] : assignments) {
      if ((bits & ~frame_->full_mask()) != 0) throw FrameError("focal element outside the frame");
      if (bits == 0) throw MassError("mass assigned to the empty set");
      if (mass <= 0 || mass > 1) throw MassError("mass " + mass.str() + " outside (0, 1]");
    }
    init(assignments);
  }

  // {Ω: 1}
  static MassFunction vacuous(FramePtr frame) {
    const Mask all = frame->full_mask();
    return MassFunction(std::move(frame), std::map<Mask, Rational>{{all, Rational(1)}});
  }

  const FramePtr& frame() const { return frame_; }

  // Focal elements in ascending bit-pattern order.
  const std::vector<Focal>& focals() const { return focals_; }
  std::size_t focal_count() const { return focals_.size(); }

  std::vector<ValueSubset> focal_elements() const {
    std::vector<ValueSubset> out;
    out.reserve(focals_.size());
    for (const auto& [bits, mass] : focals_) out.emplace_back(frame_, bits);
    return out;
  }

  Rational mass_of(const ValueSubset& a) const {
    require_same_frame(frame_, a.frame());
    const auto it = std::lower_bound(focals_.begin(), focals_.end(), a.bits(),
                                     [](const Focal& f, Mask m) { return f.first < m; });
    return it != focals_.end() && it->first == a.bits() ? it->second : Rational(0);
  }

  bool singleton_only() const {
    return std::all_of(focals_.begin(), focals_.end(),
                       [](const Focal& f) { return std::has_single_bit(f.first); });
  }

  friend bool operator==(const MassFunction& a, const MassFunction& b) {
    return same_frame(a.frame_, b.frame_) && a.focals_ == b.focals_;
  }

 private:
  void init(const std::map<Mask, Rational>& acc) {
    if (acc.empty()) throw MassError("mass function has no focal elements");
    Rational total = 0;
    for (const auto& [bits, mass] : acc) {
      total += mass;
      focals_.emplace_back(bits, mass);
    }
    if (total != 1) throw MassError("masses sum to " + total.str() + ", expected 1");
  }

  FramePtr frame_;
  std::vector<Focal> focals_;
};

// Bel(A): total mass of focal elements contained in A.
inline Rational belief(const MassFunction& m, const ValueSubset& a) {
  require_same_frame(m.frame(), a.frame());
  Rational sum = 0;
  for (const auto& [bits, mass] : m.focals()) {
    if ((bits & ~a.bits()) == 0) sum += mass;
  }
  return sum;
}

// Pl(A): total mass of focal elements intersecting A.
inline Rational plausibility(const MassFunction& m, const ValueSubset& a) {
  require_same_frame(m.frame(), a.frame());
  Rational sum = 0;
  for (const auto& [bits, mass] : m.focals()) {
    if ((bits & a.bits()) != 0) sum += mass;
  }
  return sum;
}

inline IntervalProbability interval(const MassFunction& m, const ValueSubset& a) {
  return {belief(m, a), plausibility(m, a)};
}

struct Combination {
  MassFunction mass;
  Rational conflict;  // Z: product mass landing on the empty set
};

// Dempster's rule of combination. Throws TotalConflictError when Z = 1.
inline Combination dempster_combine(const MassFunction& m1, const MassFunction& m2) {
  require_same_frame(m1.frame(), m2.frame());
  std::map<Mask, Rational> joint;
  Rational conflict = 0;
  for (const auto& [b, mb] : m1.focals()) {
    for (const auto& [c, mc] : m2.focals()) {
      const Rational product = mb * mc;
      const Mask a = b & c;
      if (a == 0) {
        conflict += product;
      } else {
        joint[a] += product;
      }
    }
  }
  if (conflict == 1) throw TotalConflictError();
  const Rational norm = Rational(1) - conflict;
  for (auto& [a, mass] : joint) mass /= norm;
  return {MassFunction(m1.frame(), joint), conflict};
}

}  // namespace dsmatch
