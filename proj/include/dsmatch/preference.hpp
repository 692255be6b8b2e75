#pragma once

#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dsmatch/dataset.hpp"
#include "dsmatch/error.hpp"
#include "dsmatch/evidence.hpp"
#include "dsmatch/frame.hpp"
#include "dsmatch/rational.hpp"

namespace dsmatch {

// How a query's values are matched against the value set of an item or user.
//   intersection: the value set shares at least one value with the query.
//   exact:        the value set equals the query.
enum class MatchMode { intersection, exact };

inline const char* to_string(MatchMode m) { return m == MatchMode::intersection ? "intersection" : "exact"; }

// A dimension together with its frame: the distinct labels observed for it
// across the dataset, sorted.
struct Dimension {
  DimensionSpec spec;
  FramePtr frame;

  const std::string& name() const { return spec.name; }
  Side side() const { return spec.side; }
  Arity arity() const { return spec.arity; }
};

inline std::vector<Dimension> build_dimensions(const Dataset& d) {
  std::vector<Dimension> out;
  for (const auto& spec : d.dimensions()) {
    std::set<std::string> labels;
    for (const auto& e : d.entities(spec.side)) {
      const auto& vals = e.values.at(spec.name);
      labels.insert(vals.begin(), vals.end());
    }
    if (labels.empty()) throw DatasetError("dimension '" + spec.name + "' has no observed values");
    out.push_back({spec, make_frame(std::vector<std::string>(labels.begin(), labels.end()))});
  }
  return out;
}

// K: a non-empty set of values of one dimension.
struct FeatureQuery {
  std::string dimension;
  ValueSubset values;

  FeatureQuery(std::string dim, ValueSubset vals) : dimension(std::move(dim)), values(std::move(vals)) {
    if (values.is_empty()) throw Error("query on '" + dimension + "' has no values");
  }
};

// Indices into Dataset::likes(), ascending.
using LikeSet = std::vector<std::size_t>;

// Dataset plus the frames of every dimension and each entity's value set as a
// bit pattern over those frames.
class PreferenceModel {
 public:
  explicit PreferenceModel(Dataset dataset) : dataset_(std::move(dataset)), dims_(build_dimensions(dataset_)) {
    masks_.resize(dims_.size());
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      const auto& dim = dims_[k];
      for (const auto& e : dataset_.entities(dim.side())) {
        masks_[k].push_back(ValueSubset::of(dim.frame, e.values.at(dim.name())).bits());
      }
    }
  }

  const Dataset& dataset() const { return dataset_; }
  const std::vector<Dimension>& dimensions() const { return dims_; }
  std::size_t like_count() const { return dataset_.likes().size(); }

  std::size_t dimension_index(const std::string& name) const {
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      if (dims_[k].name() == name) return k;
    }
    throw UnknownDimensionError(name);
  }
  const Dimension& dimension(const std::string& name) const { return dims_[dimension_index(name)]; }

  // Value set carried by the item (or user) of like `l` on dimension `k`.
  Mask like_value(std::size_t l, std::size_t k) const {
    const auto& like = dataset_.likes()[l];
    return masks_[k][dims_[k].side() == Side::item ? like.item : like.user];
  }

  Mask entity_value(std::size_t entity, std::size_t k) const { return masks_[k].at(entity); }

  FeatureQuery query(const std::string& dim, const std::vector<std::string>& labels) const {
    return {dim, ValueSubset::of(dimension(dim).frame, labels)};
  }

  LikeSet all_likes() const {
    LikeSet out(like_count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
  }

 private:
  Dataset dataset_;
  std::vector<Dimension> dims_;
  std::vector<std::vector<Mask>> masks_;  // [dimension][entity on that dimension's side]
};

inline bool matches(Mask value, Mask query, MatchMode mode) {
  return mode == MatchMode::intersection ? (value & query) != 0 : value == query;
}

// L(K): the like pairs whose item (or user) matches the query.
inline LikeSet likes_of(const PreferenceModel& model, const FeatureQuery& q,
                        MatchMode mode = MatchMode::intersection) {
  const std::size_t k = model.dimension_index(q.dimension);
  require_same_frame(model.dimensions()[k].frame, q.values.frame());
  LikeSet out;
  for (std::size_t l = 0; l < model.like_count(); ++l) {
    if (matches(model.like_value(l, k), q.values.bits(), mode)) out.push_back(l);
  }
  return out;
}

// Likes that match every query.
inline LikeSet likes_matching_all(const PreferenceModel& model, const std::vector<FeatureQuery>& queries,
                                  MatchMode mode = MatchMode::intersection) {
  LikeSet out = model.all_likes();
  for (const auto& q : queries) {
    const LikeSet sub = likes_of(model, q, mode);
    LikeSet next;
    std::set_intersection(out.begin(), out.end(), sub.begin(), sub.end(), std::back_inserter(next));
    out = std::move(next);
  }
  return out;
}

inline std::size_t distinct_items(const PreferenceModel& model, const LikeSet& likes) {
  std::set<std::size_t> items;
  for (const auto l : likes) items.insert(model.dataset().likes()[l].item);
  return items.size();
}

inline void require_likes(const PreferenceModel& model) {
  if (model.like_count() == 0) throw NoEvidenceError("the dataset has no likes");
}

// m(K) = |L(K)| / |L| with K ranging over the distinct value sets observed on
// liked items (or users): each like lands on exactly one focal element.
inline MassFunction mass_for_dimension(const PreferenceModel& model, const std::string& dim) {
  require_likes(model);
  const std::size_t k = model.dimension_index(dim);
  std::map<Mask, std::int64_t> counts;
  for (std::size_t l = 0; l < model.like_count(); ++l) ++counts[model.like_value(l, k)];
  const auto total = static_cast<std::int64_t>(model.like_count());
  std::map<Mask, Rational> masses;
  for (const auto& [bits, c] : counts) masses.emplace(bits, Rational(c, total));
  return MassFunction(model.dimensions()[k].frame, masses);
}

// Like counts bucketed by the tuple of value sets over several dimensions,
// taken over a subset of L and divided by `denominator`. With one dimension,
// all likes and denominator |L| this is the per-dimension mass function.
class JointMass {
 public:
  using Key = std::vector<Mask>;

  JointMass(std::vector<Dimension> dims, std::map<Key, std::int64_t> counts, std::int64_t denominator)
      : dims_(std::move(dims)), counts_(std::move(counts)), denominator_(denominator) {
    if (denominator_ <= 0) throw NoEvidenceError("joint mass with no likes to normalize by");
  }

  const std::vector<Dimension>& dimensions() const { return dims_; }
  const std::map<Key, std::int64_t>& counts() const { return counts_; }
  std::int64_t denominator() const { return denominator_; }

  std::int64_t total_count() const {
    std::int64_t t = 0;
    for (const auto& [key, c] : counts_) t += c;
    return t;
  }
  Rational total() const { return Rational(total_count(), denominator_); }

  Rational mass(const Key& key) const {
    const auto it = counts_.find(key);
    return it == counts_.end() ? Rational(0) : Rational(it->second, denominator_);
  }

  // Component-wise: Bel counts tuples contained in the query on every
  // dimension, Pl counts tuples meeting the query on every dimension.
  IntervalProbability interval(const Key& query) const {
    if (query.size() != dims_.size()) throw Error("joint query arity does not match the joint mass");
    std::int64_t bel = 0;
    std::int64_t pl = 0;
    for (const auto& [key, c] : counts_) {
      bool inside = true;
      bool meets = true;
      for (std::size_t i = 0; i < key.size(); ++i) {
        inside = inside && (key[i] & ~query[i]) == 0;
        meets = meets && (key[i] & query[i]) != 0;
      }
      if (inside) bel += c;
      if (meets) pl += c;
    }
    return {Rational(bel, denominator_), Rational(pl, denominator_)};
  }

  // Only valid when the joint mass is over one dimension and sums to one.
  MassFunction as_mass_function() const {
    if (dims_.size() != 1) throw Error("joint mass spans more than one dimension");
    std::map<Mask, Rational> masses;
    for (const auto& [key, c] : counts_) masses.emplace(key[0], Rational(c, denominator_));
    return MassFunction(dims_[0].frame, masses);
  }

  std::string label(const Key& key, const std::string& sep = " & ") const {
    std::string out;
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i > 0) out += sep;
      out += ValueSubset(dims_[i].frame, key[i]).to_string();
    }
    return out;
  }

 private:
  std::vector<Dimension> dims_;
  std::map<Key, std::int64_t> counts_;
  std::int64_t denominator_;
};

inline JointMass joint_mass(const PreferenceModel& model, const std::vector<std::string>& dims, const LikeSet& likes,
                            std::int64_t denominator) {
  if (dims.empty()) throw Error("joint mass needs at least one dimension");
  std::vector<std::size_t> idx;
  std::vector<Dimension> selected;
  for (const auto& name : dims) {
    const std::size_t k = model.dimension_index(name);
    if (std::find(idx.begin(), idx.end(), k) != idx.end()) throw Error("dimension '" + name + "' listed twice");
    idx.push_back(k);
    selected.push_back(model.dimensions()[k]);
  }
  std::map<JointMass::Key, std::int64_t> counts;
  JointMass::Key key(idx.size());
  for (const auto l : likes) {
    for (std::size_t i = 0; i < idx.size(); ++i) key[i] = model.like_value(l, idx[i]);
    ++counts[key];
  }
  return JointMass(std::move(selected), std::move(counts), denominator);
}

enum class FusionOp { conjunction, disjunction };

inline const char* to_string(FusionOp op) { return op == FusionOp::conjunction ? "conjunction" : "disjunction"; }

struct FusedFocal {
  Mask first;
  Mask second;
  std::int64_t count;  // |L(F1) ∩ L(F2)| or |L(F1) ∪ L(F2)|
};

// Result of fusing two dimensions through their like sets.
struct Fusion {
  FusionOp op;
  Dimension first;
  Dimension second;
  std::int64_t like_count;               // |L|
  std::vector<FusedFocal> focals;        // pairs of per-dimension focal elements
  JointMass joint;                       // like counts by (F1, F2); each like counted once

  // The queried K1 ⊙ K2 (or K1 ⊕ K2) itself.
  Mask query_first;
  Mask query_second;
  MatchMode match;
  std::int64_t query_pairs;  // like pairs in L(K1) ∩/∪ L(K2)
  std::int64_t query_items;  // distinct items among them (diagnostic)

  Rational mass(Mask f1, Mask f2) const {
    for (const auto& f : focals) {
      if (f.first == f1 && f.second == f2) return Rational(f.count, like_count);
    }
    return 0;
  }

  Rational query_mass() const { return Rational(query_pairs, like_count); }

  // Bel/Pl of a pair query: a like supports the query when its value set is
  // inside (Bel) or meets (Pl) the query on both dimensions (conjunction) or
  // on either dimension (disjunction).
  IntervalProbability interval(const ValueSubset& k1, const ValueSubset& k2) const {
    require_same_frame(first.frame, k1.frame());
    require_same_frame(second.frame, k2.frame());
    std::int64_t bel = 0;
    std::int64_t pl = 0;
    for (const auto& [key, c] : joint.counts()) {
      const bool in1 = (key[0] & ~k1.bits()) == 0;
      const bool in2 = (key[1] & ~k2.bits()) == 0;
      const bool meet1 = (key[0] & k1.bits()) != 0;
      const bool meet2 = (key[1] & k2.bits()) != 0;
      if (op == FusionOp::conjunction ? (in1 && in2) : (in1 || in2)) bel += c;
      if (op == FusionOp::conjunction ? (meet1 && meet2) : (meet1 || meet2)) pl += c;
    }
    return {Rational(bel, like_count), Rational(pl, like_count)};
  }

  IntervalProbability query_interval() const {
    return interval(ValueSubset(first.frame, query_first), ValueSubset(second.frame, query_second));
  }
};

namespace detail {

inline Fusion fuse(const PreferenceModel& model, const FeatureQuery& q1, const FeatureQuery& q2, FusionOp op,
                   MatchMode mode) {
  require_likes(model);
  const std::size_t k1 = model.dimension_index(q1.dimension);
  const std::size_t k2 = model.dimension_index(q2.dimension);
  if (k1 == k2) {
    throw Error("cannot fuse dimension '" + q1.dimension +
                "' with itself; use Dempster's rule to combine evidence on one frame");
  }
  const auto total = static_cast<std::int64_t>(model.like_count());
  JointMass joint = joint_mass(model, {q1.dimension, q2.dimension}, model.all_likes(), total);

  std::map<Mask, std::int64_t> row1;
  std::map<Mask, std::int64_t> row2;
  for (const auto& [key, c] : joint.counts()) {
    row1[key[0]] += c;
    row2[key[1]] += c;
  }
  std::vector<FusedFocal> focals;
  for (const auto& [f1, c1] : row1) {
    for (const auto& [f2, c2] : row2) {
      const std::int64_t both = [&] {
        const auto it = joint.counts().find({f1, f2});
        return it == joint.counts().end() ? std::int64_t{0} : it->second;
      }();
      const std::int64_t c = op == FusionOp::conjunction ? both : c1 + c2 - both;
      if (c > 0) focals.push_back({f1, f2, c});
    }
  }

  const LikeSet l1 = likes_of(model, q1, mode);
  const LikeSet l2 = likes_of(model, q2, mode);
  LikeSet combined;
  if (op == FusionOp::conjunction) {
    std::set_intersection(l1.begin(), l1.end(), l2.begin(), l2.end(), std::back_inserter(combined));
  } else {
    std::set_union(l1.begin(), l1.end(), l2.begin(), l2.end(), std::back_inserter(combined));
  }

  return Fusion{op,
                model.dimensions()[k1],
                model.dimensions()[k2],
                total,
                std::move(focals),
                std::move(joint),
                q1.values.bits(),
                q2.values.bits(),
                mode,
                static_cast<std::int64_t>(combined.size()),
                static_cast<std::int64_t>(distinct_items(model, combined))};
}

}  // namespace detail

// K1 ⊙ K2: L(K) = L(K1) ∩ L(K2).
inline Fusion conjoin(const PreferenceModel& model, const FeatureQuery& q1, const FeatureQuery& q2,
                      MatchMode mode = MatchMode::intersection) {
  return detail::fuse(model, q1, q2, FusionOp::conjunction, mode);
}

// K1 ⊕ K2: L(K) = L(K1) ∪ L(K2), overlapping like pairs counted once.
inline Fusion disjoin(const PreferenceModel& model, const FeatureQuery& q1, const FeatureQuery& q2,
                      MatchMode mode = MatchMode::intersection) {
  return detail::fuse(model, q1, q2, FusionOp::disjunction, mode);
}

}  // namespace dsmatch
