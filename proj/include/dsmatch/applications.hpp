#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsmatch/error.hpp"
#include "dsmatch/lattice.hpp"
#include "dsmatch/preference.hpp"
#include "dsmatch/ranking.hpp"

namespace dsmatch {

// Denominator of masses computed over a restricted like set.
//   global: |L| of the whole dataset, so restricted masses sum to the
//           restriction's share of L and stay comparable across selectors.
//   local:  the size of the restriction, so they sum to one.
enum class Normalization { global, local };

inline const char* to_string(Normalization n) { return n == Normalization::global ? "global" : "local"; }

struct QueryOptions {
  MatchMode match = MatchMode::intersection;
  Normalization normalization = Normalization::global;
  LatticeOptions lattice;
};

namespace detail {

inline void require_side(const PreferenceModel& model, const std::string& dim, Side side, const char* hint) {
  if (model.dimension(dim).side() != side) {
    throw Error("dimension '" + dim + "' is a " + to_string(model.dimension(dim).side()) + " dimension; " + hint);
  }
}

inline RankedList rank_joint(const JointMass& joint, const RankStrategy& s) {
  std::vector<std::pair<std::string, IntervalProbability>> labeled;
  for (const auto& [key, count] : joint.counts()) labeled.emplace_back(joint.label(key), joint.interval(key));
  return rank(labeled, s);
}

inline std::int64_t denominator(const PreferenceModel& model, const LikeSet& restricted, Normalization n) {
  return n == Normalization::global ? static_cast<std::int64_t>(model.like_count())
                                    : static_cast<std::int64_t>(restricted.size());
}

}  // namespace detail

// Ranks the focal elements of one item dimension (or the focal tuples of
// several item dimensions in conjunction) by their interval probability.
// User profiles play no part. With `by_class`, a single dimension is ranked by
// the Cr-minimal representative of every non-empty belief class instead.
inline RankedList recommend(const PreferenceModel& model, const std::vector<std::string>& dims,
                            const RankStrategy& s, bool by_class = false, const QueryOptions& opts = {}) {
  require_likes(model);
  if (dims.empty()) throw Error("recommend needs at least one item dimension");
  for (const auto& d : dims) detail::require_side(model, d, Side::item, "use target_audience for user dimensions");

  if (by_class) {
    if (dims.size() != 1) throw Error("class-based recommendation works on a single dimension");
    const MassFunction m = mass_for_dimension(model, dims[0]);
    std::vector<std::pair<std::string, IntervalProbability>> labeled;
    for (const auto& cls : cr_classes(m, opts.lattice)) {
      if (cls.defining_set.empty()) continue;
      labeled.emplace_back(cls.representative.to_string(), interval(m, cls.representative));
    }
    return rank(labeled, s);
  }
  const auto total = static_cast<std::int64_t>(model.like_count());
  return detail::rank_joint(joint_mass(model, dims, model.all_likes(), total), s);
}

// Restricts L to likes of content matching every query and ranks the focal
// tuples of the given profile dimensions over that restriction.
inline RankedList target_audience(const PreferenceModel& model, const std::vector<FeatureQuery>& content,
                                  const std::vector<std::string>& profile_dims, const RankStrategy& s,
                                  const QueryOptions& opts = {}) {
  require_likes(model);
  if (profile_dims.empty()) throw Error("target_audience needs at least one profile dimension");
  for (const auto& q : content) detail::require_side(model, q.dimension, Side::item, "content must be item-side");
  for (const auto& d : profile_dims) detail::require_side(model, d, Side::user, "profile dimensions are user-side");
  const LikeSet restricted = likes_matching_all(model, content, opts.match);
  if (restricted.empty()) throw NoEvidenceError("no likes match the content selection");
  return detail::rank_joint(
      joint_mass(model, profile_dims, restricted, detail::denominator(model, restricted, opts.normalization)), s);
}

// Same, for the likes of a single item.
inline RankedList target_audience(const PreferenceModel& model, const std::string& item_id,
                                  const std::vector<std::string>& profile_dims, const RankStrategy& s,
                                  const QueryOptions& opts = {}) {
  require_likes(model);
  const auto item = model.dataset().item_index(item_id);
  if (!item) throw DatasetError("unknown item '" + item_id + "'");
  for (const auto& d : profile_dims) detail::require_side(model, d, Side::user, "profile dimensions are user-side");
  LikeSet restricted;
  for (std::size_t l = 0; l < model.like_count(); ++l) {
    if (model.dataset().likes()[l].item == *item) restricted.push_back(l);
  }
  if (restricted.empty()) throw NoEvidenceError("item '" + item_id + "' has no likes");
  return detail::rank_joint(
      joint_mass(model, profile_dims, restricted, detail::denominator(model, restricted, opts.normalization)), s);
}

enum class BundleDirection { contents_to_users, users_to_contents };

inline const char* to_string(BundleDirection d) {
  return d == BundleDirection::contents_to_users ? "contents-to-users" : "users-to-contents";
}

struct BundleProposal {
  BundleDirection direction;
  std::vector<FeatureQuery> selector;
  RankedList result;
};

// Fixes one side with a conjunction of selectors and ranks the other side over
// the likes that satisfy it. Without target dimensions the individual users
// (contents→users) or items (users→contents) are ranked, including those with
// no matching like.
inline BundleProposal bundle(const PreferenceModel& model, const std::vector<FeatureQuery>& selector,
                             BundleDirection direction, const RankStrategy& s,
                             const std::vector<std::string>& target_dims = {}, const QueryOptions& opts = {}) {
  require_likes(model);
  if (selector.empty()) throw Error("bundle selector is empty");
  const Side fixed = direction == BundleDirection::contents_to_users ? Side::item : Side::user;
  const Side inferred = fixed == Side::item ? Side::user : Side::item;
  for (const auto& q : selector) {
    if (model.dimension(q.dimension).side() != fixed) {
      throw Error(std::string("bundle selector mixes sides: '") + q.dimension + "' is not a " + to_string(fixed) +
                  " dimension as required by " + to_string(direction));
    }
  }
  for (const auto& d : target_dims) {
    detail::require_side(model, d, inferred, "bundle targets must be on the inferred side");
  }

  const LikeSet restricted = likes_matching_all(model, selector, opts.match);
  if (restricted.empty()) throw NoEvidenceError("no likes match the bundle selector");
  const std::int64_t denom = detail::denominator(model, restricted, opts.normalization);

  if (!target_dims.empty()) {
    return {direction, selector, detail::rank_joint(joint_mass(model, target_dims, restricted, denom), s)};
  }

  const auto& entities = model.dataset().entities(inferred);
  std::vector<std::int64_t> counts(entities.size(), 0);
  for (const auto l : restricted) {
    const auto& like = model.dataset().likes()[l];
    ++counts[inferred == Side::item ? like.item : like.user];
  }
  std::vector<std::pair<std::string, IntervalProbability>> labeled;
  for (std::size_t e = 0; e < entities.size(); ++e) {
    labeled.emplace_back(entities[e].id, IntervalProbability::point(Rational(counts[e], denom)));
  }
  return {direction, selector, rank(labeled, s)};
}

struct MergeStep {
  std::string left;   // cluster labels: smallest member id
  std::string right;
  Rational linkage;
};

struct Segmentation {
  std::vector<std::vector<std::string>> user_clusters;  // members sorted, clusters sorted by label
  std::vector<std::vector<std::string>> item_clusters;
  Rational within_score;
  Rational between_score;
  std::vector<MergeStep> user_merges;
  std::vector<MergeStep> item_merges;
};

namespace detail {

// Score of an interval as a single number for strategies that admit one; the
// sampled strategy falls back to the midpoint.
inline Rational scalar_score(const IntervalProbability& p, const RankStrategy& s) {
  switch (s.kind()) {
    case StrategyKind::belief_only: return p.belief();
    case StrategyKind::plausibility_only: return p.plausibility();
    default: return p.midpoint();
  }
}

// Greedy average-linkage agglomeration down to k clusters.
// similarity[i][j] is the score of entities i and j; labels are entity ids.
inline std::vector<std::vector<std::size_t>> agglomerate(const std::vector<std::string>& ids,
                                                         const std::vector<std::vector<Rational>>& similarity,
                                                         std::size_t k, std::vector<MergeStep>& trace) {
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < ids.size(); ++i) clusters.push_back({i});
  auto label = [&](const std::vector<std::size_t>& c) {
    std::string best = ids[c.front()];
    for (const auto i : c) best = std::min(best, ids[i]);
    return best;
  };
  auto linkage = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    Rational sum = 0;
    for (const auto i : a) {
      for (const auto j : b) sum += similarity[i][j];
    }
    return sum / static_cast<std::int64_t>(a.size() * b.size());
  };

  while (clusters.size() > k) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Rational best_link = 0;
    std::pair<std::string, std::string> best_labels;
    for (std::size_t a = 0; a < clusters.size(); ++a) {
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        const Rational link = linkage(clusters[a], clusters[b]);
        std::string la = label(clusters[a]);
        std::string lb = label(clusters[b]);
        if (lb < la) std::swap(la, lb);
        const std::pair<std::string, std::string> lab{std::move(la), std::move(lb)};
        if (!best || link > best_link || (link == best_link && lab < best_labels)) {
          best = {a, b};
          best_link = link;
          best_labels = lab;
        }
      }
    }
    trace.push_back({best_labels.first, best_labels.second, best_link});
    auto& into = clusters[best->first];
    into.insert(into.end(), clusters[best->second].begin(), clusters[best->second].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best->second));
  }
  return clusters;
}

inline std::vector<std::vector<std::string>> named(const std::vector<std::vector<std::size_t>>& clusters,
                                                   const std::vector<std::string>& ids) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : clusters) {
    std::vector<std::string> names;
    for (const auto i : c) names.push_back(ids[i]);
    std::sort(names.begin(), names.end());
    out.push_back(std::move(names));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Pairwise similarity used by segment(): the number of like partners two
// users (or two items) share, over |L|.
inline std::vector<std::vector<Rational>> shared_like_similarity(const PreferenceModel& model, Side side) {
  const auto& ds = model.dataset();
  const std::size_t n = ds.entities(side).size();
  const std::size_t m = ds.entities(side == Side::user ? Side::item : Side::user).size();
  std::vector<std::vector<bool>> liked(n, std::vector<bool>(m, false));
  for (const auto& l : ds.likes()) {
    if (side == Side::user) {
      liked[l.user][l.item] = true;
    } else {
      liked[l.item][l.user] = true;
    }
  }
  const auto total = static_cast<std::int64_t>(ds.likes().size());
  std::vector<std::vector<Rational>> sim(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t common = 0;
      for (std::size_t p = 0; p < m; ++p) common += (liked[i][p] && liked[j][p]) ? 1 : 0;
      sim[i][j] = Rational(common, total);
    }
  }
  return sim;
}

// Clusters users and items separately by greedy average-linkage
// agglomeration, then scores the grid of (user cluster, item cluster) blocks
// by like density. Each user cluster is paired with its densest item cluster
// (lowest label on ties): within_score averages those paired densities over
// the user clusters, between_score averages every unpaired block (zero when
// there is a single item cluster). Both averages weight user clusters equally,
// which makes within_score >= between_score.
inline Segmentation segment(const PreferenceModel& model, std::size_t k_users, std::size_t k_items,
                            const RankStrategy& s) {
  require_likes(model);
  const auto& ds = model.dataset();
  if (k_users < 1 || k_users > ds.users().size()) {
    throw Error("k_users must be in [1, " + std::to_string(ds.users().size()) + "]");
  }
  if (k_items < 1 || k_items > ds.items().size()) {
    throw Error("k_items must be in [1, " + std::to_string(ds.items().size()) + "]");
  }

  auto scored = [&](Side side) {
    auto sim = shared_like_similarity(model, side);
    for (auto& row : sim) {
      for (auto& v : row) v = detail::scalar_score(IntervalProbability::point(v), s);
    }
    return sim;
  };
  auto ids_of = [&](Side side) {
    std::vector<std::string> ids;
    for (const auto& e : ds.entities(side)) ids.push_back(e.id);
    return ids;
  };

  Segmentation out;
  const auto user_ids = ids_of(Side::user);
  const auto item_ids = ids_of(Side::item);
  const auto users = detail::agglomerate(user_ids, scored(Side::user), k_users, out.user_merges);
  const auto items = detail::agglomerate(item_ids, scored(Side::item), k_items, out.item_merges);
  out.user_clusters = detail::named(users, user_ids);
  out.item_clusters = detail::named(items, item_ids);

  // Block densities over the canonical (sorted) cluster order.
  auto index_clusters = [](const std::vector<std::vector<std::string>>& clusters,
                           const std::vector<std::string>& ids) {
    std::vector<std::size_t> of(ids.size());
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      for (const auto& id : clusters[c]) {
        of[static_cast<std::size_t>(std::find(ids.begin(), ids.end(), id) - ids.begin())] = c;
      }
    }
    return of;
  };
  const auto user_of = index_clusters(out.user_clusters, user_ids);
  const auto item_of = index_clusters(out.item_clusters, item_ids);
  std::vector<std::vector<std::int64_t>> block(k_users, std::vector<std::int64_t>(k_items, 0));
  for (const auto& l : ds.likes()) ++block[user_of[l.user]][item_of[l.item]];

  Rational within = 0;
  Rational between = 0;
  for (std::size_t a = 0; a < k_users; ++a) {
    std::vector<Rational> density;
    for (std::size_t b = 0; b < k_items; ++b) {
      const auto cells = static_cast<std::int64_t>(out.user_clusters[a].size() * out.item_clusters[b].size());
      density.emplace_back(block[a][b], cells);
    }
    const auto best = std::max_element(density.begin(), density.end());
    within += *best;
    for (auto it = density.begin(); it != density.end(); ++it) {
      if (it != best) between += *it;
    }
  }
  out.within_score = within / static_cast<std::int64_t>(k_users);
  out.between_score = k_items == 1 ? Rational(0) : between / static_cast<std::int64_t>(k_users * (k_items - 1));
  return out;
}

}  // namespace dsmatch
