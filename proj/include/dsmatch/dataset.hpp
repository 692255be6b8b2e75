#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dsmatch/error.hpp"

namespace dsmatch {

enum class Side { item, user };
enum class Arity { single, multi };

inline const char* to_string(Side s) { return s == Side::item ? "item" : "user"; }
inline const char* to_string(Arity a) { return a == Arity::single ? "single" : "multi"; }

struct DimensionSpec {
  std::string name;
  Side side = Side::item;
  Arity arity = Arity::single;

  friend bool operator==(const DimensionSpec&, const DimensionSpec&) = default;
};

// Sorted, duplicate-free labels of one cell.
using ValueSet = std::vector<std::string>;

inline ValueSet normalize_values(std::vector<std::string> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

// An item (characteristics) or a user (profile): one value set per dimension
// of its side.
struct Entity {
  std::string id;
  std::map<std::string, ValueSet> values;

  friend bool operator==(const Entity&, const Entity&) = default;
};

using Item = Entity;
using User = Entity;

struct Like {
  std::size_t item;
  std::size_t user;

  friend bool operator==(const Like&, const Like&) = default;
  friend auto operator<=>(const Like&, const Like&) = default;
};

// Items, users and the set of (item, user) like pairs. Validated on
// construction and immutable afterwards.
class Dataset {
 public:
  Dataset(std::vector<DimensionSpec> dimensions, std::vector<Item> items, std::vector<User> users,
          const std::vector<std::pair<std::string, std::string>>& likes)
      : dimensions_(std::move(dimensions)), items_(std::move(items)), users_(std::move(users)) {
    std::set<std::string> names;
    for (const auto& d : dimensions_) {
      if (d.name.empty()) throw DatasetError("dimension names must be non-empty");
      if (!names.insert(d.name).second) throw DatasetError("duplicate dimension '" + d.name + "'");
    }
    index_entities(items_, Side::item, item_index_);
    index_entities(users_, Side::user, user_index_);

    std::set<Like> seen;
    for (const auto& [item_id, user_id] : likes) {
      const auto i = item_index_.find(item_id);
      if (i == item_index_.end()) throw DatasetError("like references unknown item '" + item_id + "'");
      const auto u = user_index_.find(user_id);
      if (u == user_index_.end()) throw DatasetError("like references unknown user '" + user_id + "'");
      const Like l{i->second, u->second};
      if (!seen.insert(l).second) {
        throw DatasetError("duplicate like (" + item_id + ", " + user_id + ")");
      }
    }
    likes_.assign(seen.begin(), seen.end());
  }

  const std::vector<DimensionSpec>& dimensions() const { return dimensions_; }
  const std::vector<Item>& items() const { return items_; }
  const std::vector<User>& users() const { return users_; }
  // Sorted by (item index, user index).
  const std::vector<Like>& likes() const { return likes_; }

  const DimensionSpec& dimension(const std::string& name) const {
    for (const auto& d : dimensions_) {
      if (d.name == name) return d;
    }
    throw UnknownDimensionError(name);
  }

  std::optional<std::size_t> item_index(const std::string& id) const { return find(item_index_, id); }
  std::optional<std::size_t> user_index(const std::string& id) const { return find(user_index_, id); }

  const std::vector<Entity>& entities(Side side) const { return side == Side::item ? items_ : users_; }

  std::vector<std::pair<std::string, std::string>> like_ids() const {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(likes_.size());
    for (const auto& l : likes_) out.emplace_back(items_[l.item].id, users_[l.user].id);
    return out;
  }

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.dimensions_ == b.dimensions_ && a.items_ == b.items_ && a.users_ == b.users_ &&
           a.like_ids() == b.like_ids();
  }

 private:
  static std::optional<std::size_t> find(const std::unordered_map<std::string, std::size_t>& idx,
                                         const std::string& id) {
    const auto it = idx.find(id);
    if (it == idx.end()) return std::nullopt;
    return it->second;
  }

  void index_entities(std::vector<Entity>& entities, Side side,
                      std::unordered_map<std::string, std::size_t>& index) {
    const char* what = to_string(side);
    for (std::size_t e = 0; e < entities.size(); ++e) {
      auto& ent = entities[e];
      if (ent.id.empty()) throw DatasetError(std::string(what) + " ids must be non-empty");
      if (!index.emplace(ent.id, e).second) {
        throw DatasetError("duplicate " + std::string(what) + " id '" + ent.id + "'");
      }
      for (auto& [dim, vals] : ent.values) {
        const auto it = std::find_if(dimensions_.begin(), dimensions_.end(),
                                     [&](const DimensionSpec& d) { return d.name == dim; });
        if (it == dimensions_.end()) {
          throw DatasetError(std::string(what) + " '" + ent.id + "': unknown dimension '" + dim + "'");
        }
        if (it->side != side) {
          throw DatasetError(std::string(what) + " '" + ent.id + "': dimension '" + dim + "' belongs to the " +
                             to_string(it->side) + " side");
        }
        vals = normalize_values(std::move(vals));
        if (std::any_of(vals.begin(), vals.end(), [](const std::string& v) { return v.empty(); })) {
          throw DatasetError(std::string(what) + " '" + ent.id + "': empty value in dimension '" + dim + "'");
        }
      }
      for (const auto& d : dimensions_) {
        if (d.side != side) continue;
        const auto it = ent.values.find(d.name);
        if (it == ent.values.end() || it->second.empty()) {
          throw DatasetError(std::string(what) + " '" + ent.id + "': missing value for dimension '" + d.name + "'");
        }
        if (d.arity == Arity::single && it->second.size() != 1) {
          throw DatasetError(std::string(what) + " '" + ent.id + "': single-valued dimension '" + d.name +
                             "' has " + std::to_string(it->second.size()) + " values");
        }
      }
    }
  }

  std::vector<DimensionSpec> dimensions_;
  std::vector<Item> items_;
  std::vector<User> users_;
  std::vector<Like> likes_;
  std::unordered_map<std::string, std::size_t> item_index_;
  std::unordered_map<std::string, std::size_t> user_index_;
};

}  // namespace dsmatch
