#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dsmatch/dataset.hpp"
#include "dsmatch/error.hpp"

namespace dsmatch {

inline constexpr int kSchemaVersion = 1;

enum class DataFormat { json, csv };

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// "a, b ,c" -> {a, b, c}; empty pieces are dropped.
inline std::vector<std::string> split_values(std::string_view cell) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= cell.size()) {
    const std::size_t comma = cell.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? cell.size() : comma;
    std::string piece = trim(cell.substr(start, end - start));
    if (!piece.empty()) out.push_back(std::move(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline Side parse_side(const std::string& s, const std::string& where) {
  if (s == "item") return Side::item;
  if (s == "user") return Side::user;
  throw DatasetError(where + ": side must be \"item\" or \"user\", got \"" + s + "\"");
}

inline Arity parse_arity(const std::string& s, const std::string& where) {
  if (s == "single") return Arity::single;
  if (s == "multi") return Arity::multi;
  throw DatasetError(where + ": arity must be \"single\" or \"multi\", got \"" + s + "\"");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// JSON

inline Dataset dataset_from_json(const nlohmann::json& doc) {
  using nlohmann::json;
  auto require = [](const json& obj, const char* key, json::value_t type, const std::string& where) -> const json& {
    if (!obj.is_object() || !obj.contains(key)) throw DatasetError(where + ": missing \"" + key + "\"");
    const json& v = obj.at(key);
    const bool ok = type == json::value_t::number_integer ? v.is_number_integer() : v.type() == type;
    if (!ok) throw DatasetError(where + "." + key + ": unexpected type " + v.type_name());
    return v;
  };

  if (!doc.is_object()) throw DatasetError("dataset document must be a JSON object");
  const int version = require(doc, "schema_version", json::value_t::number_integer, "$").get<int>();
  if (version != kSchemaVersion) {
    throw DatasetError("$.schema_version: unsupported version " + std::to_string(version));
  }

  std::vector<DimensionSpec> dims;
  const json& jdims = require(doc, "dimensions", json::value_t::array, "$");
  for (std::size_t i = 0; i < jdims.size(); ++i) {
    const std::string where = "$.dimensions[" + std::to_string(i) + "]";
    DimensionSpec d;
    d.name = require(jdims[i], "name", json::value_t::string, where).get<std::string>();
    d.side = detail::parse_side(require(jdims[i], "side", json::value_t::string, where).get<std::string>(), where);
    d.arity =
        detail::parse_arity(require(jdims[i], "arity", json::value_t::string, where).get<std::string>(), where);
    dims.push_back(std::move(d));
  }

  auto entities = [&](const char* key) {
    std::vector<Entity> out;
    const json& arr = require(doc, key, json::value_t::array, "$");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = std::string("$.") + key + "[" + std::to_string(i) + "]";
      Entity e;
      e.id = require(arr[i], "id", json::value_t::string, where).get<std::string>();
      const json& vals = require(arr[i], "values", json::value_t::object, where);
      for (const auto& [dim, cell] : vals.items()) {
        std::vector<std::string> labels;
        if (cell.is_string()) {
          labels = detail::split_values(cell.get<std::string>());
        } else if (cell.is_array()) {
          for (const auto& v : cell) {
            if (!v.is_string()) throw DatasetError(where + ".values." + dim + ": values must be strings");
            auto t = detail::trim(v.get<std::string>());
            if (t.empty()) throw DatasetError(where + ".values." + dim + ": empty value");
            labels.push_back(std::move(t));
          }
        } else {
          throw DatasetError(where + ".values." + dim + ": expected a string or an array of strings");
        }
        e.values.emplace(dim, std::move(labels));
      }
      out.push_back(std::move(e));
    }
    return out;
  };
  auto items = entities("items");
  auto users = entities("users");

  std::vector<std::pair<std::string, std::string>> likes;
  const json& jlikes = require(doc, "likes", json::value_t::array, "$");
  for (std::size_t i = 0; i < jlikes.size(); ++i) {
    const std::string where = "$.likes[" + std::to_string(i) + "]";
    likes.emplace_back(require(jlikes[i], "item", json::value_t::string, where).get<std::string>(),
                       require(jlikes[i], "user", json::value_t::string, where).get<std::string>());
  }
  return Dataset(std::move(dims), std::move(items), std::move(users), likes);
}

inline Dataset dataset_from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DatasetError(std::string("malformed JSON: ") + e.what());
  }
  return dataset_from_json(doc);
}

inline nlohmann::json dataset_to_json(const Dataset& d) {
  using nlohmann::json;
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["dimensions"] = json::array();
  for (const auto& dim : d.dimensions()) {
    doc["dimensions"].push_back({{"name", dim.name}, {"side", to_string(dim.side)}, {"arity", to_string(dim.arity)}});
  }
  auto entities = [&](Side side) {
    json arr = json::array();
    for (const auto& e : d.entities(side)) {
      json vals = json::object();
      for (const auto& dim : d.dimensions()) {
        if (dim.side != side) continue;
        const auto& v = e.values.at(dim.name);
        vals[dim.name] = dim.arity == Arity::single ? json(v.front()) : json(v);
      }
      arr.push_back({{"id", e.id}, {"values", vals}});
    }
    return arr;
  };
  doc["items"] = entities(Side::item);
  doc["users"] = entities(Side::user);
  doc["likes"] = json::array();
  for (const auto& [item, user] : d.like_ids()) doc["likes"].push_back({{"item", item}, {"user", user}});
  return doc;
}

// ---------------------------------------------------------------------------
// CSV
//
// The three-block layout of a choice matrix:
//
//   ,,,,Age,30s,30s,20s,40s                  <- one row per user dimension
//   ,,,,Interests[multi],"Movies,Books",...
//   Director,Year,Stars[multi],Genre[multi],I\U,1,2,3,4   <- header
//   Boyle,1996,"Ewan McGregor,Ewen Bremner",Drama,0,x,x,x,
//
// Item dimensions fill the columns left of the I\U corner, user ids follow it.
// A dimension name suffixed with [multi] is multi-valued; cells of multi-valued
// dimensions list their values separated by commas. Any non-empty mark other
// than "0" in the choice matrix is a like.

inline constexpr std::string_view kCsvCorner = "I\\U";

namespace detail {

// RFC 4180 records: comma-separated, double-quoted fields may contain commas,
// newlines and doubled quotes.
inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw DatasetError("CSV: unterminated quoted field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos && s == trim(s)) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline DimensionSpec parse_csv_dimension(const std::string& cell, Side side) {
  constexpr std::string_view suffix = "[multi]";
  std::string name = trim(cell);
  Arity arity = Arity::single;
  if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
    name = trim(name.substr(0, name.size() - suffix.size()));
    arity = Arity::multi;
  }
  return {name, side, arity};
}

inline std::string at_cell(std::size_t row, std::size_t col) {
  return "CSV row " + std::to_string(row + 1) + ", column " + std::to_string(col + 1);
}

}  // namespace detail

inline Dataset dataset_from_csv_text(const std::string& text) {
  const auto rows = detail::parse_csv(text);
  auto cell = [&](std::size_t r, std::size_t c) -> std::string {
    return c < rows[r].size() ? detail::trim(rows[r][c]) : std::string();
  };

  std::optional<std::size_t> header;
  std::size_t corner = 0;
  for (std::size_t r = 0; r < rows.size() && !header; ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (detail::trim(rows[r][c]) == kCsvCorner) {
        header = r;
        corner = c;
        break;
      }
    }
  }
  if (!header) throw DatasetError("CSV: no header row with the \"I\\U\" corner cell");

  std::vector<DimensionSpec> dims;
  std::vector<std::string> user_ids;
  for (std::size_t c = corner + 1; c < rows[*header].size(); ++c) {
    const std::string id = cell(*header, c);
    if (id.empty()) throw DatasetError(detail::at_cell(*header, c) + ": empty user id");
    user_ids.push_back(id);
  }
  std::vector<User> users(user_ids.size());
  for (std::size_t u = 0; u < users.size(); ++u) users[u].id = user_ids[u];

  for (std::size_t r = 0; r < *header; ++r) {
    for (std::size_t c = 0; c < corner; ++c) {
      if (!cell(r, c).empty()) {
        throw DatasetError(detail::at_cell(r, c) + ": profile rows must leave the item columns empty");
      }
    }
    if (cell(r, corner).empty()) throw DatasetError(detail::at_cell(r, corner) + ": missing profile dimension name");
    if (rows[r].size() > corner + 1 + users.size()) {
      throw DatasetError(detail::at_cell(r, corner + 1 + users.size()) + ": more values than users");
    }
    const DimensionSpec dim = detail::parse_csv_dimension(cell(r, corner), Side::user);
    for (std::size_t u = 0; u < users.size(); ++u) {
      users[u].values[dim.name] = detail::split_values(cell(r, corner + 1 + u));
    }
    dims.push_back(dim);
  }

  std::vector<DimensionSpec> item_dims;
  for (std::size_t c = 0; c < corner; ++c) {
    if (cell(*header, c).empty()) throw DatasetError(detail::at_cell(*header, c) + ": missing item dimension name");
    item_dims.push_back(detail::parse_csv_dimension(cell(*header, c), Side::item));
  }

  std::vector<Item> items;
  std::vector<std::pair<std::string, std::string>> likes;
  for (std::size_t r = *header + 1; r < rows.size(); ++r) {
    if (rows[r].size() > corner + 1 + users.size()) {
      throw DatasetError(detail::at_cell(r, corner + 1 + users.size()) + ": more marks than users");
    }
    Item item;
    item.id = cell(r, corner);
    if (item.id.empty()) throw DatasetError(detail::at_cell(r, corner) + ": missing item id");
    for (std::size_t c = 0; c < corner; ++c) {
      auto labels = detail::split_values(cell(r, c));
      if (labels.empty()) throw DatasetError(detail::at_cell(r, c) + ": missing value for '" + item_dims[c].name + "'");
      if (item_dims[c].arity == Arity::single && labels.size() != 1) {
        throw DatasetError(detail::at_cell(r, c) + ": single-valued dimension '" + item_dims[c].name +
                           "' has several values");
      }
      item.values[item_dims[c].name] = std::move(labels);
    }
    for (std::size_t u = 0; u < users.size(); ++u) {
      const std::string mark = cell(r, corner + 1 + u);
      if (!mark.empty() && mark != "0") likes.emplace_back(item.id, users[u].id);
    }
    items.push_back(std::move(item));
  }

  std::vector<DimensionSpec> all = item_dims;
  all.insert(all.end(), dims.begin(), dims.end());
  return Dataset(std::move(all), std::move(items), std::move(users), likes);
}

inline std::string dataset_to_csv(const Dataset& d) {
  std::vector<const DimensionSpec*> item_dims;
  std::vector<const DimensionSpec*> user_dims;
  for (const auto& dim : d.dimensions()) (dim.side == Side::item ? item_dims : user_dims).push_back(&dim);
  auto dim_name = [](const DimensionSpec& dim) {
    return detail::csv_quote(dim.arity == Arity::multi ? dim.name + "[multi]" : dim.name);
  };
  auto join_values = [](const ValueSet& v) {
    std::string s;
    for (const auto& x : v) {
      if (!s.empty()) s += ", ";
      s += x;
    }
    return detail::csv_quote(s);
  };

  std::ostringstream os;
  for (const auto* dim : user_dims) {
    os << std::string(item_dims.size(), ',') << dim_name(*dim);
    for (const auto& u : d.users()) os << ',' << join_values(u.values.at(dim->name));
    os << '\n';
  }
  for (const auto* dim : item_dims) os << dim_name(*dim) << ',';
  os << kCsvCorner;
  for (const auto& u : d.users()) os << ',' << detail::csv_quote(u.id);
  os << '\n';

  std::vector<std::vector<bool>> liked(d.items().size(), std::vector<bool>(d.users().size(), false));
  for (const auto& l : d.likes()) liked[l.item][l.user] = true;
  for (std::size_t i = 0; i < d.items().size(); ++i) {
    const auto& item = d.items()[i];
    for (const auto* dim : item_dims) os << join_values(item.values.at(dim->name)) << ',';
    os << detail::csv_quote(item.id);
    for (std::size_t u = 0; u < d.users().size(); ++u) os << ',' << (liked[i][u] ? "x" : "");
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

inline std::optional<DataFormat> format_from_path(std::string path) {
  std::transform(path.begin(), path.end(), path.begin(), [](unsigned char c) { return std::tolower(c); });
  auto ends_with = [&](std::string_view ext) {
    return path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
  };
  if (ends_with(".json")) return DataFormat::json;
  if (ends_with(".csv")) return DataFormat::csv;
  return std::nullopt;
}

inline Dataset ingest(const std::string& path, std::optional<DataFormat> format = std::nullopt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot read '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (!format) format = format_from_path(path);
  if (!format) throw DatasetError("cannot infer the format of '" + path + "'; use .json or .csv");
  return *format == DataFormat::json ? dataset_from_json_text(text) : dataset_from_csv_text(text);
}

}  // namespace dsmatch
