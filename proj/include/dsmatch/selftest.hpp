#pragma once

#include <algorithm>
#include <iterator>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dsmatch/dataset.hpp"
#include "dsmatch/evidence.hpp"
#include "dsmatch/format.hpp"
#include "dsmatch/preference.hpp"
#include "dsmatch/rational.hpp"

namespace dsmatch {

struct SelfTestRow {
  std::string name;
  std::string reference;  // value the catalog is documented to produce
  std::string computed;   // value produced by the engine
  std::string note;       // reading used and alternatives, when the reference value is ambiguous
  bool pass = false;
};

namespace detail {

// Like pairs referring to a dimension query, computed straight from the
// dataset's strings. Used to cross-check the engine, so it shares no code with
// likes_of().
inline std::set<std::pair<std::string, std::string>> oracle_likes(const Dataset& d, const std::string& dim,
                                                                  const std::vector<std::string>& query,
                                                                  bool exact) {
  const Side side = d.dimension(dim).side;
  std::vector<std::string> q = query;
  std::sort(q.begin(), q.end());
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [item_id, user_id] : d.like_ids()) {
    const Entity& e = side == Side::item ? d.items()[*d.item_index(item_id)] : d.users()[*d.user_index(user_id)];
    const auto& vals = e.values.at(dim);
    bool hit = false;
    if (exact) {
      hit = vals == q;
    } else {
      for (const auto& v : vals) hit = hit || std::find(q.begin(), q.end(), v) != q.end();
    }
    if (hit) out.emplace(item_id, user_id);
  }
  return out;
}

}  // namespace detail

// Reproduces every reference number of the toy catalog against `d`.
inline std::vector<SelfTestRow> run_selftest(const Dataset& d) {
  const PreferenceModel model(d);
  const auto total = static_cast<std::int64_t>(model.like_count());
  const FractionStyle style{total, false};
  std::vector<SelfTestRow> rows;

  auto check = [&](std::string name, const Rational& expected, const Rational& actual, std::string note = {}) {
    rows.push_back({std::move(name), format_fraction(expected, style), format_fraction(actual, style),
                    std::move(note), expected == actual});
  };
  auto mass = [&](const std::string& dim, const std::vector<std::string>& values) {
    return mass_for_dimension(model, dim).mass_of(ValueSubset::of(model.dimension(dim).frame, values));
  };

  rows.push_back({"|I|, |U|, |L|", "10, 4, 15",
                  std::to_string(d.items().size()) + ", " + std::to_string(d.users().size()) + ", " +
                      std::to_string(total),
                  {}, d.items().size() == 10 && d.users().size() == 4 && total == 15});

  check("Stars: m(De Niro, Bacon, Pitt)", Rational(2, 15), mass("Stars", {"Robert De Niro", "Kevin Bacon", "Brad Pitt"}));
  check("Director: m(Boyle)", Rational(4, 15), mass("Director", {"Boyle"}));
  check("Year: m(1996)", Rational(5, 15), mass("Year", {"1996"}));
  check("Genre: m(Drama)", Rational(3, 15), mass("Genre", {"Drama"}));
  check("Age: m(30s)", Rational(8, 15), mass("Age", {"30s"}));
  check("Gender: m(F)", Rational(5, 15), mass("Gender", {"F"}));
  check("Location: m(IT)", Rational(11, 15), mass("Location", {"IT"}));
  check("Interests: m(Movies, Books)", Rational(3, 15), mass("Interests", {"Movies", "Books"}));

  {
    const MassFunction director = mass_for_dimension(model, "Director");
    const auto sb = ValueSubset::of(model.dimension("Director").frame, {"Scorsese", "Boyle"});
    const Rational sum = mass("Director", {"Scorsese"}) + mass("Director", {"Boyle"});
    check("Bel(Scorsese, Boyle) = m(Scorsese) + m(Boyle)", sum, belief(director, sb), "additive single-valued");
    check("Pl(Scorsese, Boyle) = m(Scorsese) + m(Boyle)", sum, plausibility(director, sb), "additive single-valued");
  }

  {
    const MassFunction genre = mass_for_dimension(model, "Genre");
    const auto q = ValueSubset::of(model.dimension("Genre").frame, {"Adventure", "Comedy", "Sci-Fi", "Drama"});
    check("Bel(Adventure, Comedy, Sci-Fi, Drama)", Rational(8, 15), belief(genre, q));
    check("Pl(Adventure, Comedy, Sci-Fi, Drama)", Rational(1), plausibility(genre, q));
  }

  {
    const auto k1 = model.query("Director", {"Zemeckis"});
    const auto k2 = model.query("Genre", {"Adventure", "Sci-Fi"});
    const Fusion fi = conjoin(model, k1, k2, MatchMode::intersection);
    const Fusion fe = conjoin(model, k1, k2, MatchMode::exact);
    check("m(Zemeckis (.) Adventure-Sci-Fi)", Rational(1, 15), fi.query_mass(),
          "both readings: intersection " + format_fraction(fi.query_mass(), style) + ", exact " +
              format_fraction(fe.query_mass(), style));
  }

  // Ambiguous reference values: the like-set oracle fixes the expectation and
  // the engine must agree with it exactly.
  {
    const auto k1 = model.query("Director", {"Zemeckis"});
    const auto k2 = model.query("Genre", {"Drama"});
    const Fusion fi = conjoin(model, k1, k2, MatchMode::intersection);
    const Fusion fe = conjoin(model, k1, k2, MatchMode::exact);
    std::set<std::pair<std::string, std::string>> both;
    const auto a = detail::oracle_likes(d, "Director", {"Zemeckis"}, false);
    const auto b = detail::oracle_likes(d, "Genre", {"Drama"}, false);
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(both, both.begin()));
    const Rational oracle(static_cast<std::int64_t>(both.size()), total);
    const IntervalProbability joint = fi.query_interval();
    rows.push_back({"[ambiguous] m(Zemeckis (.) Drama)", "1/15",
                    format_fraction(fi.query_mass(), style) + " (oracle " + format_fraction(oracle, style) + ")",
                    "reading: intersection matching (Drama as a value of the genre set); exact matching gives " +
                        format_fraction(fe.query_mass(), style) + "; component-wise [Bel, Pl] = [" +
                        format_fraction(joint.belief(), style) + ", " + format_fraction(joint.plausibility(), style) +
                        "]",
                    oracle == fi.query_mass()});
  }

  {
    const auto k1 = model.query("Age", {"20s"});
    const auto k2 = model.query("Interests", {"Sport"});
    const Fusion fe = disjoin(model, k1, k2, MatchMode::exact);
    const Fusion fi = disjoin(model, k1, k2, MatchMode::intersection);
    std::set<std::pair<std::string, std::string>> either;
    const auto a = detail::oracle_likes(d, "Age", {"20s"}, true);
    const auto b = detail::oracle_likes(d, "Interests", {"Sport"}, true);
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(either, either.begin()));
    std::set<std::string> items;
    for (const auto& [item, user] : either) items.insert(item);
    const Rational oracle(static_cast<std::int64_t>(either.size()), total);
    rows.push_back({"[ambiguous] m(20s (+) Sport)", "7/15",
                    format_fraction(fe.query_mass(), style) + " (oracle " + format_fraction(oracle, style) + ")",
                    "reading: exact matching, like pairs counted; distinct items " + std::to_string(fe.query_items) +
                        "/15 (oracle " + std::to_string(items.size()) +
                        ") reproduce the reference count; intersection matching gives " +
                        format_fraction(fi.query_mass(), style) + " over " + std::to_string(fi.query_items) +
                        " items",
                    oracle == fe.query_mass() && static_cast<std::int64_t>(items.size()) == fe.query_items});
  }

  return rows;
}

inline bool selftest_passed(const std::vector<SelfTestRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const SelfTestRow& r) { return r.pass; });
}

}  // namespace dsmatch
