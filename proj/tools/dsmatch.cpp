// dsmatch: command-line front end for the evidential preference engine.
//
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dsmatch/dsmatch.hpp"

namespace {

using dsmatch::FractionStyle;
using dsmatch::Rational;
using nlohmann::json;

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::string data;
  std::string input_format;
  std::string match = "intersection";
  std::string strategy = "midpoint";
  std::uint32_t samples = 101;
  std::uint64_t seed = 42;
  std::string normalization = "global";
  std::size_t bound = dsmatch::kDefaultEnumerationBound;
  std::string output = "table";
  bool reduced = false;
};

dsmatch::RunConfig to_config(const Flags& f) {
  dsmatch::RunConfig c;
  c.match = dsmatch::parse_match_mode(f.match);
  c.strategy = dsmatch::parse_strategy(f.strategy);
  c.samples = f.samples;
  c.seed = f.seed;
  c.normalization = dsmatch::parse_normalization(f.normalization);
  c.bound = f.bound;
  c.output = dsmatch::parse_output_format(f.output);
  c.reduced = f.reduced;
  return c;
}

dsmatch::Dataset load(const Flags& f) {
  if (f.data.empty() || f.data == "skydemo") return dsmatch::skydemo_dataset();
  std::optional<dsmatch::DataFormat> fmt;
  if (f.input_format == "json") fmt = dsmatch::DataFormat::json;
  if (f.input_format == "csv") fmt = dsmatch::DataFormat::csv;
  return dsmatch::ingest(f.data, fmt);
}

json rational_json(const Rational& r, const FractionStyle& style) {
  return {{"fraction", dsmatch::format_fraction(r, style)}, {"value", r.to_double()}};
}

json interval_json(const dsmatch::IntervalProbability& p, const FractionStyle& style) {
  return {{"belief", rational_json(p.belief(), style)}, {"plausibility", rational_json(p.plausibility(), style)}};
}

// "Genre:Adventure,Sci-Fi" -> query on Genre with two values.
dsmatch::FeatureQuery parse_query(const dsmatch::PreferenceModel& model, const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos || colon == 0) {
    throw dsmatch::Error("query '" + spec + "' must look like DIMENSION:VALUE[,VALUE...]");
  }
  const std::string dim = spec.substr(0, colon);
  return model.query(dim, dsmatch::detail::split_values(spec.substr(colon + 1)));
}

std::vector<dsmatch::FeatureQuery> parse_queries(const dsmatch::PreferenceModel& model,
                                                 const std::vector<std::string>& specs) {
  std::vector<dsmatch::FeatureQuery> out;
  for (const auto& s : specs) out.push_back(parse_query(model, s));
  return out;
}

void print_ranked(const dsmatch::RankedList& list, const dsmatch::RunConfig& cfg, const FractionStyle& style,
                  json extra = json::object()) {
  if (cfg.output == dsmatch::OutputFormat::json) {
    json doc = std::move(extra);
    doc["strategy"] = dsmatch::to_string(list.strategy.kind());
    doc["entries"] = json::array();
    for (const auto& e : list.entries) {
      doc["entries"].push_back(
          {{"label", e.label}, {"interval", interval_json(e.interval, style)}, {"score", rational_json(e.score, style)}});
    }
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::cout << "# strategy: " << dsmatch::to_string(list.strategy.kind()) << '\n';
  std::size_t rank = 1;
  for (const auto& e : list.entries) {
    std::cout << rank++ << ". " << e.label << " " << dsmatch::format_interval(e.interval, style)
              << " score " << dsmatch::format_fraction(e.score, style) << '\n';
  }
}

int run_selftest(const dsmatch::Dataset& data, const dsmatch::RunConfig& cfg) {
  const auto rows = dsmatch::run_selftest(data);
  const bool ok = dsmatch::selftest_passed(rows);
  if (cfg.output == dsmatch::OutputFormat::json) {
    json doc = json::array();
    for (const auto& r : rows) {
      doc.push_back({{"check", r.name}, {"reference", r.reference}, {"computed", r.computed}, {"note", r.note},
                     {"pass", r.pass}});
    }
    std::cout << json{{"pass", ok}, {"checks", doc}}.dump(2) << '\n';
  } else {
    for (const auto& r : rows) {
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": reference " << r.reference << ", computed "
                << r.computed;
      if (!r.note.empty()) std::cout << "  [" << r.note << "]";
      std::cout << '\n';
    }
    std::cout << (ok ? "selftest passed" : "selftest FAILED") << '\n';
  }
  return ok ? 0 : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dempster-Shafer preference engine: masses, belief/plausibility and matching queries over an "
               "items x users like matrix."};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key=value config file (keys are long flag names)")
      ->envname("DSMATCH_CONFIG");

  Flags flags;
  app.add_option("--data", flags.data, "Dataset file (.json or .csv); defaults to the built-in skydemo catalog");
  app.add_option("--input-format", flags.input_format, "Override the dataset format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--match", flags.match, "Query matching: intersection|exact")
      ->check(CLI::IsMember({"intersection", "exact"}));
  app.add_option("--strategy", flags.strategy, "Ranking: midpoint|belief|plausibility|sampled")
      ->check(CLI::IsMember({"midpoint", "belief", "plausibility", "sampled"}));
  app.add_option("--samples", flags.samples, "Sample pairs for the sampled strategy (odd)");
  app.add_option("--seed", flags.seed, "Seed for the sampled strategy");
  app.add_option("--normalization", flags.normalization, "Restricted masses over global |L| or the restriction")
      ->check(CLI::IsMember({"global", "local"}));
  app.add_option("--bound", flags.bound, "Largest frame enumerated exhaustively");
  app.add_option("--output", flags.output, "table|json|dot")->check(CLI::IsMember({"table", "json", "dot"}));
  app.add_flag("--reduced", flags.reduced, "Print fractions in lowest terms instead of over |L|");

  std::string dim;
  std::vector<std::string> values;

  auto* mass = app.add_subcommand("mass", "Mass function of one dimension");
  mass->add_option("dimension", dim)->required();

  std::map<std::string, CLI::App*> measure_cmds;
  const std::map<std::string, std::string> measure_help{{"bel", "Belief of a value set on one dimension"},
                                                        {"pl", "Plausibility of a value set on one dimension"},
                                                        {"interval", "[Bel, Pl] of a value set on one dimension"}};
  for (const auto& [name, help] : measure_help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("dimension", dim)->required();
    c->add_option("values", values)->required();
    measure_cmds[name] = c;
  }

  std::string op = "conj";
  std::vector<std::string> fused;
  auto* combine = app.add_subcommand("combine", "Conjunction or disjunction of two dimension queries");
  combine->add_option("--op", op, "conj|disj")->check(CLI::IsMember({"conj", "disj"}));
  combine->add_option("queries", fused, "Two queries DIMENSION:VALUE[,VALUE...]")->required()->expected(2);

  std::string kind = "cr";
  auto* classes = app.add_subcommand("classes", "Cr- or Su-equivalence classes of a dimension");
  classes->add_option("--kind", kind, "cr|su")->check(CLI::IsMember({"cr", "su"}));
  classes->add_option("dimension", dim)->required();

  std::string measure = "bel";
  auto* levels = app.add_subcommand("levels", "Belief or plausibility levels of a dimension");
  levels->add_option("--measure", measure, "bel|pl")->check(CLI::IsMember({"bel", "pl"}));
  levels->add_option("dimension", dim)->required();

  bool dot = false;
  auto* regions = app.add_subcommand("regions", "Hasse diagram with equivalence regions, in DOT");
  regions->add_flag("--dot", dot, "Emit DOT (the only format)");
  regions->add_option("--measure", measure, "bel|pl")->check(CLI::IsMember({"bel", "pl"}));
  regions->add_option("dimension", dim)->required();

  std::vector<std::string> dims;
  bool by_class = false;
  auto* recommend = app.add_subcommand("recommend", "Rank the values of item dimensions (conjoined if several)");
  recommend->add_option("dimensions", dims)->required();
  recommend->add_flag("--classes", by_class, "Rank Cr-minimal class representatives instead of focal elements");

  std::string item_id;
  std::vector<std::string> content;
  std::vector<std::string> profile;
  auto* target = app.add_subcommand("target", "Rank profile values for a content selection");
  auto* item_opt = target->add_option("--item", item_id, "A single item id");
  target->add_option("--content", content, "Item-side queries DIMENSION:VALUES (conjoined)")->excludes(item_opt);
  target->add_option("--profile", profile, "User dimensions to rank")->required();

  std::string direction = "contents-to-users";
  std::vector<std::string> selector;
  std::vector<std::string> targets;
  auto* bundle = app.add_subcommand("bundle", "Rank one side given a selection on the other");
  bundle->add_option("--direction", direction, "contents-to-users|users-to-contents")
      ->check(CLI::IsMember({"contents-to-users", "users-to-contents"}));
  bundle->add_option("--select", selector, "Queries DIMENSION:VALUES on the fixed side (conjoined)")->required();
  bundle->add_option("--target", targets, "Dimensions to rank on the inferred side (default: the entities)");

  std::size_t k_users = 1;
  std::size_t k_items = 1;
  auto* segment = app.add_subcommand("segment", "Cluster users and items");
  segment->add_option("--users", k_users, "Number of user clusters")->required();
  segment->add_option("--items", k_items, "Number of item clusters")->required();

  auto* selftest = app.add_subcommand("selftest", "Reproduce the reference numbers of the skydemo catalog");

  std::string to = "json";
  auto* exporter = app.add_subcommand("export", "Write the dataset in canonical JSON or CSV");
  exporter->add_option("--to", to, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const dsmatch::RunConfig cfg = to_config(flags);
    const dsmatch::Dataset data = load(flags);
    if (selftest->parsed()) return run_selftest(data, cfg);
    if (exporter->parsed()) {
      std::cout << (to == "json" ? dsmatch::dataset_to_json(data).dump(2) + "\n" : dsmatch::dataset_to_csv(data));
      return 0;
    }

    const dsmatch::PreferenceModel model(data);
    const FractionStyle style{static_cast<std::int64_t>(model.like_count()), cfg.reduced};
    const auto opts = cfg.query_options();
    const dsmatch::LatticeOptions lattice{cfg.bound};
    const bool as_json = cfg.output == dsmatch::OutputFormat::json;

    if (mass->parsed()) {
      const auto m = dsmatch::mass_for_dimension(model, dim);
      if (as_json) {
        json doc{{"dimension", dim}, {"like_count", model.like_count()}, {"focals", json::array()}};
        for (const auto& [bits, w] : m.focals()) {
          doc["focals"].push_back({{"values", dsmatch::ValueSubset(m.frame(), bits).labels()},
                                   {"mass", rational_json(w, style)}});
        }
        std::cout << doc.dump(2) << '\n';
      } else {
        for (const auto& [bits, w] : m.focals()) {
          std::cout << dsmatch::ValueSubset(m.frame(), bits).to_string(", ") << " "
                    << dsmatch::format_value(w, style) << '\n';
        }
      }
      return 0;
    }

    for (const auto& [name, cmd] : measure_cmds) {
      if (!cmd->parsed()) continue;
      const auto m = dsmatch::mass_for_dimension(model, dim);
      const auto q = model.query(dim, values);
      const auto iv = dsmatch::interval(m, q.values);
      if (as_json) {
        json doc{{"dimension", dim}, {"values", q.values.labels()}};
        if (name != "pl") doc["belief"] = rational_json(iv.belief(), style);
        if (name != "bel") doc["plausibility"] = rational_json(iv.plausibility(), style);
        std::cout << doc.dump(2) << '\n';
      } else if (name == "bel") {
        std::cout << dsmatch::format_value(iv.belief(), style) << '\n';
      } else if (name == "pl") {
        std::cout << dsmatch::format_value(iv.plausibility(), style) << '\n';
      } else {
        std::cout << dsmatch::format_interval(iv, style) << '\n';
      }
      return 0;
    }

    if (combine->parsed()) {
      const auto q1 = parse_query(model, fused[0]);
      const auto q2 = parse_query(model, fused[1]);
      const auto f = op == "conj" ? dsmatch::conjoin(model, q1, q2, cfg.match) : dsmatch::disjoin(model, q1, q2, cfg.match);
      const auto iv = f.query_interval();
      const char* sym = op == "conj" ? " (.) " : " (+) ";
      if (as_json) {
        json doc{{"op", dsmatch::to_string(f.op)},
                 {"match", dsmatch::to_string(f.match)},
                 {"query", fused[0] + sym + fused[1]},
                 {"mass", rational_json(f.query_mass(), style)},
                 {"like_pairs", f.query_pairs},
                 {"distinct_items", f.query_items},
                 {"interval", interval_json(iv, style)},
                 {"focals", json::array()}};
        for (const auto& ff : f.focals) {
          doc["focals"].push_back({{"first", dsmatch::ValueSubset(f.first.frame, ff.first).labels()},
                                   {"second", dsmatch::ValueSubset(f.second.frame, ff.second).labels()},
                                   {"mass", rational_json(Rational(ff.count, f.like_count), style)}});
        }
        std::cout << doc.dump(2) << '\n';
      } else {
        std::cout << "m(" << fused[0] << sym << fused[1] << ") = " << dsmatch::format_value(f.query_mass(), style)
                  << "  [" << f.query_pairs << " like pairs, " << f.query_items << " distinct items, "
                  << dsmatch::to_string(f.match) << " matching]\n";
        std::cout << "[Bel, Pl] = " << dsmatch::format_interval(iv, style) << '\n';
      }
      return 0;
    }

    if (classes->parsed()) {
      const auto m = dsmatch::mass_for_dimension(model, dim);
      const auto cls = kind == "cr" ? dsmatch::cr_classes(m, lattice) : dsmatch::su_classes(m, lattice);
      if (as_json) {
        json doc = json::array();
        for (const auto& c : cls) {
          json defining = json::array();
          for (const auto& f : c.defining_set) defining.push_back(f.labels());
          doc.push_back({{"kind", dsmatch::to_string(c.kind)},
                         {"defining_set", defining},
                         {"representative", c.representative.labels()},
                         {"size", c.members.size()},
                         {"value", rational_json(*c.value, style)}});
        }
        std::cout << doc.dump(2) << '\n';
      } else {
        for (const auto& c : cls) {
          std::cout << dsmatch::to_string(c.kind) << " {";
          for (std::size_t i = 0; i < c.defining_set.size(); ++i) {
            std::cout << (i ? "; " : "") << c.defining_set[i].to_string();
          }
          std::cout << "} representative " << c.representative.to_string() << ", " << c.members.size()
                    << " subsets, value " << dsmatch::format_value(*c.value, style) << '\n';
        }
      }
      return 0;
    }

    if (levels->parsed()) {
      const auto m = dsmatch::mass_for_dimension(model, dim);
      const auto ls =
          dsmatch::levels(m, measure == "bel" ? dsmatch::Measure::belief : dsmatch::Measure::plausibility, lattice);
      if (as_json) {
        json doc = json::array();
        for (const auto& l : ls.levels) {
          json reps = json::array();
          for (const auto c : l.classes) reps.push_back(ls.classes[c].representative.labels());
          doc.push_back({{"value", rational_json(l.value, style)}, {"representatives", reps}});
        }
        std::cout << doc.dump(2) << '\n';
      } else {
        for (const auto& l : ls.levels) {
          std::cout << dsmatch::format_value(l.value, style) << ":";
          for (const auto c : l.classes) std::cout << " [" << ls.classes[c].representative.to_string() << "]";
          std::cout << '\n';
        }
      }
      return 0;
    }

    if (regions->parsed()) {
      const auto m = dsmatch::mass_for_dimension(model, dim);
      std::cout << dsmatch::export_regions(
          m, measure == "bel" ? dsmatch::Measure::belief : dsmatch::Measure::plausibility, lattice);
      return 0;
    }

    if (recommend->parsed()) {
      print_ranked(dsmatch::recommend(model, dims, cfg.rank_strategy(), by_class, opts), cfg, style);
      return 0;
    }

    if (target->parsed()) {
      const auto list = item_id.empty()
                            ? dsmatch::target_audience(model, parse_queries(model, content), profile,
                                                       cfg.rank_strategy(), opts)
                            : dsmatch::target_audience(model, item_id, profile, cfg.rank_strategy(), opts);
      print_ranked(list, cfg, style);
      return 0;
    }

    if (bundle->parsed()) {
      const auto dir = direction == "contents-to-users" ? dsmatch::BundleDirection::contents_to_users
                                                         : dsmatch::BundleDirection::users_to_contents;
      const auto proposal =
          dsmatch::bundle(model, parse_queries(model, selector), dir, cfg.rank_strategy(), targets, opts);
      print_ranked(proposal.result, cfg, style, json{{"direction", dsmatch::to_string(dir)}});
      return 0;
    }

    if (segment->parsed()) {
      const auto seg = dsmatch::segment(model, k_users, k_items, cfg.rank_strategy());
      const FractionStyle plain{0, true};
      if (as_json) {
        std::cout << json{{"user_clusters", seg.user_clusters},
                          {"item_clusters", seg.item_clusters},
                          {"within_score", rational_json(seg.within_score, plain)},
                          {"between_score", rational_json(seg.between_score, plain)}}
                         .dump(2)
                  << '\n';
      } else {
        auto show = [](const char* what, const std::vector<std::vector<std::string>>& clusters) {
          std::cout << what << ":";
          for (const auto& c : clusters) {
            std::cout << " {";
            for (std::size_t i = 0; i < c.size(); ++i) std::cout << (i ? "," : "") << c[i];
            std::cout << "}";
          }
          std::cout << '\n';
        };
        show("users", seg.user_clusters);
        show("items", seg.item_clusters);
        std::cout << "within " << dsmatch::format_value(seg.within_score, plain) << ", between "
                  << dsmatch::format_value(seg.between_score, plain) << '\n';
      }
      return 0;
    }
  } catch (const dsmatch::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
