#include "dba/cli.hpp"

#include <glob.h>

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include "dba/error.hpp"
#include "dba/io.hpp"
#include "dba/protocol.hpp"
#include "dba/receval.hpp"
#include "dba/report.hpp"
#include "dba/text.hpp"

namespace dba::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Diagnostics {
 public:
  Diagnostics(std::ostream& err, const bool& as_json) : err_(err), json_(as_json) {}

  void error(std::string_view code, const std::string& message) { emit("error", code, message); }
  void warning(std::string_view code, const std::string& message) { emit("warning", code, message); }

 private:
  void emit(const char* level, std::string_view code, const std::string& message) {
    if (json_) {
      err_ << json{{"level", level}, {"code", std::string(code)}, {"message", message}}.dump() << "\n";
    } else {
      err_ << level << ": [" << code << "] " << message << "\n";
    }
  }

  std::ostream& err_;
  const bool& json_;
};

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g{};
  std::vector<std::string> out;
  if (::glob(pattern.c_str(), 0, nullptr, &g) == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  }
  ::globfree(&g);
  std::sort(out.begin(), out.end());
  return out;
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

StyleTaxonomy taxonomy_from(const std::string& families_path) {
  if (families_path.empty()) return StyleTaxonomy::defaults();
  try {
    return io::load_families(families_path);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int simulate(const SimulateArgs& a, std::ostream& out, Diagnostics& diag) {
  SessionConfig cfg;
  try {
    cfg = io::load_session_config(a.config);
    if (a.seed) cfg.seed = *a.seed;
  } catch (const ConfigError& e) {
    diag.error("CONFIG", e.what());
    return kConfigError;
  }

  const auto result = run_session(cfg);

  std::string costs =
      "round,minute,broadcast_cost,politeness_overhead,comprehension_cost,comprehension_growth,"
      "total_cost\n";
  for (const auto& r : result.rounds) {
    costs += fmt::format("{},{},{},{},{},{},{}\n", r.index, r.start_minute, r.cost.broadcast(),
                         r.cost.politeness, r.cost.comprehension(), r.cost.comprehension_growth,
                         r.cost.total());
  }
  const json summary{{"seed", cfg.seed},
                     {"rounds", result.rounds.size()},
                     {"skipped_no_participants", result.skipped.size()},
                     {"pool_exhausted", result.exhausted},
                     {"beverages", result.dataset.beverages.size()},
                     {"reviews", result.dataset.reviews.size()}};
  try {
    const fs::path dir(a.out);
    make_dir(dir);
    io::write_file(dir / "session.jsonl", io::serialize_session_log(result));
    io::write_file(dir / "beverages.csv", io::serialize_beverages(result.dataset.beverages));
    io::write_file(dir / "scorecards.csv", io::serialize_scorecards(result.dataset));
    io::write_file(dir / "costs.csv", costs);
    io::write_file(dir / "summary.json", summary.dump(2) + "\n");
  } catch (const IoError& e) {
    diag.error("IO", e.what());
    return kIoError;
  }
  out << "simulated " << result.rounds.size() << " rounds, " << result.dataset.reviews.size()
      << " reviews -> " << a.out << "\n";
  return kOk;
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
  std::string scorecards;
  std::string beverages;
  std::string out_dir;
  std::string families;
  bool lenient = false;
  std::string norm = "min-max";
  std::string corr = "spearman";
};

int analyze_cmd(const AnalyzeArgs& a, std::ostream& out, Diagnostics& diag) {
  StyleTaxonomy taxonomy = StyleTaxonomy::defaults();
  try {
    taxonomy = taxonomy_from(a.families);
  } catch (const ConfigError& e) {
    diag.error("CONFIG", e.what());
    return kConfigError;
  }

  Dataset ds;
  try {
    ds = io::ingest_dataset(a.scorecards, a.beverages, taxonomy);
  } catch (const IoError& e) {
    diag.error("IO", e.what());
    return kIoError;
  } catch (const ParseError& e) {
    diag.error("PARSE", e.what());
    return kValidationError;
  }

  AnalysisOptions opts;
  opts.lenient = a.lenient;
  opts.normalization = a.norm == "z-score" ? kernels::NormMethod::z_score : kernels::NormMethod::min_max;
  opts.correlation = a.corr == "kendall" ? kernels::CorrMethod::kendall : kernels::CorrMethod::spearman;

  AnalysisReport rep;
  try {
    rep = analyze(ds, taxonomy, opts);
  } catch (const Error& e) {
    diag.error("ANALYSIS", e.what());
    return kValidationError;
  }
  for (const auto& v : rep.violations) {
    const auto msg = v.subject + ": " + v.message;
    if (v.severity == Severity::error) {
      diag.error(v.code, msg);
    } else {
      diag.warning(v.code, msg);
    }
  }
  if (has_errors(rep.violations)) return kValidationError;

  try {
    const fs::path dir(a.out_dir);
    make_dir(dir);
    for (const auto& [stem, table] : rep.tables) io::write_file(dir / (stem + ".csv"), table);
    io::write_file(dir / "report.json", rep.summary.dump(2) + "\n");
  } catch (const IoError& e) {
    diag.error("IO", e.what());
    return kIoError;
  }
  out << "wrote " << rep.tables.size() << " tables + report.json -> " << a.out_dir << "\n";
  return kOk;
}

// ---- eval-recs ------------------------------------------------------------

struct EvalArgs {
  std::string recs_glob;
  std::string scorecards;
  std::string beverages;
  std::string out;
  std::string profiles;
  std::string families;
  std::size_t k = kDefaultTopK;
  bool strict = false;
  bool normalized = false;
  std::string ties = "name";
};

int eval_recs(const EvalArgs& a, std::ostream& out, Diagnostics& diag) {
  StyleTaxonomy taxonomy = StyleTaxonomy::defaults();
  try {
    taxonomy = taxonomy_from(a.families);
  } catch (const ConfigError& e) {
    diag.error("CONFIG", e.what());
    return kConfigError;
  }
  if (a.k == 0) {
    diag.error("CONFIG", "--k must be positive");
    return kConfigError;
  }

  Dataset ds;
  std::optional<std::vector<JudgeId>> profile_ids;
  try {
    ds = io::ingest_dataset(a.scorecards, a.beverages, taxonomy);
    if (!a.profiles.empty()) profile_ids = io::parse_profiles(io::read_file(a.profiles), a.profiles);
  } catch (const IoError& e) {
    diag.error("IO", e.what());
    return kIoError;
  } catch (const ParseError& e) {
    diag.error("PARSE", e.what());
    return kValidationError;
  }

  auto cards = scorecards_from_dataset(ds);
  if (profile_ids) {
    std::vector<Scorecard> chosen;
    for (const auto& id : *profile_ids) {
      auto it = std::find_if(cards.begin(), cards.end(), [&](const Scorecard& c) { return c.judge == id; });
      if (it == cards.end()) {
        diag.error("MISSING_SCORECARD", "profile '" + id.value + "' has no scorecard");
        return kValidationError;
      }
      chosen.push_back(*it);
    }
    cards = std::move(chosen);
  }
  std::set<std::string> keys;
  for (const auto& b : ds.beverages) keys.insert(text::name_key(b.name));

  const auto files = expand_glob(a.recs_glob);
  if (files.empty()) diag.warning("EMPTY_GLOB", "no recommendation files match '" + a.recs_glob + "'");

  bool skipped = false;
  std::vector<ModelRecommendations> models;
  for (const auto& f : files) {
    try {
      models.push_back(io::parse_recommendations(io::read_file(f), f));
    } catch (const Error& e) {
      diag.warning("UNREADABLE_RECS", std::string("skipping: ") + e.what());
      skipped = true;
    }
  }

  EvalOptions opts;
  opts.k = a.k;
  opts.ties = a.ties == "threshold" ? TopKTies::score_threshold : TopKTies::name_order;
  opts.normalized_scores = a.normalized;
  auto reports = evaluate_models(models, cards, keys, opts);
  sort_for_table(reports);

  try {
    fs::path path(a.out);
    if (path.has_parent_path()) make_dir(path.parent_path());
    io::write_file(path, io::metric_table_csv(reports));
    io::write_file(fs::path(path).replace_extension(".json"),
                   io::metric_table_json(reports).dump(2) + "\n");
  } catch (const IoError& e) {
    diag.error("IO", e.what());
    return kIoError;
  }
  out << "evaluated " << reports.size() << " model(s) -> " << a.out << "\n";
  if (skipped && a.strict) {
    diag.error("STRICT", "one or more recommendation files could not be read");
    return kStrictEvalError;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distributed tasting session simulator and analytics"};
  app.require_subcommand(1);
  bool json_errors = false;
  app.add_flag("--json-errors", json_errors, "Diagnostics as JSON lines on stderr");
  app.fallthrough();

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Run a seeded tasting session");
  s->add_option("config,--config", sim.config, "Session config JSON")->required();
  s->add_option("--seed", sim.seed, "64-bit seed overriding the config");
  s->add_option("out,--out", sim.out, "Output directory")->required();

  AnalyzeArgs an;
  auto* a = app.add_subcommand("analyze", "Validate scorecards and write report tables");
  a->add_option("scorecards,--scorecards", an.scorecards, "Scorecard CSV")->required();
  a->add_option("beverages,--beverages", an.beverages, "Beverage list CSV")->required();
  a->add_option("out_dir,--out-dir", an.out_dir, "Output directory")->required();
  a->add_option("--families", an.families, "Style family config JSON");
  a->add_flag("--lenient", an.lenient, "Downgrade validation errors to warnings");
  a->add_option("--norm", an.norm, "Normalisation")->check(CLI::IsMember({"min-max", "z-score"}));
  a->add_option("--agreement", an.corr, "Agreement statistic")
      ->check(CLI::IsMember({"spearman", "kendall"}));

  EvalArgs ev;
  auto* e = app.add_subcommand("eval-recs", "Score recommendation files against scorecards");
  e->add_option("recs,--recs", ev.recs_glob, "Glob of recommendation JSON files")->required();
  e->add_option("scorecards,--scorecards", ev.scorecards, "Scorecard CSV")->required();
  e->add_option("beverages,--beverages", ev.beverages, "Beverage list CSV")->required();
  e->add_option("out,--out", ev.out, "Metric table CSV (JSON written alongside)")->required();
  e->add_option("--profiles", ev.profiles, "Profile JSON restricting the judges");
  e->add_option("--families", ev.families, "Style family config JSON");
  e->add_option("--k", ev.k, "Cut-off and slots per profile");
  e->add_flag("--strict", ev.strict, "Fail when a recommendation file is unreadable");
  e->add_flag("--normalized", ev.normalized, "Use min-max normalised scorecards");
  e->add_option("--ties", ev.ties, "Top-k tie rule")->check(CLI::IsMember({"name", "threshold"}));

  // CLI11 consumes the argument vector back to front, without argv[0].
  std::vector<std::string> rev;
  for (std::size_t i = args.size(); i-- > 1;) rev.push_back(args[i]);
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& pe) {
    Diagnostics diag(err, json_errors);
    diag.error("USAGE", pe.what());
    return kConfigError;
  }

  Diagnostics diag(err, json_errors);
  try {
    if (s->parsed()) return simulate(sim, out, diag);
    if (a->parsed()) return analyze_cmd(an, out, diag);
    return eval_recs(ev, out, diag);
  } catch (const ConfigError& ex) {
    diag.error("CONFIG", ex.what());
    return kConfigError;
  } catch (const IoError& ex) {
    diag.error("IO", ex.what());
    return kIoError;
  } catch (const Error& ex) {
    diag.error("VALIDATION", ex.what());
    return kValidationError;
  } catch (const std::exception& ex) {
    diag.error("INTERNAL", ex.what());
    return kValidationError;
  }
}

}  // namespace dba::cli
