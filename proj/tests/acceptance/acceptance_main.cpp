// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include "dba/cli.hpp"
#include "dba/csv.hpp"
#include "dba/io.hpp"
#include "dba/protocol.hpp"
#include "dba/receval.hpp"
#include "dba/scoring.hpp"
#include "dba/text.hpp"
#include "oracles.hpp"
#include "receval_gen.hpp"
#include "session_gen.hpp"
#include "test_support.hpp"

using namespace dba;
using testing_support::data_dir;
using testing_support::TempDir;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;  // keep the first failure
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int run_cli(std::vector<std::string> args, std::string* err_text = nullptr) {
  args.insert(args.begin(), "dba");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (err_text) *err_text = err.str();
  return code;
}

// ---------------------------------------------------------------------------

Verdict ac1_table1_structure() {
  Verdict v;
  TempDir tmp;
  const auto t1 = data_dir() / "table1";
  const auto t0 = Clock::now();
  const int code = run_cli({"eval-recs", (t1 / "recs" / "*.json").string(), (t1 / "scorecards.csv").string(),
                            (t1 / "beverages.csv").string(), (tmp / "table1.csv").string(), "--profiles",
                            (t1 / "profiles.json").string()});
  const double elapsed = seconds_since(t0);
  v.require(code == 0, fmt::format("exit code {}", code));
  if (!v.pass) return v;

  // Fixture shape: 3 judges, at least 20 scored beverages each.
  const auto ds = io::ingest_dataset(t1 / "scorecards.csv", t1 / "beverages.csv", StyleTaxonomy::defaults());
  const auto cards = scorecards_from_dataset(ds);
  v.require(cards.size() == 3, "fixture does not have 3 judges");
  for (const auto& c : cards) v.require(c.scores.size() >= 20, "judge with fewer than 20 scores");

  const auto rows = csv::parse(io::read_file(tmp / "table1.csv"), "table1.csv");
  v.require(rows.size() == 7, fmt::format("{} table lines, expected header + 6", rows.size()));
  v.require(rows[0].fields == std::vector<std::string>{"Model", "Mean rating", "Mean percentile", "Hit@5", "nDCG@5",
                                                       "Coverage"},
            "column order differs");
  const auto j = nlohmann::json::parse(io::read_file(tmp / "table1.json"));
  int at_13 = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& m = j["models"][i - 1];
    v.require(m["model_id"] == rows[i].fields[0], "JSON and CSV row order differ");
    if (m["valid_slots"] == 13) {
      ++at_13;
      v.require(m["total_slots"] == 15, "slot total is not 15");
      v.require(m["coverage"].get<double>() == 13.0 / 15.0, "coverage is not exactly 13/15");
      v.require(rows[i].fields[5] == "0.867", "displayed coverage " + rows[i].fields[5]);
      v.require(std::abs(std::stod(rows[i].fields[5]) - 13.0 / 15.0) <= 5e-4, "display outside 5e-4");
    }
  }
  v.require(at_13 == 1, fmt::format("{} models with 13/15 valid slots", at_13));
  v.require(elapsed < 1.0, fmt::format("took {:.3f} s", elapsed));
  v.detail = v.pass ? fmt::format("6 rows, Qwen3 coverage 13/15 -> 0.867, {:.3f} s", elapsed) : v.detail;
  return v;
}

Verdict ac2_quantization() {
  Verdict v;
  std::mt19937_64 gen(202406);
  std::set<std::size_t> hit_counts, coverage_counts;
  const testing_support::RecInstanceShape shape{3, 20, 30, 5, true};
  for (int i = 0; i < 1000; ++i) {
    const auto inst = testing_support::random_rec_instance(gen, shape);
    const auto r = evaluate_model(inst.recs, inst.cards, inst.keys);
    const double cov15 = r.coverage * 15.0;
    v.require(r.valid.slots == 15 && r.hits.slots == 15, "slot total is not J*K = 15");
    v.require(std::abs(cov15 - std::round(cov15)) <= 1e-9, fmt::format("coverage*15 = {}", cov15));
    if (r.hit_at_k) {
      const double hit15 = *r.hit_at_k * 15.0;
      v.require(std::abs(hit15 - std::round(hit15)) <= 1e-9, fmt::format("hit*15 = {}", hit15));
      hit_counts.insert(static_cast<std::size_t>(std::lround(hit15)));
    }
    coverage_counts.insert(static_cast<std::size_t>(std::lround(cov15)));
  }
  // 0.333, 0.133, 0.200, 1.000 as hit rates; 0.867 and 1.000 as coverage.
  for (std::size_t want : {5u, 2u, 3u, 15u})
    v.require(hit_counts.count(want) == 1, fmt::format("hit {}/15 never generated", want));
  for (std::size_t want : {13u, 15u})
    v.require(coverage_counts.count(want) == 1, fmt::format("coverage {}/15 never generated", want));
  if (v.pass)
    v.detail = fmt::format("1000 instances; {} distinct hit and {} distinct coverage numerators, all integral",
                           hit_counts.size(), coverage_counts.size());
  return v;
}

Verdict ac3_oracle() {
  Verdict v;
  std::mt19937_64 gen(31415);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const testing_support::RecInstanceShape shape{1 + i % 3, 1, 8, 5, false};
    const auto inst = testing_support::random_rec_instance(gen, shape);
    const auto got = evaluate_model(inst.recs, inst.cards, inst.keys);
    const auto want = oracle::evaluate(inst.judges, inst.keys, 5);
    const auto tag = fmt::format("instance {}", i);
    auto cmp = [&](const std::optional<double>& a, const std::optional<double>& b, const char* what) {
      v.require(a.has_value() == b.has_value(), tag + ": " + what + " defined-ness differs");
      if (a && b) {
        worst = std::max(worst, std::abs(*a - *b));
        v.require(std::abs(*a - *b) <= 1e-9, tag + ": " + what + " differs");
      }
    };
    cmp(got.coverage, static_cast<double>(want.valid) / want.slots, "coverage");
    std::optional<double> want_hit;
    if (want.ndcg) want_hit = static_cast<double>(want.hits) / want.slots;  // both undefined without any set
    cmp(got.hit_at_k, want_hit, "hit@5");
    cmp(got.mean_rating, want.mean_rating, "mean rating");
    cmp(got.mean_percentile, want.mean_percentile, "mean percentile");
    cmp(got.ndcg_at_k, want.ndcg, "nDCG@5");
  }
  if (v.pass) v.detail = fmt::format("500 instances, max |diff| = {:.3g}", worst);
  return v;
}

Verdict ac4_leader_calibration() {
  Verdict v;
  const std::vector<LeaderWeight> w{{{"A"}, 0.1}, {{"B"}, 0.8}, {{"C"}, 0.1}};
  Rng rng(20240615);
  std::map<std::string, long> tally;
  const long n = 100000;
  const auto t0 = Clock::now();
  for (long i = 0; i < n; ++i) ++tally[elect_leader(w, rng).value];
  const double elapsed = seconds_since(t0);
  const double fb = static_cast<double>(tally["B"]) / n;
  const double sa = 3 * std::sqrt(0.1 * 0.9 / n);
  v.require(fb >= 0.7962 && fb <= 0.8038, fmt::format("freq(B) = {:.5f}", fb));
  v.require(std::abs(tally["A"] / double(n) - 0.1) <= sa, "freq(A) outside 3 sigma");
  v.require(std::abs(tally["C"] / double(n) - 0.1) <= sa, "freq(C) outside 3 sigma");
  v.require(elapsed < 1.0, fmt::format("took {:.3f} s", elapsed));
  if (v.pass)
    v.detail = fmt::format("freq A/B/C = {:.4f}/{:.4f}/{:.4f}, {:.3f} s", tally["A"] / double(n), fb,
                           tally["C"] / double(n), elapsed);
  return v;
}

Verdict ac5_protocol_invariants() {
  Verdict v;
  const auto catalogue = testing_support::fixture_beverages();
  std::mt19937_64 gen(5150);
  std::size_t rounds = 0, skips = 0, blackout_configs = 0;
  for (int i = 0; i < 200; ++i) {
    const auto cfg = testing_support::random_session_config(gen, catalogue);
    const auto a = run_session(cfg);
    const auto b = run_session(cfg);
    const auto problem = testing_support::check_session_invariants(cfg, a);
    v.require(problem.empty(), fmt::format("config {}: {}", i, problem));
    v.require(io::serialize_session_log(a) == io::serialize_session_log(b),
              fmt::format("config {}: re-run log differs", i));
    v.require(io::serialize_scorecards(a.dataset) == io::serialize_scorecards(b.dataset),
              fmt::format("config {}: re-run dataset differs", i));
    rounds += a.rounds.size();
    skips += a.skipped.size();
    blackout_configs += !cfg.blackout_windows.empty();
  }
  if (v.pass)
    v.detail = fmt::format("200 configs ({} with blackouts), {} rounds, {} no-participant skips", blackout_configs,
                           rounds, skips);
  return v;
}

Verdict ac6_normalization() {
  Verdict v;
  {
    ScoreMatrix m({{"J"}}, {{"a"}, {"b"}, {"c"}}, {"a", "b", "c"});
    m.set(0, 0, 1.0);
    m.set(0, 1, 3.8);
    m.set(0, 2, 5.0);
    const auto n = normalize(m);
    v.require(*n.values.cell(0, 1) == 0.7, fmt::format("3.8 -> {:.17g}", *n.values.cell(0, 1)));
    v.require(*n.values.cell(0, 0) == 0.0 && *n.values.cell(0, 2) == 1.0, "endpoints not 0 and 1");
  }
  std::mt19937_64 gen(66);
  std::uniform_int_distribution<int> score(10, 50);
  const std::size_t judges = 3, bevs = 12;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<BeverageId> ids;
    std::vector<std::string> names;
    for (std::size_t b = 0; b < bevs; ++b) {
      ids.push_back({std::to_string(b)});
      names.push_back(std::to_string(b));
    }
    ScoreMatrix m({{"A"}, {"B"}, {"C"}}, ids, names);
    for (std::size_t j = 0; j < judges; ++j) {
      for (std::size_t b = 0; b < bevs; ++b)
        if (gen() % 5) m.set(j, b, score(gen) / 10.0);
      m.set(j, gen() % bevs, 1.0 + (gen() % 10) / 10.0);  // keep the row non-degenerate
      m.set(j, gen() % bevs, 4.1 + (gen() % 10) / 10.0);
    }
    const auto n = normalize(m);
    for (std::size_t j = 0; j < judges; ++j) {
      double lo = 2.0, hi = -1.0;
      for (std::size_t a = 0; a < bevs; ++a) {
        const auto xa = m.cell(j, a);
        if (!xa) continue;
        const double ya = *n.values.cell(j, a);
        lo = std::min(lo, ya);
        hi = std::max(hi, ya);
        for (std::size_t b = 0; b < bevs; ++b) {
          const auto xb = m.cell(j, b);
          if (!xb) continue;
          const double yb = *n.values.cell(j, b);
          v.require((*xa < *xb) == (ya < yb) && (*xa == *xb) == (ya == yb),
                    fmt::format("trial {}: order changed for judge {}", trial, j));
        }
      }
      v.require(lo == 0.0 && hi == 1.0, fmt::format("trial {}: row range [{}, {}]", trial, lo, hi));
    }
  }
  if (v.pass) v.detail = "3.8 -> 0.7 exactly; 500 random matrices keep order and hit 0 and 1";
  return v;
}

Verdict ac7_agreement_divisiveness() {
  Verdict v;
  ScoreMatrix m({{"X"}, {"Y"}}, {{"1"}, {"2"}, {"3"}, {"4"}, {"5"}}, {"1", "2", "3", "4", "5"});
  const double x[5] = {1, 2, 3, 4, 5}, y[5] = {1, 2, 3, 5, 4};
  for (int i = 0; i < 5; ++i) {
    m.set(0, i, x[i]);
    m.set(1, i, y[i]);
  }
  const auto rho = agreement(m).at(0, 1);
  v.require(rho && std::abs(*rho - 0.9) <= 1e-12, "spearman differs from 0.9");

  ScoreMatrix p({{"A"}, {"B"}, {"C"}}, {{"pm"}}, {"Parfait Moment"});
  p.set(0, 0, 4.0);
  p.set(1, 0, 4.1);
  p.set(2, 0, 2.5);
  const auto d = divisiveness(p);
  v.require(d.size() == 1 && std::abs(d[0].sd - 0.8963) <= 5e-4, "sd differs from 0.8963");
  if (v.pass) v.detail = fmt::format("rho = {:.15f}, sd = {:.6f}", *rho, d[0].sd);
  return v;
}

Verdict ac8_judge_means() {
  Verdict v;
  const auto cfg = io::load_session_config(data_dir() / "session.json");
  const auto a = run_session(cfg);
  const auto b = run_session(cfg);
  v.require(io::serialize_session_log(a) == io::serialize_session_log(b), "re-run differs");
  const auto m = ScoreMatrix::from_dataset(a.dataset);
  const auto stats = judge_stats(m);
  std::string means;
  for (const auto& s : stats) {
    v.require(s.mean >= 3.5 && s.mean <= 4.0, fmt::format("judge {} mean {:.3f}", s.judge.value, s.mean));
    means += fmt::format("{}={:.3f} ", s.judge.value, s.mean);
  }
  v.require(stats.size() == 3, "expected three expert judges");
  std::size_t b_ones = 0;
  for (const auto& r : a.dataset.reviews) b_ones += r.judge_id.value == "B" && r.raw_score == 1.0;
  v.require(b_ones >= 1, "judge B has no 1.0 score");
  if (v.pass) v.detail = fmt::format("{}; B has {} score(s) of 1.0; {} rounds", means, b_ones, a.rounds.size());
  return v;
}

Verdict ac9_cost_model() {
  Verdict v;
  std::mt19937_64 gen(909);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto open_unit = [&] {
    double x;
    do x = unit(gen);
    while (x == 0.0);
    return x;
  };
  double smallest_decay = 1.0;
  for (int set = 0; set < 50; ++set) {
    CostParams p;
    p.politeness_initial = open_unit();   // p0 > 0
    p.politeness_decay = open_unit();     // 0 < decay < 1
    p.comprehension_growth = 0.2 * open_unit();  // beta > 0
    p.broadcast_base = 0.5 + open_unit();
    p.comprehension_base = 0.5 + open_unit();
    smallest_decay = std::min(smallest_decay, p.politeness_decay);
    auto prev = communication_costs(0, p);
    for (std::size_t t = 1; t < 100; ++t) {
      const auto cur = communication_costs(t, p);
      // Costs are base + term with a constant base, so the sums compare
      // exactly through their terms.
      v.require(cur.broadcast_base == prev.broadcast_base && cur.politeness < prev.politeness,
                fmt::format("set {}: broadcast not strictly decreasing at t={}", set, t));
      v.require(cur.comprehension_base == prev.comprehension_base &&
                    cur.comprehension_growth > prev.comprehension_growth,
                fmt::format("set {}: comprehension not strictly increasing at t={}", set, t));
      v.require(cur.broadcast() <= prev.broadcast() && cur.comprehension() >= prev.comprehension(),
                fmt::format("set {}: rounded totals move the wrong way at t={}", set, t));
      prev = cur;
    }
  }
  if (v.pass) v.detail = fmt::format("50 parameter sets x 100 rounds, smallest decay {:.4f}", smallest_decay);
  return v;
}

Verdict ac10_end_to_end() {
  Verdict v;
  TempDir tmp;
  const auto t0 = Clock::now();
  std::string err;
  int code = run_cli({"simulate", (data_dir() / "session.json").string(), (tmp / "sim").string()}, &err);
  v.require(code == 0, fmt::format("simulate exit {}: {}", code, err));
  if (!v.pass) return v;
  const auto summary = nlohmann::json::parse(io::read_file(tmp / "sim" / "summary.json"));
  v.require(summary["beverages"] == 60, "simulation did not serve the 60-beverage pool");

  code = run_cli({"analyze", (tmp / "sim" / "scorecards.csv").string(), (tmp / "sim" / "beverages.csv").string(),
                  (tmp / "report").string()},
                 &err);
  v.require(code == 0, fmt::format("analyze exit {}: {}", code, err));
  for (const char* t : {"style_counts", "abv_bands", "judge_stats", "agreement", "top10", "bottom10", "per_style",
                        "divisive"})
    v.require(fs::exists(tmp / "report" / (std::string(t) + ".csv")), std::string("missing table ") + t);
  v.require(fs::exists(tmp / "report" / "report.json"), "missing report.json");

  // Two recommenders over the generated data: the overall top five for
  // every judge, and a fixed arbitrary pick.
  const auto top = csv::parse(io::read_file(tmp / "report" / "top10.csv"), "top10.csv");
  const auto bevs = csv::parse(io::read_file(tmp / "sim" / "beverages.csv"), "beverages.csv");
  fs::create_directories(tmp / "recs");
  auto write_model = [&](const std::string& id, const std::vector<std::string>& names) {
    nlohmann::json profiles = nlohmann::json::array();
    for (const char* judge : {"A", "B", "C"}) {
      nlohmann::json recs = nlohmann::json::array();
      for (std::size_t i = 0; i < names.size(); ++i)
        recs.push_back({{"beverage_name", names[i]}, {"rank", i + 1}, {"justification", "generated"}});
      profiles.push_back({{"profile_id", judge}, {"recommendations", recs}});
    }
    io::write_file(tmp / "recs" / (id + ".json"), nlohmann::json{{"model_id", id}, {"profiles", profiles}}.dump());
  };
  std::vector<std::string> consensus, arbitrary;
  for (std::size_t i = 1; i <= 5 && i < top.size(); ++i) consensus.push_back(top[i].fields[1]);
  for (std::size_t i = 1; i <= 5 && i < bevs.size(); ++i) arbitrary.push_back(bevs[i * 7].fields[1]);
  write_model("consensus", consensus);
  write_model("arbitrary", arbitrary);

  code = run_cli({"eval-recs", (tmp / "recs" / "*.json").string(), (tmp / "sim" / "scorecards.csv").string(),
                  (tmp / "sim" / "beverages.csv").string(), (tmp / "table.csv").string()},
                 &err);
  v.require(code == 0, fmt::format("eval-recs exit {}: {}", code, err));
  const auto table = csv::parse(io::read_file(tmp / "table.csv"), "table.csv");
  v.require(table.size() == 3, "metric table does not have two rows");
  const double elapsed = seconds_since(t0);
  v.require(elapsed < 5.0, fmt::format("took {:.3f} s", elapsed));
  if (v.pass) v.detail = fmt::format("simulate -> analyze -> eval-recs, 8 tables, {:.3f} s", elapsed);
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"AC1 metric table structural reproduction", ac1_table1_structure},
      {"AC2 metric quantization", ac2_quantization},
      {"AC3 metric oracle equivalence", ac3_oracle},
      {"AC4 leader-election calibration", ac4_leader_calibration},
      {"AC5 protocol invariants", ac5_protocol_invariants},
      {"AC6 normalization", ac6_normalization},
      {"AC7 agreement and divisiveness hand checks", ac7_agreement_divisiveness},
      {"AC8 judge-mean calibration", ac8_judge_means},
      {"AC9 cost model monotonicity", ac9_cost_model},
      {"AC10 end-to-end pipeline", ac10_end_to_end},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    failed += !v.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
