#include "dba/report.hpp"

#include <cmath>
#include <fmt/core.h>
#include <map>

#include "dba/csv.hpp"

namespace dba {

using nlohmann::json;

namespace {

std::string num(double v) { return std::isnan(v) ? std::string() : fmt::format("{}", v); }
std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }
json jnum(double v) { return std::isnan(v) ? json(nullptr) : json(v); }
json jnum(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string line(const std::vector<std::string>& fields) { return csv::join(fields) + "\n"; }

struct BeverageInfo {
  std::string producer;
  std::string family;
  double raw_mean = std::nan("");
};

std::string ranking_table(const std::vector<RankingEntry>& entries,
                          const std::map<BeverageId, BeverageInfo>& info) {
  std::string out = line({"rank", "beer_name", "brewery", "style_family", "normalized_score",
                          "raw_mean", "review_count"});
  std::size_t rank = 0;
  for (const auto& e : entries) {
    const auto& i = info.at(e.beverage_id);
    out += line({std::to_string(++rank), e.name, i.producer, i.family, num(e.score), num(i.raw_mean),
                 std::to_string(e.review_count)});
  }
  return out;
}

}  // namespace

AnalysisReport analyze(const Dataset& dataset, const StyleTaxonomy& taxonomy,
                       const AnalysisOptions& options) {
  AnalysisReport rep;
  rep.violations = validate_dataset(dataset);
  if (options.lenient)
    for (auto& v : rep.violations) v.severity = Severity::warning;

  json jviol = json::array();
  for (const auto& v : rep.violations)
    jviol.push_back({{"code", v.code},
                     {"severity", v.severity == Severity::error ? "error" : "warning"},
                     {"subject", v.subject},
                     {"message", v.message}});
  rep.summary["violations"] = jviol;
  if (has_errors(rep.violations)) return rep;

  const auto raw = ScoreMatrix::from_dataset(dataset);
  const auto norm = normalize(raw, {options.normalization, options.lenient});
  const auto ranking = aggregate(norm);
  const auto raw_ranking = aggregate_raw(raw);

  std::map<BeverageId, BeverageInfo> info;
  for (const auto& b : dataset.beverages) info[b.id] = {b.producer, b.style_family, std::nan("")};
  for (const auto& e : raw_ranking.entries) info[e.beverage_id].raw_mean = e.score;

  // style_counts / abv_bands
  {
    std::map<std::string, std::size_t> counts;
    for (const auto& b : dataset.beverages) ++counts[b.style_family];
    std::string t = line({"style_family", "count"});
    json j = json::object();
    for (const auto& f : taxonomy.families()) {
      t += line({f.name, std::to_string(counts[f.name])});
      j[f.name] = counts[f.name];
    }
    for (const auto& [name, n] : counts) {
      if (j.contains(name)) continue;
      t += line({name, std::to_string(n)});
      j[name] = n;
    }
    rep.tables["style_counts"] = t;
    rep.summary["style_counts"] = j;

    std::map<AbvBand, std::size_t> bands;
    for (const auto& b : dataset.beverages) {
      if (b.abv > 0.0 && b.abv <= 100.0) ++bands[classify_abv(b.abv)];
    }
    static const std::pair<AbvBand, const char*> ranges[] = {{AbvBand::low, "(0, 4.5]"},
                                                            {AbvBand::medium, "(4.5, 6.5]"},
                                                            {AbvBand::high, "(6.5, 9.0]"},
                                                            {AbvBand::very_high, "(9.0, 100]"}};
    t = line({"abv_band", "range", "count"});
    j = json::object();
    for (const auto& [band, range] : ranges) {
      t += line({std::string(to_string(band)), range, std::to_string(bands[band])});
      j[std::string(to_string(band))] = bands[band];
    }
    rep.tables["abv_bands"] = t;
    rep.summary["abv_bands"] = j;
  }

  // judge_stats
  {
    const auto stats = judge_stats_partial(raw);
    std::string t = line({"judge_id", "count", "mean", "sd"});
    json j = json::array();
    for (std::size_t r = 0; r < stats.size(); ++r) {
      const auto& id = raw.judges()[r].value;
      if (stats[r]) {
        t += line({id, std::to_string(stats[r]->count), num(stats[r]->mean), num(stats[r]->sd)});
        j.push_back({{"judge_id", id}, {"count", stats[r]->count}, {"mean", stats[r]->mean},
                     {"sd", stats[r]->sd}});
      } else {
        t += line({id, "", "", ""});
        j.push_back({{"judge_id", id}, {"count", nullptr}, {"mean", nullptr}, {"sd", nullptr}});
      }
    }
    rep.tables["judge_stats"] = t;
    rep.summary["judge_stats"] = j;
  }

  // agreement
  {
    const auto agree = agreement(raw, options.correlation);
    std::vector<std::string> header{"judge_id"};
    for (const auto& id : agree.judges) header.push_back(id.value);
    std::string t = line(header);
    json j = json::object();
    for (std::size_t a = 0; a < agree.judges.size(); ++a) {
      std::vector<std::string> row{agree.judges[a].value};
      json jr = json::object();
      for (std::size_t b = 0; b < agree.judges.size(); ++b) {
        row.push_back(num(agree.at(a, b)));
        jr[agree.judges[b].value] = jnum(agree.at(a, b));
      }
      t += line(row);
      j[agree.judges[a].value] = jr;
    }
    rep.tables["agreement"] = t;
    rep.summary["agreement"] = j;
  }

  // top / bottom / complete ranking
  {
    const auto& all = ranking.entries;
    std::vector<RankingEntry> top(all.begin(), all.begin() + std::min(options.top_n, all.size()));
    std::vector<RankingEntry> bottom;
    for (auto it = all.rbegin(); it != all.rend() && bottom.size() < options.top_n; ++it)
      if (!std::isnan(it->score)) bottom.push_back(*it);
    rep.tables["top10"] = ranking_table(top, info);
    rep.tables["bottom10"] = ranking_table(bottom, info);
    json j = json::array();
    for (const auto& e : all)
      j.push_back({{"beer_name", e.name}, {"beverage_id", e.beverage_id.value},
                   {"normalized_score", jnum(e.score)},
                   {"raw_mean", jnum(info.at(e.beverage_id).raw_mean)},
                   {"review_count", e.review_count}});
    rep.summary["ranking"] = j;
  }

  // per_style
  {
    const auto dist = per_style_distribution(norm, dataset, taxonomy);
    std::string t = line({"style_family", "family_mean", "beer_name", "normalized_score"});
    json j = json::array();
    for (const auto& d : dist) {
      json scores = json::array();
      if (d.scores.empty()) t += line({d.family, "", "", ""});
      for (const auto& e : d.scores) {
        t += line({d.family, num(d.mean), e.name, num(e.score)});
        scores.push_back(e.score);
      }
      j.push_back({{"style_family", d.family}, {"mean", jnum(d.mean)}, {"scores", scores}});
    }
    rep.tables["per_style"] = t;
    rep.summary["per_style"] = j;
  }

  // divisive
  {
    const auto div = divisiveness(raw, options.divisive_n);
    std::string t = line({"rank", "beer_name", "sd", "range", "review_count"});
    json j = json::array();
    std::size_t rank = 0;
    for (const auto& d : div) {
      t += line({std::to_string(++rank), d.name, num(d.sd), num(d.range), std::to_string(d.review_count)});
      j.push_back({{"beer_name", d.name}, {"sd", d.sd}, {"range", d.range},
                   {"review_count", d.review_count}});
    }
    rep.tables["divisive"] = t;
    rep.summary["divisive"] = j;
  }

  // tag comparison (JSON only)
  {
    json j = json::array();
    for (const auto& tc : tag_report(dataset)) {
      const auto flag = tc.real_not_below_artificial();
      j.push_back({{"style_family", tc.family},
                   {"real_mean", jnum(tc.real_mean)},
                   {"artificial_mean", jnum(tc.artificial_mean)},
                   {"real_count", tc.real_count},
                   {"artificial_count", tc.artificial_count},
                   {"comparable", tc.comparable()},
                   {"real_not_below_artificial", flag ? json(*flag) : json(nullptr)}});
    }
    rep.summary["tag_report"] = j;
  }

  return rep;
}

}  // namespace dba
