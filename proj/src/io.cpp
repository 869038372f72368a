#include "dba/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dba/csv.hpp"
#include "dba/error.hpp"
#include "dba/text.hpp"

namespace dba::io {

using nlohmann::json;
namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

// ---- style families -------------------------------------------------------

StyleTaxonomy parse_families(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("family config is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ConfigError("family config must be a JSON array");
  std::vector<StyleFamily> families;
  for (const auto& f : doc) {
    if (!f.is_object() || !f.contains("name") || !f["name"].is_string())
      throw ConfigError("each style family needs a string 'name'");
    StyleFamily fam;
    fam.name = f["name"].get<std::string>();
    if (f.contains("patterns")) {
      if (!f["patterns"].is_array()) throw ConfigError("'patterns' of " + fam.name + " must be an array");
      for (const auto& p : f["patterns"]) {
        if (!p.is_string()) throw ConfigError("patterns of " + fam.name + " must be strings");
        fam.patterns.push_back(p.get<std::string>());
      }
    }
    if (f.contains("fallback")) {
      if (!f["fallback"].is_boolean()) throw ConfigError("'fallback' must be a boolean");
      fam.fallback = f["fallback"].get<bool>();
    }
    families.push_back(std::move(fam));
  }
  return StyleTaxonomy(std::move(families));
}

StyleTaxonomy load_families(const fs::path& path) { return parse_families(read_file(path)); }

json families_to_json(const StyleTaxonomy& taxonomy) {
  json out = json::array();
  for (const auto& f : taxonomy.families()) {
    json j{{"name", f.name}, {"patterns", f.patterns}};
    if (f.fallback) j["fallback"] = true;
    out.push_back(std::move(j));
  }
  return out;
}

// ---- shared CSV helpers ---------------------------------------------------

namespace {

struct Header {
  std::map<std::string, std::size_t> index;

  bool has(const std::string& name) const { return index.count(name) > 0; }
  const std::string& get(const csv::Record& rec, const std::string& name) const {
    static const std::string empty;
    auto it = index.find(name);
    if (it == index.end() || it->second >= rec.fields.size()) return empty;
    return rec.fields[it->second];
  }
};

Header read_header(const std::vector<csv::Record>& records, const std::string& source,
                   const std::vector<std::string>& required,
                   const std::vector<std::string>& optional) {
  if (records.empty()) throw ParseError(source, 1, "", "missing header row");
  Header h;
  for (std::size_t i = 0; i < records[0].fields.size(); ++i) {
    const auto name = text::trim(records[0].fields[i]);
    const bool known = std::count(required.begin(), required.end(), name) ||
                       std::count(optional.begin(), optional.end(), name);
    if (!known) throw ParseError(source, 1, name, "unknown column");
    if (!h.index.emplace(name, i).second) throw ParseError(source, 1, name, "duplicate column");
  }
  for (const auto& r : required)
    if (!h.has(r)) throw ParseError(source, 1, r, "required column missing");
  return h;
}

void check_width(const csv::Record& rec, const Header& h, const std::string& source) {
  if (rec.fields.size() != h.index.size())
    throw ParseError(source, rec.row, "",
                     "expected " + std::to_string(h.index.size()) + " fields, found " +
                         std::to_string(rec.fields.size()));
}

std::optional<double> parse_decimal(const std::string& s) {
  const auto t = text::trim(s);
  if (t.empty()) return std::nullopt;
  std::size_t i = 0;
  if (t[i] == '+' || t[i] == '-') ++i;
  bool digits = false, dot = false;
  for (; i < t.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(t[i]))) {
      digits = true;
    } else if (t[i] == '.' && !dot) {
      dot = true;
    } else {
      return std::nullopt;
    }
  }
  if (!digits) return std::nullopt;
  return std::strtod(t.c_str(), nullptr);
}

std::size_t decimals_of(const std::string& s) {
  const auto t = text::trim(s);
  const auto dot = t.find('.');
  return dot == std::string::npos ? 0 : t.size() - dot - 1;
}

NoteTags parse_tags(const std::string& field, const std::string& source, std::size_t row) {
  NoteTags tags;
  if (text::trim(field).empty()) return tags;
  for (const auto& part : text::split(field, ';')) {
    if (text::trim(part).empty()) continue;
    auto tag = parse_note_tag(part);
    if (!tag) throw ParseError(source, row, "tags", "unknown tag '" + text::trim(part) + "'");
    tags.insert(*tag);
  }
  return tags;
}

std::string join_tags(const NoteTags& tags) {
  std::vector<std::string> parts;
  for (auto t : tags) parts.emplace_back(to_string(t));
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ";" : "") + parts[i];
  return out;
}

}  // namespace

// ---- beverage list --------------------------------------------------------

BeverageId make_beverage_id(std::string_view brewery, std::string_view beer_name) {
  return {text::name_key(brewery) + "/" + text::name_key(beer_name)};
}

std::vector<Beverage> parse_beverages(std::string_view content, const std::string& source,
                                      const StyleTaxonomy& taxonomy) {
  const auto records = csv::parse(content, source);
  const auto h = read_header(records, source, {"brewery", "beer_name", "beer_style", "abv_percent"},
                             {"ingredients", "tags"});
  std::vector<Beverage> out;
  std::set<BeverageId> seen;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    check_width(rec, h, source);
    Beverage b;
    b.producer = text::trim(h.get(rec, "brewery"));
    b.name = text::trim(h.get(rec, "beer_name"));
    b.raw_style = text::trim(h.get(rec, "beer_style"));
    if (b.producer.empty()) throw ParseError(source, rec.row, "brewery", "empty brewery");
    if (b.name.empty()) throw ParseError(source, rec.row, "beer_name", "empty beer_name");
    const auto abv = parse_decimal(h.get(rec, "abv_percent"));
    if (!abv)
      throw ParseError(source, rec.row, "abv_percent",
                       "'" + h.get(rec, "abv_percent") + "' is not a decimal number");
    if (!(*abv > 0.0 && *abv <= 100.0))
      throw ParseError(source, rec.row, "abv_percent", "abv must lie in (0, 100]");
    b.abv = *abv;
    b.style_family = taxonomy.bucket(b.raw_style).name;
    if (h.has("ingredients") && !text::trim(h.get(rec, "ingredients")).empty()) {
      std::set<std::string> ingredients;
      for (const auto& part : text::split(h.get(rec, "ingredients"), ';')) {
        auto k = text::name_key(part);
        if (!k.empty()) ingredients.insert(std::move(k));
      }
      b.ingredients = std::move(ingredients);
    }
    if (h.has("tags")) b.note_tags = parse_tags(h.get(rec, "tags"), source, rec.row);
    b.id = make_beverage_id(b.producer, b.name);
    if (!seen.insert(b.id).second)
      throw ParseError(source, rec.row, "beer_name",
                       "duplicate beverage '" + b.name + "' for brewery '" + b.producer + "'");
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<Beverage> ingest_beverages(const fs::path& path, const StyleTaxonomy& taxonomy) {
  return parse_beverages(read_file(path), path.string(), taxonomy);
}

std::string serialize_beverages(std::span<const Beverage> beverages) {
  std::string out = "brewery,beer_name,beer_style,abv_percent,ingredients,tags\n";
  for (const auto& b : beverages) {
    std::string ingredients;
    if (b.ingredients) {
      for (const auto& i : *b.ingredients) ingredients += (ingredients.empty() ? "" : ";") + i;
    }
    out += csv::join({b.producer, b.name, b.raw_style, text::one_decimal(b.abv), ingredients,
                      join_tags(b.note_tags)});
    out += '\n';
  }
  return out;
}

// ---- scorecards -----------------------------------------------------------

Dataset parse_scorecards(std::string_view content, const std::string& source,
                         std::vector<Beverage> beverages) {
  const auto records = csv::parse(content, source);
  const auto h = read_header(records, source, {"judge_id", "beer_name", "raw_score"}, {"tags", "note"});

  std::map<std::string, std::vector<const Beverage*>> by_name;
  for (const auto& b : beverages) by_name[text::name_key(b.name)].push_back(&b);

  Dataset ds;
  std::set<JudgeId> judges;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    check_width(rec, h, source);
    Review r;
    r.judge_id = {text::trim(h.get(rec, "judge_id"))};
    if (r.judge_id.value.empty()) throw ParseError(source, rec.row, "judge_id", "empty judge_id");
    const auto key = text::name_key(h.get(rec, "beer_name"));
    if (key.empty()) throw ParseError(source, rec.row, "beer_name", "empty beer_name");

    const auto& raw = h.get(rec, "raw_score");
    const auto score = parse_decimal(raw);
    if (!score) throw ParseError(source, rec.row, "raw_score", "'" + raw + "' is not a decimal number");
    if (decimals_of(raw) > 1)
      throw ParseError(source, rec.row, "raw_score", "scores carry at most one decimal");
    if (!(*score >= kMinScore && *score <= kMaxScore))
      throw ParseError(source, rec.row, "raw_score", "score must lie in [1, 5]");
    r.raw_score = round_score(*score);

    auto it = by_name.find(key);
    if (it == by_name.end()) {
      r.beverage_id = {"unknown:" + key};
    } else if (it->second.size() > 1) {
      throw ParseError(source, rec.row, "beer_name",
                       "beer_name '" + key + "' matches more than one beverage");
    } else {
      r.beverage_id = it->second.front()->id;
    }
    if (h.has("tags")) r.note_tags = parse_tags(h.get(rec, "tags"), source, rec.row);
    if (h.has("note") && !h.get(rec, "note").empty()) r.note_text = h.get(rec, "note");

    if (judges.insert(r.judge_id).second) ds.judges.push_back(r.judge_id);
    ds.reviews.push_back(std::move(r));
  }
  ds.beverages = std::move(beverages);
  return ds;
}

Dataset ingest_dataset(const fs::path& scorecards, const fs::path& beverages,
                       const StyleTaxonomy& taxonomy) {
  auto bevs = ingest_beverages(beverages, taxonomy);
  return parse_scorecards(read_file(scorecards), scorecards.string(), std::move(bevs));
}

std::string serialize_scorecards(const Dataset& dataset) {
  std::map<BeverageId, std::string> names;
  for (const auto& b : dataset.beverages) names.emplace(b.id, b.name);
  std::string out = "judge_id,beer_name,raw_score,tags,note\n";
  for (const auto& r : dataset.reviews) {
    auto it = names.find(r.beverage_id);
    const std::string name = it == names.end() ? r.beverage_id.value : it->second;
    out += csv::join({r.judge_id.value, name, text::one_decimal(r.raw_score), join_tags(r.note_tags),
                      r.note_text.value_or("")});
    out += '\n';
  }
  return out;
}

// ---- session config -------------------------------------------------------

namespace {

template <typename T>
T field(const json& obj, const char* key, const T& fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": field '" + key + "' has the wrong type");
  }
}

int clock_field(const json& obj, const char* key, int fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) {
    try {
      return text::parse_clock(v.get<std::string>());
    } catch (const DomainError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  throw ConfigError(where + ": field '" + key + "' must be minutes or \"HH:MM\"");
}

int clock_value(const json& v, const std::string& where) {
  json wrap{{"t", v}};
  return clock_field(wrap, "t", 0, where);
}

ParticipantProfile parse_participant(const json& p) {
  if (!p.is_object() || !p.contains("id") || !p["id"].is_string())
    throw ConfigError("federation entries need a string 'id'");
  ParticipantProfile out;
  out.id = {p["id"].get<std::string>()};
  const std::string where = "participant '" + out.id.value + "'";
  out.is_expert = field<bool>(p, "is_expert", false, where);
  out.leader_probability = field<double>(p, "leader_probability", 0.0, where);
  out.freeload_probability = field<double>(p, "freeload_probability", 0.0, where);
  out.availability_probability = field<double>(p, "availability_probability", 1.0, where);
  out.score_noise_sd = field<double>(p, "score_noise_sd", 0.0, where);
  out.score_floor_affinity = field<double>(p, "score_floor_affinity", 0.0, where);
  out.score_bias = field<std::map<std::string, double>>(p, "score_bias", {}, where);
  return out;
}

Beverage parse_inline_beverage(const json& b, const StyleTaxonomy& taxonomy) {
  if (!b.is_object()) throw ConfigError("pool entries must be objects");
  Beverage out;
  out.producer = field<std::string>(b, "brewery", "", "pool entry");
  out.name = field<std::string>(b, "beer_name", "", "pool entry");
  out.raw_style = field<std::string>(b, "beer_style", "", "pool entry");
  out.abv = field<double>(b, "abv_percent", 0.0, "pool entry");
  if (out.producer.empty() || out.name.empty())
    throw ConfigError("pool entries need 'brewery' and 'beer_name'");
  if (!(out.abv > 0.0 && out.abv <= 100.0))
    throw ConfigError("pool entry '" + out.name + "' has abv outside (0, 100]");
  out.style_family = taxonomy.bucket(out.raw_style).name;
  if (b.contains("ingredients")) {
    std::set<std::string> ing;
    for (const auto& i : field<std::vector<std::string>>(b, "ingredients", {}, "pool entry"))
      ing.insert(text::name_key(i));
    out.ingredients = std::move(ing);
  }
  for (const auto& t : field<std::vector<std::string>>(b, "tags", {}, "pool entry")) {
    auto tag = parse_note_tag(t);
    if (!tag) throw ConfigError("pool entry '" + out.name + "' has unknown tag '" + t + "'");
    out.note_tags.insert(*tag);
  }
  out.id = make_beverage_id(out.producer, out.name);
  return out;
}

}  // namespace

SessionConfig parse_session_config(std::string_view json_text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("session config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("session config must be a JSON object");

  const std::string where = "session config";
  SessionConfig cfg;
  cfg.seed = field<std::uint64_t>(doc, "seed", 0, where);
  cfg.clock_start = clock_field(doc, "clock_start", cfg.clock_start, where);
  cfg.clock_end = clock_field(doc, "clock_end", cfg.clock_end, where);
  cfg.round_duration = field<int>(doc, "round_duration", cfg.round_duration, where);
  cfg.include_amateurs = field<bool>(doc, "include_amateurs", false, where);

  if (doc.contains("blackout_windows")) {
    const auto& ws = doc["blackout_windows"];
    if (!ws.is_array()) throw ConfigError("'blackout_windows' must be an array");
    for (const auto& w : ws) {
      if (!w.is_array() || w.size() != 2)
        throw ConfigError("each blackout window is a [start, end] pair");
      cfg.blackout_windows.push_back({clock_value(w[0], where), clock_value(w[1], where)});
    }
  }
  if (doc.contains("cost_params")) {
    const auto& c = doc["cost_params"];
    if (!c.is_object()) throw ConfigError("'cost_params' must be an object");
    auto& p = cfg.cost_params;
    p.politeness_initial = field<double>(c, "politeness_initial", p.politeness_initial, where);
    p.politeness_decay = field<double>(c, "politeness_decay", p.politeness_decay, where);
    p.broadcast_base = field<double>(c, "broadcast_base", p.broadcast_base, where);
    p.comprehension_base = field<double>(c, "comprehension_base", p.comprehension_base, where);
    p.comprehension_growth = field<double>(c, "comprehension_growth", p.comprehension_growth, where);
  }
  if (doc.contains("base_quality")) {
    const auto& q = doc["base_quality"];
    if (!q.is_object()) throw ConfigError("'base_quality' must be an object");
    cfg.base_quality.min = field<double>(q, "min", cfg.base_quality.min, where);
    cfg.base_quality.max = field<double>(q, "max", cfg.base_quality.max, where);
  }

  if (!doc.contains("federation") || !doc["federation"].is_array())
    throw ConfigError("session config needs a 'federation' array");
  for (const auto& p : doc["federation"]) cfg.federation.push_back(parse_participant(p));

  StyleTaxonomy taxonomy = StyleTaxonomy::defaults();
  if (doc.contains("families")) {
    try {
      taxonomy = load_families(base_dir / field<std::string>(doc, "families", "", where));
    } catch (const IoError& e) {
      throw ConfigError(e.what());
    }
  }

  if (doc.contains("pool") && doc.contains("pool_csv"))
    throw ConfigError("give either 'pool' or 'pool_csv', not both");
  if (doc.contains("pool")) {
    if (!doc["pool"].is_array()) throw ConfigError("'pool' must be an array");
    for (const auto& b : doc["pool"]) cfg.pool.push_back(parse_inline_beverage(b, taxonomy));
  } else if (doc.contains("pool_csv")) {
    const auto path = base_dir / field<std::string>(doc, "pool_csv", "", where);
    try {
      cfg.pool = ingest_beverages(path, taxonomy);
    } catch (const Error& e) {
      throw ConfigError(std::string("pool_csv: ") + e.what());
    }
  }

  validate_config(cfg);
  return cfg;
}

SessionConfig load_session_config(const fs::path& path) {
  std::string content;
  try {
    content = read_file(path);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  return parse_session_config(content, path.parent_path());
}

json to_json(const RoundRecord& round) {
  json reviews = json::array();
  for (const auto& r : round.reviews) {
    json tags = json::array();
    for (auto t : r.note_tags) tags.push_back(std::string(to_string(t)));
    reviews.push_back({{"judge_id", r.judge_id.value}, {"raw_score", r.raw_score}, {"tags", tags}});
  }
  auto ids = [](const std::vector<JudgeId>& v) {
    json a = json::array();
    for (const auto& j : v) a.push_back(j.value);
    return a;
  };
  return {{"type", "round"},
          {"index", round.index},
          {"minute", round.start_minute},
          {"time", text::format_clock(round.start_minute)},
          {"leader", round.leader.value},
          {"beverage_id", round.beverage_id.value},
          {"procurers", ids(round.procurers)},
          {"reviewers", ids(round.reviewers)},
          {"procured_items", RoundRecord::procured_items},
          {"reviews", reviews},
          {"broadcast_cost", round.cost.broadcast()},
          {"politeness_overhead", round.cost.politeness},
          {"comprehension_cost", round.cost.comprehension()},
          {"comprehension_growth", round.cost.comprehension_growth}};
}

json to_json(const Omitted& skip) {
  return {{"type", "skip"},
          {"minute", skip.minute},
          {"time", text::format_clock(skip.minute)},
          {"reason", std::string(to_string(skip.reason))}};
}

std::string serialize_session_log(const SessionResult& result) {
  std::string out;
  std::size_t s = 0;
  for (const auto& r : result.rounds) {
    while (s < result.skipped.size() && result.skipped[s].minute < r.start_minute)
      out += to_json(result.skipped[s++]).dump() + "\n";
    out += to_json(r).dump() + "\n";
  }
  while (s < result.skipped.size()) out += to_json(result.skipped[s++]).dump() + "\n";
  return out;
}

// ---- recommendations and profiles ----------------------------------------

ModelRecommendations parse_recommendations(std::string_view json_text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(source + ": not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ParseError(source + ": top level must be an object");
  if (!doc.contains("model_id") || !doc["model_id"].is_string())
    throw ParseError(source + ": missing string 'model_id'");
  if (!doc.contains("profiles") || !doc["profiles"].is_array())
    throw ParseError(source + ": missing 'profiles' array");

  ModelRecommendations out;
  out.model_id = doc["model_id"].get<std::string>();
  for (const auto& p : doc["profiles"]) {
    if (!p.is_object() || !p.contains("profile_id") || !p["profile_id"].is_string())
      throw ParseError(source + ": each profile needs a string 'profile_id'");
    RecommendationSet set{out.model_id, {p["profile_id"].get<std::string>()}, {}};
    if (p.contains("recommendations")) {
      if (!p["recommendations"].is_array())
        throw ParseError(source + ": 'recommendations' must be an array");
      for (const auto& r : p["recommendations"]) {
        RecommendationSlot slot;
        if (r.is_object()) {
          if (r.contains("beverage_name") && r["beverage_name"].is_string())
            slot.beverage_name = r["beverage_name"].get<std::string>();
          if (r.contains("rank")) {
            const auto& rk = r["rank"];
            if (rk.is_number_integer()) {
              slot.rank = rk.get<int>();
            } else if (rk.is_number_float() && std::floor(rk.get<double>()) == rk.get<double>() &&
                       std::abs(rk.get<double>()) < 1e6) {
              slot.rank = static_cast<int>(rk.get<double>());
            }
          }
          if (r.contains("justification") && r["justification"].is_string())
            slot.justification = r["justification"].get<std::string>();
        }
        set.slots.push_back(std::move(slot));
      }
    }
    out.sets.push_back(std::move(set));
  }
  return out;
}

std::vector<JudgeId> parse_profiles(std::string_view json_text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(source + ": not valid JSON: " + e.what());
  }
  if (!doc.is_array()) throw ParseError(source + ": profile file must be a JSON array");
  std::vector<JudgeId> out;
  std::set<std::string> seen;
  for (const auto& p : doc) {
    if (!p.is_object() || !p.contains("profile_id") || !p["profile_id"].is_string())
      throw ParseError(source + ": each profile needs a string 'profile_id'");
    auto id = p["profile_id"].get<std::string>();
    if (!seen.insert(id).second) throw ParseError(source + ": duplicate profile_id '" + id + "'");
    out.push_back({std::move(id)});
  }
  return out;
}

namespace {
std::string metric_cell(const std::optional<double>& v) {
  return v ? text::fixed_half_even(*v, 3) : std::string();
}
json metric_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
}  // namespace

std::string metric_table_csv(std::span<const MetricReport> reports) {
  const std::size_t k = reports.empty() ? kDefaultTopK : reports.front().k;
  std::string out = csv::join({"Model", "Mean rating", "Mean percentile", "Hit@" + std::to_string(k),
                               "nDCG@" + std::to_string(k), "Coverage"}) +
                    "\n";
  for (const auto& r : reports) {
    out += csv::join({r.model_id, metric_cell(r.mean_rating), metric_cell(r.mean_percentile),
                      metric_cell(r.hit_at_k), metric_cell(r.ndcg_at_k),
                      text::fixed_half_even(r.coverage, 3)}) +
           "\n";
  }
  return out;
}

json metric_table_json(std::span<const MetricReport> reports) {
  json rows = json::array();
  for (const auto& r : reports) {
    json verdicts = json::object();
    for (const auto& [profile, vs] : r.verdicts) {
      json a = json::array();
      for (const auto& v : vs)
        a.push_back({{"slot", v.slot_index}, {"valid", v.valid},
                     {"reason", std::string(to_string(v.reason))}, {"beverage", v.beverage_key}});
      verdicts[profile.value] = std::move(a);
    }
    rows.push_back({{"model_id", r.model_id},
                    {"k", r.k},
                    {"mean_rating", metric_json(r.mean_rating)},
                    {"mean_percentile", metric_json(r.mean_percentile)},
                    {"hit_at_k", metric_json(r.hit_at_k)},
                    {"ndcg_at_k", metric_json(r.ndcg_at_k)},
                    {"coverage", r.coverage},
                    {"hits", r.hits.count},
                    {"valid_slots", r.valid.count},
                    {"total_slots", r.valid.slots},
                    {"verdicts", std::move(verdicts)}});
  }
  return {{"models", std::move(rows)}};
}

}  // namespace dba::io
