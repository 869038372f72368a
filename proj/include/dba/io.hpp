#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dba/model.hpp"
#include "dba/protocol.hpp"
#include "dba/receval.hpp"

namespace dba::io {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// ---- style families -------------------------------------------------------
// JSON array of {"name", "patterns": [...], "fallback": bool?}.

StyleTaxonomy parse_families(std::string_view json_text);
StyleTaxonomy load_families(const std::filesystem::path& path);
nlohmann::json families_to_json(const StyleTaxonomy& taxonomy);

// ---- beverage list --------------------------------------------------------
// Header columns brewery, beer_name, beer_style, abv_percent (any order),
// optional ingredients (semicolon-joined) and tags (semicolon-joined).

BeverageId make_beverage_id(std::string_view brewery, std::string_view beer_name);

std::vector<Beverage> parse_beverages(std::string_view content, const std::string& source,
                                      const StyleTaxonomy& taxonomy);
std::vector<Beverage> ingest_beverages(const std::filesystem::path& path,
                                       const StyleTaxonomy& taxonomy);

// Canonical form: all six columns in the order above, ABV with one decimal,
// list fields sorted, LF line endings, trailing newline.
std::string serialize_beverages(std::span<const Beverage> beverages);

// ---- scorecards -----------------------------------------------------------
// Columns judge_id, beer_name, raw_score, optional tags and note. Scores must
// lie in [1, 5] with at most one decimal. Beverages are joined by name_key;
// unknown names are kept as dangling references for validation to report.

Dataset parse_scorecards(std::string_view content, const std::string& source,
                         std::vector<Beverage> beverages);
Dataset ingest_dataset(const std::filesystem::path& scorecards,
                       const std::filesystem::path& beverages, const StyleTaxonomy& taxonomy);

// Canonical form: all five columns, reviews in dataset order.
std::string serialize_scorecards(const Dataset& dataset);

// ---- session config and log ----------------------------------------------

// Pool comes from "pool" (inline beverage objects) or "pool_csv" (resolved
// against base_dir). Optional "families" names a family config file. Throws
// ConfigError on any schema or value problem.
SessionConfig parse_session_config(std::string_view json_text,
                                   const std::filesystem::path& base_dir);
SessionConfig load_session_config(const std::filesystem::path& path);

nlohmann::json to_json(const RoundRecord& round);
nlohmann::json to_json(const Omitted& skip);

// JSON lines, rounds and no-participant skips interleaved by time.
std::string serialize_session_log(const SessionResult& result);

// ---- recommendations and profiles ----------------------------------------

// {model_id, profiles: [{profile_id, recommendations: [{beverage_name, rank,
// justification}]}]}. Throws ParseError on schema problems; a rank that is
// not an integer is carried as nullopt and judged BAD_RANK later.
ModelRecommendations parse_recommendations(std::string_view json_text, const std::string& source);

// JSON array of objects with a unique "profile_id"; other fields are ignored.
std::vector<JudgeId> parse_profiles(std::string_view json_text, const std::string& source);

// Table with the columns Model, Mean rating, Mean percentile, Hit@k, nDCG@k,
// Coverage; values half-even to 3 decimals, undefined metrics left empty.
std::string metric_table_csv(std::span<const MetricReport> reports);
nlohmann::json metric_table_json(std::span<const MetricReport> reports);

}  // namespace dba::io
