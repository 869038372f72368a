#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dba/model.hpp"
#include "dba/scoring.hpp"

namespace dba {

struct AnalysisOptions {
  // Downgrades validation errors to warnings and maps degenerate judge rows
  // to 0.5 instead of failing.
  bool lenient = false;
  kernels::NormMethod normalization = kernels::NormMethod::min_max;
  kernels::CorrMethod correlation = kernels::CorrMethod::spearman;
  std::size_t top_n = 10;
  std::size_t divisive_n = 10;  // 0 keeps every beverage
};

// The eight plot-ready tables, by file stem.
inline const std::vector<std::string> kReportTables = {
    "style_counts", "abv_bands", "judge_stats", "agreement",
    "top10",        "bottom10",  "per_style",   "divisive"};

struct AnalysisReport {
  std::vector<Violation> violations;
  std::map<std::string, std::string> tables;  // stem -> CSV text
  nlohmann::json summary;
};

// Validates, then builds every table. When validation finds errors and
// lenient is off, only `violations` is filled.
AnalysisReport analyze(const Dataset& dataset, const StyleTaxonomy& taxonomy,
                       const AnalysisOptions& options = {});

}  // namespace dba
