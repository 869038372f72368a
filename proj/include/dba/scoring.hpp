#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dba/model.hpp"
#include "dba/scoring_kernels.hpp"

namespace dba {

// Judge x beverage table of raw scores. Empty cells are absent reviews.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  ScoreMatrix(std::vector<JudgeId> judges, std::vector<BeverageId> beverage_ids,
              std::vector<std::string> beverage_names);

  // Judges in dataset order, beverages in dataset order. Reviews referencing
  // unknown judges or beverages are ignored (validation reports those).
  static ScoreMatrix from_dataset(const Dataset& dataset);

  std::size_t judge_count() const { return judges_.size(); }
  std::size_t beverage_count() const { return beverage_ids_.size(); }
  const std::vector<JudgeId>& judges() const { return judges_; }
  const std::vector<BeverageId>& beverage_ids() const { return beverage_ids_; }
  const std::vector<std::string>& beverage_names() const { return beverage_names_; }

  std::optional<double> cell(std::size_t judge, std::size_t beverage) const;
  void set(std::size_t judge, std::size_t beverage, std::optional<double> value);

  kernels::Shape shape() const { return {judges_.size(), beverage_ids_.size()}; }
  // Row-major, NaN for empty cells.
  const std::vector<double>& dense() const { return cells_; }
  std::vector<double>& dense() { return cells_; }

 private:
  std::vector<JudgeId> judges_;
  std::vector<BeverageId> beverage_ids_;
  std::vector<std::string> beverage_names_;
  std::vector<double> cells_;
};

// Same shape as the raw matrix; min-max cells lie in [0, 1].
struct NormalizedMatrix {
  ScoreMatrix values;
  kernels::NormMethod method = kernels::NormMethod::min_max;
};

struct NormalizeOptions {
  kernels::NormMethod method = kernels::NormMethod::min_max;
  // Degenerate rows map to 0.5 instead of throwing DegenerateRowError.
  bool lenient = false;
};

// Per-judge rescale: (x - min_j) / (max_j - min_j) over the judge's filled cells.
NormalizedMatrix normalize(const ScoreMatrix& matrix, NormalizeOptions options = {});

struct RankingEntry {
  BeverageId beverage_id;
  std::string name;
  double score = 0.0;  // NaN when the beverage has no filled cells
  std::size_t review_count = 0;
};

// Sorted by score descending, ties by name ascending; empty beverages last.
struct AggregateRanking {
  std::vector<RankingEntry> entries;
};

// Mean normalised score per beverage over filled cells.
AggregateRanking aggregate(const NormalizedMatrix& norm);

// Same ranking over raw 1-5 scores.
AggregateRanking aggregate_raw(const ScoreMatrix& matrix);

struct JudgeStat {
  JudgeId judge;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation
  std::size_t count = 0;
};

// Throws InsufficientDataError naming the first judge with fewer than two cells.
std::vector<JudgeStat> judge_stats(const ScoreMatrix& matrix);

// Per-judge variant that reports the short rows as nullopt instead of throwing.
std::vector<std::optional<JudgeStat>> judge_stats_partial(const ScoreMatrix& matrix);

inline constexpr std::size_t kMinCommonForAgreement = 3;

struct AgreementMatrix {
  std::vector<JudgeId> judges;
  std::vector<std::optional<double>> values;  // judges x judges, row-major

  std::optional<double> at(std::size_t a, std::size_t b) const {
    return values[a * judges.size() + b];
  }
};

// Pairwise rank correlation over commonly scored beverages. Pairs sharing
// fewer than three beverages, or where one side is constant, are undefined.
AgreementMatrix agreement(const ScoreMatrix& matrix,
                          kernels::CorrMethod method = kernels::CorrMethod::spearman);

struct StyleDistribution {
  std::string family;
  std::vector<RankingEntry> scores;  // aggregated scores, descending
  std::optional<double> mean;        // nullopt for families without beverages
};

// Aggregated scores grouped by style family, families ordered by mean
// descending (ties by name, empty families last in taxonomy order).
std::vector<StyleDistribution> per_style_distribution(const NormalizedMatrix& norm,
                                                      const Dataset& dataset,
                                                      const StyleTaxonomy& taxonomy);

struct DivisiveEntry {
  BeverageId beverage_id;
  std::string name;
  double sd = 0.0;
  double range = 0.0;
  std::size_t review_count = 0;
};

// Sample standard deviation of raw scores per beverage with two or more
// reviews, descending, ties by name. top_n == 0 keeps every beverage.
std::vector<DivisiveEntry> divisiveness(const ScoreMatrix& matrix, std::size_t top_n = 0);

struct TagComparison {
  std::string family;
  std::optional<double> real_mean;
  std::optional<double> artificial_mean;
  std::size_t real_count = 0;
  std::size_t artificial_count = 0;
  bool comparable() const { return real_mean && artificial_mean; }
  // real_mean >= artificial_mean; nullopt when not comparable.
  std::optional<bool> real_not_below_artificial() const;
};

// Effective tags of a review: explicit tags plus keywords in its note text.
NoteTags effective_tags(const Review& review);

// Mean raw score of real- vs artificial-flavour tagged reviews per style
// family. Families with no tagged reviews are omitted.
std::vector<TagComparison> tag_report(const Dataset& dataset);

}  // namespace dba
