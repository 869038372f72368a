#include "dba/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "dba/error.hpp"

namespace dba {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::optional<double> opt(double v) {
  return std::isnan(v) ? std::nullopt : std::optional<double>(v);
}

// Score descending, NaN last, ties by name then id.
bool ranks_before(const RankingEntry& a, const RankingEntry& b) {
  const bool an = std::isnan(a.score), bn = std::isnan(b.score);
  if (an != bn) return bn;
  if (!an && a.score != b.score) return a.score > b.score;
  if (a.name != b.name) return a.name < b.name;
  return a.beverage_id < b.beverage_id;
}

AggregateRanking rank_columns(const ScoreMatrix& m) {
  const auto s = m.shape();
  std::vector<double> means(s.cols);
  std::vector<std::size_t> counts(s.cols);
  kernels::omp::column_means(s, m.dense(), means, counts);
  AggregateRanking out;
  out.entries.reserve(s.cols);
  for (std::size_t c = 0; c < s.cols; ++c)
    out.entries.push_back({m.beverage_ids()[c], m.beverage_names()[c], means[c], counts[c]});
  std::sort(out.entries.begin(), out.entries.end(), ranks_before);
  return out;
}

}  // namespace

ScoreMatrix::ScoreMatrix(std::vector<JudgeId> judges, std::vector<BeverageId> beverage_ids,
                         std::vector<std::string> beverage_names)
    : judges_(std::move(judges)),
      beverage_ids_(std::move(beverage_ids)),
      beverage_names_(std::move(beverage_names)),
      cells_(judges_.size() * beverage_ids_.size(), kNaN) {
  if (beverage_names_.size() != beverage_ids_.size())
    throw std::invalid_argument("beverage ids and names differ in length");
}

ScoreMatrix ScoreMatrix::from_dataset(const Dataset& dataset) {
  std::vector<BeverageId> ids;
  std::vector<std::string> names;
  std::map<BeverageId, std::size_t> col;
  for (const auto& b : dataset.beverages) {
    if (col.emplace(b.id, ids.size()).second) {
      ids.push_back(b.id);
      names.push_back(b.name);
    }
  }
  std::map<JudgeId, std::size_t> row;
  std::vector<JudgeId> judges;
  for (const auto& j : dataset.judges)
    if (row.emplace(j, judges.size()).second) judges.push_back(j);

  ScoreMatrix m(std::move(judges), std::move(ids), std::move(names));
  for (const auto& r : dataset.reviews) {
    auto jr = row.find(r.judge_id);
    auto bc = col.find(r.beverage_id);
    if (jr == row.end() || bc == col.end()) continue;
    m.set(jr->second, bc->second, r.raw_score);
  }
  return m;
}

std::optional<double> ScoreMatrix::cell(std::size_t judge, std::size_t beverage) const {
  return opt(cells_.at(judge * beverage_ids_.size() + beverage));
}

void ScoreMatrix::set(std::size_t judge, std::size_t beverage, std::optional<double> value) {
  cells_.at(judge * beverage_ids_.size() + beverage) = value.value_or(kNaN);
}

NormalizedMatrix normalize(const ScoreMatrix& matrix, NormalizeOptions options) {
  NormalizedMatrix out{matrix, options.method};
  try {
    kernels::omp::normalize_rows(matrix.shape(), matrix.dense(), out.values.dense(),
                                 options.method, options.lenient);
  } catch (const DegenerateRowError&) {
    // Re-raise naming the judge rather than the row index.
    for (std::size_t r = 0; r < matrix.judge_count(); ++r) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (std::size_t c = 0; c < matrix.beverage_count(); ++c) {
        if (auto v = matrix.cell(r, c)) {
          lo = std::min(lo, *v);
          hi = std::max(hi, *v);
        }
      }
      if (lo == hi)
        throw DegenerateRowError("judge '" + matrix.judges()[r].value +
                                 "' has fewer than two distinct scores");
    }
    throw;
  }
  return out;
}

AggregateRanking aggregate(const NormalizedMatrix& norm) { return rank_columns(norm.values); }

AggregateRanking aggregate_raw(const ScoreMatrix& matrix) { return rank_columns(matrix); }

std::vector<std::optional<JudgeStat>> judge_stats_partial(const ScoreMatrix& matrix) {
  const auto s = matrix.shape();
  std::vector<double> mean(s.rows), sd(s.rows);
  std::vector<std::size_t> counts(s.rows);
  kernels::omp::row_stats(s, matrix.dense(), mean, sd, counts);
  std::vector<std::optional<JudgeStat>> out;
  for (std::size_t r = 0; r < s.rows; ++r) {
    if (counts[r] < 2) {
      out.emplace_back();
    } else {
      out.push_back(JudgeStat{matrix.judges()[r], mean[r], sd[r], counts[r]});
    }
  }
  return out;
}

std::vector<JudgeStat> judge_stats(const ScoreMatrix& matrix) {
  auto partial = judge_stats_partial(matrix);
  std::vector<JudgeStat> out;
  for (std::size_t r = 0; r < partial.size(); ++r) {
    if (!partial[r])
      throw InsufficientDataError("judge '" + matrix.judges()[r].value +
                                  "' has fewer than two scores");
    out.push_back(*partial[r]);
  }
  return out;
}

AgreementMatrix agreement(const ScoreMatrix& matrix, kernels::CorrMethod method) {
  const auto s = matrix.shape();
  std::vector<double> raw(s.rows * s.rows);
  kernels::omp::correlation_matrix(s, matrix.dense(), raw, method, kMinCommonForAgreement);
  AgreementMatrix out{matrix.judges(), {}};
  out.values.reserve(raw.size());
  for (double v : raw) out.values.push_back(opt(v));
  return out;
}

std::vector<StyleDistribution> per_style_distribution(const NormalizedMatrix& norm,
                                                      const Dataset& dataset,
                                                      const StyleTaxonomy& taxonomy) {
  std::map<BeverageId, std::string> family_of;
  for (const auto& b : dataset.beverages) family_of.emplace(b.id, b.style_family);

  std::vector<StyleDistribution> out;
  std::map<std::string, std::size_t> slot;
  for (const auto& f : taxonomy.families()) {
    slot.emplace(f.name, out.size());
    out.push_back({f.name, {}, std::nullopt});
  }
  for (const auto& e : aggregate(norm).entries) {
    if (std::isnan(e.score)) continue;
    auto it = family_of.find(e.beverage_id);
    const std::string family =
        it == family_of.end() ? taxonomy.fallback().name : it->second;
    auto s = slot.find(family);
    if (s == slot.end()) {
      // A family name from data that the taxonomy does not know.
      s = slot.emplace(family, out.size()).first;
      out.push_back({family, {}, std::nullopt});
    }
    out[s->second].scores.push_back(e);  // already descending
  }
  for (auto& d : out) {
    if (d.scores.empty()) continue;
    double sum = 0.0;
    for (const auto& e : d.scores) sum += e.score;
    d.mean = sum / static_cast<double>(d.scores.size());
  }
  std::stable_sort(out.begin(), out.end(), [](const StyleDistribution& a, const StyleDistribution& b) {
    if (a.mean.has_value() != b.mean.has_value()) return a.mean.has_value();
    if (!a.mean) return false;
    if (*a.mean != *b.mean) return *a.mean > *b.mean;
    return a.family < b.family;
  });
  return out;
}

std::vector<DivisiveEntry> divisiveness(const ScoreMatrix& matrix, std::size_t top_n) {
  const auto s = matrix.shape();
  std::vector<double> sd(s.cols), range(s.cols);
  std::vector<std::size_t> counts(s.cols);
  kernels::omp::column_spread(s, matrix.dense(), sd, range, counts);
  std::vector<DivisiveEntry> out;
  for (std::size_t c = 0; c < s.cols; ++c) {
    if (counts[c] < 2) continue;
    out.push_back({matrix.beverage_ids()[c], matrix.beverage_names()[c], sd[c], range[c], counts[c]});
  }
  std::sort(out.begin(), out.end(), [](const DivisiveEntry& a, const DivisiveEntry& b) {
    if (a.sd != b.sd) return a.sd > b.sd;
    if (a.name != b.name) return a.name < b.name;
    return a.beverage_id < b.beverage_id;
  });
  if (top_n != 0 && out.size() > top_n) out.resize(top_n);
  return out;
}

std::optional<bool> TagComparison::real_not_below_artificial() const {
  if (!comparable()) return std::nullopt;
  return *real_mean >= *artificial_mean;
}

NoteTags effective_tags(const Review& review) {
  NoteTags tags = review.note_tags;
  if (review.note_text) tags.merge(tags_from_note(*review.note_text));
  return tags;
}

std::vector<TagComparison> tag_report(const Dataset& dataset) {
  std::map<BeverageId, std::string> family_of;
  for (const auto& b : dataset.beverages) family_of.emplace(b.id, b.style_family);

  struct Acc {
    double real_sum = 0.0, art_sum = 0.0;
    std::size_t real_n = 0, art_n = 0;
  };
  std::map<std::string, Acc> acc;
  for (const auto& r : dataset.reviews) {
    auto fam = family_of.find(r.beverage_id);
    if (fam == family_of.end()) continue;
    const auto tags = effective_tags(r);
    const bool real = tags.count(NoteTag::real_flavour) > 0;
    const bool art = tags.count(NoteTag::artificial_flavour) > 0;
    if (!real && !art) continue;
    auto& a = acc[fam->second];
    if (real) {
      a.real_sum += r.raw_score;
      ++a.real_n;
    }
    if (art) {
      a.art_sum += r.raw_score;
      ++a.art_n;
    }
  }
  std::vector<TagComparison> out;
  for (const auto& [family, a] : acc) {
    TagComparison t{family, std::nullopt, std::nullopt, a.real_n, a.art_n};
    if (a.real_n) t.real_mean = a.real_sum / static_cast<double>(a.real_n);
    if (a.art_n) t.artificial_mean = a.art_sum / static_cast<double>(a.art_n);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace dba
