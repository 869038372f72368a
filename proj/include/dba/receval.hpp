#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dba/model.hpp"

namespace dba {

inline constexpr std::size_t kDefaultTopK = 5;

struct RecommendationSlot {
  std::string beverage_name;
  std::optional<int> rank;  // nullopt when the source rank was missing or not an integer
  std::string justification;
};

struct RecommendationSet {
  std::string model_id;
  JudgeId profile_id;
  std::vector<RecommendationSlot> slots;
};

// All of one model's recommendation sets, one per consumer profile.
struct ModelRecommendations {
  std::string model_id;
  std::vector<RecommendationSet> sets;
};

enum class SlotReason : std::uint8_t { ok, not_in_list, duplicate, bad_rank, missing };

std::string_view to_string(SlotReason reason);  // OK, NOT_IN_LIST, ...

struct SlotVerdict {
  std::size_t slot_index = 0;
  bool valid = false;
  SlotReason reason = SlotReason::missing;
  std::string beverage_key;  // name_key of the recommended beverage
  std::optional<int> rank;
};

// Exactly max(k, |slots|) verdicts, in slot order, padded with MISSING.
// Checks run in ascending rank order (unranked slots last, then file
// order): a rank outside 1..k or already taken is BAD_RANK, an unknown
// name NOT_IN_LIST, a name already recommended DUPLICATE. Only the
// second and later occurrences of a name are marked.
std::vector<SlotVerdict> validate_recs(const RecommendationSet& recs,
                                       const std::set<std::string>& beverage_keys,
                                       std::size_t k = kDefaultTopK);

// One judge's raw scores keyed by beverage name_key.
struct Scorecard {
  JudgeId judge;
  std::map<std::string, double> scores;
};

// A profile's verdicts joined to the owning judge's scorecard.
struct JudgedVerdicts {
  const Scorecard* card = nullptr;
  std::vector<SlotVerdict> verdicts;
};

// count / (judges * k). The numerator is kept so callers can check the
// 1/(J*K) quantisation exactly.
struct SlotRatio {
  std::size_t count = 0;
  std::size_t slots = 0;
  double value() const {
    return slots ? static_cast<double>(count) / static_cast<double>(slots) : 0.0;
  }
};

enum class TopKTies {
  name_order,       // fixed k-set, ties at the k-th score broken by name ascending
  score_threshold,  // every beverage scoring at least the k-th highest score
};

struct EvalOptions {
  std::size_t k = kDefaultTopK;
  TopKTies ties = TopKTies::name_order;
  // Min-max normalise each scorecard before scoring (sensitivity analysis).
  bool normalized_scores = false;
};

SlotRatio coverage(std::span<const JudgedVerdicts> judged, std::size_t k = kDefaultTopK);

// Mean judge score over valid slots the judge has scored; nullopt if none.
std::optional<double> mean_rating(std::span<const JudgedVerdicts> judged);

// Midrank percentile of each valid slot within its judge's scorecard,
// averaged per judge then across judges. Judges with fewer than two scores
// or no valid scored slot are skipped; nullopt if none remain.
std::optional<double> mean_percentile(std::span<const JudgedVerdicts> judged);

// Percentile of one beverage within a scorecard:
// (#strictly lower + 0.5 * #other equal) / (n - 1).
std::optional<double> percentile_in(const Scorecard& card, const std::string& beverage_key);

// The judge's top-k beverage keys under the given tie rule.
std::set<std::string> top_k_set(const Scorecard& card, std::size_t k,
                                TopKTies ties = TopKTies::name_order);

SlotRatio hit_at_k(std::span<const JudgedVerdicts> judged, std::size_t k = kDefaultTopK,
                   TopKTies ties = TopKTies::name_order);

// DCG of the slots placed at their stated rank (relevance = raw score, 0 for
// invalid or missing slots) over the DCG of the judge's k highest scores;
// mean over judges.
std::optional<double> ndcg_at_k(std::span<const JudgedVerdicts> judged,
                                std::size_t k = kDefaultTopK);

struct MetricReport {
  std::string model_id;
  std::size_t k = kDefaultTopK;
  std::optional<double> mean_rating;
  std::optional<double> mean_percentile;
  std::optional<double> hit_at_k;
  std::optional<double> ndcg_at_k;
  double coverage = 0.0;
  SlotRatio hits;
  SlotRatio valid;
  // Per-profile verdicts, in scorecard order.
  std::vector<std::pair<JudgeId, std::vector<SlotVerdict>>> verdicts;
};

// Evaluates one model against the profiles' scorecards. Profiles with no
// recommendation set count as k MISSING slots; sets for profiles without a
// scorecard are ignored. hit/nDCG are undefined only when the model supplied
// no set for any profile; mean rating and percentile when no slot is valid.
MetricReport evaluate_model(const ModelRecommendations& recs,
                            std::span<const Scorecard> scorecards,
                            const std::set<std::string>& beverage_keys, EvalOptions options = {});

// Independent models, OpenMP-parallel.
std::vector<MetricReport> evaluate_models(std::span<const ModelRecommendations> models,
                                          std::span<const Scorecard> scorecards,
                                          const std::set<std::string>& beverage_keys,
                                          EvalOptions options = {});

// Serial reference for evaluate_models.
std::vector<MetricReport> evaluate_models_serial(std::span<const ModelRecommendations> models,
                                                 std::span<const Scorecard> scorecards,
                                                 const std::set<std::string>& beverage_keys,
                                                 EvalOptions options = {});

// Table ordering: mean rating descending (undefined last), then model id.
void sort_for_table(std::vector<MetricReport>& reports);

// Scorecards for every judge in the dataset, keyed by beverage name_key.
std::vector<Scorecard> scorecards_from_dataset(const Dataset& dataset);

}  // namespace dba
