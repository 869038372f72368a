#include "dba/receval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dba/text.hpp"

namespace dba {

std::string_view to_string(SlotReason reason) {
  switch (reason) {
    case SlotReason::ok: return "OK";
    case SlotReason::not_in_list: return "NOT_IN_LIST";
    case SlotReason::duplicate: return "DUPLICATE";
    case SlotReason::bad_rank: return "BAD_RANK";
    case SlotReason::missing: return "MISSING";
  }
  return "MISSING";
}

std::vector<SlotVerdict> validate_recs(const RecommendationSet& recs,
                                       const std::set<std::string>& beverage_keys,
                                       std::size_t k) {
  const auto& slots = recs.slots;
  std::vector<SlotVerdict> out(std::max(k, slots.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i].slot_index = i;

  auto rank_in_range = [&](const std::optional<int>& r) {
    return r && *r >= 1 && static_cast<std::size_t>(*r) <= k;
  };
  std::vector<std::size_t> order(slots.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const bool va = rank_in_range(slots[a].rank), vb = rank_in_range(slots[b].rank);
    if (va != vb) return va;
    return va && *slots[a].rank < *slots[b].rank;
  });

  std::set<int> ranks_taken;
  std::set<std::string> names_taken;
  for (std::size_t i : order) {
    auto& v = out[i];
    v.rank = slots[i].rank;
    v.beverage_key = text::name_key(slots[i].beverage_name);
    if (!rank_in_range(v.rank) || !ranks_taken.insert(*v.rank).second) {
      v.reason = SlotReason::bad_rank;
    } else if (!beverage_keys.count(v.beverage_key)) {
      v.reason = SlotReason::not_in_list;
    } else if (!names_taken.insert(v.beverage_key).second) {
      v.reason = SlotReason::duplicate;
    } else {
      v.reason = SlotReason::ok;
      v.valid = true;
    }
  }
  return out;
}

namespace {

std::size_t judge_slots(std::span<const JudgedVerdicts> judged, std::size_t k) {
  return judged.size() * k;
}

void check_quantised(const SlotRatio& r) {
  if (r.count > r.slots)
    throw std::logic_error("slot count " + std::to_string(r.count) + " exceeds " +
                           std::to_string(r.slots) + " available slots");
}

const double* score_of(const Scorecard& card, const std::string& key) {
  auto it = card.scores.find(key);
  return it == card.scores.end() ? nullptr : &it->second;
}

// Scores descending, names ascending.
std::vector<std::pair<std::string, double>> sorted_card(const Scorecard& card) {
  std::vector<std::pair<std::string, double>> v(card.scores.begin(), card.scores.end());
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return v;
}

Scorecard normalized(const Scorecard& card) {
  Scorecard out = card;
  if (card.scores.empty()) return out;
  double lo = card.scores.begin()->second, hi = lo;
  for (const auto& [_, s] : card.scores) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  for (auto& [_, s] : out.scores) s = hi == lo ? 0.5 : (s - lo) / (hi - lo);
  return out;
}

}  // namespace

SlotRatio coverage(std::span<const JudgedVerdicts> judged, std::size_t k) {
  SlotRatio r{0, judge_slots(judged, k)};
  for (const auto& j : judged)
    for (const auto& v : j.verdicts) r.count += v.valid;
  check_quantised(r);
  return r;
}

std::optional<double> mean_rating(std::span<const JudgedVerdicts> judged) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& j : judged) {
    for (const auto& v : j.verdicts) {
      if (!v.valid) continue;
      if (const double* s = score_of(*j.card, v.beverage_key)) {
        sum += *s;
        ++n;
      }
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::optional<double> percentile_in(const Scorecard& card, const std::string& beverage_key) {
  const double* target = score_of(card, beverage_key);
  const std::size_t n = card.scores.size();
  if (!target || n < 2) return std::nullopt;
  double lower = 0.0, equal = 0.0;
  for (const auto& [key, s] : card.scores) {
    if (key == beverage_key) continue;
    if (s < *target) lower += 1.0;
    else if (s == *target) equal += 1.0;
  }
  return (lower + 0.5 * equal) / static_cast<double>(n - 1);
}

std::optional<double> mean_percentile(std::span<const JudgedVerdicts> judged) {
  double judge_sum = 0.0;
  std::size_t judges = 0;
  for (const auto& j : judged) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& v : j.verdicts) {
      if (!v.valid) continue;
      if (auto p = percentile_in(*j.card, v.beverage_key)) {
        sum += *p;
        ++n;
      }
    }
    if (n == 0) continue;
    judge_sum += sum / static_cast<double>(n);
    ++judges;
  }
  if (judges == 0) return std::nullopt;
  return judge_sum / static_cast<double>(judges);
}

std::set<std::string> top_k_set(const Scorecard& card, std::size_t k, TopKTies ties) {
  const auto sorted = sorted_card(card);
  std::set<std::string> out;
  if (sorted.empty() || k == 0) return out;
  if (ties == TopKTies::name_order) {
    for (std::size_t i = 0; i < std::min(k, sorted.size()); ++i) out.insert(sorted[i].first);
    return out;
  }
  const double threshold = sorted[std::min(k, sorted.size()) - 1].second;
  for (const auto& [key, s] : sorted)
    if (s >= threshold) out.insert(key);
  return out;
}

SlotRatio hit_at_k(std::span<const JudgedVerdicts> judged, std::size_t k, TopKTies ties) {
  SlotRatio r{0, judge_slots(judged, k)};
  for (const auto& j : judged) {
    const auto top = top_k_set(*j.card, k, ties);
    for (const auto& v : j.verdicts)
      if (v.valid && top.count(v.beverage_key)) ++r.count;
  }
  check_quantised(r);
  return r;
}

std::optional<double> ndcg_at_k(std::span<const JudgedVerdicts> judged, std::size_t k) {
  if (judged.empty()) return std::nullopt;
  double total = 0.0;
  for (const auto& j : judged) {
    double dcg = 0.0;
    for (const auto& v : j.verdicts) {
      if (!v.valid) continue;
      const double* s = score_of(*j.card, v.beverage_key);
      if (!s) continue;
      const auto pos = static_cast<double>(*v.rank);
      dcg += *s / std::log2(pos + 1.0);
    }
    const auto sorted = sorted_card(*j.card);
    double idcg = 0.0;
    for (std::size_t i = 0; i < std::min(k, sorted.size()); ++i)
      idcg += sorted[i].second / std::log2(static_cast<double>(i) + 2.0);
    total += idcg > 0.0 ? dcg / idcg : 0.0;
  }
  return total / static_cast<double>(judged.size());
}

MetricReport evaluate_model(const ModelRecommendations& recs,
                            std::span<const Scorecard> scorecards,
                            const std::set<std::string>& beverage_keys, EvalOptions options) {
  std::vector<Scorecard> normalized_cards;
  if (options.normalized_scores) {
    for (const auto& c : scorecards) normalized_cards.push_back(normalized(c));
    scorecards = normalized_cards;
  }

  MetricReport report;
  report.model_id = recs.model_id;
  report.k = options.k;

  std::vector<JudgedVerdicts> judged;
  bool any_set = false;
  for (const auto& card : scorecards) {
    const RecommendationSet* set = nullptr;
    for (const auto& s : recs.sets)
      if (s.profile_id == card.judge) set = &s;
    RecommendationSet empty{recs.model_id, card.judge, {}};
    any_set = any_set || set != nullptr;
    auto verdicts = validate_recs(set ? *set : empty, beverage_keys, options.k);
    report.verdicts.emplace_back(card.judge, verdicts);
    judged.push_back({&card, std::move(verdicts)});
  }

  report.valid = coverage(judged, options.k);
  report.coverage = report.valid.value();
  report.hits = hit_at_k(judged, options.k, options.ties);
  if (any_set) {
    report.hit_at_k = report.hits.value();
    report.ndcg_at_k = ndcg_at_k(judged, options.k);
  }
  report.mean_rating = mean_rating(judged);
  report.mean_percentile = mean_percentile(judged);
  return report;
}

std::vector<MetricReport> evaluate_models_serial(std::span<const ModelRecommendations> models,
                                                 std::span<const Scorecard> scorecards,
                                                 const std::set<std::string>& beverage_keys,
                                                 EvalOptions options) {
  std::vector<MetricReport> out;
  out.reserve(models.size());
  for (const auto& m : models) out.push_back(evaluate_model(m, scorecards, beverage_keys, options));
  return out;
}

std::vector<MetricReport> evaluate_models(std::span<const ModelRecommendations> models,
                                          std::span<const Scorecard> scorecards,
                                          const std::set<std::string>& beverage_keys,
                                          EvalOptions options) {
  std::vector<MetricReport> out(models.size());
  const auto n = static_cast<std::ptrdiff_t>(models.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = evaluate_model(models[i], scorecards, beverage_keys, options);
  return out;
}

void sort_for_table(std::vector<MetricReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const MetricReport& a, const MetricReport& b) {
    if (a.mean_rating.has_value() != b.mean_rating.has_value()) return a.mean_rating.has_value();
    if (a.mean_rating && *a.mean_rating != *b.mean_rating) return *a.mean_rating > *b.mean_rating;
    return a.model_id < b.model_id;
  });
}

std::vector<Scorecard> scorecards_from_dataset(const Dataset& dataset) {
  std::map<BeverageId, std::string> key_of;
  for (const auto& b : dataset.beverages) key_of.emplace(b.id, text::name_key(b.name));
  std::vector<Scorecard> out;
  std::map<JudgeId, std::size_t> slot;
  for (const auto& j : dataset.judges) {
    if (slot.emplace(j, out.size()).second) out.push_back({j, {}});
  }
  for (const auto& r : dataset.reviews) {
    auto s = slot.find(r.judge_id);
    auto k = key_of.find(r.beverage_id);
    if (s == slot.end() || k == key_of.end()) continue;
    out[s->second].scores[k->second] = r.raw_score;
  }
  return out;
}

}  // namespace dba
