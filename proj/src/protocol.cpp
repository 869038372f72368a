#include "dba/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dba/error.hpp"

namespace dba {

CommunicationCost communication_costs(std::size_t round_index, const CostParams& p) {
  const double t = static_cast<double>(round_index);
  return {p.broadcast_base, p.broadcast_base * p.politeness_initial * std::pow(p.politeness_decay, t),
          p.comprehension_base, p.comprehension_base * p.comprehension_growth * t};
}

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

void check_leader_sum(std::span<const LeaderWeight> experts) {
  if (experts.empty()) throw ConfigError("no experts to elect a leader from");
  double sum = 0.0;
  for (const auto& e : experts) {
    if (!is_probability(e.probability))
      throw ConfigError("leader probability of '" + e.id.value + "' outside [0, 1]");
    sum += e.probability;
  }
  if (std::abs(sum - 1.0) > kLeaderProbabilityTolerance)
    throw ConfigError("expert leader probabilities sum to " + std::to_string(sum) +
                      ", expected 1");
}

std::vector<LeaderWeight> leader_weights(const SessionConfig& config) {
  std::vector<LeaderWeight> out;
  for (const auto& p : config.federation)
    if (p.is_expert) out.push_back({p.id, p.leader_probability});
  return out;
}

}  // namespace

void validate_config(const SessionConfig& config) {
  std::set<JudgeId> ids;
  for (const auto& p : config.federation) {
    if (p.id.value.empty()) throw ConfigError("participant with empty id");
    if (!ids.insert(p.id).second) throw ConfigError("duplicate participant '" + p.id.value + "'");
    if (!is_probability(p.freeload_probability) || !is_probability(p.availability_probability))
      throw ConfigError("participant '" + p.id.value + "' has a probability outside [0, 1]");
    if (!std::isfinite(p.score_noise_sd) || p.score_noise_sd < 0.0)
      throw ConfigError("participant '" + p.id.value + "' has negative score_noise_sd");
    if (!is_probability(p.score_floor_affinity))
      throw ConfigError("participant '" + p.id.value + "' has score_floor_affinity outside [0, 1]");
    for (const auto& [family, offset] : p.score_bias)
      if (!std::isfinite(offset))
        throw ConfigError("participant '" + p.id.value + "' has non-finite bias for " + family);
  }
  check_leader_sum(leader_weights(config));

  std::set<BeverageId> bev_ids;
  for (const auto& b : config.pool)
    if (!bev_ids.insert(b.id).second) throw ConfigError("duplicate pool beverage '" + b.id.value + "'");

  if (config.round_duration <= 0) throw ConfigError("round_duration must be positive");
  if (config.clock_start < 0 || config.clock_end > 24 * 60 || config.clock_start > config.clock_end)
    throw ConfigError("clock window must satisfy 0 <= clock_start <= clock_end <= 24:00");
  for (const auto& w : config.blackout_windows) {
    if (w.start >= w.end || w.start < config.clock_start || w.end > config.clock_end)
      throw ConfigError("blackout window must be non-empty and lie within [clock_start, clock_end)");
  }

  const auto& c = config.cost_params;
  if (!(c.politeness_initial >= 0.0) || !(c.broadcast_base >= 0.0) ||
      !(c.comprehension_base >= 0.0) || !(c.comprehension_growth >= 0.0))
    throw ConfigError("cost parameters must be non-negative");
  if (!(c.politeness_decay > 0.0 && c.politeness_decay < 1.0))
    throw ConfigError("politeness_decay must lie in (0, 1)");

  const auto& q = config.base_quality;
  if (!(q.min >= kMinScore && q.max <= kMaxScore && q.min <= q.max))
    throw ConfigError("base_quality range must lie within [1, 5]");
}

JudgeId elect_leader(std::span<const LeaderWeight> experts, Rng& rng) {
  check_leader_sum(experts);
  std::vector<double> w;
  w.reserve(experts.size());
  for (const auto& e : experts) w.push_back(e.probability);
  return experts[rng.categorical(w)].id;
}

double generate_score(const ParticipantProfile& profile, const Beverage& beverage,
                      double base_quality, Rng& rng) {
  double bias = 0.0;
  if (auto it = profile.score_bias.find(beverage.style_family); it != profile.score_bias.end())
    bias = it->second;
  const double noise = profile.score_noise_sd * rng.gaussian();
  double score = std::clamp(round_score(base_quality + bias + noise), kMinScore, kMaxScore);
  if (profile.score_floor_affinity > 0.0 && rng.bernoulli(profile.score_floor_affinity))
    score = score < 3.0 ? kMinScore : kMaxScore;
  return score;
}

std::string_view to_string(SkipReason reason) {
  return reason == SkipReason::blackout ? "SKIPPED_BLACKOUT" : "SKIPPED_NO_PARTICIPANTS";
}

SessionState::SessionState(const SessionConfig& config, Rng& rng)
    : config_(&config), clock_(config.clock_start) {
  validate_config(config);
  remaining_.resize(config.pool.size());
  for (std::size_t i = 0; i < remaining_.size(); ++i) remaining_[i] = i;
  base_quality_.reserve(config.pool.size());
  for (std::size_t i = 0; i < config.pool.size(); ++i)
    base_quality_.push_back(rng.uniform(config.base_quality.min, config.base_quality.max));
}

RoundOutcome run_round(SessionState& state, Rng& rng) {
  const auto& cfg = *state.config_;
  if (state.remaining_.empty()) return SessionExhausted{};

  const int now = state.clock_;
  for (const auto& w : cfg.blackout_windows) {
    if (w.contains(now)) {
      state.clock_ += cfg.round_duration;
      return Omitted{now, SkipReason::blackout};
    }
  }

  const auto weights = leader_weights(cfg);
  const JudgeId leader = elect_leader(weights, rng);

  std::vector<const ParticipantProfile*> available;
  for (const auto& p : cfg.federation) {
    if (p.id == leader) continue;
    if (rng.bernoulli(p.availability_probability)) available.push_back(&p);
  }
  if (available.empty()) {
    state.clock_ += cfg.round_duration;
    return Omitted{now, SkipReason::no_participants};
  }

  std::vector<bool> procures(available.size());
  for (std::size_t i = 0; i < available.size(); ++i)
    procures[i] = !rng.bernoulli(available[i]->freeload_probability);
  if (std::none_of(procures.begin(), procures.end(), [](bool b) { return b; }))
    procures[rng.index(available.size())] = true;

  const std::size_t pick = rng.index(state.remaining_.size());
  const std::size_t pool_index = state.remaining_[pick];
  state.remaining_.erase(state.remaining_.begin() + static_cast<std::ptrdiff_t>(pick));
  const Beverage& beverage = cfg.pool[pool_index];
  const double quality = state.base_quality_[pool_index];

  RoundRecord rec;
  rec.index = state.rounds_completed_;
  rec.start_minute = now;
  rec.leader = leader;
  rec.beverage_id = beverage.id;

  auto review_by = [&](const ParticipantProfile& p) {
    rec.reviewers.push_back(p.id);
    rec.reviews.push_back({p.id, beverage.id, generate_score(p, beverage, quality, rng),
                           beverage.note_tags, std::nullopt});
  };
  const auto leader_it = std::find_if(cfg.federation.begin(), cfg.federation.end(),
                                      [&](const ParticipantProfile& p) { return p.id == leader; });
  review_by(*leader_it);
  for (std::size_t i = 0; i < available.size(); ++i) {
    if (procures[i]) rec.procurers.push_back(available[i]->id);
    review_by(*available[i]);
  }

  rec.cost = communication_costs(rec.index, cfg.cost_params);
  ++state.rounds_completed_;
  state.clock_ += cfg.round_duration;
  return rec;
}

SessionResult run_session(const SessionConfig& config) {
  Rng rng(config.seed);
  SessionState state(config, rng);
  SessionResult result;

  while (state.clock() < config.clock_end) {
    auto outcome = run_round(state, rng);
    if (std::holds_alternative<SessionExhausted>(outcome)) {
      result.exhausted = true;
      break;
    }
    if (auto* skip = std::get_if<Omitted>(&outcome)) {
      if (skip->reason == SkipReason::no_participants) result.skipped.push_back(*skip);
      continue;
    }
    result.rounds.push_back(std::move(std::get<RoundRecord>(outcome)));
  }
  if (state.pool_remaining() == 0) result.exhausted = true;

  std::set<JudgeId> analytics;
  for (const auto& p : config.federation) {
    if (p.is_expert || config.include_amateurs) {
      analytics.insert(p.id);
      result.dataset.judges.push_back(p.id);
    }
  }
  for (const auto& r : result.rounds) {
    const Beverage* bev = nullptr;
    for (const auto& b : config.pool)
      if (b.id == r.beverage_id) bev = &b;
    result.dataset.beverages.push_back(*bev);
    for (const auto& rev : r.reviews)
      if (analytics.count(rev.judge_id)) result.dataset.reviews.push_back(rev);
  }
  return result;
}

std::vector<SessionResult> run_sessions_serial(std::span<const SessionConfig> configs) {
  std::vector<SessionResult> out;
  out.reserve(configs.size());
  for (const auto& c : configs) out.push_back(run_session(c));
  return out;
}

std::vector<SessionResult> run_sessions(std::span<const SessionConfig> configs) {
  for (const auto& c : configs) validate_config(c);
  std::vector<SessionResult> out(configs.size());
  const auto n = static_cast<std::ptrdiff_t>(configs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = run_session(configs[i]);
  return out;
}

}  // namespace dba
