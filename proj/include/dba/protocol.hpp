#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dba/model.hpp"
#include "dba/rng.hpp"

namespace dba {

struct ParticipantProfile {
  JudgeId id;
  bool is_expert = false;
  double leader_probability = 0.0;
  double freeload_probability = 0.0;
  double availability_probability = 1.0;
  std::map<std::string, double> score_bias;  // keyed by style family name
  double score_noise_sd = 0.0;
  // Probability that a score is pushed to the nearer end of the scale
  // (1.0 below the midpoint 3.0, 5.0 otherwise).
  double score_floor_affinity = 0.0;
};

struct CostParams {
  double politeness_initial = 0.5;
  double politeness_decay = 0.9;
  double broadcast_base = 1.0;
  double comprehension_base = 1.0;
  double comprehension_growth = 0.05;
};

// Each cost is kept as an unevaluated sum of its constant base and the
// round-dependent term. Once p0 * decay^t drops below half an ulp of the
// base, the rounded sum stops moving while the term itself keeps decaying.
struct CommunicationCost {
  double broadcast_base = 0.0;
  double politeness = 0.0;  // broadcast_base * p0 * decay^t
  double comprehension_base = 0.0;
  double comprehension_growth = 0.0;  // comprehension_base * growth * t

  double broadcast() const { return broadcast_base + politeness; }
  double comprehension() const { return comprehension_base + comprehension_growth; }
  double total() const { return broadcast() + comprehension(); }
};

// broadcast = broadcast_base * (1 + p0 * decay^t)
// comprehension = comprehension_base * (1 + growth * t)
CommunicationCost communication_costs(std::size_t round_index, const CostParams& params);

// Half-open interval of minutes of day.
struct TimeWindow {
  int start = 0;
  int end = 0;
  bool contains(int minute) const { return minute >= start && minute < end; }
};

struct QualityRange {
  double min = 2.5;
  double max = 4.8;
};

struct SessionConfig {
  std::vector<ParticipantProfile> federation;
  std::vector<Beverage> pool;
  int clock_start = 10 * 60;
  int clock_end = 22 * 60;
  std::vector<TimeWindow> blackout_windows;
  int round_duration = 10;
  CostParams cost_params;
  QualityRange base_quality;
  bool include_amateurs = false;
  std::uint64_t seed = 0;
};

// Throws ConfigError describing the first violated constraint.
void validate_config(const SessionConfig& config);

struct LeaderWeight {
  JudgeId id;
  double probability = 0.0;
};

inline constexpr double kLeaderProbabilityTolerance = 1e-9;

// Categorical draw over the experts. Consumes one uniform.
// Throws ConfigError on an empty list or weights not summing to 1.
JudgeId elect_leader(std::span<const LeaderWeight> experts, Rng& rng);

// clamp(round_0.1(base + bias[family] + N(0, sd)), 1, 5), then the extreme
// pull when score_floor_affinity > 0. Consumes two uniforms for the normal
// draw, plus one more only when the affinity is positive.
double generate_score(const ParticipantProfile& profile, const Beverage& beverage,
                      double base_quality, Rng& rng);

struct RoundRecord {
  std::size_t index = 0;
  int start_minute = 0;
  JudgeId leader;
  BeverageId beverage_id;
  std::vector<JudgeId> procurers;  // federation order
  std::vector<JudgeId> reviewers;  // leader first, then federation order
  std::vector<Review> reviews;
  CommunicationCost cost;

  // Each round procures exactly one sample.
  static constexpr std::size_t procured_items = 1;
};

enum class SkipReason : std::uint8_t { blackout, no_participants };

std::string_view to_string(SkipReason reason);  // SKIPPED_BLACKOUT / SKIPPED_NO_PARTICIPANTS

struct Omitted {
  int minute = 0;
  SkipReason reason = SkipReason::blackout;
};

struct SessionExhausted {};

using RoundOutcome = std::variant<RoundRecord, Omitted, SessionExhausted>;

// Mutable state of one running session. Holds a reference to the config,
// which must outlive it.
class SessionState {
 public:
  // Validates the config and draws one base quality per pool beverage, in
  // pool order.
  SessionState(const SessionConfig& config, Rng& rng);

  const SessionConfig& config() const { return *config_; }
  int clock() const { return clock_; }
  void set_clock(int minute) { clock_ = minute; }
  std::size_t rounds_completed() const { return rounds_completed_; }
  std::size_t pool_remaining() const { return remaining_.size(); }
  bool finished() const { return remaining_.empty() || clock_ >= config_->clock_end; }

 private:
  friend RoundOutcome run_round(SessionState& state, Rng& rng);

  const SessionConfig* config_;
  int clock_;
  std::vector<std::size_t> remaining_;  // indices into config.pool
  std::vector<double> base_quality_;    // parallel to config.pool
  std::size_t rounds_completed_ = 0;
};

// One round. Draw order within a round:
//   1. leader (one uniform)
//   2. availability of each non-leader participant, federation order
//   3. freeload decision of each available participant, federation order,
//      plus one index draw to promote a procurer if everyone freeloaded
//   4. beverage index among the remaining pool
//   5. scores: leader first, then available participants in federation order
// A blackout or an empty non-leader turnout omits the round; the clock still
// advances by round_duration. Blackout checks consume no randomness.
RoundOutcome run_round(SessionState& state, Rng& rng);

struct SessionResult {
  std::vector<RoundRecord> rounds;
  std::vector<Omitted> skipped;  // no-participant skips only; blackouts are dropped
  Dataset dataset;               // analytics participants only
  bool exhausted = false;
};

// Runs rounds until the pool is empty or clock_end is reached.
// Throws ConfigError before any round when the config is invalid.
SessionResult run_session(const SessionConfig& config);

// Independent sessions, OpenMP-parallel over configs.
std::vector<SessionResult> run_sessions(std::span<const SessionConfig> configs);

// Serial reference for run_sessions.
std::vector<SessionResult> run_sessions_serial(std::span<const SessionConfig> configs);

}  // namespace dba
