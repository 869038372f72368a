#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dba {

// Opaque identifiers. Distinct types so a judge id can never be passed where
// a beverage id is expected.
struct BeverageId {
  std::string value;
  auto operator<=>(const BeverageId&) const = default;
};

struct JudgeId {
  std::string value;
  auto operator<=>(const JudgeId&) const = default;
};

enum class NoteTag : std::uint8_t { real_flavour, artificial_flavour, other };

std::string_view to_string(NoteTag tag);
std::optional<NoteTag> parse_note_tag(std::string_view s);

using NoteTags = std::set<NoteTag>;

// Tags found by exact keyword match on free text: the word "real" marks
// real_flavour, "artificial" marks artificial_flavour.
NoteTags tags_from_note(std::string_view note_text);

enum class AbvBand : std::uint8_t { low, medium, high, very_high };

std::string_view to_string(AbvBand band);

// low = (0, 4.5], medium = (4.5, 6.5], high = (6.5, 9.0], very_high = (9.0, 100].
// Throws DomainError for non-finite, non-positive or >100 values.
AbvBand classify_abv(double abv);

inline constexpr double kObservedAbvMin = 0.5;
inline constexpr double kObservedAbvMax = 12.5;

struct StyleFamily {
  std::string name;
  std::vector<std::string> patterns;  // case-insensitive substrings
  bool fallback = false;
};

inline constexpr std::string_view kFallbackFamilyName = "Specialty and hybrid styles";

// Ordered list of style families. Matching walks the list in order and the
// first family with a matching pattern wins; the fallback family takes
// anything that matches nothing.
class StyleTaxonomy {
 public:
  // Throws ConfigError unless exactly one family is flagged fallback and
  // family names are unique and non-empty.
  explicit StyleTaxonomy(std::vector<StyleFamily> families);

  // The ten default buckets.
  static StyleTaxonomy defaults();

  const StyleFamily& bucket(std::string_view raw_style) const;
  const StyleFamily& fallback() const { return families_[fallback_index_]; }
  const std::vector<StyleFamily>& families() const { return families_; }

 private:
  std::vector<StyleFamily> families_;
  std::vector<std::vector<std::string>> lowered_;
  std::size_t fallback_index_ = 0;
};

struct Beverage {
  BeverageId id;
  std::string producer;
  std::string name;
  std::string raw_style;
  std::string style_family;
  double abv = 0.0;
  std::optional<std::set<std::string>> ingredients;
  NoteTags note_tags;
};

enum class Purity : std::uint8_t { compliant, non_compliant, unknown };

std::string_view to_string(Purity p);

// Ingredient purity against water, yeast, malt and hops (plus coriander when
// allowed). Missing or empty ingredient data yields Purity::unknown.
Purity check_reinheitsgebot(const std::optional<std::set<std::string>>& ingredients,
                            bool allow_coriander);

struct Review {
  JudgeId judge_id;
  BeverageId beverage_id;
  double raw_score = 0.0;
  NoteTags note_tags;
  std::optional<std::string> note_text;
};

inline constexpr double kMinScore = 1.0;
inline constexpr double kMaxScore = 5.0;

// Rounds to the 0.1 grid scores are stored on.
double round_score(double score);

struct Dataset {
  std::vector<Beverage> beverages;
  std::vector<Review> reviews;
  std::vector<JudgeId> judges;

  const Beverage* find_beverage(const BeverageId& id) const;
};

enum class Severity : std::uint8_t { warning, error };

struct Violation {
  std::string code;
  Severity severity = Severity::error;
  std::string subject;
  std::string message;

  auto operator<=>(const Violation&) const = default;
};

namespace codes {
inline constexpr std::string_view missing_reviews = "MISSING_REVIEWS";
inline constexpr std::string_view dup_review = "DUP_REVIEW";
inline constexpr std::string_view dangling_ref = "DANGLING_REF";
inline constexpr std::string_view abv_range_warn = "ABV_RANGE_WARN";
inline constexpr std::string_view producer_limit_warn = "PRODUCER_LIMIT_WARN";
inline constexpr std::string_view score_range = "SCORE_RANGE";
}  // namespace codes

inline constexpr std::size_t kMinReviewsPerBeverage = 2;
inline constexpr std::size_t kMaxBeveragesPerProducer = 4;

// Returns violations sorted by (code, subject); empty when every dataset
// invariant holds. Input order does not affect the result.
std::vector<Violation> validate_dataset(const Dataset& dataset);

bool has_errors(const std::vector<Violation>& violations);

}  // namespace dba
