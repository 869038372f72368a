#include "dba/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "dba/error.hpp"
#include "dba/text.hpp"

namespace dba {

std::string_view to_string(NoteTag tag) {
  switch (tag) {
    case NoteTag::real_flavour: return "real_flavour";
    case NoteTag::artificial_flavour: return "artificial_flavour";
    case NoteTag::other: return "other";
  }
  return "other";
}

std::optional<NoteTag> parse_note_tag(std::string_view s) {
  auto k = text::name_key(s);
  if (k == "real_flavour") return NoteTag::real_flavour;
  if (k == "artificial_flavour") return NoteTag::artificial_flavour;
  if (k == "other") return NoteTag::other;
  return std::nullopt;
}

NoteTags tags_from_note(std::string_view note_text) {
  NoteTags tags;
  for (const auto& w : text::words(note_text)) {
    if (w == "real") tags.insert(NoteTag::real_flavour);
    if (w == "artificial") tags.insert(NoteTag::artificial_flavour);
  }
  return tags;
}

std::string_view to_string(AbvBand band) {
  switch (band) {
    case AbvBand::low: return "low";
    case AbvBand::medium: return "medium";
    case AbvBand::high: return "high";
    case AbvBand::very_high: return "very_high";
  }
  return "low";
}

AbvBand classify_abv(double abv) {
  if (!std::isfinite(abv) || abv <= 0.0 || abv > 100.0)
    throw DomainError("abv must lie in (0, 100], got " + std::to_string(abv));
  if (abv <= 4.5) return AbvBand::low;
  if (abv <= 6.5) return AbvBand::medium;
  if (abv <= 9.0) return AbvBand::high;
  return AbvBand::very_high;
}

StyleTaxonomy::StyleTaxonomy(std::vector<StyleFamily> families)
    : families_(std::move(families)) {
  std::size_t fallbacks = 0;
  std::unordered_set<std::string> names;
  for (std::size_t i = 0; i < families_.size(); ++i) {
    const auto& f = families_[i];
    if (text::trim(f.name).empty()) throw ConfigError("style family with empty name");
    if (!names.insert(f.name).second)
      throw ConfigError("duplicate style family '" + f.name + "'");
    if (f.fallback) {
      ++fallbacks;
      fallback_index_ = i;
    }
    std::vector<std::string> lowered;
    for (const auto& p : f.patterns) {
      auto l = text::to_lower(text::trim(p));
      if (!l.empty()) lowered.push_back(std::move(l));
    }
    lowered_.push_back(std::move(lowered));
  }
  if (fallbacks != 1)
    throw ConfigError("exactly one fallback style family required, found " +
                      std::to_string(fallbacks));
}

StyleTaxonomy StyleTaxonomy::defaults() {
  // Order is priority: specialty markers first so that e.g. a basil-infused
  // blond ale is not claimed by a regular family, then sour-type families
  // before the fruit and wheat families whose patterns overlap them.
  return StyleTaxonomy({
      {std::string(kFallbackFamilyName),
       {"infused", "barrel aged", "barrel-aged", "hybrid", "iron brew", "experimental"},
       true},
      {"Gose", {"gose"}, false},
      {"Sour & wild ale",
       {"sour", "wild", "lambic", "gueuze", "geuze", "kriek", "berliner", "flanders",
        "brett", "oud bruin"},
       false},
      {"Stout & porter", {"stout", "porter"}, false},
      {"Saison & farmhouse", {"saison", "farmhouse", "grisette"}, false},
      {"Belgian styles",
       {"belgian", "tripel", "dubbel", "quadrupel", "abbey", "trappist", "blond"},
       false},
      {"Wheat beer", {"wheat", "weizen", "weiss", "hefe", "witbier", "blanche"}, false},
      {"Fruit beer", {"fruit", "grape", "radler", "shandy", "cherry", "raspberry"}, false},
      {"Pale ale & IPA", {"ipa", "pale ale", "apa", "bitter", "esb"}, false},
      {"Lager & pils",
       {"lager", "pils", "helles", "marzen", "märzen", "bock", "dunkel", "keller",
        "zwickel", "schwarzbier", "kolsch", "kölsch"},
       false},
  });
}

const StyleFamily& StyleTaxonomy::bucket(std::string_view raw_style) const {
  const auto style = text::to_lower(raw_style);
  if (!style.empty()) {
    for (std::size_t i = 0; i < families_.size(); ++i) {
      for (const auto& p : lowered_[i]) {
        if (style.find(p) != std::string::npos) return families_[i];
      }
    }
  }
  return families_[fallback_index_];
}

std::string_view to_string(Purity p) {
  switch (p) {
    case Purity::compliant: return "compliant";
    case Purity::non_compliant: return "non_compliant";
    case Purity::unknown: return "unknown";
  }
  return "unknown";
}

Purity check_reinheitsgebot(const std::optional<std::set<std::string>>& ingredients,
                            bool allow_coriander) {
  if (!ingredients || ingredients->empty()) return Purity::unknown;
  static const std::set<std::string> base{"water", "yeast", "malt", "hops"};
  for (const auto& raw : *ingredients) {
    auto k = text::name_key(raw);
    if (base.count(k)) continue;
    if (allow_coriander && k == "coriander") continue;
    return Purity::non_compliant;
  }
  return Purity::compliant;
}

double round_score(double score) { return std::round(score * 10.0) / 10.0; }

const Beverage* Dataset::find_beverage(const BeverageId& id) const {
  for (const auto& b : beverages)
    if (b.id == id) return &b;
  return nullptr;
}

std::vector<Violation> validate_dataset(const Dataset& dataset) {
  std::vector<Violation> out;
  auto add = [&](std::string_view code, Severity sev, std::string subject, std::string msg) {
    out.push_back({std::string(code), sev, std::move(subject), std::move(msg)});
  };

  std::map<BeverageId, std::size_t> review_counts;
  std::map<std::string, std::size_t> per_producer;
  for (const auto& b : dataset.beverages) {
    review_counts.emplace(b.id, 0);
    ++per_producer[b.producer];
    if (!(b.abv >= kObservedAbvMin && b.abv <= kObservedAbvMax)) {
      add(codes::abv_range_warn, Severity::warning, b.id.value,
          "abv " + text::one_decimal(b.abv) + " outside observed range [0.5, 12.5]");
    }
  }
  for (const auto& [producer, n] : per_producer) {
    if (n > kMaxBeveragesPerProducer) {
      add(codes::producer_limit_warn, Severity::warning, producer,
          "producer presents " + std::to_string(n) + " beverages (limit 4)");
    }
  }

  const std::set<JudgeId> judges(dataset.judges.begin(), dataset.judges.end());
  std::map<std::pair<JudgeId, BeverageId>, std::size_t> seen;
  for (const auto& r : dataset.reviews) {
    const auto subject = r.judge_id.value + "/" + r.beverage_id.value;
    auto it = review_counts.find(r.beverage_id);
    if (it == review_counts.end()) {
      add(codes::dangling_ref, Severity::error, subject,
          "review references unknown beverage '" + r.beverage_id.value + "'");
    } else {
      ++it->second;
    }
    if (!judges.count(r.judge_id)) {
      add(codes::dangling_ref, Severity::error, subject,
          "review references unknown judge '" + r.judge_id.value + "'");
    }
    if (!(r.raw_score >= kMinScore && r.raw_score <= kMaxScore)) {
      add(codes::score_range, Severity::error, subject, "raw score outside [1, 5]");
    }
    if (++seen[{r.judge_id, r.beverage_id}] == 2) {
      add(codes::dup_review, Severity::error, subject,
          "judge reviewed the same beverage more than once");
    }
  }
  for (const auto& [id, n] : review_counts) {
    if (n < kMinReviewsPerBeverage) {
      add(codes::missing_reviews, Severity::error, id.value,
          "beverage has " + std::to_string(n) + " review(s), needs at least 2");
    }
  }

  std::sort(out.begin(), out.end());
  return out;
}

bool has_errors(const std::vector<Violation>& violations) {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.severity == Severity::error; });
}

}  // namespace dba
