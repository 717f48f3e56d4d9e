#pragma once

// Per-occurrence emotion inference from the most important atomic/context
// pair, and the supervised emotion -> user-experience mapping.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "adl/activity_model.hpp"
#include "adl/ingestion.hpp"
#include "adl/recognition.hpp"

namespace adl {

enum class Emotion { positive, negative };
enum class UxLabel { good, bad };

std::string_view to_string(Emotion e);
std::string_view to_string(UxLabel u);
std::optional<Emotion> parse_emotion(std::string_view s);
std::optional<UxLabel> parse_ux(std::string_view s);

struct AffectParams {
  std::size_t history_window = 5;  // N
  double epsilon = 0.05;
};

// Positive iff the verdict is completed, the most important atomic is observed
// with its paired context satisfied, and the score is no lower than the mean
// of the last history_window history scores minus epsilon. An empty history
// passes the last clause.
Emotion infer_emotion(const ComplexActivityDefinition& def, std::span<const OccurrenceVerdict> history,
                      const Observation& current, const OccurrenceVerdict& verdict, const AffectParams& params);

struct UxKey {
  Emotion emotion = Emotion::positive;
  std::string activity;
  int bucket = 0;

  auto operator<=>(const UxKey&) const = default;
};

struct UxExample {
  UxKey key;
  UxLabel label = UxLabel::good;
};

constexpr int kDefaultBucketWidth = 30;

class UxModel {
 public:
  UxModel() = default;
  UxModel(std::map<UxKey, UxLabel> table, AffectParams params, int bucket_width);

  // Trained lookup, else positive -> good, negative -> bad.
  UxLabel map(Emotion emotion, std::string_view activity, int bucket) const;

  bool trained() const { return !table_.empty(); }
  const std::map<UxKey, UxLabel>& table() const { return table_; }
  const AffectParams& params() const { return params_; }
  int bucket_width() const { return bucket_width_; }

  std::string to_json() const;
  static UxModel from_json(std::string_view text);

  bool operator==(const UxModel& o) const {
    return table_ == o.table_ && params_.history_window == o.params_.history_window &&
           params_.epsilon == o.params_.epsilon && bucket_width_ == o.bucket_width_;
  }

 private:
  std::map<UxKey, UxLabel> table_;
  AffectParams params_;
  int bucket_width_ = kDefaultBucketWidth;
};

// Majority vote per key; a tie goes to good.
UxModel train_ux_mapper(std::span<const UxExample> examples, const AffectParams& params = {},
                        int bucket_width = kDefaultBucketWidth);

inline UxLabel map_ux(const UxModel& model, Emotion emotion, std::string_view activity, int bucket) {
  return model.map(emotion, activity, bucket);
}

struct AffectAnnotatedOccurrence {
  OccurrenceRecord occurrence;
  OccurrenceVerdict verdict;
  Emotion emotion = Emotion::positive;
  UxLabel ux = UxLabel::good;
};

// Walks time-ordered (record, verdict) pairs, keeping a per-activity verdict
// history, and attaches emotion and UX. The UX bucket is the start time's.
std::vector<AffectAnnotatedOccurrence> annotate_affect(
    const DefinitionSet& defs, std::span<const std::pair<OccurrenceRecord, OccurrenceVerdict>> scored,
    const UxModel& ux_model, const AffectParams& params, int bucket_width);

}  // namespace adl
