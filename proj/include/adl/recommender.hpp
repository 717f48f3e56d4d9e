#pragma once

// Next-activity recommender: a smoothed multinomial naive-Bayes model over
// (time bucket, previous activity, emotion, UX, day kind) features.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adl/affect.hpp"
#include "adl/timeutil.hpp"

namespace adl {

struct FeatureVector {
  int time_bucket = 0;                            // minute_of_day / bucket_width
  std::optional<std::string> previous_activity;  // nullopt encodes as "none"
  Emotion emotion = Emotion::positive;
  UxLabel ux = UxLabel::good;
  DayKind day_kind = DayKind::weekday;

  bool operator==(const FeatureVector&) const = default;
};

struct LabeledTransition {
  FeatureVector features;
  std::string next_activity;

  bool operator==(const LabeledTransition&) const = default;
};

// Activity name -> confidence, ordered by name.
using ConfidenceVector = std::map<std::string, double>;

constexpr double kDefaultSmoothing = 1.0;
constexpr std::string_view kNoActivity = "none";
constexpr std::size_t kFeatureCount = 5;
inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "time_bucket", "previous_activity", "emotion", "ux", "day_kind"};

// The categorical value of each feature, in kFeatureNames order.
std::array<std::string, kFeatureCount> feature_values(const FeatureVector& f);

struct FeatureTable {
  std::string name;
  std::vector<std::string> domain;         // sorted
  std::vector<std::vector<double>> prob;   // [class][value]: (count + alpha) / (class count + alpha * |domain|)
  std::vector<double> unseen;              // [class]: alpha / (class count + alpha * |domain|)

  bool operator==(const FeatureTable&) const = default;
};

struct RecommenderModel {
  double alpha = kDefaultSmoothing;
  int bucket_width = kDefaultBucketWidth;
  std::vector<std::string> activities;     // classes seen in training, sorted
  std::vector<std::size_t> class_counts;
  std::vector<double> priors;              // (count + alpha) / (N + alpha * K)
  std::array<FeatureTable, kFeatureCount> features;

  // Conditional P(feature = value | class); values outside the domain use the unseen column.
  double conditional(std::size_t feature, std::size_t cls, std::string_view value) const;

  std::string to_json() const;
  static RecommenderModel from_json(std::string_view text);

  bool operator==(const RecommenderModel&) const = default;
};

// One transition per consecutive pair. Features come from occurrence i (end
// time bucket and day kind, its activity, its emotion and UX); the label is
// the activity of occurrence i + 1.
std::vector<LabeledTransition> extract_transitions(std::span<const AffectAnnotatedOccurrence> annotated,
                                                   int bucket_width);

// Feature domains are fixed: every time bucket, both values of each binary
// feature, and none plus every activity seen as a label or previous activity.
// Throws Error on an empty training set, RangeError on alpha <= 0 or a bad bucket width.
RecommenderModel train(std::span<const LabeledTransition> transitions, double alpha = kDefaultSmoothing,
                       int bucket_width = kDefaultBucketWidth);

// Posterior over the model's classes, normalized to sum to 1.
ConfidenceVector predict_confidences(const RecommenderModel& model, const FeatureVector& features);

// Argmax; ties go to the lexicographically first name. Throws Error when empty.
std::string recommend(const ConfidenceVector& confidences);

// Adds a zero entry for every name the vector lacks.
ConfidenceVector expand_confidences(const ConfidenceVector& confidences, std::span<const std::string> names);

}  // namespace adl
