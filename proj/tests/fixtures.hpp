#pragma once

// Shared test data: the bundled definition files, the two published
// confusion matrices and the published recommendation rows.

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "adl/activity_model.hpp"
#include "adl/evaluation.hpp"
#include "adl/recognition.hpp"
#include "adl/recommender.hpp"

namespace fixtures {

inline std::filesystem::path source_dir() { return ADL_SOURCE_DIR; }

inline const adl::DefinitionSet& adl_defs() {
  static const adl::DefinitionSet d = adl::load_definitions(source_dir() / "definitions" / "adl.json");
  return d;
}

inline const adl::DefinitionSet& ukdale_defs() {
  static const adl::DefinitionSet d = adl::load_definitions(source_dir() / "definitions" / "ukdale.json");
  return d;
}

inline const adl::ComplexActivityDefinition& mfum() { return *ukdale_defs().find_by_code("MFUM"); }

// Every atomic and context observed.
inline adl::Observation full_observation(const adl::ComplexActivityDefinition& d) {
  return {d.name, d.atomic_ids(), d.context_ids()};
}

struct PublishedMatrix {
  std::vector<std::string> labels;  // row/column order as printed
  std::vector<std::vector<std::uint64_t>> counts;
  double accuracy;                  // printed percentage
  std::vector<double> precision;
  std::vector<double> recall;

  adl::ConfusionMatrix matrix() const { return {labels, counts}; }
};

// Single resident, seven ADL activities, 93 test transitions.
inline PublishedMatrix specific_user_matrix() {
  return {{"Sleeping", "Watching TV in Spare Time", "Showering", "Eating Breakfast", "Leaving", "Eating Lunch",
           "Eating Snacks"},
          {{12, 2, 1, 0, 0, 0, 0},
           {0, 6, 0, 0, 0, 0, 3},
           {3, 0, 16, 0, 0, 0, 0},
           {0, 0, 0, 8, 0, 0, 0},
           {0, 0, 0, 3, 6, 1, 0},
           {0, 0, 0, 0, 3, 7, 1},
           {0, 6, 0, 0, 0, 2, 13}},
          73.12,
          {80.00, 66.67, 84.21, 100.00, 60.00, 63.64, 61.90},
          {80.00, 42.86, 94.12, 72.73, 66.67, 70.00, 76.47}};
}

// Pooled appliance traces, seven appliance activities.
inline PublishedMatrix average_user_matrix() {
  return {{"Using Microwave", "Using Toaster", "Watching TV", "Using Laptop", "Using Washing Machine",
           "Cooking in Kitchen", "Listening to Subwoofer"},
          {{15, 10, 1, 0, 0, 0, 0},
           {3, 10, 0, 0, 0, 0, 8},
           {6, 0, 21, 0, 0, 0, 0},
           {0, 0, 0, 7, 4, 2, 0},
           {0, 0, 0, 4, 8, 1, 0},
           {0, 0, 0, 4, 1, 13, 3},
           {0, 1, 0, 0, 0, 4, 13}},
          62.59,
          {57.69, 47.62, 77.78, 53.85, 61.54, 61.90, 72.22},
          {62.50, 47.62, 95.45, 46.67, 61.54, 65.00, 54.17}};
}

struct PublishedRecommendation {
  std::string truth;
  std::string prediction;
  std::array<double, 7> confidences;  // in published_columns() order
};

inline const std::array<std::string, 7>& published_columns() {
  static const std::array<std::string, 7> c = {"Sleeping",     "Watching TV in Spare Time", "Showering",
                                               "Eating Breakfast", "Leaving",              "Eating Lunch",
                                               "Eating Snacks"};
  return c;
}

inline std::vector<PublishedRecommendation> published_recommendations() {
  return {
      {"Watching TV in Spare Time", "Watching TV in Spare Time", {0.097, 0.903, 0, 0, 0, 0, 0}},
      {"Sleeping", "Sleeping", {0.903, 0.097, 0, 0, 0, 0, 0}},
      {"Sleeping", "Sleeping", {0.983, 0.017, 0, 0, 0, 0, 0}},
      {"Showering", "Showering", {0, 0, 1, 0, 0, 0, 0}},
      {"Showering", "Showering", {0, 0, 1, 0, 0, 0, 0}},
      {"Showering", "Showering", {0, 0, 1, 0, 0, 0, 0}},
      {"Eating Breakfast", "Eating Breakfast", {0, 0, 0.074, 0.926, 0, 0, 0}},
      {"Eating Breakfast", "Eating Breakfast", {0, 0, 0.323, 0.677, 0, 0, 0}},
      {"Eating Breakfast", "Leaving", {0, 0, 0, 0.477, 0.495, 0.028, 0}},
      {"Eating Lunch", "Eating Lunch", {0, 0, 0, 0.342, 0.094, 0.564, 0}},
      {"Eating Lunch", "Eating Lunch", {0, 0, 0, 0.004, 0.430, 0.567, 0}},
      {"Eating Snacks", "Eating Lunch", {0, 0.020, 0, 0, 0, 0.794, 0.186}},
      {"Eating Snacks", "Eating Snacks", {0, 0, 0, 0, 0, 0, 1}},
      {"Eating Snacks", "Eating Snacks", {0, 0, 0, 0, 0, 0, 1}},
  };
}

inline adl::ConfidenceVector confidence_vector(const PublishedRecommendation& row) {
  adl::ConfidenceVector v;
  for (std::size_t i = 0; i < row.confidences.size(); ++i) v[published_columns()[i]] = row.confidences[i];
  return v;
}

// Rounds a fraction to a 2-decimal percentage, as printed.
inline double percent2(double fraction) { return std::round(fraction * 10000.0) / 100.0; }

}  // namespace fixtures
