#pragma once

// Time-of-day nearest-neighbour labeling and per-activity start-time groupings.

#include <cstddef>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "adl/ingestion.hpp"

namespace adl {

struct TimeInstant {
  int minute_of_day = 0;  // [0, 1439]
  int day_index = 0;

  bool operator==(const TimeInstant&) const = default;
};

struct LabeledInstant {
  TimeInstant instant;
  std::string activity;
};

constexpr std::size_t kDefaultNeighbours = 3;

// Minutes around the 24-hour clock; at most 720.
int circular_distance(TimeInstant a, TimeInstant b);

// Majority label among the k nearest training instants. Distance ties go to
// the earlier minute_of_day, then the lexicographically smaller activity; a
// vote tie goes to the lexicographically smaller activity.
// Throws Error when train is empty or k is outside [1, |train|].
std::string knn_label(std::span<const LabeledInstant> train, TimeInstant query, std::size_t k);

using ClusterReport = std::map<std::string, std::vector<TimeInstant>>;

// Start instants grouped by activity, each group sorted by (day_index,
// minute_of_day). day_index counts UTC days from the earliest record.
ClusterReport cluster_report(std::span<const OccurrenceRecord> occurrences);

std::vector<LabeledInstant> labeled_instants(const ClusterReport& report);

// activity,day_index,minute_of_day
void write_cluster_csv(std::ostream& out, const ClusterReport& report);

}  // namespace adl
