#pragma once

// Weighted-threshold scoring of activity occurrences.

#include <optional>
#include <span>
#include <string>
#include <utility>

#include "adl/activity_model.hpp"
#include "adl/ingestion.hpp"

namespace adl {

struct Observation {
  std::string activity;
  IdSet observed_atomics;
  IdSet satisfied_contexts;
};

struct OccurrenceVerdict {
  double score = 0.0;
  bool completed = false;
  double threshold = 0.0;

  bool operator==(const OccurrenceVerdict&) const = default;
};

// Share of the score carried by atomic activities; contexts carry the rest.
constexpr double kDefaultAtomicShare = 0.5;

// Absorbs binary rounding of two-decimal weight sums in the threshold test.
constexpr double kThresholdSlack = 1e-9;

Observation observation_of(const OccurrenceRecord& record);

// share * sum(observed atomic weights) + (1 - share) * sum(satisfied context weights).
// Throws LookupError for an id the definition does not have.
double occurrence_weight(const ComplexActivityDefinition& def, const Observation& obs,
                         double atomic_share = kDefaultAtomicShare);

// completed iff score >= threshold (inclusive).
OccurrenceVerdict detect_occurrence(const ComplexActivityDefinition& def, const Observation& obs,
                                    double atomic_share = kDefaultAtomicShare);

struct AtomicEvent {
  Timestamp at = 0;
  int atomic = 0;
};

// (first start-set event, last end-set event), or nothing when either set is
// unmatched or the end would precede the start. Context events play no part.
std::optional<std::pair<Timestamp, Timestamp>> detect_boundaries(const ComplexActivityDefinition& def,
                                                                 std::span<const AtomicEvent> events);

}  // namespace adl
