#include "adl/recognition.hpp"

#include "adl/error.hpp"

namespace adl {

Observation observation_of(const OccurrenceRecord& record) {
  return {record.activity, record.observed_atomics, record.satisfied_contexts};
}

double occurrence_weight(const ComplexActivityDefinition& def, const Observation& obs, double atomic_share) {
  if (!obs.activity.empty() && obs.activity != def.name)
    throw LookupError("observation of \"" + obs.activity + "\" scored against \"" + def.name + "\"");
  double atomic_sum = 0.0;
  for (int id : obs.observed_atomics) atomic_sum += def.atomic_weight(id);
  double context_sum = 0.0;
  for (int id : obs.satisfied_contexts) context_sum += def.context_weight(id);
  return atomic_share * atomic_sum + (1.0 - atomic_share) * context_sum;
}

OccurrenceVerdict detect_occurrence(const ComplexActivityDefinition& def, const Observation& obs,
                                    double atomic_share) {
  const double score = occurrence_weight(def, obs, atomic_share);
  return {score, score >= def.threshold - kThresholdSlack, def.threshold};
}

std::optional<std::pair<Timestamp, Timestamp>> detect_boundaries(const ComplexActivityDefinition& def,
                                                                 std::span<const AtomicEvent> events) {
  std::optional<Timestamp> start;
  std::optional<Timestamp> end;
  for (const auto& e : events) {
    if (!start && def.start_atomics.contains(e.atomic)) start = e.at;
    if (def.end_atomics.contains(e.atomic)) end = e.at;
  }
  if (!start || !end || *end < *start) return std::nullopt;
  return std::pair{*start, *end};
}

}  // namespace adl
