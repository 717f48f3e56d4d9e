#pragma once

// Power-trace and annotation-log ingestion into timed occurrence records.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "adl/activity_model.hpp"
#include "adl/timeutil.hpp"

namespace adl {

struct SensorSample {
  Timestamp timestamp = 0;
  std::string channel;
  double value = 0.0;  // watts

  bool operator==(const SensorSample&) const = default;
};

struct BinaryPoint {
  Timestamp timestamp = 0;
  std::uint8_t state = 0;

  bool operator==(const BinaryPoint&) const = default;
};

struct BinarySeries {
  std::string channel;
  std::vector<BinaryPoint> points;
};

enum class OccurrenceSource { power_trace, annotation, synthetic };

std::string_view to_string(OccurrenceSource s);

struct OccurrenceRecord {
  std::string activity;
  Timestamp start = 0;
  Timestamp end = 0;
  IdSet observed_atomics;
  IdSet satisfied_contexts;
  OccurrenceSource source = OccurrenceSource::annotation;

  bool operator==(const OccurrenceRecord&) const = default;
};

constexpr double kDefaultOnWatts = 10.0;
constexpr std::size_t kDefaultGapTolerance = 2;

// Two whitespace-separated columns per line: unix_timestamp watts.
// Throws ParseError on a malformed row, a negative reading, or a timestamp
// that does not strictly increase.
std::vector<SensorSample> parse_power_trace(std::istream& in, const std::string& channel,
                                            const std::string& source = "<power-trace>");

// state = value > on_watts, then zero runs of length <= gap_tolerance with a
// 1 on both sides are promoted to 1.
BinarySeries binarize(std::span<const SensorSample> samples, double on_watts, std::size_t gap_tolerance);

// One record per maximal run of 1s, spanning the first and last active
// sample. Power traces carry no sub-action evidence, so every atomic and
// context id of the mapped definition is marked observed.
std::vector<OccurrenceRecord> segment_occurrences(const BinarySeries& series,
                                                  const std::map<std::string, std::string>& activity_map,
                                                  const DefinitionSet& defs);

// CSV with header start_iso8601,end_iso8601,activity and optional trailing
// columns observed_atomics, satisfied_contexts (';'-joined ids) and source.
// Records without id columns get the full id sets of their definition.
// Output is sorted by (start, activity).
std::vector<OccurrenceRecord> parse_adl_log(std::istream& in, const DefinitionSet& defs,
                                            const std::string& source = "<adl-log>");

// Writes the format parse_adl_log reads, including every optional column.
void write_adl_log(std::ostream& out, std::span<const OccurrenceRecord> records);

void sort_occurrences(std::vector<OccurrenceRecord>& records);

}  // namespace adl
