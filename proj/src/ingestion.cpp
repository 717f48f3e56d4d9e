#include "adl/ingestion.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "adl/csv.hpp"
#include "adl/error.hpp"

namespace adl {

std::string_view to_string(OccurrenceSource s) {
  switch (s) {
    case OccurrenceSource::power_trace:
      return "power-trace";
    case OccurrenceSource::annotation:
      return "annotation";
    case OccurrenceSource::synthetic:
      return "synthetic";
  }
  return "annotation";
}

namespace {

std::optional<OccurrenceSource> parse_source(std::string_view s) {
  if (s == "power-trace") return OccurrenceSource::power_trace;
  if (s == "annotation") return OccurrenceSource::annotation;
  if (s == "synthetic") return OccurrenceSource::synthetic;
  return std::nullopt;
}

}  // namespace

std::vector<SensorSample> parse_power_trace(std::istream& in, const std::string& channel,
                                            const std::string& source) {
  std::vector<SensorSample> samples;
  std::string line;
  std::size_t line_no = 0;
  while (csv::next_line(in, line, line_no)) {
    std::istringstream row(line);
    std::string ts_text, watts_text, extra;
    if (!(row >> ts_text >> watts_text) || (row >> extra))
      throw ParseError(source, line_no, "expected two columns `unix_timestamp watts`");

    // UK-DALE timestamps are integral; tolerate a fractional part and truncate it.
    double ts_value = 0.0;
    double watts = 0.0;
    try {
      ts_value = csv::parse_double(ts_text);
      watts = csv::parse_double(watts_text);
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, line_no, e.what());
    }
    if (watts < 0.0) throw ParseError(source, line_no, "negative power reading");
    const auto ts = static_cast<Timestamp>(ts_value);
    if (!samples.empty() && ts <= samples.back().timestamp)
      throw ParseError(source, line_no, "non-monotonic timestamp " + std::to_string(ts));
    samples.push_back({ts, channel, watts});
  }
  return samples;
}

BinarySeries binarize(std::span<const SensorSample> samples, double on_watts, std::size_t gap_tolerance) {
  BinarySeries series;
  if (!samples.empty()) series.channel = samples.front().channel;
  series.points.reserve(samples.size());
  for (const auto& s : samples) series.points.push_back({s.timestamp, static_cast<std::uint8_t>(s.value > on_watts)});

  auto& pts = series.points;
  std::size_t i = 0;
  while (i < pts.size()) {
    if (pts[i].state == 1) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < pts.size() && pts[j].state == 0) ++j;
    const bool flanked = i > 0 && j < pts.size();
    if (flanked && j - i <= gap_tolerance)
      for (std::size_t m = i; m < j; ++m) pts[m].state = 1;
    i = j;
  }
  return series;
}

std::vector<OccurrenceRecord> segment_occurrences(const BinarySeries& series,
                                                  const std::map<std::string, std::string>& activity_map,
                                                  const DefinitionSet& defs) {
  auto mapped = activity_map.find(series.channel);
  if (mapped == activity_map.end()) throw LookupError("unmapped channel \"" + series.channel + "\"");
  const auto& def = defs.at(mapped->second);
  const IdSet atomics = def.atomic_ids();
  const IdSet contexts = def.context_ids();

  std::vector<OccurrenceRecord> out;
  const auto& pts = series.points;
  for (std::size_t i = 0; i < pts.size();) {
    if (pts[i].state == 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < pts.size() && pts[j + 1].state == 1) ++j;
    out.push_back({def.name, pts[i].timestamp, pts[j].timestamp, atomics, contexts, OccurrenceSource::power_trace});
    i = j + 1;
  }
  return out;
}

void sort_occurrences(std::vector<OccurrenceRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    if (a.start != b.start) return a.start < b.start;
    return a.activity < b.activity;
  });
}

std::vector<OccurrenceRecord> parse_adl_log(std::istream& in, const DefinitionSet& defs, const std::string& source) {
  std::vector<OccurrenceRecord> records;
  std::string line;
  std::size_t line_no = 0;
  if (!csv::next_line(in, line, line_no)) return records;

  const csv::Header header(csv::split(line));
  const int c_start = header.index("start_iso8601");
  const int c_end = header.index("end_iso8601");
  const int c_activity = header.index("activity");
  const int c_atomics = header.index("observed_atomics");
  const int c_contexts = header.index("satisfied_contexts");
  const int c_source = header.index("source");
  if (c_start < 0 || c_end < 0 || c_activity < 0)
    throw ParseError(source, line_no, "header must contain start_iso8601,end_iso8601,activity");

  while (csv::next_line(in, line, line_no)) {
    const auto cols = csv::split(line);
    if (cols.size() != header.size())
      throw ParseError(source, line_no,
                       "expected " + std::to_string(header.size()) + " columns, got " + std::to_string(cols.size()));
    const auto start = parse_iso8601(cols[c_start]);
    if (!start) throw ParseError(source, line_no, "unparseable timestamp \"" + cols[c_start] + "\"");
    const auto end = parse_iso8601(cols[c_end]);
    if (!end) throw ParseError(source, line_no, "unparseable timestamp \"" + cols[c_end] + "\"");
    if (*end < *start) throw ParseError(source, line_no, "end before start");

    const auto* def = defs.find(cols[c_activity]);
    if (!def) throw LookupError(source + ":" + std::to_string(line_no) + ": unknown activity label \"" +
                                cols[c_activity] + "\"");

    OccurrenceRecord rec{def->name, *start, *end, def->atomic_ids(), def->context_ids(), OccurrenceSource::annotation};
    try {
      if (c_atomics >= 0) rec.observed_atomics = csv::parse_ids(cols[c_atomics]);
      if (c_contexts >= 0) rec.satisfied_contexts = csv::parse_ids(cols[c_contexts]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, line_no, e.what());
    }
    if (c_source >= 0) {
      const auto src = parse_source(cols[c_source]);
      if (!src) throw ParseError(source, line_no, "unknown source \"" + cols[c_source] + "\"");
      rec.source = *src;
    }
    const IdSet at = def->atomic_ids();
    const IdSet ct = def->context_ids();
    for (int id : rec.observed_atomics)
      if (!at.contains(id)) throw ParseError(source, line_no, def->name + " has no At" + std::to_string(id));
    for (int id : rec.satisfied_contexts)
      if (!ct.contains(id)) throw ParseError(source, line_no, def->name + " has no Ct" + std::to_string(id));
    records.push_back(std::move(rec));
  }
  sort_occurrences(records);
  return records;
}

void write_adl_log(std::ostream& out, std::span<const OccurrenceRecord> records) {
  out << "start_iso8601,end_iso8601,activity,observed_atomics,satisfied_contexts,source\n";
  for (const auto& r : records) {
    out << format_iso8601(r.start) << ',' << format_iso8601(r.end) << ',' << r.activity << ','
        << csv::join_ids(r.observed_atomics) << ',' << csv::join_ids(r.satisfied_contexts) << ','
        << to_string(r.source) << '\n';
  }
}

}  // namespace adl
