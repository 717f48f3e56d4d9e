#include "adl/affect.hpp"

#include "adl/error.hpp"
#include "json.hpp"

namespace adl {

using nlohmann::json;

std::string_view to_string(Emotion e) { return e == Emotion::positive ? "positive" : "negative"; }
std::string_view to_string(UxLabel u) { return u == UxLabel::good ? "good" : "bad"; }

std::optional<Emotion> parse_emotion(std::string_view s) {
  if (s == "positive") return Emotion::positive;
  if (s == "negative") return Emotion::negative;
  return std::nullopt;
}

std::optional<UxLabel> parse_ux(std::string_view s) {
  if (s == "good") return UxLabel::good;
  if (s == "bad") return UxLabel::bad;
  return std::nullopt;
}

Emotion infer_emotion(const ComplexActivityDefinition& def, std::span<const OccurrenceVerdict> history,
                      const Observation& current, const OccurrenceVerdict& verdict, const AffectParams& params) {
  if (!verdict.completed) return Emotion::negative;

  const auto pair = most_important_pair(def);
  if (!current.observed_atomics.contains(pair.atomic) || !current.satisfied_contexts.contains(pair.context))
    return Emotion::negative;

  const std::size_t n = std::min(params.history_window, history.size());
  if (n == 0) return Emotion::positive;
  double sum = 0.0;
  for (const auto& v : history.last(n)) sum += v.score;
  const double trailing_mean = sum / static_cast<double>(n);
  return verdict.score >= trailing_mean - params.epsilon ? Emotion::positive : Emotion::negative;
}

UxModel::UxModel(std::map<UxKey, UxLabel> table, AffectParams params, int bucket_width)
    : table_(std::move(table)), params_(params), bucket_width_(bucket_width) {}

UxLabel UxModel::map(Emotion emotion, std::string_view activity, int bucket) const {
  auto it = table_.find(UxKey{emotion, std::string(activity), bucket});
  if (it != table_.end()) return it->second;
  return emotion == Emotion::positive ? UxLabel::good : UxLabel::bad;
}

std::string UxModel::to_json() const {
  json entries = json::array();
  for (const auto& [key, label] : table_) {
    entries.push_back({{"emotion", to_string(key.emotion)},
                       {"activity", key.activity},
                       {"bucket", key.bucket},
                       {"ux", to_string(label)}});
  }
  json doc = {{"kind", "ux-model"},
              {"history_window", params_.history_window},
              {"epsilon", params_.epsilon},
              {"bucket_width", bucket_width_},
              {"table", entries}};
  return doc.dump(2) + "\n";
}

UxModel UxModel::from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    AffectParams params;
    params.history_window = doc.at("history_window").get<std::size_t>();
    params.epsilon = doc.at("epsilon").get<double>();
    std::map<UxKey, UxLabel> table;
    for (const auto& e : doc.at("table")) {
      const auto emotion = parse_emotion(e.at("emotion").get<std::string>());
      const auto ux = parse_ux(e.at("ux").get<std::string>());
      if (!emotion || !ux) throw ParseError("<ux-model>", 0, "bad emotion or ux label");
      table[{*emotion, e.at("activity").get<std::string>(), e.at("bucket").get<int>()}] = *ux;
    }
    return UxModel(std::move(table), params, doc.at("bucket_width").get<int>());
  } catch (const json::exception& e) {
    throw ParseError("<ux-model>", 0, e.what());
  }
}

UxModel train_ux_mapper(std::span<const UxExample> examples, const AffectParams& params, int bucket_width) {
  std::map<UxKey, std::pair<std::size_t, std::size_t>> votes;  // good, bad
  for (const auto& ex : examples) {
    auto& v = votes[ex.key];
    (ex.label == UxLabel::good ? v.first : v.second) += 1;
  }
  std::map<UxKey, UxLabel> table;
  for (const auto& [key, v] : votes) table[key] = v.first >= v.second ? UxLabel::good : UxLabel::bad;
  return UxModel(std::move(table), params, bucket_width);
}

std::vector<AffectAnnotatedOccurrence> annotate_affect(
    const DefinitionSet& defs, std::span<const std::pair<OccurrenceRecord, OccurrenceVerdict>> scored,
    const UxModel& ux_model, const AffectParams& params, int bucket_width) {
  std::map<std::string, std::vector<OccurrenceVerdict>> history;
  std::vector<AffectAnnotatedOccurrence> out;
  out.reserve(scored.size());
  for (const auto& [record, verdict] : scored) {
    const auto& def = defs.at(record.activity);
    auto& past = history[record.activity];
    const Emotion emotion = infer_emotion(def, past, observation_of(record), verdict, params);
    const int bucket = minute_of_day(record.start) / bucket_width;
    out.push_back({record, verdict, emotion, ux_model.map(emotion, record.activity, bucket)});
    past.push_back(verdict);
  }
  return out;
}

}  // namespace adl
