#include "adl/recommender.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "adl/error.hpp"
#include "json.hpp"

namespace adl {

using nlohmann::json;

std::array<std::string, kFeatureCount> feature_values(const FeatureVector& f) {
  return {std::to_string(f.time_bucket), f.previous_activity.value_or(std::string(kNoActivity)),
          std::string(to_string(f.emotion)), std::string(to_string(f.ux)), std::string(to_string(f.day_kind))};
}

double RecommenderModel::conditional(std::size_t feature, std::size_t cls, std::string_view value) const {
  const auto& table = features[feature];
  auto it = std::lower_bound(table.domain.begin(), table.domain.end(), value);
  if (it == table.domain.end() || *it != value) return table.unseen[cls];
  return table.prob[cls][static_cast<std::size_t>(it - table.domain.begin())];
}

std::vector<LabeledTransition> extract_transitions(std::span<const AffectAnnotatedOccurrence> annotated,
                                                   int bucket_width) {
  std::vector<LabeledTransition> out;
  for (std::size_t i = 0; i + 1 < annotated.size(); ++i) {
    const auto& cur = annotated[i];
    FeatureVector f;
    f.time_bucket = minute_of_day(cur.occurrence.end) / bucket_width;
    f.previous_activity = cur.occurrence.activity;
    f.emotion = cur.emotion;
    f.ux = cur.ux;
    f.day_kind = day_kind(cur.occurrence.end);
    out.push_back({std::move(f), annotated[i + 1].occurrence.activity});
  }
  return out;
}

RecommenderModel train(std::span<const LabeledTransition> transitions, double alpha, int bucket_width) {
  if (transitions.empty()) throw Error("train: empty training set");
  if (!(alpha > 0.0)) throw RangeError("alpha", "smoothing must be > 0");
  if (bucket_width < 1 || bucket_width > kMinutesPerDay || kMinutesPerDay % bucket_width != 0)
    throw RangeError("bucket_width", "must divide 1440");

  RecommenderModel m;
  m.alpha = alpha;
  m.bucket_width = bucket_width;

  std::set<std::string> classes;
  std::set<std::string> previous{std::string(kNoActivity)};
  for (const auto& t : transitions) {
    classes.insert(t.next_activity);
    previous.insert(feature_values(t.features)[1]);
  }
  m.activities.assign(classes.begin(), classes.end());
  previous.insert(classes.begin(), classes.end());

  std::array<std::vector<std::string>, kFeatureCount> domains;
  for (int b = 0; b < kMinutesPerDay / bucket_width; ++b) domains[0].push_back(std::to_string(b));
  std::sort(domains[0].begin(), domains[0].end());
  domains[1].assign(previous.begin(), previous.end());
  domains[2] = {"negative", "positive"};
  domains[3] = {"bad", "good"};
  domains[4] = {"weekday", "weekend"};

  const std::size_t k = m.activities.size();
  auto class_index = [&](const std::string& name) {
    return static_cast<std::size_t>(std::lower_bound(m.activities.begin(), m.activities.end(), name) -
                                    m.activities.begin());
  };

  m.class_counts.assign(k, 0);
  std::array<std::vector<std::vector<std::size_t>>, kFeatureCount> counts;
  for (std::size_t f = 0; f < kFeatureCount; ++f)
    counts[f].assign(k, std::vector<std::size_t>(domains[f].size(), 0));

  for (const auto& t : transitions) {
    const std::size_t c = class_index(t.next_activity);
    ++m.class_counts[c];
    const auto values = feature_values(t.features);
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      auto it = std::lower_bound(domains[f].begin(), domains[f].end(), values[f]);
      if (it == domains[f].end() || *it != values[f])
        throw RangeError(std::string(kFeatureNames[f]), "value \"" + values[f] + "\" outside its domain");
      ++counts[f][c][static_cast<std::size_t>(it - domains[f].begin())];
    }
  }

  const double total = static_cast<double>(transitions.size());
  for (std::size_t c = 0; c < k; ++c)
    m.priors.push_back((static_cast<double>(m.class_counts[c]) + alpha) / (total + alpha * static_cast<double>(k)));

  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    auto& table = m.features[f];
    table.name = std::string(kFeatureNames[f]);
    table.domain = domains[f];
    const double width = static_cast<double>(table.domain.size());
    for (std::size_t c = 0; c < k; ++c) {
      const double denom = static_cast<double>(m.class_counts[c]) + alpha * width;
      std::vector<double> row;
      row.reserve(table.domain.size());
      for (std::size_t v = 0; v < table.domain.size(); ++v)
        row.push_back((static_cast<double>(counts[f][c][v]) + alpha) / denom);
      table.prob.push_back(std::move(row));
      table.unseen.push_back(alpha / denom);
    }
  }
  return m;
}

ConfidenceVector predict_confidences(const RecommenderModel& model, const FeatureVector& features) {
  const auto values = feature_values(features);
  const std::size_t k = model.activities.size();
  std::vector<double> log_post(k);
  for (std::size_t c = 0; c < k; ++c) {
    double lp = std::log(model.priors[c]);
    for (std::size_t f = 0; f < kFeatureCount; ++f) lp += std::log(model.conditional(f, c, values[f]));
    log_post[c] = lp;
  }
  const double peak = *std::max_element(log_post.begin(), log_post.end());
  double norm = 0.0;
  for (auto& lp : log_post) {
    lp = std::exp(lp - peak);
    norm += lp;
  }
  ConfidenceVector out;
  for (std::size_t c = 0; c < k; ++c) out.emplace(model.activities[c], log_post[c] / norm);
  return out;
}

std::string recommend(const ConfidenceVector& confidences) {
  if (confidences.empty()) throw Error("recommend: empty confidence vector");
  auto best = confidences.begin();
  for (auto it = confidences.begin(); it != confidences.end(); ++it)
    if (it->second > best->second) best = it;
  return best->first;
}

ConfidenceVector expand_confidences(const ConfidenceVector& confidences, std::span<const std::string> names) {
  ConfidenceVector out = confidences;
  for (const auto& n : names) out.emplace(n, 0.0);
  return out;
}

std::string RecommenderModel::to_json() const {
  json feats = json::array();
  for (const auto& t : features)
    feats.push_back({{"name", t.name}, {"domain", t.domain}, {"conditionals", t.prob}, {"unseen", t.unseen}});
  json doc = {{"kind", "recommender-model"},
              {"classifier", "multinomial-naive-bayes"},
              {"alpha", alpha},
              {"bucket_width", bucket_width},
              {"activities", activities},
              {"class_counts", class_counts},
              {"priors", priors},
              {"features", feats}};
  return doc.dump(2) + "\n";
}

RecommenderModel RecommenderModel::from_json(std::string_view text) {
  RecommenderModel m;
  try {
    const json doc = json::parse(text);
    m.alpha = doc.at("alpha").get<double>();
    m.bucket_width = doc.at("bucket_width").get<int>();
    m.activities = doc.at("activities").get<std::vector<std::string>>();
    m.class_counts = doc.at("class_counts").get<std::vector<std::size_t>>();
    m.priors = doc.at("priors").get<std::vector<double>>();
    const auto& feats = doc.at("features");
    if (feats.size() != kFeatureCount) throw ParseError("<model>", 0, "expected 5 feature tables");
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      auto& t = m.features[f];
      t.name = feats[f].at("name").get<std::string>();
      if (t.name != kFeatureNames[f]) throw ParseError("<model>", 0, "unexpected feature " + t.name);
      t.domain = feats[f].at("domain").get<std::vector<std::string>>();
      t.prob = feats[f].at("conditionals").get<std::vector<std::vector<double>>>();
      t.unseen = feats[f].at("unseen").get<std::vector<double>>();
      if (t.prob.size() != m.activities.size() || t.unseen.size() != m.activities.size())
        throw ParseError("<model>", 0, "feature " + t.name + " table does not match class count");
    }
  } catch (const json::exception& e) {
    throw ParseError("<model>", 0, e.what());
  }
  if (m.activities.empty() || m.priors.size() != m.activities.size() || m.class_counts.size() != m.activities.size())
    throw ParseError("<model>", 0, "class tables are inconsistent");
  return m;
}

}  // namespace adl
