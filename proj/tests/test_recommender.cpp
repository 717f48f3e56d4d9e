#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "adl/error.hpp"
#include "adl/recommender.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace adl;

namespace {

FeatureVector fv(int bucket, std::optional<std::string> prev, Emotion e = Emotion::positive,
                 UxLabel u = UxLabel::good, DayKind k = DayKind::weekday) {
  return {bucket, std::move(prev), e, u, k};
}

// Count-and-normalize oracle. Feature domains: every time bucket, both
// values of each binary feature, and none plus every activity that appears
// as a label or a previous activity.
ConfidenceVector oracle(const std::vector<LabeledTransition>& data, const FeatureVector& q, double alpha,
                        int bucket_width = 30) {
  std::map<std::string, int> classes;
  for (const auto& t : data) ++classes[t.next_activity];
  const auto qv = feature_values(q);
  std::set<std::string> previous = {"none"};
  for (const auto& t : data) {
    previous.insert(t.next_activity);
    previous.insert(feature_values(t.features)[1]);
  }
  const std::array<double, kFeatureCount> width = {1440.0 / bucket_width, static_cast<double>(previous.size()), 2, 2,
                                                   2};
  const double n = static_cast<double>(data.size());
  const double k = static_cast<double>(classes.size());
  ConfidenceVector out;
  double z = 0;
  for (const auto& [c, nc] : classes) {
    double p = (nc + alpha) / (n + alpha * k);
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      int match = 0;
      for (const auto& t : data)
        if (t.next_activity == c && feature_values(t.features)[f] == qv[f]) ++match;
      p *= (match + alpha) / (nc + alpha * width[f]);
    }
    out[c] = p;
    z += p;
  }
  for (auto& [_, p] : out) p /= z;
  return out;
}

std::vector<LabeledTransition> toy_set() {
  return {
      {fv(16, "Sleeping"), "Eating Breakfast"},
      {fv(16, "Sleeping", Emotion::negative, UxLabel::bad), "Showering"},
      {fv(17, "Showering"), "Eating Breakfast"},
      {fv(18, "Eating Breakfast"), "Leaving"},
      {fv(18, "Eating Breakfast", Emotion::negative, UxLabel::bad), "Showering"},
      {fv(17, "Sleeping", Emotion::positive, UxLabel::good, DayKind::weekend), "Eating Breakfast"},
      {fv(18, "Eating Breakfast", Emotion::positive, UxLabel::good, DayKind::weekend), "Leaving"},
  };
}

double sum(const ConfidenceVector& v) {
  return std::accumulate(v.begin(), v.end(), 0.0, [](double s, const auto& kv) { return s + kv.second; });
}

}  // namespace

TEST_CASE("feature values encode each field") {
  const auto v = feature_values(fv(3, std::nullopt, Emotion::negative, UxLabel::bad, DayKind::weekend));
  CHECK(v[0] == "3");
  CHECK(v[1] == "none");
  CHECK(v[2] == "negative");
  CHECK(v[3] == "bad");
  CHECK(v[4] == "weekend");
}

TEST_CASE("extract transitions pairs consecutive occurrences") {
  auto occ = [](std::string a, Timestamp s, Timestamp e, Emotion em) {
    AffectAnnotatedOccurrence o;
    o.occurrence = {std::move(a), s, e, {}, {}, OccurrenceSource::annotation};
    o.emotion = em;
    o.ux = em == Emotion::positive ? UxLabel::good : UxLabel::bad;
    return o;
  };
  CHECK(extract_transitions({}, 30).empty());
  const Timestamp mon = 1322438400;  // Monday 2011-11-28 00:00 UTC
  const std::vector<AffectAnnotatedOccurrence> seq = {
      occ("Eating Breakfast", mon + 8 * 3600, mon + 8 * 3600 + 1700, Emotion::negative),
      occ("Leaving", mon + 9 * 3600, mon + 12 * 3600, Emotion::positive),
      occ("Eating Lunch", mon + 13 * 3600, mon + 13 * 3600 + 1800, Emotion::positive)};
  CHECK(extract_transitions(std::span(seq).first(1), 30).empty());
  const auto t = extract_transitions(seq, 30);
  REQUIRE(t.size() == 2);
  CHECK(t[0].next_activity == "Leaving");
  CHECK(t[1].next_activity == "Eating Lunch");
  CHECK(t[0].features.previous_activity == "Eating Breakfast");
  CHECK(t[0].features.time_bucket == 16);  // ends 08:28
  CHECK(t[0].features.emotion == Emotion::negative);
  CHECK(t[0].features.ux == UxLabel::bad);
  CHECK(t[0].features.day_kind == DayKind::weekday);
  CHECK(t[1].features.time_bucket == 24);  // ends 12:00
}

TEST_CASE("training errors") {
  CHECK_THROWS_AS(train({}), Error);
  const auto data = toy_set();
  CHECK_THROWS_AS(train(data, 0.0), RangeError);
  CHECK_THROWS_AS(train(data, 1.0, 7), RangeError);
}

TEST_CASE("single-class training concentrates on that class") {
  const std::vector<LabeledTransition> data = {{fv(24, "Leaving"), "Eating Lunch"},
                                               {fv(25, "Showering"), "Eating Lunch"}};
  const auto m = train(data);
  REQUIRE(m.activities == std::vector<std::string>{"Eating Lunch"});
  CHECK(m.priors[0] == doctest::Approx(1.0));
  const auto c = predict_confidences(m, fv(3, std::nullopt, Emotion::negative, UxLabel::bad));
  CHECK(c.at("Eating Lunch") == doctest::Approx(1.0));
  CHECK(recommend(c) == "Eating Lunch");
}

TEST_CASE("symmetric two-class model gives equal priors and posteriors") {
  const std::vector<LabeledTransition> data = {{fv(10, "x"), "A"}, {fv(10, "x"), "B"}};
  const auto m = train(data);
  CHECK(std::abs(m.priors[0] - m.priors[1]) < 1e-12);
  const auto c = predict_confidences(m, fv(10, "x"));
  CHECK(std::abs(c.at("A") - 0.5) < 1e-12);
  CHECK(std::abs(c.at("B") - 0.5) < 1e-12);
}

TEST_CASE("toy conditionals match hand counts") {
  const auto m = train(toy_set(), 1.0, 30);
  REQUIRE(m.activities == std::vector<std::string>{"Eating Breakfast", "Leaving", "Showering"});
  // 7 transitions, 3 classes: breakfast 3, leaving 2, showering 2
  CHECK(m.priors[0] == doctest::Approx(4.0 / 10.0));
  CHECK(m.priors[1] == doctest::Approx(3.0 / 10.0));
  // 48 time buckets; breakfast saw 16 once and 17 twice
  CHECK(m.conditional(0, 0, "17") == doctest::Approx(3.0 / 51.0));
  CHECK(m.conditional(0, 0, "18") == doctest::Approx(1.0 / 51.0));
  CHECK(m.conditional(0, 0, "40") == doctest::Approx(1.0 / 51.0));
  // previous_activity domain: none, Eating Breakfast, Leaving, Showering, Sleeping
  CHECK(m.conditional(1, 0, "Sleeping") == doctest::Approx(3.0 / 8.0));
  CHECK(m.conditional(1, 1, "Sleeping") == doctest::Approx(1.0 / 7.0));
  // emotion domain {negative, positive}; showering is always negative
  CHECK(m.conditional(2, 2, "negative") == doctest::Approx(3.0 / 4.0));
}

TEST_CASE("toy posterior matches the oracle") {
  const auto data = toy_set();
  const auto m = train(data, 1.0, 30);
  for (const auto& q : {fv(16, "Sleeping"), fv(18, "Eating Breakfast", Emotion::negative, UxLabel::bad),
                        fv(40, std::nullopt, Emotion::positive, UxLabel::bad, DayKind::weekend)}) {
    const auto got = predict_confidences(m, q);
    const auto want = oracle(data, q, 1.0);
    REQUIRE(got.size() == want.size());
    for (const auto& [c, p] : want) CHECK(std::abs(got.at(c) - p) < 1e-9);
    CHECK(std::abs(sum(got) - 1.0) < 1e-9);
  }
}

TEST_CASE("training is invariant under permutation of transitions") {
  auto data = toy_set();
  const auto m = train(data, 0.5, 30);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(data.begin(), data.end(), rng);
    CHECK(train(data, 0.5, 30) == m);
  }
}

TEST_CASE("a uniquely keyed feature recommends its label under small smoothing") {
  std::vector<LabeledTransition> data = toy_set();
  for (int i = 0; i < 3; ++i) data.push_back({fv(44, "Watching TV in Spare Time"), "Sleeping"});
  const auto m = train(data, 1e-6, 30);
  CHECK(recommend(predict_confidences(m, fv(44, "Watching TV in Spare Time"))) == "Sleeping");
}

TEST_CASE("model json round trip") {
  const auto m = train(toy_set(), 0.7, 30);
  const auto back = RecommenderModel::from_json(m.to_json());
  CHECK(back == m);
  CHECK(back.to_json() == m.to_json());
}

TEST_CASE("recommend picks the argmax and breaks ties by name") {
  const auto rows = fixtures::published_recommendations();
  CHECK(recommend(fixtures::confidence_vector(rows[8])) == "Leaving");
  CHECK(recommend(fixtures::confidence_vector(rows[3])) == "Showering");
  ConfidenceVector uniform;
  for (const auto& n : fixtures::published_columns()) uniform[n] = 1.0 / 7.0;
  CHECK(recommend(uniform) == "Eating Breakfast");
  CHECK_THROWS_AS(recommend({}), Error);
}

TEST_CASE("recommendation is unchanged by positive rescaling") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.001, 1), s(0.01, 100);
  for (int i = 0; i < 200; ++i) {
    ConfidenceVector v, scaled;
    const double k = s(rng);
    for (const auto& n : fixtures::published_columns()) {
      v[n] = u(rng);
      scaled[n] = v[n] * k;
    }
    CHECK(recommend(v) == recommend(scaled));
  }
}

TEST_CASE("expand_confidences fills missing names with zero") {
  const std::vector<std::string> names = {"A", "B", "C"};
  const auto e = expand_confidences({{"B", 1.0}}, names);
  CHECK(e.size() == 3);
  CHECK(e.at("A") == 0.0);
  CHECK(e.at("B") == 1.0);
}
