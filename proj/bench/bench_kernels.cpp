// Times the OpenMP kernels against their serial references on synthetic
// batches. Usage: bench_kernels [definitions.json] [items]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "adl/activity_model.hpp"
#include "adl/kernels.hpp"

using clock_type = std::chrono::steady_clock;

template <class F>
double seconds(F&& f) {
  const auto start = clock_type::now();
  f();
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

int main(int argc, char** argv) {
  const std::string def_path = argc > 1 ? argv[1] : "definitions/adl.json";
  const std::size_t n = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 200000;
  const auto defs = adl::load_definitions(def_path);
  const auto names = defs.names();
  std::mt19937_64 rng(7);

  std::vector<adl::Observation> obs;
  obs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& def = defs.at(names[rng() % names.size()]);
    adl::Observation o{def.name, {}, {}};
    for (const auto& a : def.atomics)
      if (rng() % 4) o.observed_atomics.insert(a.id);
    for (const auto& c : def.contexts)
      if (rng() % 4) o.satisfied_contexts.insert(c.id);
    obs.push_back(std::move(o));
  }

  std::vector<adl::LabeledInstant> train;
  for (std::size_t i = 0; i < 2000; ++i)
    train.push_back({{static_cast<int>(rng() % 1440), static_cast<int>(i / 90)}, names[rng() % names.size()]});
  std::vector<adl::TimeInstant> queries;
  for (std::size_t i = 0; i < n / 100; ++i) queries.push_back({static_cast<int>(rng() % 1440), 0});

  std::vector<adl::LabeledTransition> transitions;
  for (std::size_t i = 0; i < 5000; ++i) {
    adl::FeatureVector f;
    f.time_bucket = static_cast<int>(rng() % 48);
    f.previous_activity = names[rng() % names.size()];
    f.emotion = rng() % 2 ? adl::Emotion::positive : adl::Emotion::negative;
    f.ux = rng() % 2 ? adl::UxLabel::good : adl::UxLabel::bad;
    f.day_kind = rng() % 7 < 5 ? adl::DayKind::weekday : adl::DayKind::weekend;
    transitions.push_back({f, names[rng() % names.size()]});
  }
  const auto model = adl::train(transitions);
  std::vector<adl::FeatureVector> features;
  for (std::size_t i = 0; i < n / 10; ++i) features.push_back(transitions[i % transitions.size()].features);

  std::printf("threads: %d\n", adl::kernels::thread_count());
  std::printf("%-12s %10s %12s %12s %8s %s\n", "kernel", "items", "serial_s", "parallel_s", "speedup", "match");

  auto report = [](const char* name, std::size_t items, double s, double p, bool match) {
    std::printf("%-12s %10zu %12.4f %12.4f %8.2f %s\n", name, items, s, p, p > 0 ? s / p : 0.0, match ? "yes" : "NO");
  };

  {
    std::vector<adl::OccurrenceVerdict> a, b;
    const double s = seconds([&] { a = adl::kernels::score_batch_serial(defs, obs); });
    const double p = seconds([&] { b = adl::kernels::score_batch(defs, obs); });
    report("score", obs.size(), s, p, a == b);
  }
  {
    std::vector<std::string> a, b;
    const double s = seconds([&] { a = adl::kernels::knn_label_batch_serial(train, queries, 3); });
    const double p = seconds([&] { b = adl::kernels::knn_label_batch(train, queries, 3); });
    report("knn", queries.size(), s, p, a == b);
  }
  {
    std::vector<adl::ConfidenceVector> a, b;
    const double s = seconds([&] { a = adl::kernels::predict_batch_serial(model, features); });
    const double p = seconds([&] { b = adl::kernels::predict_batch(model, features); });
    report("predict", features.size(), s, p, a == b);
  }
  return 0;
}
