#include "adl/temporal.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "adl/error.hpp"

namespace adl {

int circular_distance(TimeInstant a, TimeInstant b) {
  const int delta = std::abs(a.minute_of_day - b.minute_of_day) % kMinutesPerDay;
  return std::min(delta, kMinutesPerDay - delta);
}

std::string knn_label(std::span<const LabeledInstant> train, TimeInstant query, std::size_t k) {
  if (train.empty()) throw Error("knn_label: empty training set");
  if (k < 1 || k > train.size())
    throw Error("knn_label: k=" + std::to_string(k) + " outside [1, " + std::to_string(train.size()) + "]");

  std::vector<const LabeledInstant*> order;
  order.reserve(train.size());
  for (const auto& t : train) order.push_back(&t);
  auto closer = [&](const LabeledInstant* a, const LabeledInstant* b) {
    const int da = circular_distance(a->instant, query);
    const int db = circular_distance(b->instant, query);
    if (da != db) return da < db;
    if (a->instant.minute_of_day != b->instant.minute_of_day)
      return a->instant.minute_of_day < b->instant.minute_of_day;
    return a->activity < b->activity;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), closer);

  std::map<std::string, std::size_t> votes;
  for (std::size_t i = 0; i < k; ++i) ++votes[order[i]->activity];
  const std::string* best = nullptr;
  std::size_t best_votes = 0;
  for (const auto& [activity, n] : votes) {
    if (n > best_votes) {
      best = &activity;
      best_votes = n;
    }
  }
  return *best;
}

ClusterReport cluster_report(std::span<const OccurrenceRecord> occurrences) {
  ClusterReport report;
  if (occurrences.empty()) return report;
  std::int64_t first_day = std::numeric_limits<std::int64_t>::max();
  for (const auto& r : occurrences) first_day = std::min(first_day, day_number(r.start));
  for (const auto& r : occurrences) {
    report[r.activity].push_back({minute_of_day(r.start), static_cast<int>(day_number(r.start) - first_day)});
  }
  for (auto& [activity, group] : report) {
    std::sort(group.begin(), group.end(), [](const TimeInstant& a, const TimeInstant& b) {
      if (a.day_index != b.day_index) return a.day_index < b.day_index;
      return a.minute_of_day < b.minute_of_day;
    });
  }
  return report;
}

std::vector<LabeledInstant> labeled_instants(const ClusterReport& report) {
  std::vector<LabeledInstant> out;
  for (const auto& [activity, group] : report)
    for (const auto& instant : group) out.push_back({instant, activity});
  return out;
}

void write_cluster_csv(std::ostream& out, const ClusterReport& report) {
  out << "activity,day_index,minute_of_day\n";
  for (const auto& [activity, group] : report)
    for (const auto& t : group) out << activity << ',' << t.day_index << ',' << t.minute_of_day << '\n';
}

}  // namespace adl
