#pragma once

// Train/test splitting, confusion matrices and per-class metrics.
// Matrices are oriented predicted-rows / true-columns.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adl/error.hpp"

namespace adl {

enum class SplitKind { chronological, random };

template <class T>
struct Split {
  std::vector<T> train;
  std::vector<T> test;
};

// ceil(n * fraction), guarded against binary representation error (10 * 0.7).
inline std::size_t train_size(std::size_t n, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw RangeError("train_fraction", "must lie in (0,1)");
  const double raw = static_cast<double>(n) * train_fraction;
  return std::min(n, static_cast<std::size_t>(std::ceil(raw - 1e-9)));
}

// First ceil(n * fraction) records train; the rest test. Order is preserved.
template <class T>
Split<T> split_chronological(std::span<const T> records, double train_fraction) {
  const std::size_t n_train = train_size(records.size(), train_fraction);
  Split<T> s;
  s.train.assign(records.begin(), records.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.test.assign(records.begin() + static_cast<std::ptrdiff_t>(n_train), records.end());
  return s;
}

// Seeded random membership with the same sizes; both halves keep input order.
template <class T>
Split<T> split_random(std::span<const T> records, double train_fraction, std::uint64_t seed) {
  const std::size_t n_train = train_size(records.size(), train_fraction);
  std::vector<std::size_t> idx(records.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(idx[i - 1], idx[pick(rng)]);
  }
  std::vector<char> in_train(records.size(), 0);
  for (std::size_t i = 0; i < n_train; ++i) in_train[idx[i]] = 1;
  Split<T> s;
  for (std::size_t i = 0; i < records.size(); ++i) (in_train[i] ? s.train : s.test).push_back(records[i]);
  return s;
}

class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::vector<std::string> labels);
  ConfusionMatrix(std::vector<std::string> labels, std::vector<std::vector<std::uint64_t>> counts);

  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t index(std::string_view label) const;  // throws LookupError

  std::uint64_t at(std::size_t predicted, std::size_t truth) const { return counts_[predicted][truth]; }
  std::uint64_t at(std::string_view predicted, std::string_view truth) const {
    return at(index(predicted), index(truth));
  }
  void add(std::size_t predicted, std::size_t truth, std::uint64_t n = 1) { counts_[predicted][truth] += n; }

  std::uint64_t row_sum(std::size_t predicted) const;
  std::uint64_t column_sum(std::size_t truth) const;
  std::uint64_t trace() const;
  std::uint64_t grand_total() const;

  ConfusionMatrix transposed() const;

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<std::uint64_t>> counts_;
};

struct Prediction {
  std::string predicted;
  std::string truth;
};

// Throws LookupError for a label outside `labels`.
ConfusionMatrix build_confusion(std::span<const Prediction> pairs, std::vector<std::string> labels);

// trace / grand total. Throws Error on an empty matrix.
double accuracy(const ConfusionMatrix& cm);
// Undefined (nullopt) when the predicted row / true column is empty.
std::optional<double> class_precision(const ConfusionMatrix& cm, std::string_view label);
std::optional<double> class_recall(const ConfusionMatrix& cm, std::string_view label);

struct MetricsReport {
  std::vector<std::string> labels;
  std::optional<double> accuracy;
  std::map<std::string, std::optional<double>> precision;
  std::map<std::string, std::optional<double>> recall;
  std::uint64_t grand_total = 0;
  std::uint64_t correct = 0;
  std::optional<std::uint64_t> seed;

  bool operator==(const MetricsReport&) const = default;
};

MetricsReport make_report(const ConfusionMatrix& cm, std::optional<std::uint64_t> seed = std::nullopt);

enum class ReportFormat { csv, json };
std::optional<ReportFormat> parse_report_format(std::string_view s);

// "73.12%", or "n/a" for an undefined value.
std::string format_percent(std::optional<double> v);

// csv: metric,label,value rows; json: the MetricsReport fields.
std::string emit_report(const MetricsReport& report, ReportFormat format);
MetricsReport parse_report_json(std::string_view text);

// Label header row and column, predicted rows / true columns.
void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm);

}  // namespace adl
