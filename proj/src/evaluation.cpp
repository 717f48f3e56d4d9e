#include "adl/evaluation.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace adl {

using nlohmann::json;

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)), counts_(labels_.size(), std::vector<std::uint64_t>(labels_.size(), 0)) {}

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> labels, std::vector<std::vector<std::uint64_t>> counts)
    : labels_(std::move(labels)), counts_(std::move(counts)) {
  if (counts_.size() != labels_.size()) throw Error("confusion matrix must be square over its labels");
  for (const auto& row : counts_)
    if (row.size() != labels_.size()) throw Error("confusion matrix must be square over its labels");
}

std::size_t ConfusionMatrix::index(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  throw LookupError("unknown label \"" + std::string(label) + "\"");
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t predicted) const {
  return std::accumulate(counts_[predicted].begin(), counts_[predicted].end(), std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::column_sum(std::size_t truth) const {
  std::uint64_t s = 0;
  for (const auto& row : counts_) s += row[truth];
  return s;
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) s += counts_[i][i];
  return s;
}

std::uint64_t ConfusionMatrix::grand_total() const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) s += row_sum(i);
  return s;
}

ConfusionMatrix ConfusionMatrix::transposed() const {
  ConfusionMatrix t(labels_);
  for (std::size_t p = 0; p < labels_.size(); ++p)
    for (std::size_t q = 0; q < labels_.size(); ++q) t.counts_[q][p] = counts_[p][q];
  return t;
}

ConfusionMatrix build_confusion(std::span<const Prediction> pairs, std::vector<std::string> labels) {
  ConfusionMatrix cm(std::move(labels));
  for (const auto& p : pairs) cm.add(cm.index(p.predicted), cm.index(p.truth));
  return cm;
}

double accuracy(const ConfusionMatrix& cm) {
  const auto total = cm.grand_total();
  if (total == 0) throw Error("accuracy of an empty confusion matrix");
  return static_cast<double>(cm.trace()) / static_cast<double>(total);
}

std::optional<double> class_precision(const ConfusionMatrix& cm, std::string_view label) {
  const auto i = cm.index(label);
  const auto row = cm.row_sum(i);
  if (row == 0) return std::nullopt;
  return static_cast<double>(cm.at(i, i)) / static_cast<double>(row);
}

std::optional<double> class_recall(const ConfusionMatrix& cm, std::string_view label) {
  const auto i = cm.index(label);
  const auto col = cm.column_sum(i);
  if (col == 0) return std::nullopt;
  return static_cast<double>(cm.at(i, i)) / static_cast<double>(col);
}

MetricsReport make_report(const ConfusionMatrix& cm, std::optional<std::uint64_t> seed) {
  MetricsReport r;
  r.labels = cm.labels();
  r.grand_total = cm.grand_total();
  r.correct = cm.trace();
  if (r.grand_total > 0) r.accuracy = accuracy(cm);
  for (const auto& l : r.labels) {
    r.precision[l] = class_precision(cm, l);
    r.recall[l] = class_recall(cm, l);
  }
  r.seed = seed;
  return r;
}

std::optional<ReportFormat> parse_report_format(std::string_view s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  return std::nullopt;
}

std::string format_percent(std::optional<double> v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", *v * 100.0);
  return buf;
}

namespace {

json optional_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

std::string emit_report(const MetricsReport& report, ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::ostringstream os;
    os << "metric,label,value\n";
    if (report.labels.empty() && report.grand_total == 0) return os.str();
    os << "accuracy,," << format_percent(report.accuracy) << '\n';
    for (const auto& l : report.labels) os << "precision," << l << ',' << format_percent(report.precision.at(l)) << '\n';
    for (const auto& l : report.labels) os << "recall," << l << ',' << format_percent(report.recall.at(l)) << '\n';
    return os.str();
  }

  json precision = json::object();
  json recall = json::object();
  for (const auto& l : report.labels) {
    precision[l] = optional_to_json(report.precision.at(l));
    recall[l] = optional_to_json(report.recall.at(l));
  }
  json doc = {{"orientation", "predicted-rows/true-columns"},
              {"labels", report.labels},
              {"accuracy", optional_to_json(report.accuracy)},
              {"precision", precision},
              {"recall", recall},
              {"grand_total", report.grand_total},
              {"correct", report.correct},
              {"seed", report.seed ? json(*report.seed) : json(nullptr)}};
  return doc.dump(2) + "\n";
}

MetricsReport parse_report_json(std::string_view text) {
  MetricsReport r;
  try {
    const json doc = json::parse(text);
    r.labels = doc.at("labels").get<std::vector<std::string>>();
    r.accuracy = optional_from_json(doc.at("accuracy"));
    for (const auto& l : r.labels) {
      r.precision[l] = optional_from_json(doc.at("precision").at(l));
      r.recall[l] = optional_from_json(doc.at("recall").at(l));
    }
    r.grand_total = doc.at("grand_total").get<std::uint64_t>();
    r.correct = doc.at("correct").get<std::uint64_t>();
    if (doc.contains("seed") && !doc.at("seed").is_null()) r.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ParseError("<report>", 0, e.what());
  }
  return r;
}

void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm) {
  out << "predicted\\true";
  for (const auto& l : cm.labels()) out << ',' << l;
  out << '\n';
  for (std::size_t p = 0; p < cm.labels().size(); ++p) {
    out << cm.labels()[p];
    for (std::size_t t = 0; t < cm.labels().size(); ++t) out << ',' << cm.at(p, t);
    out << '\n';
  }
}

}  // namespace adl
