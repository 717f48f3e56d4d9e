#include "adl/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "adl/activity_model.hpp"
#include "adl/affect.hpp"
#include "adl/config.hpp"
#include "adl/csv.hpp"
#include "adl/error.hpp"
#include "adl/evaluation.hpp"
#include "adl/ingestion.hpp"
#include "adl/kernels.hpp"
#include "adl/recognition.hpp"
#include "adl/recommender.hpp"
#include "adl/temporal.hpp"
#include "json.hpp"

namespace adl {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kReferenceAccuracy = 0.7312;

struct Options {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> sets;  // key=value
  std::map<std::string, std::string> flags;
  std::string definitions;
  std::string input;
  std::string model;
  std::string features;
  std::string predictions;
  std::string format = "csv";
};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto log = std::make_shared<spdlog::logger>("adl-engine", sink);
  log->set_pattern("[%l] %v");
  log->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("ADL_ENGINE_LOG")) {
    // from_str maps unknown names to off; keep the default instead
    const auto level = spdlog::level::from_str(env);
    if (level != spdlog::level::off || std::string_view(env) == "off") log->set_level(level);
  }
  return log;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

RunConfig resolve_config(const Options& o) {
  RunConfig c = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  for (const auto& [key, value] : o.flags) apply_override(c, key, value);
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw RangeError(kv, "override must be key=value");
    apply_override(c, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.seed) c.seed = *o.seed;
  if (!o.out_dir.empty()) c.output_dir = o.out_dir;
  if (!o.definitions.empty()) c.definitions = o.definitions;
  validate_config(c);
  return c;
}

DefinitionSet definitions_for(const RunConfig& c) {
  if (c.definitions.empty()) throw Error("no definition file: pass --config or --definitions");
  return load_definitions(c.definitions);
}

fs::path input_or(const Options& o, const RunConfig& c, const char* default_name) {
  return o.input.empty() ? c.output_dir / default_name : fs::path(o.input);
}

// ---- stage files -----------------------------------------------------------

using Scored = std::pair<OccurrenceRecord, OccurrenceVerdict>;

void write_verdicts(std::ostream& out, std::span<const Scored> rows) {
  out << "activity,start,end,score,completed,observed_atomics,satisfied_contexts\n";
  for (const auto& [r, v] : rows) {
    out << r.activity << ',' << format_iso8601(r.start) << ',' << format_iso8601(r.end) << ','
        << csv::format_double(v.score) << ',' << (v.completed ? "true" : "false") << ','
        << csv::join_ids(r.observed_atomics) << ',' << csv::join_ids(r.satisfied_contexts) << '\n';
  }
}

struct VerdictRow {
  Scored scored;
  std::optional<Emotion> emotion;
  std::optional<UxLabel> ux;
};

// Reads verdict CSV, and the emotion/ux columns when present.
std::vector<VerdictRow> read_verdicts(const fs::path& path, const DefinitionSet& defs) {
  auto in = open_input(path);
  const std::string src = path.string();
  std::vector<VerdictRow> rows;
  std::string line;
  std::size_t line_no = 0;
  if (!csv::next_line(in, line, line_no)) return rows;
  const csv::Header h(csv::split(line));
  const int c_act = h.index("activity"), c_start = h.index("start"), c_end = h.index("end"),
            c_score = h.index("score"), c_done = h.index("completed"), c_at = h.index("observed_atomics"),
            c_ct = h.index("satisfied_contexts"), c_emo = h.index("emotion"), c_ux = h.index("ux");
  if (c_act < 0 || c_start < 0 || c_end < 0 || c_score < 0 || c_done < 0)
    throw ParseError(src, line_no, "header must contain activity,start,end,score,completed");

  while (csv::next_line(in, line, line_no)) {
    const auto cols = csv::split(line);
    if (cols.size() != h.size()) throw ParseError(src, line_no, "column count does not match header");
    const auto& def = defs.at(cols[c_act]);
    VerdictRow row;
    auto& [rec, verdict] = row.scored;
    rec.activity = def.name;
    const auto start = parse_iso8601(cols[c_start]);
    const auto end = parse_iso8601(cols[c_end]);
    if (!start || !end) throw ParseError(src, line_no, "unparseable timestamp");
    rec.start = *start;
    rec.end = *end;
    try {
      rec.observed_atomics = c_at >= 0 ? csv::parse_ids(cols[c_at]) : def.atomic_ids();
      rec.satisfied_contexts = c_ct >= 0 ? csv::parse_ids(cols[c_ct]) : def.context_ids();
      verdict.score = csv::parse_double(cols[c_score]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(src, line_no, e.what());
    }
    if (cols[c_done] != "true" && cols[c_done] != "false") throw ParseError(src, line_no, "completed must be true|false");
    verdict.completed = cols[c_done] == "true";
    verdict.threshold = def.threshold;
    if (c_emo >= 0) {
      row.emotion = parse_emotion(cols[c_emo]);
      if (!row.emotion) throw ParseError(src, line_no, "bad emotion \"" + cols[c_emo] + "\"");
    }
    if (c_ux >= 0) {
      row.ux = parse_ux(cols[c_ux]);
      if (!row.ux) throw ParseError(src, line_no, "bad ux \"" + cols[c_ux] + "\"");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_annotated(std::ostream& out, std::span<const AffectAnnotatedOccurrence> rows) {
  out << "activity,start,end,score,completed,observed_atomics,satisfied_contexts,emotion,ux\n";
  for (const auto& a : rows) {
    const auto& r = a.occurrence;
    out << r.activity << ',' << format_iso8601(r.start) << ',' << format_iso8601(r.end) << ','
        << csv::format_double(a.verdict.score) << ',' << (a.verdict.completed ? "true" : "false") << ','
        << csv::join_ids(r.observed_atomics) << ',' << csv::join_ids(r.satisfied_contexts) << ','
        << to_string(a.emotion) << ',' << to_string(a.ux) << '\n';
  }
}

std::vector<AffectAnnotatedOccurrence> read_annotated(const fs::path& path, const DefinitionSet& defs) {
  std::vector<AffectAnnotatedOccurrence> out;
  for (auto& row : read_verdicts(path, defs)) {
    if (!row.emotion || !row.ux) throw ParseError(path.string(), 0, "annotated file needs emotion and ux columns");
    out.push_back({std::move(row.scored.first), row.scored.second, *row.emotion, *row.ux});
  }
  return out;
}

std::vector<UxExample> read_ux_examples(const fs::path& path) {
  auto in = open_input(path);
  const std::string src = path.string();
  std::vector<UxExample> out;
  std::string line;
  std::size_t line_no = 0;
  if (!csv::next_line(in, line, line_no)) return out;
  const csv::Header h(csv::split(line));
  const int c_emo = h.index("emotion"), c_act = h.index("activity"), c_b = h.index("bucket"), c_ux = h.index("ux");
  if (c_emo < 0 || c_act < 0 || c_b < 0 || c_ux < 0)
    throw ParseError(src, line_no, "header must contain emotion,activity,bucket,ux");
  while (csv::next_line(in, line, line_no)) {
    const auto cols = csv::split(line);
    if (cols.size() != h.size()) throw ParseError(src, line_no, "column count does not match header");
    const auto emo = parse_emotion(cols[c_emo]);
    const auto ux = parse_ux(cols[c_ux]);
    if (!emo || !ux) throw ParseError(src, line_no, "bad emotion or ux label");
    int bucket = 0;
    try {
      bucket = static_cast<int>(csv::parse_double(cols[c_b]));
    } catch (const std::invalid_argument& e) {
      throw ParseError(src, line_no, e.what());
    }
    out.push_back({{*emo, cols[c_act], bucket}, *ux});
  }
  return out;
}

struct FeatureRow {
  FeatureVector features;
  std::string truth;  // may be empty
};

std::vector<FeatureRow> read_feature_rows(const fs::path& path, int bucket_width) {
  auto in = open_input(path);
  const std::string src = path.string();
  std::vector<FeatureRow> out;
  std::string line;
  std::size_t line_no = 0;
  if (!csv::next_line(in, line, line_no)) return out;
  const csv::Header h(csv::split(line));
  const int c_b = h.index("time_bucket"), c_prev = h.index("previous_activity"), c_emo = h.index("emotion"),
            c_ux = h.index("ux"), c_day = h.index("day_kind"), c_truth = h.index("activity");
  if (c_b < 0 || c_prev < 0 || c_emo < 0 || c_ux < 0 || c_day < 0)
    throw ParseError(src, line_no, "header must contain time_bucket,previous_activity,emotion,ux,day_kind");
  while (csv::next_line(in, line, line_no)) {
    const auto cols = csv::split(line);
    if (cols.size() != h.size()) throw ParseError(src, line_no, "column count does not match header");
    FeatureRow row;
    double bucket = 0;
    try {
      bucket = csv::parse_double(cols[c_b]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(src, line_no, e.what());
    }
    if (bucket < 0 || bucket >= kMinutesPerDay / bucket_width || bucket != static_cast<int>(bucket))
      throw ParseError(src, line_no, "time_bucket out of range");
    row.features.time_bucket = static_cast<int>(bucket);
    if (!cols[c_prev].empty() && cols[c_prev] != kNoActivity) row.features.previous_activity = cols[c_prev];
    const auto emo = parse_emotion(cols[c_emo]);
    const auto ux = parse_ux(cols[c_ux]);
    const auto day = parse_day_kind(cols[c_day]);
    if (!emo || !ux || !day) throw ParseError(src, line_no, "bad emotion, ux or day_kind");
    row.features.emotion = *emo;
    row.features.ux = *ux;
    row.features.day_kind = *day;
    if (c_truth >= 0) row.truth = cols[c_truth];
    out.push_back(std::move(row));
  }
  return out;
}

void write_feature_rows(std::ostream& out, std::span<const LabeledTransition> rows) {
  out << "time_bucket,previous_activity,emotion,ux,day_kind,activity\n";
  for (const auto& t : rows) {
    const auto v = feature_values(t.features);
    out << v[0] << ',' << v[1] << ',' << v[2] << ',' << v[3] << ',' << v[4] << ',' << t.next_activity << '\n';
  }
}

// activity,prediction,confidence(<name>)... over every name.
void write_recommendations(std::ostream& out, const std::vector<std::string>& names,
                           std::span<const std::string> truths, std::span<const ConfidenceVector> confidences) {
  out << "activity,prediction";
  for (const auto& n : names) out << ",confidence(" << n << ')';
  out << '\n';
  for (std::size_t i = 0; i < confidences.size(); ++i) {
    const auto full = expand_confidences(confidences[i], names);
    out << truths[i] << ',' << recommend(confidences[i]);
    for (const auto& n : names) out << ',' << csv::format_double(full.at(n));
    out << '\n';
  }
}

struct PredictionFile {
  std::vector<std::string> labels;
  std::vector<Prediction> pairs;
};

PredictionFile read_predictions(const fs::path& path) {
  auto in = open_input(path);
  const std::string src = path.string();
  PredictionFile pf;
  std::string line;
  std::size_t line_no = 0;
  if (!csv::next_line(in, line, line_no)) throw ParseError(src, 0, "empty predictions file");
  const auto cols = csv::split(line);
  const csv::Header h(cols);
  const int c_truth = h.index("activity"), c_pred = h.index("prediction");
  if (c_truth < 0 || c_pred < 0) throw ParseError(src, line_no, "header must contain activity,prediction");
  for (const auto& c : cols) {
    if (c.starts_with("confidence(") && c.ends_with(")")) pf.labels.push_back(c.substr(11, c.size() - 12));
  }
  std::sort(pf.labels.begin(), pf.labels.end());
  while (csv::next_line(in, line, line_no)) {
    const auto row = csv::split(line);
    if (row.size() != h.size()) throw ParseError(src, line_no, "column count does not match header");
    if (row[c_truth].empty()) throw ParseError(src, line_no, "row has no true activity");
    pf.pairs.push_back({row[c_pred], row[c_truth]});
  }
  return pf;
}

// ---- stages ----------------------------------------------------------------

std::vector<OccurrenceRecord> stage_ingest(const RunConfig& c, const DefinitionSet& defs, spdlog::logger& log) {
  if (c.datasets.empty()) throw Error("config lists no datasets");
  std::vector<std::vector<OccurrenceRecord>> parts(c.datasets.size());
  std::vector<std::exception_ptr> errors(c.datasets.size());
  const long n = static_cast<long>(c.datasets.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      const auto& d = c.datasets[i];
      auto in = open_input(d.path);
      if (d.kind == DatasetSpec::Kind::adl_log) {
        parts[i] = parse_adl_log(in, defs, d.path.string());
      } else {
        const auto samples = parse_power_trace(in, d.channel, d.path.string());
        parts[i] = segment_occurrences(binarize(samples, c.on_watts, c.gap_tolerance), c.channel_map, defs);
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<OccurrenceRecord> all;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    log.info("ingested {} occurrences from {}", parts[i].size(), c.datasets[i].path.string());
    all.insert(all.end(), parts[i].begin(), parts[i].end());
  }
  sort_occurrences(all);
  return all;
}

std::vector<Scored> stage_recognize(const RunConfig& c, const DefinitionSet& defs,
                                    std::span<const OccurrenceRecord> records) {
  std::vector<Observation> obs;
  obs.reserve(records.size());
  for (const auto& r : records) obs.push_back(observation_of(r));
  const auto verdicts = kernels::score_batch(defs, obs, c.lambda);
  std::vector<Scored> out;
  out.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) out.emplace_back(records[i], verdicts[i]);
  return out;
}

UxModel ux_model_for(const RunConfig& c) {
  const AffectParams params{c.history_window, c.epsilon};
  std::vector<UxExample> examples;
  if (c.ux_examples) examples = read_ux_examples(*c.ux_examples);
  return train_ux_mapper(examples, params, c.bucket_width);
}

std::vector<AffectAnnotatedOccurrence> stage_affect(const RunConfig& c, const DefinitionSet& defs,
                                                    std::span<const Scored> scored, const UxModel& ux) {
  return annotate_affect(defs, scored, ux, AffectParams{c.history_window, c.epsilon}, c.bucket_width);
}

struct ClusterOutput {
  ClusterReport report;
  std::vector<LabeledInstant> instants;
  std::vector<std::string> knn;  // leave-one-out labels, empty when too few instants
};

ClusterOutput stage_cluster(const RunConfig& c, std::span<const OccurrenceRecord> records) {
  ClusterOutput out;
  out.report = cluster_report(records);
  out.instants = labeled_instants(out.report);
  if (out.instants.size() > c.k) out.knn = kernels::knn_leave_one_out(out.instants, c.k);
  return out;
}

void write_cluster_outputs(const fs::path& dir, const ClusterOutput& co) {
  std::ostringstream clusters;
  write_cluster_csv(clusters, co.report);
  write_file(dir / "clusters.csv", clusters.str());
  std::ostringstream knn;
  knn << "activity,day_index,minute_of_day,knn_label\n";
  for (std::size_t i = 0; i < co.knn.size(); ++i) {
    const auto& li = co.instants[i];
    knn << li.activity << ',' << li.instant.day_index << ',' << li.instant.minute_of_day << ',' << co.knn[i] << '\n';
  }
  write_file(dir / "knn.csv", knn.str());
}

Split<LabeledTransition> split_transitions(const RunConfig& c, std::span<const LabeledTransition> transitions) {
  return c.split == SplitKind::chronological ? split_chronological(transitions, c.train_fraction)
                                             : split_random(transitions, c.train_fraction, c.seed);
}

struct EvaluationOutput {
  std::vector<ConfidenceVector> confidences;
  std::vector<std::string> truths;
  ConfusionMatrix confusion;
  MetricsReport report;
  std::optional<double> majority_baseline;
};

EvaluationOutput stage_evaluate(const RunConfig& c, const DefinitionSet& defs, const RecommenderModel& model,
                                const Split<LabeledTransition>& split) {
  EvaluationOutput out;
  std::vector<FeatureVector> features;
  for (const auto& t : split.test) {
    features.push_back(t.features);
    out.truths.push_back(t.next_activity);
  }
  out.confidences = kernels::predict_batch(model, features);
  std::vector<Prediction> pairs;
  for (std::size_t i = 0; i < features.size(); ++i) pairs.push_back({recommend(out.confidences[i]), out.truths[i]});
  out.confusion = build_confusion(pairs, defs.names());
  out.report = make_report(out.confusion, c.seed);

  if (!split.test.empty() && !split.train.empty()) {
    std::map<std::string, std::size_t> freq;
    for (const auto& t : split.train) ++freq[t.next_activity];
    const auto majority = std::max_element(freq.begin(), freq.end(), [](const auto& a, const auto& b) {
                            return a.second < b.second;
                          })->first;
    const auto hits = std::count_if(split.test.begin(), split.test.end(),
                                    [&](const auto& t) { return t.next_activity == majority; });
    out.majority_baseline = static_cast<double>(hits) / static_cast<double>(split.test.size());
  }
  return out;
}

void write_evaluation(const fs::path& dir, const DefinitionSet& defs, const EvaluationOutput& ev) {
  std::ostringstream preds;
  write_recommendations(preds, defs.names(), ev.truths, ev.confidences);
  write_file(dir / "predictions.csv", preds.str());
  std::ostringstream cm;
  write_confusion_csv(cm, ev.confusion);
  write_file(dir / "confusion.csv", cm.str());
  write_file(dir / "metrics.csv", emit_report(ev.report, ReportFormat::csv));
  write_file(dir / "metrics.json", emit_report(ev.report, ReportFormat::json));
}

// ---- commands --------------------------------------------------------------

int cmd_validate(const Options& o, std::ostream& out) {
  const RunConfig c = resolve_config(o);
  if (c.definitions.empty()) throw Error("no definition file: pass --config or --definitions");
  const auto defs = parse_definition_document(read_file(c.definitions), c.definitions.string());
  std::size_t passed = 0;
  std::size_t total = 0;
  for (const auto& d : defs) {
    const auto report = validate_definition(d);
    const auto weights_bad = std::count_if(report.begin(), report.end(), [](const Violation& v) {
      return v.kind == "weight-sum" || v.kind == "weight-range";
    });
    const auto structure_bad = static_cast<std::ptrdiff_t>(report.size()) - weights_bad;
    out << (weights_bad ? "FAIL" : "ok  ") << "  " << d.name << ": weights\n";
    out << (structure_bad ? "FAIL" : "ok  ") << "  " << d.name << ": structure\n";
    for (const auto& v : report) out << "        " << v.to_string() << '\n';
    passed += (weights_bad == 0) + (structure_bad == 0);
    total += 2;
  }
  out << passed << " of " << total << " checks passed\n";
  return passed == total ? 0 : 1;
}

int cmd_ingest(const Options& o, std::ostream& out, spdlog::logger& log) {
  const RunConfig c = resolve_config(o);
  const auto defs = definitions_for(c);
  const auto records = stage_ingest(c, defs, log);
  std::ostringstream os;
  write_adl_log(os, records);
  write_file(c.output_dir / "occurrences.csv", os.str());
  out << records.size() << " occurrences -> " << (c.output_dir / "occurrences.csv").string() << '\n';
  return 0;
}

int cmd_recognize(const Options& o, std::ostream& out) {
  const RunConfig c = resolve_config(o);
  const auto defs = definitions_for(c);
  auto in = open_input(input_or(o, c, "occurrences.csv"));
  const auto records = parse_adl_log(in, defs, input_or(o, c, "occurrences.csv").string());
  const auto scored = stage_recognize(c, defs, records);
  std::ostringstream os;
  write_verdicts(os, scored);
  write_file(c.output_dir / "verdicts.csv", os.str());
  const auto completed = std::count_if(scored.begin(), scored.end(), [](const Scored& s) { return s.second.completed; });
  out << scored.size() << " verdicts (" << completed << " completed) -> " << (c.output_dir / "verdicts.csv").string()
      << '\n';
  return 0;
}

int cmd_affect(const Options& o, std::ostream& out) {
  const RunConfig c = resolve_config(o);
  const auto defs = definitions_for(c);
  std::vector<Scored> scored;
  for (auto& row : read_verdicts(input_or(o, c, "verdicts.csv"), defs)) scored.push_back(std::move(row.scored));
  const auto ux = ux_model_for(c);
  const auto annotated = stage_affect(c, defs, scored, ux);
  std::ostringstream os;
  write_annotated(os, annotated);
  write_file(c.output_dir / "annotated.csv", os.str());
  write_file(c.output_dir / "ux_model.json", ux.to_json());
  out << annotated.size() << " annotated occurrences -> " << (c.output_dir / "annotated.csv").string() << '\n';
  return 0;
}

int cmd_cluster(const Options& o, std::ostream& out) {
  const RunConfig c = resolve_config(o);
  const auto defs = definitions_for(c);
  auto in = open_input(input_or(o, c, "occurrences.csv"));
  const auto records = parse_adl_log(in, defs);
  const auto co = stage_cluster(c, records);
  write_cluster_outputs(c.output_dir, co);
  out << co.report.size() << " activity groups -> " << (c.output_dir / "clusters.csv").string() << '\n';
  return 0;
}

int cmd_train(const Options& o, std::ostream& out) {
  const RunConfig c = resolve_config(o);
  const auto defs = definitions_for(c);
  const auto annotated = read_annotated(input_or(o, c, "annotated.csv"), defs);
  const auto transitions = extract_transitions(annotated, c.bucket_width);
  const auto split = split_transitions(c, transitions);
  const auto model = train(split.train, c.alpha, c.bucket_width);
  write_file(c.output_dir / "model.json", model.to_json());
  out << "trained on " << split.train.size() << " of " << transitions.size() << " transitions -> "
      << (c.output_dir / "model.json").string() << '\n';
  return 0;
}

int cmd_recommend(const Options& o, std::ostream& out) {
  const RunConfig c = resolve_config(o);
  const fs::path model_path = o.model.empty() ? c.output_dir / "model.json" : fs::path(o.model);
  const auto model = RecommenderModel::from_json(read_file(model_path));
  if (o.features.empty()) throw Error("recommend needs --features <csv>");
  const auto rows = read_feature_rows(o.features, model.bucket_width);
  std::vector<FeatureVector> features;
  std::vector<std::string> truths;
  for (const auto& r : rows) {
    features.push_back(r.features);
    truths.push_back(r.truth);
  }
  const auto confidences = kernels::predict_batch(model, features);
  std::vector<std::string> names = model.activities;
  if (!c.definitions.empty()) names = load_definitions(c.definitions).names();
  std::ostringstream os;
  write_recommendations(os, names, truths, confidences);
  write_file(c.output_dir / "recommendations.csv", os.str());
  out << os.str();
  return 0;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  const RunConfig c = resolve_config(o);
  auto fmt = parse_report_format(o.format);
  if (!fmt) throw Error("unsupported report format \"" + o.format + "\"");
  if (!o.predictions.empty()) {
    const auto pf = read_predictions(o.predictions);
    const auto cm = build_confusion(pf.pairs, pf.labels);
    const auto report = make_report(cm, c.seed);
    std::ostringstream cm_csv;
    write_confusion_csv(cm_csv, cm);
    write_file(c.output_dir / "confusion.csv", cm_csv.str());
    write_file(c.output_dir / "metrics.csv", emit_report(report, ReportFormat::csv));
    write_file(c.output_dir / "metrics.json", emit_report(report, ReportFormat::json));
    out << emit_report(report, *fmt);
    return 0;
  }
  const auto defs = definitions_for(c);
  const auto annotated = read_annotated(input_or(o, c, "annotated.csv"), defs);
  const fs::path model_path = o.model.empty() ? c.output_dir / "model.json" : fs::path(o.model);
  const auto model = RecommenderModel::from_json(read_file(model_path));
  const auto transitions = extract_transitions(annotated, c.bucket_width);
  const auto split = split_transitions(c, transitions);
  const auto ev = stage_evaluate(c, defs, model, split);
  write_evaluation(c.output_dir, defs, ev);
  out << emit_report(ev.report, *fmt);
  return 0;
}

int cmd_pipeline(const Options& o, std::ostream& out, spdlog::logger& log) {
  const RunConfig c = resolve_config(o);
  const auto defs = definitions_for(c);
  const fs::path& dir = c.output_dir;

  const auto records = stage_ingest(c, defs, log);
  {
    std::ostringstream os;
    write_adl_log(os, records);
    write_file(dir / "occurrences.csv", os.str());
  }
  const auto scored = stage_recognize(c, defs, records);
  {
    std::ostringstream os;
    write_verdicts(os, scored);
    write_file(dir / "verdicts.csv", os.str());
  }
  const auto ux = ux_model_for(c);
  const auto annotated = stage_affect(c, defs, scored, ux);
  {
    std::ostringstream os;
    write_annotated(os, annotated);
    write_file(dir / "annotated.csv", os.str());
    write_file(dir / "ux_model.json", ux.to_json());
  }
  write_cluster_outputs(dir, stage_cluster(c, records));

  const auto transitions = extract_transitions(annotated, c.bucket_width);
  const auto split = split_transitions(c, transitions);
  if (split.train.empty()) throw Error("too few occurrences to train on");
  const auto model = train(split.train, c.alpha, c.bucket_width);
  write_file(dir / "model.json", model.to_json());
  {
    std::ostringstream os;
    write_feature_rows(os, split.test);
    write_file(dir / "test_features.csv", os.str());
  }
  const auto ev = stage_evaluate(c, defs, model, split);
  write_evaluation(dir, defs, ev);

  const auto completed = std::count_if(scored.begin(), scored.end(), [](const Scored& s) { return s.second.completed; });
  const auto positive = std::count_if(annotated.begin(), annotated.end(),
                                      [](const auto& a) { return a.emotion == Emotion::positive; });
  json summary = {{"seed", c.seed},
                  {"split", c.split == SplitKind::chronological ? "chronological" : "random"},
                  {"train_fraction", c.train_fraction},
                  {"occurrences", records.size()},
                  {"completed", completed},
                  {"positive_emotion", positive},
                  {"transitions", transitions.size()},
                  {"train", split.train.size()},
                  {"test", split.test.size()},
                  {"accuracy", ev.report.accuracy ? json(*ev.report.accuracy) : json(nullptr)},
                  {"majority_baseline", ev.majority_baseline ? json(*ev.majority_baseline) : json(nullptr)},
                  {"reference_accuracy", kReferenceAccuracy}};
  write_file(dir / "summary.json", summary.dump(2) + "\n");

  out << "occurrences " << records.size() << ", transitions " << transitions.size() << " (train "
      << split.train.size() << ", test " << split.test.size() << ")\n";
  out << "accuracy " << format_percent(ev.report.accuracy) << ", majority baseline "
      << format_percent(ev.majority_baseline) << ", reference " << format_percent(kReferenceAccuracy) << '\n';
  out << "artifacts in " << dir.string() << '\n';
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto log = make_logger(err);
  CLI::App app{"Weighted-threshold activity recognition, affect inference and next-activity recommendation",
               "adl-engine"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "Run configuration (JSON)");
    sub->add_option("--out", o.out_dir, "Output directory");
    sub->add_option("--seed", o.seed, "Seed for randomized splits");
    sub->add_option("--set", o.sets, "Override a config key: key=value");
    sub->add_option("--definitions", o.definitions, "Definition file (overrides the config)");
    for (const auto& key : override_keys()) {
      if (key == "seed") continue;
      sub->add_option_function<std::string>(
          "--" + key, [&o, key](const std::string& v) { o.flags[key] = v; }, "Override " + key);
    }
  };

  auto* validate = app.add_subcommand("validate", "Validate a definition file");
  common(validate);
  validate->add_option("file", o.definitions, "Definition file");
  auto* ingest = app.add_subcommand("ingest", "Parse datasets into occurrences.csv");
  common(ingest);
  auto* recognize = app.add_subcommand("recognize", "Score occurrences into verdicts.csv");
  common(recognize);
  recognize->add_option("--input", o.input, "Occurrence CSV");
  auto* affect = app.add_subcommand("affect", "Add emotion and UX columns: annotated.csv");
  common(affect);
  affect->add_option("--input", o.input, "Verdict CSV");
  auto* cluster = app.add_subcommand("cluster", "Time-of-day groupings: clusters.csv, knn.csv");
  common(cluster);
  cluster->add_option("--input", o.input, "Occurrence CSV");
  auto* train_cmd = app.add_subcommand("train", "Train the recommender: model.json");
  common(train_cmd);
  train_cmd->add_option("--input", o.input, "Annotated CSV");
  auto* recommend_cmd = app.add_subcommand("recommend", "Confidence vectors for feature rows");
  common(recommend_cmd);
  recommend_cmd->add_option("--model", o.model, "Model JSON");
  recommend_cmd->add_option("--features", o.features, "Feature CSV");
  auto* evaluate = app.add_subcommand("evaluate", "Confusion matrix and metrics");
  common(evaluate);
  evaluate->add_option("--input", o.input, "Annotated CSV");
  evaluate->add_option("--model", o.model, "Model JSON");
  evaluate->add_option("--predictions", o.predictions, "Saved predictions CSV");
  evaluate->add_option("--format", o.format, "Report format printed to stdout: csv|json");
  auto* pipeline = app.add_subcommand("pipeline", "ingest -> recognize -> affect -> cluster -> train -> evaluate");
  common(pipeline);

  if (!args.empty() && !args.front().starts_with('-') && app.get_subcommand_no_throw(args.front()) == nullptr) {
    err << "error: unknown subcommand \"" << args.front() << "\"\n\n" << app.help();
    return 2;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return e.get_exit_code() == 0 ? 2 : e.get_exit_code();
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*ingest) return cmd_ingest(o, out, *log);
    if (*recognize) return cmd_recognize(o, out);
    if (*affect) return cmd_affect(o, out);
    if (*cluster) return cmd_cluster(o, out);
    if (*train_cmd) return cmd_train(o, out);
    if (*recommend_cmd) return cmd_recommend(o, out);
    if (*evaluate) return cmd_evaluate(o, out);
    if (*pipeline) return cmd_pipeline(o, out, *log);
  } catch (const std::exception& e) {
    err << "adl-engine: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace adl
