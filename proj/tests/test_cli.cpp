#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "adl/cli.hpp"
#include "doctest.h"
#include "fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("adl-cli-test-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

struct Run {
  int rc;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int rc = adl::run_command(args, out, err);
  return {rc, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string adl_config() { return (fixtures::source_dir() / "configs" / "adl.json").string(); }

}  // namespace

TEST_CASE("unknown or missing subcommand prints usage and fails") {
  auto r = run({"frobnicate"});
  CHECK(r.rc != 0);
  CHECK(r.err.find("unknown subcommand") != std::string::npos);
  CHECK(r.err.find("pipeline") != std::string::npos);
  CHECK(run({}).rc != 0);
  CHECK(run({"--help"}).rc == 0);
}

TEST_CASE("validate reports the check count for both definition files") {
  for (const auto* f : {"adl.json", "ukdale.json"}) {
    const auto r = run({"validate", (fixtures::source_dir() / "definitions" / f).string()});
    CHECK(r.rc == 0);
    CHECK(r.out.find("14 of 14 checks passed") != std::string::npos);
  }
}

TEST_CASE("validate fails on a broken definition file") {
  TempDir tmp;
  auto text = slurp(fixtures::source_dir() / "definitions" / "adl.json");
  text.replace(text.find("\"threshold\": 0.68"), 17, "\"threshold\": 1.68");
  std::ofstream(tmp.path / "bad.json") << text;
  const auto r = run({"validate", (tmp.path / "bad.json").string()});
  CHECK(r.rc != 0);
  CHECK(r.out.find("threshold-range") != std::string::npos);
}

TEST_CASE("bad configuration is reported with the key") {
  TempDir tmp;
  std::ofstream(tmp.path / "c.json") << R"({"train_fraction": 1.5})";
  auto r = run({"pipeline", "--config", (tmp.path / "c.json").string()});
  CHECK(r.rc == 1);
  CHECK(r.err.find("train_fraction") != std::string::npos);
  r = run({"pipeline", "--config", adl_config(), "--k", "0", "--out", tmp.path.string()});
  CHECK(r.rc == 1);
  CHECK(r.err.find("k:") != std::string::npos);
  r = run({"pipeline", "--config", (tmp.path / "missing.json").string()});
  CHECK(r.rc == 1);
}

TEST_CASE("pipeline on the bundled sample writes every artifact") {
  TempDir tmp;
  const auto r = run({"pipeline", "--config", adl_config(), "--out", tmp.path.string()});
  REQUIRE_MESSAGE(r.rc == 0, r.err);
  for (const auto* f : {"occurrences.csv", "verdicts.csv", "annotated.csv", "ux_model.json", "clusters.csv",
                        "knn.csv", "model.json", "test_features.csv", "predictions.csv", "confusion.csv",
                        "metrics.csv", "metrics.json", "summary.json"})
    CHECK_MESSAGE(fs::exists(tmp.path / f), f);
  CHECK(slurp(tmp.path / "metrics.csv").rfind("metric,label,value\naccuracy,,", 0) == 0);
  CHECK(slurp(tmp.path / "predictions.csv").rfind("activity,prediction,confidence(", 0) == 0);
}

TEST_CASE("two pipeline runs are byte-identical") {
  TempDir a, b;
  REQUIRE(run({"pipeline", "--config", adl_config(), "--out", a.path.string()}).rc == 0);
  REQUIRE(run({"pipeline", "--config", adl_config(), "--out", b.path.string()}).rc == 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(a.path)) {
    CHECK_MESSAGE(slurp(e.path()) == slurp(b.path / e.path().filename()), e.path().filename().string());
    ++files;
  }
  CHECK(files >= 13);
}

TEST_CASE("random split is governed by the seed flag") {
  TempDir a, b, c;
  const auto cfg = adl_config();
  REQUIRE(run({"pipeline", "--config", cfg, "--split", "random", "--seed", "5", "--out", a.path.string()}).rc == 0);
  REQUIRE(run({"pipeline", "--config", cfg, "--split", "random", "--seed", "5", "--out", b.path.string()}).rc == 0);
  REQUIRE(run({"pipeline", "--config", cfg, "--split", "random", "--seed", "6", "--out", c.path.string()}).rc == 0);
  CHECK(slurp(a.path / "predictions.csv") == slurp(b.path / "predictions.csv"));
  CHECK(slurp(a.path / "test_features.csv") != slurp(c.path / "test_features.csv"));
  CHECK(slurp(a.path / "metrics.json").find("\"seed\": 5") != std::string::npos);
}

TEST_CASE("stages re-run from saved artifacts reproduce the pipeline") {
  TempDir full, staged, eval;
  const auto cfg = adl_config();
  REQUIRE(run({"pipeline", "--config", cfg, "--out", full.path.string()}).rc == 0);
  const auto out = staged.path.string();
  REQUIRE(run({"ingest", "--config", cfg, "--out", out}).rc == 0);
  REQUIRE(run({"recognize", "--config", cfg, "--out", out}).rc == 0);
  REQUIRE(run({"affect", "--config", cfg, "--out", out}).rc == 0);
  REQUIRE(run({"cluster", "--config", cfg, "--out", out}).rc == 0);
  REQUIRE(run({"train", "--config", cfg, "--out", out}).rc == 0);
  const auto ev = run({"evaluate", "--config", cfg, "--out", out});
  REQUIRE_MESSAGE(ev.rc == 0, ev.err);
  for (const auto* f : {"occurrences.csv", "verdicts.csv", "annotated.csv", "clusters.csv", "knn.csv", "model.json",
                        "predictions.csv", "confusion.csv", "metrics.csv", "metrics.json"})
    CHECK_MESSAGE(slurp(full.path / f) == slurp(staged.path / f), f);

  const auto saved = run({"evaluate", "--config", cfg, "--predictions", (full.path / "predictions.csv").string(),
                          "--out", eval.path.string()});
  REQUIRE_MESSAGE(saved.rc == 0, saved.err);
  CHECK(saved.out == slurp(full.path / "metrics.csv"));
  CHECK(slurp(eval.path / "metrics.json") == slurp(full.path / "metrics.json"));
  CHECK(slurp(eval.path / "confusion.csv") == slurp(full.path / "confusion.csv"));
}

TEST_CASE("recommend emits one row per feature row") {
  TempDir tmp;
  REQUIRE(run({"pipeline", "--config", adl_config(), "--out", tmp.path.string()}).rc == 0);
  const auto r = run({"recommend", "--config", adl_config(), "--out", tmp.path.string(), "--features",
                      (tmp.path / "test_features.csv").string()});
  REQUIRE_MESSAGE(r.rc == 0, r.err);
  CHECK(r.out == slurp(tmp.path / "predictions.csv"));
  CHECK(run({"recommend", "--config", adl_config(), "--out", tmp.path.string()}).rc == 1);
}

TEST_CASE("power-trace pipeline runs and flags override the config") {
  TempDir tmp;
  const auto cfg = (fixtures::source_dir() / "configs" / "ukdale.json").string();
  const auto r = run({"ingest", "--config", cfg, "--out", tmp.path.string()});
  REQUIRE_MESSAGE(r.rc == 0, r.err);
  CHECK(r.out.rfind("14 occurrences", 0) == 0);
  // no channel ever draws 5 kW
  const auto none = run({"ingest", "--config", cfg, "--out", tmp.path.string(), "--on_watts", "5000"});
  REQUIRE(none.rc == 0);
  CHECK(none.out.rfind("0 occurrences", 0) == 0);
  const auto set = run({"ingest", "--config", cfg, "--out", tmp.path.string(), "--set", "on_watts=5000"});
  CHECK(set.out.rfind("0 occurrences", 0) == 0);
}

TEST_CASE("configured ux examples override the default mapping") {
  TempDir tmp;
  {
    std::ofstream ux(tmp.path / "ux.csv");
    ux << "emotion,activity,bucket,ux\n";
    for (const auto& name : fixtures::adl_defs().names())
      for (int b = 0; b < 48; ++b) ux << "positive," << name << ',' << b << ",bad\n";
  }
  const auto src = fixtures::source_dir();
  std::ofstream(tmp.path / "c.json") << R"({"definitions": ")" << (src / "definitions" / "adl.json").string()
                                     << R"(", "ux_examples": "ux.csv", "datasets": [{"kind": "adl-log", "path": ")"
                                     << (src / "data" / "adl" / "adl_sample.csv").string() << R"("}]})";
  const auto r = run({"affect", "--config", (tmp.path / "c.json").string(), "--out", tmp.path.string(), "--input",
                      "/nonexistent"});
  CHECK(r.rc == 1);
  REQUIRE(run({"pipeline", "--config", (tmp.path / "c.json").string(), "--out", tmp.path.string()}).rc == 0);
  const auto annotated = slurp(tmp.path / "annotated.csv");
  CHECK(annotated.find(",good") == std::string::npos);
  CHECK(annotated.find("positive,bad") != std::string::npos);
  CHECK(slurp(tmp.path / "ux_model.json").find("\"bucket_width\"") != std::string::npos);
}
