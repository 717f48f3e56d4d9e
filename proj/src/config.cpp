#include "adl/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "adl/csv.hpp"
#include "adl/error.hpp"
#include "adl/timeutil.hpp"
#include "json.hpp"

namespace adl {

using nlohmann::json;

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return (path.is_absolute() || base.empty() ? path : base / path).lexically_normal();
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

const std::vector<std::string>& override_keys() {
  static const std::vector<std::string> keys = {"on_watts", "gap_tolerance", "lambda",         "history_window",
                                                "epsilon",  "bucket_width",  "k",              "alpha",
                                                "train_fraction", "split",   "seed"};
  return keys;
}

void apply_override(RunConfig& c, std::string_view key, std::string_view value) {
  const std::string k(key);
  auto number = [&]() {
    try {
      return csv::parse_double(value);
    } catch (const std::invalid_argument&) {
      throw RangeError(k, "expected a number, got \"" + std::string(value) + "\"");
    }
  };
  auto count = [&]() -> std::uint64_t {
    const auto text = csv::trim(value);
    std::uint64_t n = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec == std::errc() && end == text.data() + text.size()) return n;
    // JSON configs may spell integers as 3.0
    const double v = number();
    if (!(v >= 0 && v < 9007199254740992.0) || v != static_cast<double>(static_cast<std::uint64_t>(v)))
      throw RangeError(k, "expected a non-negative integer, got \"" + std::string(value) + "\"");
    return static_cast<std::uint64_t>(v);
  };

  if (key == "on_watts") {
    c.on_watts = number();
  } else if (key == "gap_tolerance") {
    c.gap_tolerance = count();
  } else if (key == "lambda") {
    c.lambda = number();
  } else if (key == "history_window") {
    c.history_window = count();
  } else if (key == "epsilon") {
    c.epsilon = number();
  } else if (key == "bucket_width") {
    const auto w = count();
    if (w > static_cast<std::uint64_t>(kMinutesPerDay)) throw RangeError(k, "must divide 1440");
    c.bucket_width = static_cast<int>(w);
  } else if (key == "k") {
    c.k = count();
  } else if (key == "alpha") {
    c.alpha = number();
  } else if (key == "train_fraction") {
    c.train_fraction = number();
  } else if (key == "split") {
    if (value == "chronological")
      c.split = SplitKind::chronological;
    else if (value == "random")
      c.split = SplitKind::random;
    else
      throw RangeError(k, "expected chronological or random");
  } else if (key == "seed") {
    c.seed = count();
  } else {
    throw RangeError(k, "unknown configuration key");
  }
}

void validate_config(const RunConfig& c) {
  if (!(c.on_watts > 0.0)) throw RangeError("on_watts", "must be > 0");
  if (!(c.lambda >= 0.0 && c.lambda <= 1.0)) throw RangeError("lambda", "must lie in [0,1]");
  if (c.history_window < 1) throw RangeError("history_window", "must be >= 1");
  if (!(c.epsilon >= 0.0)) throw RangeError("epsilon", "must be >= 0");
  if (c.bucket_width < 1 || c.bucket_width > 1440 || 1440 % c.bucket_width != 0)
    throw RangeError("bucket_width", "must divide 1440");
  if (c.k < 1) throw RangeError("k", "must be >= 1");
  if (!(c.alpha > 0.0)) throw RangeError("alpha", "must be > 0");
  if (!(c.train_fraction > 0.0 && c.train_fraction < 1.0)) throw RangeError("train_fraction", "must lie in (0,1)");
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig c;
  if (csv::trim(text).empty()) return c;

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("<config>", 0, e.what());
  }
  if (!doc.is_object()) throw ParseError("<config>", 0, "config must be a JSON object");

  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "definitions") {
        c.definitions = resolve(base_dir, value.get<std::string>());
      } else if (key == "output_dir") {
        c.output_dir = resolve(base_dir, value.get<std::string>());
      } else if (key == "ux_examples") {
        c.ux_examples = resolve(base_dir, value.get<std::string>());
      } else if (key == "channel_map") {
        for (const auto& [ch, act] : value.items()) c.channel_map[ch] = act.get<std::string>();
      } else if (key == "datasets") {
        for (const auto& d : value) {
          DatasetSpec spec;
          const auto kind = d.at("kind").get<std::string>();
          if (kind == "adl-log")
            spec.kind = DatasetSpec::Kind::adl_log;
          else if (kind == "power-trace")
            spec.kind = DatasetSpec::Kind::power_trace;
          else
            throw RangeError("datasets", "unknown dataset kind \"" + kind + "\"");
          spec.path = resolve(base_dir, d.at("path").get<std::string>());
          spec.channel = d.value("channel", std::string());
          if (spec.kind == DatasetSpec::Kind::power_trace && spec.channel.empty())
            throw RangeError("datasets", "power-trace dataset needs a channel");
          c.datasets.push_back(std::move(spec));
        }
      } else {
        apply_override(c, key, scalar_text(value));
      }
    }
  } catch (const json::exception& e) {
    throw ParseError("<config>", 0, e.what());
  }
  validate_config(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

}  // namespace adl
