#include "emonet/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "emonet/error.hpp"

namespace emonet {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw ConfigError(field + ": " + msg);
}

const json& require(const json& obj, const std::string& key, const std::string& field) {
  if (!obj.is_object() || !obj.contains(key)) fail(field + key, "missing required field");
  return obj[key];
}

std::string get_string(const json& v, const std::string& field) {
  if (!v.is_string()) fail(field, "expected a string");
  return v.get<std::string>();
}

Timestamp get_time(const json& v, const std::string& field) {
  try {
    return parse_timestamp(get_string(v, field));
  } catch (const DataError& e) {
    fail(field, e.what());
  }
}

std::vector<std::string> get_strings(const json& obj, const std::string& key,
                                     const std::string& field) {
  std::vector<std::string> out;
  if (!obj.contains(key)) return out;
  const auto& arr = obj[key];
  if (!arr.is_array()) fail(field + key, "expected an array of strings");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(get_string(arr[i], field + key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

bool valid_name(const std::string& name) {
  if (name.empty() || name == "." || name == "..") return false;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

WindowSpec parse_windows(const json& w, Interval period, const std::string& field) {
  const std::string scheme = get_string(require(w, "scheme", field), field + "scheme");
  try {
    if (scheme == "daily") return WindowSpec::daily(period);
    if (scheme == "weekly") return WindowSpec::weekly(period);
    if (scheme == "daily-split") {
      return WindowSpec::daily_split(period, get_time(require(w, "split", field), field + "split"));
    }
    if (scheme == "quarterly") {
      unsigned anchor = 1;
      if (w.contains("anchor_month")) {
        if (!w["anchor_month"].is_number_unsigned()) fail(field + "anchor_month", "expected 1..12");
        anchor = w["anchor_month"].get<unsigned>();
      }
      std::chrono::seconds offset{0};
      if (w.contains("utc_offset")) {
        try {
          offset = parse_utc_offset(get_string(w["utc_offset"], field + "utc_offset"));
        } catch (const DataError& e) {
          fail(field + "utc_offset", e.what());
        }
      }
      return WindowSpec::quarterly(period, anchor, offset);
    }
    if (scheme == "explicit") {
      const auto& arr = require(w, "intervals", field);
      if (!arr.is_array()) fail(field + "intervals", "expected an array of [start, end] pairs");
      std::vector<Interval> intervals;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string f = field + "intervals[" + std::to_string(i) + "]";
        if (!arr[i].is_array() || arr[i].size() != 2) fail(f, "expected [start, end]");
        intervals.push_back({get_time(arr[i][0], f + "[0]"), get_time(arr[i][1], f + "[1]")});
      }
      return WindowSpec::explicit_intervals(period, std::move(intervals));
    }
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    if (what.rfind(field, 0) == 0) throw;
    fail(field + "scheme", what);
  }
  fail(field + "scheme", "unknown scheme \"" + scheme +
                             "\" (expected daily, daily-split, weekly, quarterly or explicit)");
}

}  // namespace

const DatasetConfig& RunConfig::dataset(std::string_view name) const {
  for (const auto& d : datasets) {
    if (d.name == name) return d;
  }
  throw ConfigError("no dataset named \"" + std::string(name) + "\" in the configuration");
}

RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");

  auto resolve = [&](const std::filesystem::path& p) { return p.is_absolute() ? p : base_dir / p; };

  RunConfig cfg;
  cfg.lexicon = resolve(get_string(require(root, "lexicon", ""), "lexicon"));
  if (!std::filesystem::exists(cfg.lexicon)) fail("lexicon", "file not found: " + cfg.lexicon.string());

  if (root.contains("matcher")) {
    const auto mode = parse_match_mode(get_string(root["matcher"], "matcher"));
    if (!mode) fail("matcher", "expected \"substring\" or \"token\"");
    cfg.matcher = *mode;
  }
  if (root.contains("significance")) {
    const auto& s = root["significance"];
    if (!s.is_object()) fail("significance", "expected an object");
    if (s.contains("strength")) {
      if (!s["strength"].is_number()) fail("significance.strength", "expected a number");
      cfg.significance.strength = s["strength"].get<double>();
    }
    if (s.contains("weight_percentile")) {
      if (!s["weight_percentile"].is_number()) fail("significance.weight_percentile", "expected a number");
      cfg.significance.weight_percentile = s["weight_percentile"].get<double>();
    }
    try {
      cfg.significance.validate();
    } catch (const ConfigError& e) {
      fail("significance", e.what());
    }
  }
  if (root.contains("replicates")) {
    if (!root["replicates"].is_number_unsigned()) fail("replicates", "expected a positive integer");
    cfg.replicates = root["replicates"].get<std::size_t>();
  }
  if (cfg.replicates < 2) fail("replicates", "must be at least 2");
  if (!root.contains("seed") || !root["seed"].is_number_unsigned()) {
    fail("seed", "a non-negative integer seed is required");
  }
  cfg.seed = root["seed"].get<std::uint64_t>();
  if (root.contains("workers")) {
    if (!root["workers"].is_number_unsigned() || root["workers"].get<unsigned>() == 0) {
      fail("workers", "expected a positive integer");
    }
    cfg.workers = root["workers"].get<unsigned>();
  }
  if (root.contains("strict")) {
    if (!root["strict"].is_boolean()) fail("strict", "expected true or false");
    cfg.strict = root["strict"].get<bool>();
  }
  if (root.contains("output")) {
    cfg.output = resolve(get_string(root["output"], "output"));
  } else if (const char* env = std::getenv(kOutputRootEnv); env && *env) {
    cfg.output = env;
  } else {
    cfg.output = base_dir / "emonet-out";
  }

  const auto& datasets = require(root, "datasets", "");
  if (!datasets.is_array() || datasets.empty()) fail("datasets", "expected a non-empty array");
  std::set<std::string> names;
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    const std::string f = "datasets[" + std::to_string(i) + "].";
    const auto& d = datasets[i];
    if (!d.is_object()) fail(f.substr(0, f.size() - 1), "expected an object");
    DatasetConfig ds;
    ds.name = get_string(require(d, "name", f), f + "name");
    if (!valid_name(ds.name)) fail(f + "name", "use letters, digits, '_', '-' or '.'");
    if (!names.insert(ds.name).second) fail(f + "name", "duplicate dataset name \"" + ds.name + "\"");
    ds.input = resolve(get_string(require(d, "input", f), f + "input"));
    if (!std::filesystem::exists(ds.input)) fail(f + "input", "file not found: " + ds.input.string());
    const auto& period = require(d, "period", f);
    const Interval iv{get_time(require(period, "start", f + "period."), f + "period.start"),
                      get_time(require(period, "end", f + "period."), f + "period.end")};
    if (!(iv.start < iv.end)) fail(f + "period", "start must precede end");
    ds.windows = parse_windows(require(d, "windows", f), iv, f + "windows.");
    ds.include = get_strings(d, "include", f);
    ds.exclude = get_strings(d, "exclude", f);
    cfg.datasets.push_back(std::move(ds));
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), path.parent_path().empty() ? "." : path.parent_path());
}

}  // namespace emonet
