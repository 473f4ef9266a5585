#include <doctest.h>

#include <cstdlib>

#include "emonet/config.hpp"
#include "emonet/error.hpp"
#include "helpers.hpp"

using namespace emonet;

namespace {

std::string config_with(const std::string& extra) {
  return R"({"lexicon": "lex.tsv", "seed": 1, )" + extra + R"(
    "datasets": [{"name": "d", "input": "posts.jsonl",
                  "period": {"start": "2024-01-01", "end": "2024-01-03"},
                  "windows": {"scheme": "daily"}}]})";
}

std::string error_of(const std::string& text, const std::filesystem::path& dir) {
  try {
    parse_run_config(text, dir);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("run configs resolve paths and parse every field") {
  testing::TempDir dir("config");
  testing::write(dir / "lex.tsv", "calm\tTension\n");
  testing::write(dir / "posts.jsonl", "");
  const auto cfg = parse_run_config(config_with(R"("output": "out", "replicates": 50, "workers": 3,
      "matcher": "token", "significance": {"strength": 2.5, "weight_percentile": 20},)"),
                                    dir.path());
  CHECK(cfg.lexicon == dir / "lex.tsv");
  CHECK(cfg.output == dir / "out");
  CHECK(cfg.replicates == 50);
  CHECK(cfg.workers == 3);
  CHECK(cfg.matcher == MatchMode::kToken);
  CHECK(cfg.significance.strength == 2.5);
  CHECK(cfg.significance.weight_percentile == 20);
  REQUIRE(cfg.datasets.size() == 1);
  CHECK(cfg.dataset("d").input == dir / "posts.jsonl");
  CHECK_THROWS_AS(cfg.dataset("nope"), ConfigError);
}

TEST_CASE("config errors name the offending field") {
  testing::TempDir dir("config-errors");
  testing::write(dir / "posts.jsonl", "");
  CHECK(error_of(config_with(""), dir.path()).rfind("lexicon", 0) == 0);
  testing::write(dir / "lex.tsv", "calm\tTension\n");
  CHECK(error_of(config_with(R"("replicates": 1,)"), dir.path()).rfind("replicates", 0) == 0);
  CHECK(error_of(config_with(R"("matcher": "fuzzy",)"), dir.path()).rfind("matcher", 0) == 0);
  CHECK(error_of(config_with(R"("significance": {"weight_percentile": 0},)"), dir.path())
            .rfind("significance", 0) == 0);
  const std::string bad_scheme = R"({"lexicon": "lex.tsv", "seed": 1, "datasets": [{"name": "d",
      "input": "posts.jsonl", "period": {"start": "2024-01-01", "end": "2024-01-03"},
      "windows": {"scheme": "hourly"}}]})";
  CHECK(error_of(bad_scheme, dir.path()).rfind("datasets[0].windows.scheme", 0) == 0);
  CHECK(error_of(R"({"lexicon": "lex.tsv", "datasets": []})", dir.path()).rfind("seed", 0) == 0);
  CHECK(error_of("[1, 2", dir.path()).rfind("config", 0) == 0);
}

TEST_CASE("the environment supplies the default output root") {
  testing::TempDir dir("config-env");
  testing::write(dir / "lex.tsv", "calm\tTension\n");
  testing::write(dir / "posts.jsonl", "");
  ::setenv(kOutputRootEnv, "/tmp/emonet-env-root", 1);
  CHECK(parse_run_config(config_with(""), dir.path()).output == "/tmp/emonet-env-root");
  CHECK(parse_run_config(config_with(R"("output": "here",)"), dir.path()).output == dir / "here");
  ::unsetenv(kOutputRootEnv);
  CHECK(parse_run_config(config_with(""), dir.path()).output == dir / "emonet-out");
}
