#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "acceptance.hpp"
#include "designs.hpp"
#include "emonet/config.hpp"
#include "emonet/diagnostics.hpp"

namespace acceptance {

using namespace emonet;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("emonet-acceptance-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Writes posts, lexicon and a config for a four-window corpus; returns the
// parsed config.
RunConfig prepare(const fs::path& dir, const SynthSpec& spec, std::size_t replicates) {
  {
    std::ofstream out(dir / "posts.jsonl");
    write_posts(out, synthesize(spec));
    std::ofstream lex(dir / "lexicon.tsv");
    lex << serialize_lexicon(synth_lexicon(spec));
  }
  std::ostringstream cfg;
  cfg << R"({"lexicon": "lexicon.tsv", "matcher": "token", "seed": 12345, "replicates": )"
      << replicates << R"(, "output": "out", "datasets": [{"name": "synthetic", "input": "posts.jsonl",)"
      << R"("period": {"start": ")" << format_timestamp(spec.period.start) << R"(", "end": ")"
      << format_timestamp(spec.period.end) << R"("}, "windows": {"scheme": "daily"}}]})";
  return parse_run_config(cfg.str(), dir);
}

std::map<std::string, std::string> snapshot_dir(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    files[fs::relative(e.path(), dir).string()] = ss.str();
  }
  return files;
}

}  // namespace

Outcome criterion_determinism() {
  auto spec = base_spec(77, 20000, 4);
  spec.planted = graded_structure(0.01);
  const auto dir = scratch("determinism");
  auto cfg = prepare(dir, spec, 100);
  ScopedWarningCapture quiet;
  std::vector<std::map<std::string, std::string>> outputs;
  const unsigned workers[] = {1, 4, 8};
  for (unsigned w : workers) {
    fs::remove_all(cfg.output);
    cfg.workers = w;
    run_network(cfg);
    outputs.push_back(snapshot_dir(cfg.output));
  }
  const bool same = outputs[0] == outputs[1] && outputs[0] == outputs[2] && !outputs[0].empty();
  fs::remove_all(dir);
  Outcome o;
  o.pass = same;
  o.detail = std::to_string(outputs[0].size()) + " artifact files " +
             (same ? "byte-identical" : "DIFFER") + " across 1/4/8 workers (20,000 posts, R=100)";
  return o;
}

Outcome criterion_throughput() {
  auto spec = base_spec(99, 1000000, 4);
  spec.planted = graded_structure(0.01);
  const auto dir = scratch("throughput");
  auto cfg = prepare(dir, spec, 100);
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());
  ScopedWarningCapture quiet;
  const auto t0 = std::chrono::steady_clock::now();
  const auto summary = run_network(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  fs::remove_all(dir);
  Outcome o;
  o.fatal = false;
  o.pass = secs <= 600.0;
  o.detail = std::to_string(summary.front().posts) + " posts, R=100, " +
             std::to_string(cfg.workers) + " worker(s): " + fmt(secs, 1) +
             " s end to end (target <= 600 s on 8 cores; non-fatal)";
  return o;
}

}  // namespace acceptance
