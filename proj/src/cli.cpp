#include "emonet/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "emonet/config.hpp"
#include "emonet/diagnostics.hpp"
#include "emonet/embedding.hpp"
#include "emonet/error.hpp"
#include "emonet/format.hpp"
#include "emonet/pipeline.hpp"
#include "emonet/synth.hpp"

namespace emonet::cli {
namespace {

namespace fs = std::filesystem;

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::string scope;
  bool strict = false;
};

RunConfig load_config(const Globals& g) {
  if (g.config.empty()) throw ConfigError("--config: a run configuration is required");
  auto cfg = load_run_config(g.config);
  if (g.seed) cfg.seed = *g.seed;
  if (g.workers) {
    if (*g.workers == 0) throw ConfigError("--workers: must be positive");
    cfg.workers = *g.workers;
  }
  cfg.strict = cfg.strict || g.strict;
  return cfg;
}

std::optional<LinkScope> parse_scope(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "all21") return LinkScope::kAll21;
  if (s == "inter15") return LinkScope::kInter15;
  throw ConfigError("--scope: expected all21 or inter15");
}

fs::path default_root() {
  if (const char* env = std::getenv(kOutputRootEnv); env && *env) return env;
  return "emonet-out";
}

// Dataset directories named on the command line, or those of the config.
std::vector<DatasetArtifacts> load_inputs(const Globals& g, const std::vector<std::string>& dirs,
                                          const std::vector<std::string>& names, fs::path* root) {
  std::vector<DatasetArtifacts> out;
  if (!dirs.empty()) {
    for (const auto& d : dirs) out.push_back(load_dataset_artifacts(d));
    *root = default_root();
    return out;
  }
  const auto cfg = load_config(g);
  *root = cfg.output;
  if (names.empty()) {
    for (const auto& ds : cfg.datasets) out.push_back(load_dataset_artifacts(dataset_dir(cfg, ds)));
  } else {
    for (const auto& n : names) out.push_back(load_dataset_artifacts(dataset_dir(cfg, cfg.dataset(n))));
  }
  return out;
}

void print_stages(std::ostream& out, const char* stage, const std::vector<StageSummary>& s) {
  for (const auto& x : s) {
    out << stage << ' ' << x.dataset << ": " << x.windows << " window(s), " << x.posts
        << " post(s), manifest " << to_hex(x.manifest);
    if (x.degenerate) out << ", " << x.degenerate << " degenerate";
    out << " -> " << x.dir.string() << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Emotion co-occurrence networks from timestamped posts", "emonet"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config, "Run configuration (JSON)");
  app.add_option("--seed", g.seed, "Override the master seed");
  app.add_option("--workers", g.workers, "Worker threads");
  app.add_option("--scope", g.scope, "Emotion links compared: all21 or inter15")
      ->check(CLI::IsMember({"all21", "inter15"}));
  app.add_flag("--strict", g.strict, "Treat malformed input records as fatal");

  auto* validate = app.add_subcommand("validate", "Check a configuration and its inputs");

  auto* expand = app.add_subcommand("expand-lexicon", "Propose lexicon candidates from embeddings");
  std::string lexicon_path, embeddings_path, expand_out;
  double threshold = 0.7;
  expand->add_option("--lexicon", lexicon_path, "Seed lexicon (word<TAB>dimension)")->required();
  expand->add_option("--embeddings", embeddings_path, "Word vectors, one per line")->required();
  expand->add_option("--threshold", threshold, "Cosine threshold in (0,1]");
  expand->add_option("--out", expand_out, "Candidate file (stdout if omitted)");

  auto* extract = app.add_subcommand("extract", "Match posts and count concept pairs per window");
  auto* nullmodel = app.add_subcommand("nullmodel", "Null-model moments for extracted windows");
  auto* network = app.add_subcommand("network", "Concept and emotion networks per window");

  auto* compare = app.add_subcommand("compare", "Spearman and Jaccard comparisons");
  std::vector<std::string> dirs, names;
  std::string mode = "within", cmp_out;
  compare->add_option("--mode", mode, "within or across")->check(CLI::IsMember({"within", "across"}));
  compare->add_option("--dir", dirs, "Dataset artifact directory (repeatable)");
  compare->add_option("--dataset", names, "Dataset name from the configuration (repeatable)");
  compare->add_option("--out", cmp_out, "Output directory");

  auto* stability = app.add_subcommand("stability", "Concept-link stability test");
  std::size_t resamples = 1000;
  std::string stab_out;
  stability->add_option("--dir", dirs, "Dataset artifact directory (repeatable)");
  stability->add_option("--dataset", names, "Dataset name from the configuration (repeatable)");
  stability->add_option("--resamples", resamples, "Null resamples per link");
  stability->add_option("--out", stab_out, "Output directory");

  auto* deltas = app.add_subcommand("deltas", "Per-link t-tests of rescaled strengths, A versus B");
  std::string delta_out;
  deltas->add_option("--dir", dirs, "Two dataset artifact directories, A then B");
  deltas->add_option("--dataset", names, "Two dataset names from the configuration, A then B");
  deltas->add_option("--out", delta_out, "Output directory");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  std::string spec_path, synth_out, synth_lex;
  synth->add_option("--spec", spec_path, "Synthetic corpus spec (JSON)")->required();
  synth->add_option("--out", synth_out, "Post file (JSON lines)")->required();
  synth->add_option("--lexicon-out", synth_lex, "Write the synthetic lexicon here");

  auto* report = app.add_subcommand("report", "Networks, comparisons and a markdown summary");

  std::vector<std::string> argv_storage{"emonet"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitCode::kConfig);
  }

  const auto previous = set_warning_handler([&err](const std::string& m) { err << "warning: " << m << '\n'; });
  struct Restore {
    WarningHandler h;
    ~Restore() { set_warning_handler(std::move(h)); }
  } restore{previous};

  try {
    const auto scope = parse_scope(g.scope);
    if (validate->parsed()) {
      const auto cfg = load_config(g);
      const auto lex = load_lexicon_file(cfg.lexicon);
      out << "lexicon: " << lex.size() << " words";
      for (const auto d : kAllDims) out << ", " << to_string(d) << ' ' << lex.count(d);
      out << '\n';
      for (const auto& ds : cfg.datasets) {
        const auto r = ingest_file(ds.input, {cfg.strict});
        out << "dataset " << ds.name << ": " << r.posts.size() << " post(s), " << r.malformed
            << " malformed, " << r.duplicates << " duplicate id(s), "
            << ds.windows.windows().size() << " window(s), manifest "
            << to_hex(dataset_manifest_hash(cfg, ds, lex)) << '\n';
      }
      out << "output: " << cfg.output.string() << "\nconfiguration ok\n";
    } else if (expand->parsed()) {
      const auto lex = load_lexicon_file(lexicon_path);
      const auto emb = load_embeddings_file(embeddings_path);
      const auto res = expand_candidates(lex, emb, threshold);
      for (const auto& m : res.missing_seeds) warn("seed word without a vector: " + m);
      if (expand_out.empty()) {
        write_candidates(out, res);
      } else {
        std::ofstream f(expand_out);
        if (!f) throw DataError("cannot write " + expand_out);
        write_candidates(f, res);
        out << res.candidates.size() << " candidate(s) -> " << expand_out << '\n';
      }
    } else if (extract->parsed()) {
      print_stages(out, "extract", run_extract(load_config(g)));
    } else if (nullmodel->parsed()) {
      print_stages(out, "nullmodel", run_nullmodel(load_config(g)));
    } else if (network->parsed()) {
      print_stages(out, "network", run_network(load_config(g)));
    } else if (compare->parsed()) {
      fs::path root;
      const auto inputs = load_inputs(g, dirs, names, &root);
      if (mode == "within") {
        for (const auto& d : inputs) {
          const fs::path dir = cmp_out.empty() ? root / "compare-within" / d.name
                               : inputs.size() == 1 ? fs::path(cmp_out)
                                                    : fs::path(cmp_out) / d.name;
          const DatasetArtifacts one[] = {d};
          const auto res = write_comparison(one, CompareMode::kWithin, scope, dir);
          out << "compare within " << d.name << ": " << res.all21.labels.size()
              << " snapshot(s), manifest " << to_hex(res.stamp.manifest) << " -> " << dir.string() << '\n';
        }
      } else {
        const fs::path dir = cmp_out.empty() ? root / "compare-across" : fs::path(cmp_out);
        const auto res = write_comparison(inputs, CompareMode::kAcross, scope, dir);
        out << "compare across " << res.all21.labels.size() << " dataset(s), manifest "
            << to_hex(res.stamp.manifest) << " -> " << dir.string() << '\n';
      }
    } else if (stability->parsed()) {
      fs::path root;
      const auto inputs = load_inputs(g, dirs, names, &root);
      for (const auto& d : inputs) {
        const fs::path dir = stab_out.empty() ? root / "stability" / d.name
                             : inputs.size() == 1 ? fs::path(stab_out)
                                                  : fs::path(stab_out) / d.name;
        const auto rows = write_stability(d, resamples, g.seed.value_or(d.seed), dir);
        std::size_t stable = 0;
        for (const auto& r : rows) stable += r.p <= 0.05;
        out << "stability " << d.name << ": " << stable << " of " << rows.size()
            << " link(s) with p <= 0.05 -> " << dir.string() << '\n';
      }
    } else if (deltas->parsed()) {
      fs::path root;
      const auto inputs = load_inputs(g, dirs, names, &root);
      if (inputs.size() != 2) throw ConfigError("deltas: exactly two datasets are required (A then B)");
      const fs::path dir = delta_out.empty() ? root / ("deltas-" + inputs[0].name + "-" + inputs[1].name)
                                             : fs::path(delta_out);
      const auto res = write_deltas_report(inputs[0], inputs[1], dir);
      std::size_t flagged = 0;
      for (const auto& d : res) flagged += d.p_fdr <= 0.05;
      out << "deltas " << inputs[0].name << " vs " << inputs[1].name << ": " << flagged
          << " link(s) with FDR p <= 0.05 -> " << dir.string() << '\n';
    } else if (synth->parsed()) {
      auto spec = load_synth_spec(spec_path);
      if (g.seed) spec.seed = *g.seed;
      const auto posts = synthesize(spec);
      {
        std::ofstream f(synth_out, std::ios::binary);
        if (!f) throw DataError("cannot write " + synth_out);
        write_posts(f, posts);
      }
      if (!synth_lex.empty()) {
        std::ofstream f(synth_lex, std::ios::binary);
        if (!f) throw DataError("cannot write " + synth_lex);
        f << serialize_lexicon(synth_lexicon(spec));
      }
      out << "synth: " << posts.size() << " post(s) -> " << synth_out << '\n';
    } else if (report->parsed()) {
      out << "report -> " << write_report(load_config(g)).string() << '\n';
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.exit_code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kData);
  }
  return 0;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace emonet::cli
