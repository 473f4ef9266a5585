#include "emonet/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "emonet/diagnostics.hpp"
#include "emonet/error.hpp"
#include "emonet/format.hpp"
#include "emonet/rng.hpp"
#include "emonet/svg.hpp"

namespace emonet {

using nlohmann::json;
namespace fs = std::filesystem;

std::uint64_t window_seed(std::uint64_t master, std::string_view dataset, std::string_view window_id) {
  std::string key(dataset);
  key += '/';
  key += window_id;
  return derive_seed(master, fnv1a(key));
}

void finish_networks(WindowAnalysis& w, const Lexicon& lex, const SignificanceConfig& cfg) {
  const auto pairs = count_pairs(w.occurrences);
  w.concepts = significant_links(score_links(pairs, w.null), cfg, w.window.id);
  w.emotions = aggregate(w.concepts, lex);
  w.emotions.snapshot = w.window.id;
  w.degenerate = false;
  try {
    w.emotions = rescale(w.emotions);
  } catch (const DegenerateError& e) {
    warn("window " + w.window.id + ": " + e.what() + "; the window is skipped in comparisons");
    w.degenerate = true;
  }
}

WindowAnalysis analyze_occurrences(const Window& window, std::size_t posts, OccurrenceTable table,
                                   const Lexicon& lex, const AnalysisParams& params,
                                   std::uint64_t seed) {
  params.significance.validate();
  WindowAnalysis w;
  w.window = window;
  w.posts = posts;
  w.occurrences = std::move(table);
  NullModelOptions opts;
  opts.replicates = params.replicates;
  opts.seed = seed;
  opts.workers = params.workers;
  w.null = null_stats(w.occurrences, opts);
  finish_networks(w, lex, params.significance);
  return w;
}

WindowAnalysis analyze_window(const WindowPosts& window, const ConceptMatcher& matcher,
                              const AnalysisParams& params, std::uint64_t seed) {
  auto table = build_occurrence_table(window.posts, matcher, params.workers);
  return analyze_occurrences(window.window, window.posts.size(), std::move(table),
                             matcher.lexicon(), params, seed);
}

Snapshot to_snapshot(const WindowAnalysis& w, const Lexicon& lex) {
  Snapshot s;
  s.label = w.window.id;
  s.raw = w.emotions.raw;
  std::vector<std::pair<std::string, std::string>> links;
  for (const auto& p : w.concepts.significant_pairs()) links.emplace_back(lex.word(p.first), lex.word(p.second));
  s.significant = make_link_set(std::move(links));
  return s;
}

namespace {

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("write failed for " + path.string());
}

template <typename F>
void write_file(const fs::path& path, F&& fill) {
  std::ostringstream ss;
  fill(ss);
  write_text(path, ss.str());
}

fs::path manifest_path(const fs::path& dir) { return dir / "manifest.json"; }

std::optional<json> read_manifest(const fs::path& dir) {
  const auto path = manifest_path(dir);
  if (!fs::exists(path)) return std::nullopt;
  try {
    return json::parse(read_bytes(path));
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": unreadable manifest: " + e.what());
  }
}

void save_manifest(const fs::path& dir, const json& m) {
  write_text(manifest_path(dir), m.dump(2) + "\n");
}

bool has_stage(const json& m, const std::string& stage) {
  if (!m.contains("stages")) return false;
  for (const auto& s : m["stages"]) {
    if (s == stage) return true;
  }
  return false;
}

void add_stage(json& m, const std::string& stage) {
  if (!has_stage(m, stage)) m["stages"].push_back(stage);
}

std::uint64_t manifest_of(const json& m, const fs::path& dir) {
  if (!m.contains("manifest") || !m["manifest"].is_string()) {
    throw DataError(manifest_path(dir).string() + ": no manifest hash");
  }
  const auto hex = m["manifest"].get<std::string>();
  try {
    return std::stoull(hex, nullptr, 16);
  } catch (const std::exception&) {
    throw DataError(manifest_path(dir).string() + ": malformed manifest hash");
  }
}

fs::path artifact(const fs::path& dir, const std::string& window, const char* kind) {
  return dir / (window + "." + kind + ".tsv");
}

enum class Reuse { kNever, kIfCurrent, kRequired };

struct DatasetRun {
  const DatasetConfig* ds = nullptr;
  fs::path dir;
  Stamp stamp;
  json manifest;
  std::vector<Window> windows;
  std::vector<std::size_t> posts;
  std::vector<OccurrenceTable> tables;
  std::vector<NullStats> null;
};

DatasetRun extract_stage(const RunConfig& cfg, const DatasetConfig& ds, const Lexicon& lex,
                         Reuse reuse) {
  DatasetRun run;
  run.ds = &ds;
  run.dir = dataset_dir(cfg, ds);
  run.stamp = {dataset_manifest_hash(cfg, ds, lex), cfg.seed};
  run.windows = ds.windows.windows();

  const auto existing = read_manifest(run.dir);
  const bool current = existing && manifest_of(*existing, run.dir) == run.stamp.manifest &&
                       has_stage(*existing, "extract");
  if (reuse != Reuse::kNever && current) {
    run.manifest = *existing;
    for (const auto& w : run.windows) {
      auto occ = read_occurrences(artifact(run.dir, w.id, "occurrences"), lex, run.stamp.manifest);
      run.posts.push_back(occ.posts);
      run.tables.push_back(std::move(occ.table));
    }
    return run;
  }
  if (reuse == Reuse::kRequired) {
    throw DataError(existing ? "artifacts in " + run.dir.string() +
                                   " come from a different configuration; run extract again"
                             : "no extract artifacts in " + run.dir.string() + "; run extract first");
  }
  if (existing && !current) warn("replacing artifacts in " + run.dir.string() + " from a different configuration");

  const auto ingested = ingest_file(ds.input, {cfg.strict});
  if (ingested.malformed > 0) {
    warn(ds.name + ": skipped " + std::to_string(ingested.malformed) + " malformed line(s)");
  }
  auto filtered = filter_keywords(ingested.posts, ds.include, ds.exclude);
  const std::size_t filtered_count = filtered.size();
  auto windowed = assign_windows(std::move(filtered), ds.windows);
  const ConceptMatcher matcher(lex, cfg.matcher);

  fs::create_directories(run.dir);
  json m;
  m["manifest"] = to_hex(run.stamp.manifest);
  m["dataset"] = ds.name;
  m["seed"] = cfg.seed;
  m["replicates"] = cfg.replicates;
  m["significance"] = {{"strength", cfg.significance.strength},
                       {"weight_percentile", cfg.significance.weight_percentile}};
  m["matcher"] = std::string(to_string(cfg.matcher));
  m["lexicon"] = {{"fingerprint", to_hex(lex.fingerprint())}, {"words", lex.size()}};
  m["input"] = {{"fingerprint", to_hex(fnv1a(read_bytes(ds.input)))},
                {"lines", ingested.lines},
                {"posts", ingested.posts.size()},
                {"malformed", ingested.malformed},
                {"duplicates", ingested.duplicates}};
  m["filters"] = {{"include", ds.include}, {"exclude", ds.exclude}, {"kept", filtered_count}};
  m["window_spec"] = ds.windows.describe();
  m["outside_period"] = windowed.dropped;
  m["windows"] = json::array();
  m["stages"] = json::array();

  for (const auto& wp : windowed.windows) {
    auto table = build_occurrence_table(wp.posts, matcher, cfg.workers);
    write_file(artifact(run.dir, wp.window.id, "occurrences"), [&](std::ostream& o) {
      write_occurrences(o, table, lex, run.stamp, wp.window, wp.posts.size());
    });
    write_file(artifact(run.dir, wp.window.id, "pairs"), [&](std::ostream& o) {
      write_pairs(o, count_pairs(table), lex, run.stamp, wp.window);
    });
    m["windows"].push_back({{"id", wp.window.id},
                            {"start", format_timestamp(wp.window.span.start)},
                            {"end", format_timestamp(wp.window.span.end)},
                            {"posts", wp.posts.size()},
                            {"rows", table.rows()},
                            {"occurrences", table.occurrences()}});
    run.posts.push_back(wp.posts.size());
    run.tables.push_back(std::move(table));
  }
  add_stage(m, "extract");
  run.manifest = std::move(m);
  save_manifest(run.dir, run.manifest);
  return run;
}

void null_stage(const RunConfig& cfg, const Lexicon& lex, DatasetRun& run, Reuse reuse) {
  run.null.clear();
  if (reuse != Reuse::kNever && has_stage(run.manifest, "nullmodel")) {
    for (const auto& w : run.windows) {
      run.null.push_back(read_null_stats(artifact(run.dir, w.id, "null"), lex, run.stamp.manifest));
    }
    return;
  }
  for (std::size_t i = 0; i < run.windows.size(); ++i) {
    const auto& w = run.windows[i];
    NullModelOptions opts;
    opts.replicates = cfg.replicates;
    opts.seed = window_seed(cfg.seed, run.ds->name, w.id);
    opts.workers = cfg.workers;
    auto stats = null_stats(run.tables[i], opts);
    write_file(artifact(run.dir, w.id, "null"),
               [&](std::ostream& o) { write_null_stats(o, stats, lex, run.stamp, w); });
    run.null.push_back(std::move(stats));
  }
  add_stage(run.manifest, "nullmodel");
  save_manifest(run.dir, run.manifest);
}

StageSummary summarize(const DatasetRun& run) {
  StageSummary s;
  s.dataset = run.ds->name;
  s.dir = run.dir;
  s.manifest = run.stamp.manifest;
  s.windows = run.windows.size();
  s.posts = std::accumulate(run.posts.begin(), run.posts.end(), std::size_t{0});
  return s;
}

}  // namespace

std::uint64_t dataset_manifest_hash(const RunConfig& cfg, const DatasetConfig& ds,
                                    const Lexicon& lex) {
  std::string key = "emonet-manifest-1\n";
  key += "dataset=" + ds.name + "\n";
  key += "input=" + to_hex(fnv1a(read_bytes(ds.input))) + "\n";
  key += "windows=" + ds.windows.describe() + "\n";
  for (const auto& s : ds.include) key += "include=" + s + "\n";
  for (const auto& s : ds.exclude) key += "exclude=" + s + "\n";
  key += "lexicon=" + to_hex(lex.fingerprint()) + "\n";
  key += "matcher=" + std::string(to_string(cfg.matcher)) + "\n";
  key += "strength=" + format_double(cfg.significance.strength) + "\n";
  key += "weight_percentile=" + format_double(cfg.significance.weight_percentile) + "\n";
  key += "replicates=" + std::to_string(cfg.replicates) + "\n";
  key += "seed=" + std::to_string(cfg.seed) + "\n";
  return fnv1a(key);
}

fs::path dataset_dir(const RunConfig& cfg, const DatasetConfig& ds) { return cfg.output / ds.name; }

std::vector<StageSummary> run_extract(const RunConfig& cfg) {
  const auto lex = load_lexicon_file(cfg.lexicon);
  std::vector<StageSummary> out;
  for (const auto& ds : cfg.datasets) out.push_back(summarize(extract_stage(cfg, ds, lex, Reuse::kNever)));
  return out;
}

std::vector<StageSummary> run_nullmodel(const RunConfig& cfg) {
  const auto lex = load_lexicon_file(cfg.lexicon);
  std::vector<StageSummary> out;
  for (const auto& ds : cfg.datasets) {
    auto run = extract_stage(cfg, ds, lex, Reuse::kRequired);
    null_stage(cfg, lex, run, Reuse::kNever);
    out.push_back(summarize(run));
  }
  return out;
}

std::vector<StageSummary> run_network(const RunConfig& cfg) {
  cfg.significance.validate();
  const auto lex = load_lexicon_file(cfg.lexicon);
  std::vector<StageSummary> out;
  for (const auto& ds : cfg.datasets) {
    auto run = extract_stage(cfg, ds, lex, Reuse::kIfCurrent);
    null_stage(cfg, lex, run, Reuse::kIfCurrent);
    auto summary = summarize(run);

    std::ostringstream long_rows;
    long_rows << format_header(run.stamp, {{"dataset", ds.name}})
              << "\nwindow\tstart\tend\tdim_i\tdim_j\tsig_links\tpossible_links\traw_strength\t"
                 "rescaled_strength\n";
    for (std::size_t i = 0; i < run.windows.size(); ++i) {
      WindowAnalysis w;
      w.window = run.windows[i];
      w.posts = run.posts[i];
      w.occurrences = std::move(run.tables[i]);
      w.null = std::move(run.null[i]);
      finish_networks(w, lex, cfg.significance);
      if (w.degenerate) ++summary.degenerate;

      write_file(artifact(run.dir, w.window.id, "concepts"), [&](std::ostream& o) {
        write_concept_network(o, w.concepts, lex, run.stamp, w.window);
      });
      write_file(artifact(run.dir, w.window.id, "emotions"), [&](std::ostream& o) {
        write_emotion_network(o, w.emotions, w.degenerate, run.stamp, w.window);
      });
      for (const auto& key : all_emotion_links()) {
        const auto k = key.index();
        long_rows << w.window.id << '\t' << format_timestamp(w.window.span.start) << '\t'
                  << format_timestamp(w.window.span.end) << '\t' << to_string(key.a) << '\t'
                  << to_string(key.b) << '\t' << w.emotions.sig_links[k] << '\t'
                  << w.emotions.possible[k] << '\t' << format_double(w.emotions.raw[k]) << '\t'
                  << (w.degenerate ? std::string("NA") : format_double(w.emotions.rescaled[k]))
                  << '\n';
      }
      auto& entry = run.manifest["windows"][i];
      entry["significant"] = w.concepts.significant_count();
      entry["weight_cutoff"] = w.concepts.weight_cutoff;
      entry["degenerate"] = w.degenerate;
    }
    write_text(run.dir / "emotions_long.tsv", long_rows.str());
    add_stage(run.manifest, "network");
    save_manifest(run.dir, run.manifest);
    out.push_back(summary);
  }
  return out;
}

DatasetSnapshots DatasetArtifacts::snapshots() const {
  DatasetSnapshots out;
  out.name = name;
  for (const auto& w : windows) {
    if (w.degenerate) continue;
    out.snapshots.push_back({w.id, w.emotions.raw, w.significant});
  }
  return out;
}

DatasetArtifacts load_dataset_artifacts(const fs::path& dir) {
  const auto m = read_manifest(dir);
  if (!m) throw DataError("no manifest.json in " + dir.string());
  if (!has_stage(*m, "network")) {
    throw DataError(dir.string() + " has no network artifacts; run network first");
  }
  DatasetArtifacts d;
  d.dir = dir;
  d.manifest = manifest_of(*m, dir);
  try {
    d.name = m->at("dataset").get<std::string>();
    d.seed = m->at("seed").get<std::uint64_t>();
    d.lexicon_words = m->at("lexicon").at("words").get<std::size_t>();
    for (const auto& w : m->at("windows")) {
      WindowArtifacts wa;
      wa.id = w.at("id").get<std::string>();
      wa.span = w.at("start").get<std::string>() + "/" + w.at("end").get<std::string>();
      wa.emotions = read_emotion_network(artifact(dir, wa.id, "emotions"), d.manifest);
      wa.degenerate = wa.emotions.degenerate;
      wa.significant = read_significant_links(artifact(dir, wa.id, "concepts"), d.manifest);
      d.windows.push_back(std::move(wa));
    }
  } catch (const json::exception& e) {
    throw DataError(manifest_path(dir).string() + ": " + e.what());
  }
  return d;
}

std::uint64_t combined_manifest(std::span<const DatasetArtifacts> inputs, std::string_view what) {
  std::string key = "emonet-derived-1\n" + std::string(what) + "\n";
  for (const auto& d : inputs) key += d.name + "=" + to_hex(d.manifest) + "\n";
  return fnv1a(key);
}

namespace {

std::string cell_text(double rho, double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", rho);
  return buf + significance_stars(p);
}

void write_scope(const fs::path& out, const ComparisonReport& r, const Stamp& stamp) {
  const std::string s(to_string(r.scope));
  auto matrix = [&](const char* metric, const Matrix& m) {
    write_file(out / (s + "." + metric + ".tsv"),
               [&](std::ostream& o) { write_matrix(o, r.labels, m, stamp, s + "." + metric); });
  };
  matrix("rho", r.rho);
  matrix("p_raw", r.p_raw);
  matrix("p_fdr", r.p_adjusted);
  if (r.mode == CompareMode::kAcross) matrix("rho_sd", r.rho_sd);
}

}  // namespace

CompareResult write_comparison(std::span<const DatasetArtifacts> inputs, CompareMode mode,
                               std::optional<LinkScope> scope, const fs::path& out) {
  CompareResult res;
  if (mode == CompareMode::kWithin) {
    if (inputs.size() != 1) throw ConfigError("within comparison takes exactly one dataset");
    const auto snaps = inputs[0].snapshots();
    if (snaps.snapshots.size() < 2) {
      throw DegenerateError(inputs[0].name + ": fewer than 2 non-degenerate windows to compare");
    }
    res.all21 = compare_within(snaps.snapshots, LinkScope::kAll21);
    res.inter15 = compare_within(snaps.snapshots, LinkScope::kInter15);
  } else {
    if (inputs.size() < 2) throw ConfigError("across comparison needs at least 2 datasets");
    std::vector<DatasetSnapshots> sets;
    for (const auto& d : inputs) sets.push_back(d.snapshots());
    res.all21 = compare_across(sets, LinkScope::kAll21);
    res.inter15 = compare_across(sets, LinkScope::kInter15);
  }
  res.stamp = {combined_manifest(inputs, mode == CompareMode::kWithin ? "within" : "across"),
               inputs[0].seed};

  fs::create_directories(out);
  if (!scope || *scope == LinkScope::kAll21) write_scope(out, res.all21, res.stamp);
  if (!scope || *scope == LinkScope::kInter15) write_scope(out, res.inter15, res.stamp);
  write_file(out / "jaccard.tsv", [&](std::ostream& o) {
    write_matrix(o, res.all21.labels, res.all21.jaccard, res.stamp, "jaccard");
  });

  const auto& labels = res.all21.labels;
  const std::string tag = " (manifest " + to_hex(res.stamp.manifest) + ")";
  write_text(out / "spearman.svg",
             render_heatmap(labels,
                            [&](std::size_t i, std::size_t j) {
                              if (i == j) return HeatmapCell{1.0, "", false};
                              const auto& r = i > j ? res.all21 : res.inter15;
                              return HeatmapCell{r.rho(i, j), cell_text(r.rho(i, j), r.p_adjusted(i, j))};
                            },
                            "Spearman rho: all 21 links below, inter-dimension links above" + tag));
  write_text(out / "jaccard.svg",
             render_heatmap(labels,
                            [&](std::size_t i, std::size_t j) {
                              const double v = res.all21.jaccard(i, j);
                              char buf[16];
                              std::snprintf(buf, sizeof buf, "%.2f", v);
                              return HeatmapCell{v, buf, false};
                            },
                            "Jaccard index of significant concept links" + tag));
  return res;
}

std::vector<StabilityRow> write_stability(const DatasetArtifacts& data, std::size_t resamples,
                                          std::uint64_t seed, const fs::path& out) {
  std::vector<const WindowArtifacts*> windows;
  for (const auto& w : data.windows) {
    if (!w.degenerate) windows.push_back(&w);
  }
  if (windows.size() < 2) throw DegenerateError(data.name + ": stability needs at least 2 non-degenerate windows");

  std::map<std::pair<std::string, std::string>, std::vector<bool>> flags;
  for (std::size_t k = 0; k < windows.size(); ++k) {
    for (const auto& link : windows[k]->significant) {
      auto& f = flags[link];
      f.resize(windows.size(), false);
      f[k] = true;
    }
  }
  std::vector<std::vector<bool>> matrix;
  for (const auto& [_, f] : flags) matrix.push_back(f);
  const std::size_t n = data.lexicon_words;
  const std::size_t universe = n * (n - 1) / 2;
  const auto res = matrix.empty() ? StabilityResult{} : link_stability(matrix, universe, resamples, seed);

  std::vector<StabilityRow> rows;
  std::size_t i = 0;
  for (const auto& [link, _] : flags) {
    rows.push_back({link.first, link.second, res.repetitions[i], res.p[i]});
    ++i;
  }
  const DatasetArtifacts one[] = {data};
  const Stamp stamp{combined_manifest(one, "stability/" + std::to_string(resamples) + "/" +
                                               std::to_string(seed)),
                    seed};
  fs::create_directories(out);
  write_file(out / "stability.tsv", [&](std::ostream& o) {
    o << format_header(stamp, {{"dataset", data.name},
                               {"windows", std::to_string(windows.size())},
                               {"universe", std::to_string(universe)},
                               {"resamples", std::to_string(resamples)}})
      << "\nword_i\tword_j\trepetitions\tp\n";
    for (const auto& r : rows) {
      o << r.word_i << '\t' << r.word_j << '\t' << r.repetitions << '\t' << format_double(r.p) << '\n';
    }
  });
  return rows;
}

std::vector<LinkDelta> write_deltas_report(const DatasetArtifacts& a, const DatasetArtifacts& b,
                                           const fs::path& out) {
  auto vectors = [](const DatasetArtifacts& d) {
    std::vector<EmotionVector> v;
    for (const auto& w : d.windows) {
      if (!w.degenerate) v.push_back(w.emotions.rescaled);
    }
    if (v.size() < 2) throw DegenerateError(d.name + ": t-tests need at least 2 non-degenerate windows");
    return v;
  };
  const auto va = vectors(a);
  const auto vb = vectors(b);
  const auto deltas = strength_deltas(va, vb);
  const DatasetArtifacts both[] = {a, b};
  const Stamp stamp{combined_manifest(both, "deltas"), a.seed};
  fs::create_directories(out);
  write_file(out / "deltas.tsv", [&](std::ostream& o) { write_deltas(o, deltas, stamp, a.name, b.name); });
  return deltas;
}

namespace {

std::string mean_sd(std::span<const double> v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = v.size() > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f ± %.2f", mean, sd);
  return buf;
}

std::string summary_cell(const ComparisonReport& r) {
  double worst = 0;
  for (double p : r.pair_p_adjusted) worst = std::max(worst, p);
  const auto stars = significance_stars(worst);
  return stars.empty() ? mean_sd(r.pair_rho) : mean_sd(r.pair_rho) + " " + stars;
}

}  // namespace

fs::path write_report(const RunConfig& cfg) {
  run_network(cfg);
  std::vector<DatasetArtifacts> data;
  for (const auto& ds : cfg.datasets) data.push_back(load_dataset_artifacts(dataset_dir(cfg, ds)));
  const fs::path out = cfg.output / "report";
  fs::create_directories(out);

  std::ostringstream md;
  md << "# Emotion network report\n\n";
  md << "Manifest " << to_hex(combined_manifest(data, "report")) << ", seed " << cfg.seed
     << ", R = " << cfg.replicates << ", S = " << format_double(cfg.significance.strength)
     << ", W = " << format_double(cfg.significance.weight_percentile) << "%.\n\n";

  md << "## Windows\n\n| Dataset | Window | Span | Significant concept links | Degenerate |\n"
        "|---|---|---|---|---|\n";
  for (const auto& d : data) {
    for (const auto& w : d.windows) {
      md << "| " << d.name << " | " << w.id << " | " << w.span << " | " << w.significant.size()
         << " | " << (w.degenerate ? "yes" : "no") << " |\n";
    }
  }

  md << "\n## Rank correlation between windows\n\n"
        "Mean ± sd of Spearman rho over all window pairs. Stars give the largest BH-adjusted "
        "p-value among the pairs (*** ≤ .001, ** ≤ .01, * ≤ .05).\n\n"
        "| Dataset | All 21 links | 15 inter-dimension links |\n|---|---|---|\n";
  std::vector<std::string> figures;
  for (const auto& d : data) {
    const DatasetArtifacts one[] = {d};
    try {
      const auto res = write_comparison(one, CompareMode::kWithin, std::nullopt, out / d.name);
      md << "| " << d.name << " | " << summary_cell(res.all21) << " | " << summary_cell(res.inter15)
         << " |\n";
      figures.push_back(d.name);
    } catch (const DegenerateError& e) {
      warn(std::string("report: ") + e.what());
      md << "| " << d.name << " | NA | NA |\n";
    }
  }
  for (const auto& f : figures) md << "\n![" << f << "](" << f << "/spearman.svg)\n";

  if (data.size() >= 2) {
    md << "\n## Across datasets\n\nMean Spearman rho over cross-dataset window pairs (all 21 "
          "links); stars from the mean BH-adjusted p-value.\n\n";
    try {
      const auto res = write_comparison(data, CompareMode::kAcross, std::nullopt, out / "across");
      const auto& r = res.all21;
      md << "|";
      for (const auto& l : r.labels) md << " | " << l;
      md << " |\n|---";
      for (std::size_t j = 0; j < r.labels.size(); ++j) md << "|---";
      md << "|\n";
      for (std::size_t i = 0; i < r.labels.size(); ++i) {
        md << "| " << r.labels[i];
        for (std::size_t j = 0; j < r.labels.size(); ++j) md << " | " << cell_text(r.rho(i, j), r.p_adjusted(i, j));
        md << " |\n";
      }
      md << "\n![across](across/spearman.svg)\n";
    } catch (const DegenerateError& e) {
      warn(std::string("report: ") + e.what());
      md << "Not available: " << e.what() << "\n";
    }
  }
  write_text(out / "report.md", md.str());
  return out / "report.md";
}

}  // namespace emonet
