#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emonet/artifacts.hpp"
#include "emonet/config.hpp"
#include "emonet/conceptnet.hpp"
#include "emonet/emotionet.hpp"
#include "emonet/lexicon.hpp"
#include "emonet/matcher.hpp"
#include "emonet/stats.hpp"
#include "emonet/windows.hpp"

namespace emonet {

struct AnalysisParams {
  SignificanceConfig significance;
  std::size_t replicates = 100;
  unsigned workers = 1;
};

// Null-model seed of one window of one dataset.
std::uint64_t window_seed(std::uint64_t master, std::string_view dataset, std::string_view window_id);

// Significance-filtered concept network and emotion network of one window.
// An all-zero emotion network is marked degenerate (with a warning) and its
// rescaled strengths are left at 0.
struct WindowAnalysis {
  Window window;
  std::size_t posts = 0;
  OccurrenceTable occurrences;
  NullStats null;
  ConceptNetwork concepts;
  EmotionNetwork emotions;
  bool degenerate = false;
};

WindowAnalysis analyze_occurrences(const Window& window, std::size_t posts, OccurrenceTable table,
                                   const Lexicon& lex, const AnalysisParams& params,
                                   std::uint64_t seed);
WindowAnalysis analyze_window(const WindowPosts& window, const ConceptMatcher& matcher,
                              const AnalysisParams& params, std::uint64_t seed);

// Concept and emotion networks from already computed null moments.
void finish_networks(WindowAnalysis& w, const Lexicon& lex, const SignificanceConfig& cfg);

Snapshot to_snapshot(const WindowAnalysis& w, const Lexicon& lex);

// ---------------------------------------------------------------------------
// File-backed stages. Artifacts of a dataset live in <output>/<dataset>/ and
// carry the dataset's manifest hash, a fingerprint of everything that affects
// them (input bytes, lexicon, windows, filters, matcher, S, W, R, seed).

std::uint64_t dataset_manifest_hash(const RunConfig& cfg, const DatasetConfig& ds,
                                    const Lexicon& lex);
std::filesystem::path dataset_dir(const RunConfig& cfg, const DatasetConfig& ds);

struct StageSummary {
  std::string dataset;
  std::filesystem::path dir;
  std::uint64_t manifest = 0;
  std::size_t windows = 0;
  std::size_t posts = 0;
  std::size_t degenerate = 0;
};

// Matches posts and writes occurrence and pair tables for every window.
std::vector<StageSummary> run_extract(const RunConfig& cfg);
// Requires current extract artifacts; writes null-model moments.
std::vector<StageSummary> run_nullmodel(const RunConfig& cfg);
// Reuses current extract and null-model artifacts, computing whatever is
// missing or stale, then writes concept and emotion networks.
std::vector<StageSummary> run_network(const RunConfig& cfg);

struct WindowArtifacts {
  std::string id;
  std::string span;
  bool degenerate = false;
  EmotionArtifact emotions;
  ConceptLinkSet significant;
};

struct DatasetArtifacts {
  std::string name;
  std::filesystem::path dir;
  std::uint64_t manifest = 0;
  std::uint64_t seed = 0;
  std::size_t lexicon_words = 0;
  std::vector<WindowArtifacts> windows;

  // Non-degenerate windows, labelled by window id.
  DatasetSnapshots snapshots() const;
};

// Loads the network stage of a dataset directory; every file must carry the
// hash recorded in manifest.json.
DatasetArtifacts load_dataset_artifacts(const std::filesystem::path& dir);

// Hash of a derived output (comparison, deltas, report) from its inputs.
std::uint64_t combined_manifest(std::span<const DatasetArtifacts> inputs, std::string_view what);

struct CompareResult {
  ComparisonReport all21;
  ComparisonReport inter15;
  Stamp stamp;
};

// Writes <scope>.rho.tsv, <scope>.p_raw.tsv, <scope>.p_fdr.tsv for the
// requested scopes (both when empty), jaccard.tsv, rho_sd.tsv (across only),
// spearman.svg (all-21 below the diagonal, inter-15 above) and jaccard.svg.
CompareResult write_comparison(std::span<const DatasetArtifacts> inputs, CompareMode mode,
                               std::optional<LinkScope> scope, const std::filesystem::path& out);

struct StabilityRow {
  std::string word_i;
  std::string word_j;
  std::uint32_t repetitions = 0;
  double p = 1;
};

// Stability of every link significant in at least one non-degenerate window;
// the universe is every word pair of the lexicon. Writes stability.tsv.
std::vector<StabilityRow> write_stability(const DatasetArtifacts& data, std::size_t resamples,
                                          std::uint64_t seed, const std::filesystem::path& out);

// Per-link t-tests of rescaled strengths a versus b. Writes deltas.tsv.
std::vector<LinkDelta> write_deltas_report(const DatasetArtifacts& a, const DatasetArtifacts& b,
                                           const std::filesystem::path& out);

// Runs the network stage and writes report.md with comparison tables and
// heatmaps under <output>/report.
std::filesystem::path write_report(const RunConfig& cfg);

}  // namespace emonet
