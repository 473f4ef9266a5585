#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "emonet/corpus.hpp"
#include "emonet/lexicon.hpp"
#include "emonet/windows.hpp"

namespace emonet {

struct PlantedPair {
  std::string a;
  std::string b;
  double rate = 0;  // probability that a post carries both words on top of the baseline
};

// Generator for synthetic corpora with known co-occurrence structure.
//
// Each post includes every lexicon word w independently with probability
// rate(w); then, for every planted pair independently, both words are added
// with the pair's rate. Timestamps are uniform over the period.
struct SynthSpec {
  std::size_t posts = 1000;
  std::uint64_t seed = 0;
  Interval period{parse_timestamp("2024-01-01"), parse_timestamp("2024-01-02")};
  std::array<std::size_t, kNumDims> words_per_dim{};
  double base_rate = 0.05;
  std::map<std::string, double> word_rates;  // per-word overrides
  std::vector<PlantedPair> planted;

  void validate() const;  // throws ConfigError
};

// Synthetic word i (0-based) of a dimension, e.g. "tension_03".
std::string synth_word(EmotionDim dim, std::size_t index);

Lexicon synth_lexicon(const SynthSpec& spec);

std::vector<Post> synthesize(const SynthSpec& spec);

SynthSpec parse_synth_spec(std::string_view json_text);
SynthSpec load_synth_spec(const std::filesystem::path& path);

// Writes posts in the ingestion format (JSON lines).
void write_posts(std::ostream& out, std::span<const Post> posts);

}  // namespace emonet
