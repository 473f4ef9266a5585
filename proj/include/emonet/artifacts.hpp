#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emonet/conceptnet.hpp"
#include "emonet/emotionet.hpp"
#include "emonet/lexicon.hpp"
#include "emonet/stats.hpp"
#include "emonet/windows.hpp"

namespace emonet {

// Every artifact file starts with
// "# emonet manifest=<16 hex digits> seed=<master seed> key=value ...",
// followed by a tab-separated header row and data rows.
struct Stamp {
  std::uint64_t manifest = 0;
  std::uint64_t seed = 0;
};

struct ArtifactHeader {
  std::uint64_t manifest = 0;
  std::map<std::string, std::string> attributes;

  const std::string& attribute(const std::string& key) const;  // throws DataError
};

std::string format_header(const Stamp& stamp,
                          const std::vector<std::pair<std::string, std::string>>& attributes = {});
ArtifactHeader parse_header(const std::string& line);

// Reads a whole artifact. When expected_manifest is set, a different hash in
// the file is reported as a stale artifact (DataError).
struct TsvFile {
  ArtifactHeader header;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};
TsvFile read_tsv(const std::filesystem::path& path, std::optional<std::uint64_t> expected_manifest);

// Occurrence table: post_id followed by one column per word.
void write_occurrences(std::ostream& out, const OccurrenceTable& table, const Lexicon& lex,
                       const Stamp& stamp, const Window& window, std::size_t posts);
struct OccurrenceArtifact {
  OccurrenceTable table;
  std::size_t posts = 0;
};
OccurrenceArtifact read_occurrences(const std::filesystem::path& path, const Lexicon& lex,
                                    std::uint64_t manifest);

void write_pairs(std::ostream& out, const ConceptPairTable& pairs, const Lexicon& lex,
                 const Stamp& stamp, const Window& window);

void write_null_stats(std::ostream& out, const NullStats& stats, const Lexicon& lex,
                      const Stamp& stamp, const Window& window);
NullStats read_null_stats(const std::filesystem::path& path, const Lexicon& lex,
                          std::uint64_t manifest);

// word_i, word_j, dim_i, dim_j, weight, null_mean, null_std, strength, significant
void write_concept_network(std::ostream& out, const ConceptNetwork& net, const Lexicon& lex,
                           const Stamp& stamp, const Window& window);
ConceptLinkSet read_significant_links(const std::filesystem::path& path, std::uint64_t manifest);

// dim_i, dim_j, sig_links, possible_links, raw_strength, rescaled_strength
void write_emotion_network(std::ostream& out, const EmotionNetwork& net, bool degenerate,
                           const Stamp& stamp, const Window& window);
struct EmotionArtifact {
  EmotionVector raw{};
  EmotionVector rescaled{};
  std::array<std::uint64_t, kNumEmotionLinks> sig_links{};
  std::array<std::uint64_t, kNumEmotionLinks> possible{};
  bool degenerate = false;
};
EmotionArtifact read_emotion_network(const std::filesystem::path& path, std::uint64_t manifest);

// Square matrix with labels in the first row and column.
void write_matrix(std::ostream& out, std::span<const std::string> labels, const Matrix& m,
                  const Stamp& stamp, const std::string& metric);

// dim_i, dim_j, t, df, p_raw, p_fdr, cohens_d, direction
void write_deltas(std::ostream& out, std::span<const LinkDelta> deltas, const Stamp& stamp,
                  const std::string& a, const std::string& b);

}  // namespace emonet
