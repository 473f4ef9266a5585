#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "emonet/lexicon.hpp"

namespace emonet {

// Word vectors of a fixed dimensionality, stored contiguously.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dim = 0) : dim_(dim) {}

  // Adds a word (normalized to NFC). Throws DataError on dimensionality
  // mismatch, non-finite components or a repeated word.
  void add(std::string word, std::span<const float> vec);

  std::size_t size() const noexcept { return words_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return words_.empty(); }

  const std::string& word(std::size_t i) const { return words_.at(i); }
  std::span<const float> vector(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  std::optional<std::size_t> find(const std::string& word) const;

 private:
  std::size_t dim_;
  std::vector<std::string> words_;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Text format: optional "count dim" header line, then "word v1 ... vd".
EmbeddingTable load_embeddings(std::istream& in);
EmbeddingTable load_embeddings_file(const std::filesystem::path& path);

double cosine_similarity(std::span<const float> a, std::span<const float> b);

struct ExpansionCandidate {
  std::string candidate;
  std::string source;
  EmotionDim dim;
  double cosine;
};

struct ExpansionResult {
  // Sorted by descending cosine; each candidate appears once, attributed to
  // its most similar seed word.
  std::vector<ExpansionCandidate> candidates;
  // Seed words without a vector in the table.
  std::vector<std::string> missing_seeds;
};

// Proposes embedding-table neighbours of seed words with cosine strictly above
// threshold, for manual review. Threshold must lie in (0, 1].
ExpansionResult expand_candidates(const Lexicon& seed, const EmbeddingTable& emb,
                                  double threshold);

// Candidate review file: candidate<TAB>source<TAB>dimension<TAB>cosine.
void write_candidates(std::ostream& out, const ExpansionResult& result);

}  // namespace emonet
