#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emonet/corpus.hpp"
#include "emonet/lexicon.hpp"
#include "emonet/matcher.hpp"

namespace emonet {

// Unordered word pair stored with first < second.
struct WordPair {
  WordId first = 0;
  WordId second = 0;

  WordPair() = default;
  WordPair(WordId a, WordId b) : first(a < b ? a : b), second(a < b ? b : a) {}

  std::uint64_t key() const noexcept {
    return (static_cast<std::uint64_t>(first) << 32) | second;
  }
  static WordPair from_key(std::uint64_t k) noexcept {
    return {static_cast<WordId>(k >> 32), static_cast<WordId>(k & 0xFFFFFFFFu)};
  }
  friend auto operator<=>(const WordPair&, const WordPair&) = default;
};

// Posts of one window that mention at least one lexicon word, with the set of
// words each mentions. Stored row-compressed: row r spans
// words()[offsets()[r] .. offsets()[r+1]).
class OccurrenceTable {
 public:
  OccurrenceTable() : offsets_{0} {}

  // Sorts the words; throws DataError on an empty row or a repeated word.
  void add_row(std::string post_id, std::vector<WordId> words);

  std::size_t rows() const noexcept { return ids_.size(); }
  std::size_t occurrences() const noexcept { return words_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  const std::string& post_id(std::size_t r) const { return ids_[r]; }
  std::span<const WordId> row(std::size_t r) const {
    return {words_.data() + offsets_[r], offsets_[r + 1] - offsets_[r]};
  }
  std::size_t row_size(std::size_t r) const { return offsets_[r + 1] - offsets_[r]; }

  std::span<const std::uint32_t> offsets() const noexcept { return offsets_; }
  std::span<const WordId> words() const noexcept { return words_; }
  std::vector<std::uint32_t> row_sizes() const;

  // Same post ids and row sizes, rows refilled from a slot assignment.
  OccurrenceTable with_slots(std::span<const WordId> slots) const;

  friend bool operator==(const OccurrenceTable&, const OccurrenceTable&) = default;

 private:
  std::vector<std::string> ids_;
  std::vector<std::uint32_t> offsets_;
  std::vector<WordId> words_;
};

// One row per post with at least one matched word, ordered by post id.
OccurrenceTable build_occurrence_table(std::span<const Post> posts, const ConceptMatcher& matcher,
                                       unsigned workers = 1);

struct PairWeight {
  WordPair pair;
  std::uint32_t weight;

  friend bool operator==(const PairWeight&, const PairWeight&) = default;
};

// Observed co-occurrence weights; only pairs with weight >= 1 are stored,
// sorted by pair.
class ConceptPairTable {
 public:
  ConceptPairTable() = default;
  explicit ConceptPairTable(std::vector<PairWeight> entries);

  std::span<const PairWeight> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::uint32_t weight(WordPair p) const;
  std::uint64_t total_weight() const;

  friend bool operator==(const ConceptPairTable&, const ConceptPairTable&) = default;

 private:
  std::vector<PairWeight> entries_;
};

ConceptPairTable count_pairs(const OccurrenceTable& table);

// Sum over rows of k(k-1)/2.
std::uint64_t pair_mass(const OccurrenceTable& table);

// Whether some assignment of the occurrence multiset to rows of the given
// sizes has no repeated word within a row (Gale-Ryser condition).
bool assignment_feasible(std::span<const std::uint32_t> row_sizes,
                         std::span<const WordId> occurrences);

// Randomly reassigns the occurrence multiset to slots (rows laid out
// consecutively with the given sizes) so that no row repeats a word.
//
// Sampler: Fisher-Yates permutation of the multiset, then local repair that
// swaps each conflicting occurrence with a random slot in another row whenever
// the swap leaves both rows duplicate-free. After 10 x occurrences rejected
// swaps the permutation is redrawn; after 100 redraws the sampler gives up.
// Repair alone favours some assignments, so it is followed by
// mixing_sweeps x occurrences proposals of the same swap between two uniformly
// chosen slots. Those proposals are symmetric, so the chain converges to the
// uniform distribution over valid assignments.
//
// Throws DataError if no valid assignment exists or the sampler gives up.
inline constexpr unsigned kDefaultMixingSweeps = 10;
std::vector<WordId> shuffle_slots(std::span<const std::uint32_t> row_sizes,
                                  std::span<const WordId> occurrences, std::uint64_t seed,
                                  unsigned mixing_sweeps = kDefaultMixingSweeps);

OccurrenceTable shuffle_assignment(const OccurrenceTable& table, std::uint64_t seed);

struct NullMoments {
  double mean = 0;
  double stddev = 0;  // population convention (divide by R)

  bool operator==(const NullMoments&) const = default;
};

// Moments of R replicate weights from their integer sum and sum of squares.
NullMoments moments_from_sums(std::uint64_t sum, std::uint64_t sum_squares,
                              std::size_t replicates);

struct NullEntry {
  WordPair pair;
  NullMoments moments;

  bool operator==(const NullEntry&) const = default;
};

// Null-model moments for every pair seen in any replicate; pairs never seen
// have mean 0 and stddev 0.
class NullStats {
 public:
  NullStats() = default;
  NullStats(std::vector<NullEntry> entries, std::size_t replicates, std::uint64_t seed);

  std::size_t replicates() const noexcept { return replicates_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::span<const NullEntry> entries() const noexcept { return entries_; }
  NullMoments moments(WordPair p) const;

  friend bool operator==(const NullStats&, const NullStats&) = default;

 private:
  std::vector<NullEntry> entries_;
  std::size_t replicates_ = 0;
  std::uint64_t seed_ = 0;
};

struct NullModelOptions {
  std::size_t replicates = 100;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  unsigned mixing_sweeps = kDefaultMixingSweeps;
  // Called once per replicate with the shuffled table. May be invoked from
  // several threads at once when workers > 1.
  std::function<void(std::size_t, const OccurrenceTable&)> on_replicate;
};

// Replicate r uses seed derive_seed(options.seed, r), so the result does not
// depend on the worker count.
NullStats null_stats(const OccurrenceTable& table, const NullModelOptions& options);

// z-score of an observed weight against its null moments. With zero null
// spread the result is +inf, 0 or -inf according to the sign of the excess.
double link_strength(std::uint32_t weight, const NullMoments& null);

struct SignificanceConfig {
  double strength = 3.0;            // minimum z-score S
  double weight_percentile = 10.0;  // links must be in the top W% by weight

  void validate() const;  // throws ConfigError
};

// Smallest observed weight w such that at most ceil(W% of n) stored pairs have
// weight >= w. If even the largest weight is shared by more pairs than that,
// the largest weight is returned (ties are kept together). 0 for no weights.
std::uint32_t weight_cutoff(std::span<const std::uint32_t> weights, double percentile);

struct ConceptLink {
  WordPair pair;
  std::uint32_t weight = 0;
  NullMoments null;
  double strength = 0;
  bool significant = false;
};

struct ConceptNetwork {
  std::string snapshot;
  std::uint32_t weight_cutoff = 0;
  SignificanceConfig config;
  std::vector<ConceptLink> links;  // every observed pair, sorted by pair

  std::vector<WordPair> significant_pairs() const;
  std::size_t significant_count() const;
};

// Links with null moments and strengths, before thresholding.
std::vector<ConceptLink> score_links(const ConceptPairTable& pairs, const NullStats& null);

// Flags links with weight >= cutoff and strength >= S.
ConceptNetwork significant_links(std::vector<ConceptLink> links, const SignificanceConfig& cfg,
                                 std::string snapshot = {});

}  // namespace emonet
