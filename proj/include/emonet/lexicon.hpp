#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace emonet {

// The six mood dimensions in canonical order. Emotion-link indexing relies on
// this order, so do not reorder.
enum class EmotionDim : std::uint8_t {
  kTension = 0,
  kDepression,
  kAnger,
  kVigor,
  kFatigue,
  kConfusion,
};

inline constexpr std::size_t kNumDims = 6;

inline constexpr std::array<EmotionDim, kNumDims> kAllDims = {
    EmotionDim::kTension, EmotionDim::kDepression, EmotionDim::kAnger,
    EmotionDim::kVigor,   EmotionDim::kFatigue,    EmotionDim::kConfusion};

constexpr std::size_t index_of(EmotionDim d) noexcept { return static_cast<std::size_t>(d); }

std::string_view to_string(EmotionDim d) noexcept;

// Case-insensitive label lookup ("Anger", "anger", "ANGER").
std::optional<EmotionDim> parse_dim(std::string_view label) noexcept;

using WordId = std::uint32_t;

struct LexiconEntry {
  std::string word;
  EmotionDim dim;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

// Immutable word -> dimension map. Entries are stored in canonical order
// (dimension order, then bytewise word order), which defines WordId; the order
// does not depend on how rows were supplied.
class Lexicon {
 public:
  Lexicon() = default;

  // Normalizes every word to NFC and validates. Throws DataError on an empty
  // word or a word listed twice.
  static Lexicon from_entries(std::vector<LexiconEntry> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  const std::string& word(WordId id) const { return entries_.at(id).word; }
  EmotionDim dim(WordId id) const { return entries_.at(id).dim; }
  std::span<const LexiconEntry> entries() const noexcept { return entries_; }

  std::optional<WordId> find(std::string_view word) const;

  std::size_t count(EmotionDim d) const noexcept { return counts_[index_of(d)]; }
  const std::array<std::size_t, kNumDims>& counts() const noexcept { return counts_; }

  // Stable hash of the serialized form.
  std::uint64_t fingerprint() const;

  friend bool operator==(const Lexicon& a, const Lexicon& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, WordId> index_;
  std::array<std::size_t, kNumDims> counts_{};
};

// Parses `word<TAB>dimension` rows. Blank lines and lines starting with '#'
// are ignored. Errors carry the 1-based line number.
Lexicon load_lexicon(std::istream& in);
Lexicon load_lexicon_file(const std::filesystem::path& path);

// Inverse of load_lexicon: canonical order, one row per entry.
std::string serialize_lexicon(const Lexicon& lex);

}  // namespace emonet
