#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "emonet/lexicon.hpp"

namespace emonet {

enum class MatchMode {
  // Leftmost-longest substring scan; suited to scripts written without spaces.
  kSubstring,
  // Exact lookup of whitespace-separated tokens (ASCII punctuation stripped at
  // token edges).
  kToken,
};

std::string_view to_string(MatchMode mode) noexcept;
std::optional<MatchMode> parse_match_mode(std::string_view s) noexcept;

// Detects lexicon words inside post text. Immutable after construction and
// safe to share between threads. Text must already be in canonical (NFC) form.
class ConceptMatcher {
 public:
  ConceptMatcher(const Lexicon& lex, MatchMode mode);

  // Distinct matched words in ascending WordId order.
  std::vector<WordId> match(std::string_view text) const;

  MatchMode mode() const noexcept { return mode_; }
  const Lexicon& lexicon() const noexcept { return *lex_; }

 private:
  struct Node {
    std::vector<std::pair<unsigned char, std::uint32_t>> children;  // sorted by byte
    std::optional<WordId> terminal;
  };

  std::uint32_t child(std::uint32_t node, unsigned char c) const;
  void scan_substrings(std::string_view text, std::vector<WordId>& out) const;
  void scan_tokens(std::string_view text, std::vector<WordId>& out) const;

  const Lexicon* lex_;
  MatchMode mode_;
  std::vector<Node> nodes_;
};

// Convenience wrapper that builds a matcher for a single call.
std::vector<WordId> match_concepts(std::string_view text, const Lexicon& lex, MatchMode mode);

}  // namespace emonet
