#include "emonet/matcher.hpp"

#include <algorithm>

#include "emonet/unicode.hpp"

namespace emonet {
namespace {

constexpr std::uint32_t kNone = 0xFFFFFFFFu;

bool is_ascii_punct(unsigned char c) noexcept {
  return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
         (c >= 0x7B && c <= 0x7E);
}

// Width of a whitespace sequence starting at text[i], 0 if none. Covers ASCII
// whitespace and U+3000 IDEOGRAPHIC SPACE.
std::size_t whitespace_width(std::string_view text, std::size_t i) noexcept {
  const auto c = static_cast<unsigned char>(text[i]);
  if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') return 1;
  if (c == 0xE3 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x80 &&
      static_cast<unsigned char>(text[i + 2]) == 0x80) {
    return 3;
  }
  return 0;
}

}  // namespace

std::string_view to_string(MatchMode mode) noexcept {
  return mode == MatchMode::kSubstring ? "substring" : "token";
}

std::optional<MatchMode> parse_match_mode(std::string_view s) noexcept {
  if (s == "substring" || s == "substring-longest-match") return MatchMode::kSubstring;
  if (s == "token" || s == "token-exact") return MatchMode::kToken;
  return std::nullopt;
}

ConceptMatcher::ConceptMatcher(const Lexicon& lex, MatchMode mode)
    : lex_(&lex), mode_(mode), nodes_(1) {
  for (WordId id = 0; id < lex.size(); ++id) {
    std::uint32_t node = 0;
    for (unsigned char c : lex.word(id)) {
      std::uint32_t next = child(node, c);
      if (next == kNone) {
        next = static_cast<std::uint32_t>(nodes_.size());
        nodes_.emplace_back();
        auto& kids = nodes_[node].children;
        kids.insert(std::lower_bound(kids.begin(), kids.end(), std::pair{c, 0u}), {c, next});
      }
      node = next;
    }
    nodes_[node].terminal = id;
  }
}

std::uint32_t ConceptMatcher::child(std::uint32_t node, unsigned char c) const {
  const auto& kids = nodes_[node].children;
  const auto it = std::lower_bound(kids.begin(), kids.end(), std::pair{c, 0u});
  return (it != kids.end() && it->first == c) ? it->second : kNone;
}

void ConceptMatcher::scan_substrings(std::string_view text, std::vector<WordId>& out) const {
  std::size_t i = 0;
  while (i < text.size()) {
    std::uint32_t node = 0;
    std::optional<WordId> best;
    std::size_t best_len = 0;
    for (std::size_t j = i; j < text.size(); ++j) {
      node = child(node, static_cast<unsigned char>(text[j]));
      if (node == kNone) break;
      if (nodes_[node].terminal) {
        best = nodes_[node].terminal;
        best_len = j - i + 1;
      }
    }
    if (best) {
      out.push_back(*best);
      i += best_len;
    } else {
      i += utf8_sequence_length(static_cast<unsigned char>(text[i]));
    }
  }
}

void ConceptMatcher::scan_tokens(std::string_view text, std::vector<WordId>& out) const {
  std::size_t i = 0;
  while (i < text.size()) {
    if (const auto w = whitespace_width(text, i)) {
      i += w;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && whitespace_width(text, j) == 0) ++j;
    std::string_view token = text.substr(i, j - i);
    while (!token.empty() && is_ascii_punct(static_cast<unsigned char>(token.front()))) {
      token.remove_prefix(1);
    }
    while (!token.empty() && is_ascii_punct(static_cast<unsigned char>(token.back()))) {
      token.remove_suffix(1);
    }
    if (!token.empty()) {
      std::uint32_t node = 0;
      for (unsigned char c : token) {
        node = child(node, c);
        if (node == kNone) break;
      }
      if (node != kNone && nodes_[node].terminal) out.push_back(*nodes_[node].terminal);
    }
    i = j;
  }
}

std::vector<WordId> ConceptMatcher::match(std::string_view text) const {
  std::vector<WordId> out;
  if (mode_ == MatchMode::kSubstring) {
    scan_substrings(text, out);
  } else {
    scan_tokens(text, out);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<WordId> match_concepts(std::string_view text, const Lexicon& lex, MatchMode mode) {
  return ConceptMatcher(lex, mode).match(text);
}

}  // namespace emonet
