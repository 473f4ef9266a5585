#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "emonet/conceptnet.hpp"
#include "emonet/lexicon.hpp"

namespace emonet {

inline constexpr std::size_t kNumEmotionLinks = 21;  // 6 intra + 15 inter
inline constexpr std::size_t kNumInterLinks = 15;

// Unordered pair of dimensions, canonicalized so that a <= b.
struct EmotionLinkKey {
  EmotionDim a;
  EmotionDim b;

  constexpr EmotionLinkKey() noexcept : a(EmotionDim::kTension), b(EmotionDim::kTension) {}
  constexpr EmotionLinkKey(EmotionDim x, EmotionDim y) noexcept
      : a(index_of(x) <= index_of(y) ? x : y), b(index_of(x) <= index_of(y) ? y : x) {}

  constexpr bool intra() const noexcept { return a == b; }

  // Position in the canonical (a, b) lexicographic order, 0..20.
  constexpr std::size_t index() const noexcept {
    const std::size_t i = index_of(a), j = index_of(b);
    return i * kNumDims - i * (i - 1) / 2 + (j - i);
  }

  friend constexpr bool operator==(const EmotionLinkKey&, const EmotionLinkKey&) = default;
};

// All 21 keys in canonical order.
const std::array<EmotionLinkKey, kNumEmotionLinks>& all_emotion_links() noexcept;

// Canonical indices of the 15 inter-dimension keys.
const std::array<std::size_t, kNumInterLinks>& inter_link_indices() noexcept;

// Number of possible concept links between two dimensions: n_i * n_j, or
// n_i * (n_i - 1) / 2 within one dimension.
std::uint64_t possible_pairs(const std::array<std::size_t, kNumDims>& counts, EmotionLinkKey key);
std::uint64_t possible_pairs(const Lexicon& lex, EmotionLinkKey key);

using EmotionVector = std::array<double, kNumEmotionLinks>;

struct EmotionNetwork {
  std::string snapshot;
  std::array<std::uint64_t, kNumEmotionLinks> sig_links{};
  std::array<std::uint64_t, kNumEmotionLinks> possible{};
  EmotionVector raw{};       // sig_links / possible (0 where possible is 0)
  EmotionVector rescaled{};  // raw / scale, valid after rescale()
  double scale = 0;          // divisor used by rescale(); 0 before
};

// Counts significant concept links per dimension pair and normalizes by the
// number of possible pairs. Throws DataError for a word outside the lexicon.
EmotionNetwork aggregate(const ConceptNetwork& net, const Lexicon& lex);

// Midpoint median; throws on empty input.
double median(std::span<const double> values);

// Divides every raw strength by the median of the 21 raw strengths. If that
// median is 0 the smallest positive raw value is used instead, with a warning.
// Throws DegenerateError when all strengths are 0.
EmotionNetwork rescale(EmotionNetwork net);

}  // namespace emonet
