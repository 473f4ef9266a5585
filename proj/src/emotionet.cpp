#include "emonet/emotionet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "emonet/diagnostics.hpp"
#include "emonet/error.hpp"

namespace emonet {

const std::array<EmotionLinkKey, kNumEmotionLinks>& all_emotion_links() noexcept {
  static const auto keys = [] {
    std::array<EmotionLinkKey, kNumEmotionLinks> out{};
    std::size_t n = 0;
    for (std::size_t i = 0; i < kNumDims; ++i) {
      for (std::size_t j = i; j < kNumDims; ++j) out[n++] = EmotionLinkKey(kAllDims[i], kAllDims[j]);
    }
    return out;
  }();
  return keys;
}

const std::array<std::size_t, kNumInterLinks>& inter_link_indices() noexcept {
  static const auto idx = [] {
    std::array<std::size_t, kNumInterLinks> out{};
    std::size_t n = 0;
    for (const auto& k : all_emotion_links()) {
      if (!k.intra()) out[n++] = k.index();
    }
    return out;
  }();
  return idx;
}

std::uint64_t possible_pairs(const std::array<std::size_t, kNumDims>& counts, EmotionLinkKey key) {
  const std::uint64_t ni = counts[index_of(key.a)];
  const std::uint64_t nj = counts[index_of(key.b)];
  if (key.intra()) return ni < 2 ? 0 : ni * (ni - 1) / 2;
  return ni * nj;
}

std::uint64_t possible_pairs(const Lexicon& lex, EmotionLinkKey key) {
  return possible_pairs(lex.counts(), key);
}

EmotionNetwork aggregate(const ConceptNetwork& net, const Lexicon& lex) {
  EmotionNetwork out;
  out.snapshot = net.snapshot;
  for (const auto& link : net.links) {
    if (!link.significant) continue;
    if (link.pair.first >= lex.size() || link.pair.second >= lex.size()) {
      throw DataError("concept link refers to a word outside the lexicon");
    }
    const EmotionLinkKey key(lex.dim(link.pair.first), lex.dim(link.pair.second));
    ++out.sig_links[key.index()];
  }
  for (const auto& key : all_emotion_links()) {
    const auto i = key.index();
    out.possible[i] = possible_pairs(lex, key);
    out.raw[i] = out.possible[i] == 0
                     ? 0.0
                     : static_cast<double>(out.sig_links[i]) / static_cast<double>(out.possible[i]);
  }
  return out;
}

double median(std::span<const double> values) {
  if (values.empty()) throw DegenerateError("median of an empty set");
  std::vector<double> v(values.begin(), values.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return lower + (upper - lower) / 2;
}

EmotionNetwork rescale(EmotionNetwork net) {
  double scale = median(net.raw);
  if (scale <= 0) {
    double smallest = std::numeric_limits<double>::infinity();
    for (double v : net.raw) {
      if (v > 0) smallest = std::min(smallest, v);
    }
    if (!std::isfinite(smallest)) {
      throw DegenerateError("degenerate snapshot \"" + net.snapshot +
                            "\": no significant links, cannot rescale");
    }
    warn("snapshot \"" + net.snapshot +
         "\" has median emotion strength 0; rescaling by the smallest positive strength");
    scale = smallest;
  }
  net.scale = scale;
  for (std::size_t i = 0; i < kNumEmotionLinks; ++i) net.rescaled[i] = net.raw[i] / scale;
  return net;
}

}  // namespace emonet
