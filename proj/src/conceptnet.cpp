#include "emonet/conceptnet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "emonet/error.hpp"
#include "emonet/parallel.hpp"
#include "emonet/rng.hpp"

namespace emonet {
namespace {

constexpr std::uint32_t kNoLocal = 0xFFFFFFFFu;
constexpr std::size_t kDensePairLimit = std::size_t{1} << 22;

// Counts unordered pairs over rows of sorted, distinct word ids. Uses a dense
// upper-triangular array when the vocabulary is small enough.
class PairCounter {
 public:
  explicit PairCounter(std::span<const WordId> words) {
    vocab_.assign(words.begin(), words.end());
    std::sort(vocab_.begin(), vocab_.end());
    vocab_.erase(std::unique(vocab_.begin(), vocab_.end()), vocab_.end());
    if (!vocab_.empty()) local_.assign(static_cast<std::size_t>(vocab_.back()) + 1, kNoLocal);
    for (std::size_t i = 0; i < vocab_.size(); ++i) local_[vocab_[i]] = static_cast<std::uint32_t>(i);
    const std::size_t n = vocab_.size();
    const std::size_t space = n < 2 ? 0 : n * (n - 1) / 2;
    dense_ = space <= kDensePairLimit;
    if (dense_) counts_.assign(space, 0);
  }

  void add_row(std::span<const WordId> row) {
    for (std::size_t i = 0; i + 1 < row.size(); ++i) {
      for (std::size_t j = i + 1; j < row.size(); ++j) {
        const std::uint64_t key = WordPair(row[i], row[j]).key();
        if (dense_) {
          auto& c = counts_[dense_index(row[i], row[j])];
          if (c++ == 0) touched_.push_back(key);
        } else {
          ++sparse_[key];
        }
      }
    }
  }

  // Visits (pair, count) in pair order and resets the counter.
  template <class Fn>
  void drain(Fn&& fn) {
    if (dense_) {
      std::sort(touched_.begin(), touched_.end());
      for (const auto key : touched_) {
        const auto p = WordPair::from_key(key);
        auto& c = counts_[dense_index(p.first, p.second)];
        fn(p, c);
        c = 0;
      }
      touched_.clear();
    } else {
      std::vector<std::pair<std::uint64_t, std::uint32_t>> items(sparse_.begin(), sparse_.end());
      std::sort(items.begin(), items.end());
      for (const auto& [key, c] : items) fn(WordPair::from_key(key), c);
      sparse_.clear();
    }
  }

 private:
  std::size_t dense_index(WordId x, WordId y) const {
    std::size_t a = local_[x], b = local_[y];
    if (a > b) std::swap(a, b);
    const std::size_t n = vocab_.size();
    return a * (2 * n - a - 1) / 2 + (b - a - 1);
  }

  std::vector<WordId> vocab_;
  std::vector<std::uint32_t> local_;
  bool dense_ = true;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint64_t> touched_;
  std::unordered_map<std::uint64_t, std::uint32_t> sparse_;
};

bool row_contains(std::span<const WordId> slots, std::size_t begin, std::size_t end, WordId w) {
  for (std::size_t i = begin; i < end; ++i) {
    if (slots[i] == w) return true;
  }
  return false;
}

}  // namespace

void OccurrenceTable::add_row(std::string post_id, std::vector<WordId> words) {
  if (words.empty()) throw DataError("occurrence row \"" + post_id + "\" has no words");
  std::sort(words.begin(), words.end());
  if (std::adjacent_find(words.begin(), words.end()) != words.end()) {
    throw DataError("occurrence row \"" + post_id + "\" repeats a word");
  }
  ids_.push_back(std::move(post_id));
  words_.insert(words_.end(), words.begin(), words.end());
  offsets_.push_back(static_cast<std::uint32_t>(words_.size()));
}

std::vector<std::uint32_t> OccurrenceTable::row_sizes() const {
  std::vector<std::uint32_t> sizes(rows());
  for (std::size_t r = 0; r < rows(); ++r) sizes[r] = offsets_[r + 1] - offsets_[r];
  return sizes;
}

OccurrenceTable OccurrenceTable::with_slots(std::span<const WordId> slots) const {
  if (slots.size() != words_.size()) throw DataError("slot assignment has the wrong length");
  OccurrenceTable out;
  out.ids_ = ids_;
  out.offsets_ = offsets_;
  out.words_.assign(slots.begin(), slots.end());
  for (std::size_t r = 0; r < rows(); ++r) {
    std::sort(out.words_.begin() + offsets_[r], out.words_.begin() + offsets_[r + 1]);
  }
  return out;
}

OccurrenceTable build_occurrence_table(std::span<const Post> posts, const ConceptMatcher& matcher,
                                       unsigned workers) {
  std::vector<std::vector<WordId>> matched(posts.size());
  parallel_chunks(posts.size(), workers, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) matched[i] = matcher.match(posts[i].text);
  });
  std::vector<std::size_t> order(posts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return posts[a].id < posts[b].id; });
  OccurrenceTable table;
  for (const auto i : order) {
    if (!matched[i].empty()) table.add_row(posts[i].id, std::move(matched[i]));
  }
  return table;
}

ConceptPairTable::ConceptPairTable(std::vector<PairWeight> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const PairWeight& a, const PairWeight& b) { return a.pair < b.pair; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].weight == 0) throw DataError("pair table entries must have weight >= 1");
    if (i > 0 && entries_[i].pair == entries_[i - 1].pair) {
      throw DataError("pair table lists a pair twice");
    }
    if (entries_[i].pair.first == entries_[i].pair.second) {
      throw DataError("pair table contains a self pair");
    }
  }
}

std::uint32_t ConceptPairTable::weight(WordPair p) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                                   [](const PairWeight& e, WordPair q) { return e.pair < q; });
  return (it != entries_.end() && it->pair == p) ? it->weight : 0;
}

std::uint64_t ConceptPairTable::total_weight() const {
  std::uint64_t total = 0;
  for (const auto& e : entries_) total += e.weight;
  return total;
}

ConceptPairTable count_pairs(const OccurrenceTable& table) {
  PairCounter counter(table.words());
  for (std::size_t r = 0; r < table.rows(); ++r) counter.add_row(table.row(r));
  std::vector<PairWeight> entries;
  counter.drain([&](WordPair p, std::uint32_t c) { entries.push_back({p, c}); });
  return ConceptPairTable(std::move(entries));
}

std::uint64_t pair_mass(const OccurrenceTable& table) {
  std::uint64_t mass = 0;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    const std::uint64_t k = table.row_size(r);
    mass += k * (k - 1) / 2;
  }
  return mass;
}

bool assignment_feasible(std::span<const std::uint32_t> row_sizes,
                         std::span<const WordId> occurrences) {
  std::vector<std::uint64_t> rows(row_sizes.begin(), row_sizes.end());
  const std::uint64_t total = std::accumulate(rows.begin(), rows.end(), std::uint64_t{0});
  if (total != occurrences.size()) return false;

  std::unordered_map<WordId, std::uint64_t> mult;
  for (const auto w : occurrences) ++mult[w];
  std::vector<std::uint64_t> words;
  words.reserve(mult.size());
  for (const auto& [w, m] : mult) words.push_back(m);
  std::sort(words.begin(), words.end());
  std::sort(rows.begin(), rows.end(), std::greater<>());

  // Gale-Ryser: for every k, the k largest rows fit into sum_j min(m_j, k).
  std::uint64_t lhs = 0;
  std::uint64_t small_sum = 0;  // sum of multiplicities < k
  std::size_t small = 0;        // number of multiplicities < k
  for (std::size_t k = 1; k <= rows.size(); ++k) {
    lhs += rows[k - 1];
    while (small < words.size() && words[small] < k) small_sum += words[small++];
    const std::uint64_t rhs = small_sum + static_cast<std::uint64_t>(k) * (words.size() - small);
    if (lhs > rhs) return false;
  }
  return true;
}

std::vector<WordId> shuffle_slots(std::span<const std::uint32_t> row_sizes,
                                  std::span<const WordId> occurrences, std::uint64_t seed,
                                  unsigned mixing_sweeps) {
  if (!assignment_feasible(row_sizes, occurrences)) {
    throw DataError("no duplicate-free assignment exists for these row sizes and word counts");
  }
  const std::size_t n_slots = occurrences.size();
  if (n_slots > 0xFFFFFFFFu) throw DataError("too many occurrences in one window for the sampler");
  std::vector<std::uint32_t> slot_row(n_slots);
  std::vector<std::size_t> row_begin(row_sizes.size() + 1, 0);
  for (std::size_t r = 0; r < row_sizes.size(); ++r) {
    row_begin[r + 1] = row_begin[r] + row_sizes[r];
    std::fill(slot_row.begin() + static_cast<std::ptrdiff_t>(row_begin[r]),
              slot_row.begin() + static_cast<std::ptrdiff_t>(row_begin[r + 1]),
              static_cast<std::uint32_t>(r));
  }

  Rng rng(seed);
  std::vector<WordId> slots(occurrences.begin(), occurrences.end());
  std::vector<std::size_t> conflicts;
  const std::uint64_t max_failures = 10 * static_cast<std::uint64_t>(n_slots);
  constexpr int kMaxRedraws = 100;

  auto is_conflict = [&](std::size_t s) {
    const auto r = slot_row[s];
    for (std::size_t i = row_begin[r]; i < row_begin[r + 1]; ++i) {
      if (i != s && slots[i] == slots[s]) return true;
    }
    return false;
  };

  for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
    std::copy(occurrences.begin(), occurrences.end(), slots.begin());
    rng.shuffle(std::span<WordId>(slots));

    conflicts.clear();
    for (std::size_t r = 0; r < row_sizes.size(); ++r) {
      for (std::size_t i = row_begin[r] + 1; i < row_begin[r + 1]; ++i) {
        if (row_contains(slots, row_begin[r], i, slots[i])) conflicts.push_back(i);
      }
    }

    std::uint64_t failures = 0;
    bool gave_up = false;
    while (!conflicts.empty()) {
      const std::size_t s = conflicts.back();
      if (!is_conflict(s)) {
        conflicts.pop_back();
        continue;
      }
      const auto t = static_cast<std::size_t>(rng.below(n_slots));
      const auto rs = slot_row[s], rt = slot_row[t];
      const WordId ws = slots[s], wt = slots[t];
      if (rs != rt && ws != wt && !row_contains(slots, row_begin[rs], row_begin[rs + 1], wt) &&
          !row_contains(slots, row_begin[rt], row_begin[rt + 1], ws)) {
        std::swap(slots[s], slots[t]);
        conflicts.pop_back();
      } else if (++failures > max_failures) {
        gave_up = true;
        break;
      }
    }
    if (gave_up) continue;

    // Symmetric swap proposals between rows keep the uniform distribution
    // over valid assignments invariant, so this removes the repair bias.
    const std::uint64_t steps = static_cast<std::uint64_t>(mixing_sweeps) * n_slots;
    for (std::uint64_t k = 0; k < steps && row_sizes.size() > 1; ++k) {
      const auto [s, t] = rng.two_below(static_cast<std::uint32_t>(n_slots));
      const auto rs = slot_row[s], rt = slot_row[t];
      const WordId ws = slots[s], wt = slots[t];
      if (rs != rt && ws != wt && !row_contains(slots, row_begin[rs], row_begin[rs + 1], wt) &&
          !row_contains(slots, row_begin[rt], row_begin[rt + 1], ws)) {
        std::swap(slots[s], slots[t]);
      }
    }
    return slots;
  }
  throw DataError("shuffle sampler gave up after " + std::to_string(kMaxRedraws) +
                  " redraws (seed " + std::to_string(seed) + ")");
}

OccurrenceTable shuffle_assignment(const OccurrenceTable& table, std::uint64_t seed) {
  const auto sizes = table.row_sizes();
  return table.with_slots(shuffle_slots(sizes, table.words(), seed));
}

NullMoments moments_from_sums(std::uint64_t sum, std::uint64_t sum_squares,
                              std::size_t replicates) {
  if (replicates == 0) return {};
  const auto r = static_cast<uint128>(replicates);
  const uint128 scaled = r * sum_squares - static_cast<uint128>(sum) * sum;
  const double rd = static_cast<double>(replicates);
  const double variance = static_cast<double>(scaled) / (rd * rd);
  return {static_cast<double>(sum) / rd, std::sqrt(variance)};
}

NullStats::NullStats(std::vector<NullEntry> entries, std::size_t replicates, std::uint64_t seed)
    : entries_(std::move(entries)), replicates_(replicates), seed_(seed) {
  std::sort(entries_.begin(), entries_.end(),
            [](const NullEntry& a, const NullEntry& b) { return a.pair < b.pair; });
}

NullMoments NullStats::moments(WordPair p) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                                   [](const NullEntry& e, WordPair q) { return e.pair < q; });
  return (it != entries_.end() && it->pair == p) ? it->moments : NullMoments{};
}

NullStats null_stats(const OccurrenceTable& table, const NullModelOptions& options) {
  if (options.replicates < 2) throw ConfigError("null model needs at least 2 replicates");
  const auto sizes = table.row_sizes();
  const auto occurrences = table.words();

  struct Sums {
    std::uint64_t sum = 0;
    std::uint64_t sum_squares = 0;
  };
  using Accumulator = std::unordered_map<std::uint64_t, Sums>;
  const unsigned workers = std::max(1u, options.workers);
  std::vector<Accumulator> partial(workers);

  parallel_chunks(options.replicates, workers, [&](unsigned w, std::size_t begin, std::size_t end) {
    PairCounter counter(occurrences);
    std::vector<WordId> row_buf;
    auto& acc = partial[w];
    for (std::size_t r = begin; r < end; ++r) {
      const auto slots = shuffle_slots(sizes, occurrences, derive_seed(options.seed, r), options.mixing_sweeps);
      if (options.on_replicate) options.on_replicate(r, table.with_slots(slots));
      for (std::size_t row = 0; row < table.rows(); ++row) {
        const auto off = table.offsets();
        row_buf.assign(slots.begin() + off[row], slots.begin() + off[row + 1]);
        std::sort(row_buf.begin(), row_buf.end());
        counter.add_row(row_buf);
      }
      counter.drain([&](WordPair p, std::uint32_t c) {
        auto& s = acc[p.key()];
        s.sum += c;
        s.sum_squares += static_cast<std::uint64_t>(c) * c;
      });
    }
  });

  // Integer sums merge exactly, so the result is independent of chunking.
  Accumulator merged = std::move(partial[0]);
  for (std::size_t w = 1; w < partial.size(); ++w) {
    for (const auto& [key, s] : partial[w]) {
      auto& m = merged[key];
      m.sum += s.sum;
      m.sum_squares += s.sum_squares;
    }
  }
  std::vector<NullEntry> entries;
  entries.reserve(merged.size());
  for (const auto& [key, s] : merged) {
    entries.push_back({WordPair::from_key(key),
                       moments_from_sums(s.sum, s.sum_squares, options.replicates)});
  }
  return NullStats(std::move(entries), options.replicates, options.seed);
}

double link_strength(std::uint32_t weight, const NullMoments& null) {
  const double w = weight;
  if (null.stddev > 0) return (w - null.mean) / null.stddev;
  if (w > null.mean) return std::numeric_limits<double>::infinity();
  if (w < null.mean) return -std::numeric_limits<double>::infinity();
  return 0.0;
}

void SignificanceConfig::validate() const {
  if (!std::isfinite(strength)) throw ConfigError("strength threshold must be finite");
  if (!(weight_percentile > 0.0 && weight_percentile <= 100.0)) {
    throw ConfigError("weight percentile must lie in (0, 100]");
  }
}

std::uint32_t weight_cutoff(std::span<const std::uint32_t> weights, double percentile) {
  if (weights.empty()) return 0;
  std::vector<std::uint32_t> sorted(weights.begin(), weights.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double n = static_cast<double>(sorted.size());
  const auto allowed = static_cast<std::size_t>(std::ceil(percentile * n / 100.0 - 1e-9));
  std::uint32_t cutoff = sorted.front();
  std::size_t i = 0;
  while (i < sorted.size()) {
    const std::uint32_t w = sorted[i];
    while (i < sorted.size() && sorted[i] == w) ++i;
    if (i > allowed) break;  // i = number of pairs with weight >= w
    cutoff = w;
  }
  return cutoff;
}

std::vector<WordPair> ConceptNetwork::significant_pairs() const {
  std::vector<WordPair> out;
  for (const auto& l : links) {
    if (l.significant) out.push_back(l.pair);
  }
  return out;
}

std::size_t ConceptNetwork::significant_count() const {
  return static_cast<std::size_t>(
      std::count_if(links.begin(), links.end(), [](const ConceptLink& l) { return l.significant; }));
}

std::vector<ConceptLink> score_links(const ConceptPairTable& pairs, const NullStats& null) {
  std::vector<ConceptLink> links;
  links.reserve(pairs.size());
  for (const auto& e : pairs.entries()) {
    ConceptLink link;
    link.pair = e.pair;
    link.weight = e.weight;
    link.null = null.moments(e.pair);
    link.strength = link_strength(e.weight, link.null);
    links.push_back(link);
  }
  return links;
}

ConceptNetwork significant_links(std::vector<ConceptLink> links, const SignificanceConfig& cfg,
                                 std::string snapshot) {
  cfg.validate();
  std::sort(links.begin(), links.end(),
            [](const ConceptLink& a, const ConceptLink& b) { return a.pair < b.pair; });
  std::vector<std::uint32_t> weights;
  weights.reserve(links.size());
  for (const auto& l : links) weights.push_back(l.weight);
  ConceptNetwork net;
  net.snapshot = std::move(snapshot);
  net.config = cfg;
  net.weight_cutoff = weight_cutoff(weights, cfg.weight_percentile);
  for (auto& l : links) l.significant = l.weight >= net.weight_cutoff && l.strength >= cfg.strength;
  net.links = std::move(links);
  return net;
}

}  // namespace emonet
