#include "acceptance.hpp"

#include <chrono>
#include <cmath>
#include <map>

#include "emonet/conceptnet.hpp"
#include "../support/oracles.hpp"

namespace acceptance {

using namespace emonet;

std::vector<std::vector<std::vector<std::uint32_t>>> null_fixtures() {
  return {
      // mixed row sizes, four words
      {{0, 1}, {0, 2}, {1, 2}, {0, 1, 2}, {3}, {1, 3}},
      // tight: every row must omit exactly one of four words
      {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}},
      {{0, 1, 2}, {0, 3}, {1, 4}, {2, 3}, {0, 1}, {4}},
      // eight words, sparse
      {{0, 7}, {1, 6}, {2, 5}, {3, 4}, {0, 1}},
      // one dominant word
      {{0, 1}, {0, 2}, {0, 3}, {0, 1, 4}, {0, 2}, {3, 4}},
      // singletons and one large row
      {{0}, {1}, {2}, {0, 1, 2, 3}, {3}, {0, 4}},
      {{0}, {1}, {0, 1}, {2}, {0, 2}, {1, 2}, {0, 1, 2}, {3}},
      // eight posts, six words
      {{0, 1, 2}, {0, 3}, {1, 4}, {2, 5}, {0, 1}, {3, 4, 5}, {0}, {2, 4}},
  };
}

Outcome criterion_null_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr std::size_t kReplicates = 1000;
  std::size_t pairs = 0, within = 0, tables = 0;
  bool marginals_ok = true;
  std::string detail;

  for (const auto& rows : null_fixtures()) {
    OccurrenceTable table;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      table.add_row("p" + std::to_string(r), std::vector<WordId>(rows[r].begin(), rows[r].end()));
    }
    const auto exact = oracle::enumerate_null(rows);

    std::map<WordId, std::size_t> word_totals;
    for (auto w : table.words()) ++word_totals[w];
    const auto sizes = table.row_sizes();

    NullModelOptions opts;
    opts.replicates = kReplicates;
    opts.seed = 1000 + tables;
    opts.on_replicate = [&](std::size_t, const OccurrenceTable& t) {
      std::map<WordId, std::size_t> totals;
      for (auto w : t.words()) ++totals[w];
      bool ok = totals == word_totals && t.row_sizes() == sizes;
      for (std::size_t r = 0; r < t.rows(); ++r) {
        const auto row = t.row(r);
        for (std::size_t i = 1; i < row.size(); ++i) ok = ok && row[i - 1] != row[i];
      }
      if (!ok) marginals_ok = false;
    };
    const auto stats = null_stats(table, opts);

    for (const auto& [key, m] : exact.pairs) {
      const auto est = stats.moments(WordPair(key.first, key.second));
      const double se = std::sqrt(m.variance / kReplicates);
      const bool ok = se == 0 ? std::fabs(est.mean - m.mean) < 1e-12
                              : std::fabs(est.mean - m.mean) <= 3 * se;
      ++pairs;
      within += ok;
    }
    ++tables;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double frac = static_cast<double>(within) / static_cast<double>(pairs);
  Outcome o;
  o.pass = tables >= 5 && frac >= 0.95 && marginals_ok && secs < 10.0;
  o.detail = std::to_string(tables) + " tables, " + std::to_string(within) + "/" +
             std::to_string(pairs) + " pairs within 3 SE (" + fmt(100 * frac, 1) +
             "%, need >= 95%), marginals " + (marginals_ok ? "preserved" : "VIOLATED") + ", " +
             fmt(secs, 2) + " s (limit 10 s)";
  return o;
}

}  // namespace acceptance
