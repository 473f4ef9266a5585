#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "emonet/conceptnet.hpp"
#include "emonet/error.hpp"
#include "../support/oracles.hpp"
#include "helpers.hpp"

using namespace emonet;

namespace {

OccurrenceTable table_of(const std::vector<std::vector<WordId>>& rows) {
  OccurrenceTable t;
  for (std::size_t r = 0; r < rows.size(); ++r) t.add_row("p" + std::to_string(r), rows[r]);
  return t;
}

}  // namespace

TEST_CASE("occurrence table rows come from matched posts sorted by id") {
  const auto lex = testing::lexicon_from("angry\tAnger\ncalm\tTension\nsad\tDepression\n");
  const ConceptMatcher m(lex, MatchMode::kToken);
  const std::vector<Post> posts = {{"z", {}, "calm and sad"}, {"a", {}, "angry calm"},
                                   {"m", {}, "nothing"}};
  const auto t = build_occurrence_table(posts, m, 2);
  REQUIRE(t.rows() == 2);
  CHECK(t.post_id(0) == "a");
  CHECK(t.post_id(1) == "z");
  CHECK(t.occurrences() == 4);
}

TEST_CASE("three-post fixture gives the expected pair counts") {
  // words: 0 calm, 1 tense, 2 angry
  const auto t = table_of({{0, 1, 2}, {0, 2}, {1}});
  const auto pairs = count_pairs(t);
  CHECK(pairs.weight({0, 1}) == 1);
  CHECK(pairs.weight({0, 2}) == 2);
  CHECK(pairs.weight({1, 2}) == 1);
  CHECK(pairs.size() == 3);
  CHECK(pairs.total_weight() == pair_mass(t));
}

TEST_CASE("add_row rejects empty rows and repeated words") {
  OccurrenceTable t;
  CHECK_THROWS_AS(t.add_row("x", {}), DataError);
  CHECK_THROWS_AS(t.add_row("x", {1, 1}), DataError);
}

TEST_CASE("feasibility follows the Gale-Ryser condition") {
  const std::vector<std::uint32_t> sizes = {2, 2};
  CHECK(assignment_feasible(sizes, std::vector<WordId>{0, 0, 1, 1}));
  CHECK_FALSE(assignment_feasible(sizes, std::vector<WordId>{0, 0, 0, 1}));
  CHECK_THROWS_AS(shuffle_slots(sizes, std::vector<WordId>{0, 0, 0, 1}, 1), DataError);
}

TEST_CASE("every shuffle preserves marginals and avoids duplicates") {
  const auto t = table_of({{0, 1, 2}, {0, 3}, {1, 2, 3, 4}, {0}, {2, 4}, {0, 1, 4}});
  std::map<WordId, int> totals;
  for (auto w : t.words()) ++totals[w];
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto s = shuffle_assignment(t, seed);
    CHECK(s.row_sizes() == t.row_sizes());
    std::map<WordId, int> got;
    for (auto w : s.words()) ++got[w];
    CHECK(got == totals);
    for (std::size_t r = 0; r < s.rows(); ++r) {
      const auto row = s.row(r);
      CHECK(std::adjacent_find(row.begin(), row.end()) == row.end());
    }
  }
}

TEST_CASE("null moments track exact enumeration on a small table") {
  const std::vector<std::vector<std::uint32_t>> rows = {{0, 1}, {0, 2}, {1, 2}, {0, 1, 2}, {3}, {1, 3}};
  OccurrenceTable t;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    t.add_row("p" + std::to_string(r), std::vector<WordId>(rows[r].begin(), rows[r].end()));
  }
  const auto exact = oracle::enumerate_null(rows);
  CHECK(exact.count == 584);
  NullModelOptions opts;
  opts.replicates = 4000;
  opts.seed = 17;
  const auto stats = null_stats(t, opts);
  for (const auto& [k, m] : exact.pairs) {
    const auto est = stats.moments({k.first, k.second});
    CHECK(std::fabs(est.mean - m.mean) <= 4 * std::sqrt(m.variance / 4000) + 1e-12);
    CHECK(est.stddev == doctest::Approx(std::sqrt(m.variance)).epsilon(0.1));
  }
}

TEST_CASE("null statistics do not depend on the worker count") {
  const auto t = table_of({{0, 1, 2}, {0, 3}, {1, 2, 3, 4}, {0}, {2, 4}, {0, 1, 4}, {3, 5}, {5, 1}});
  NullModelOptions opts;
  opts.replicates = 57;
  opts.seed = 3;
  const auto one = null_stats(t, opts);
  opts.workers = 4;
  CHECK(null_stats(t, opts) == one);
  opts.workers = 8;
  CHECK(null_stats(t, opts) == one);
}

TEST_CASE("moments from integer sums use the population convention") {
  // weights 1, 2, 3, 4 -> mean 2.5, population variance 1.25
  const auto m = moments_from_sums(10, 30, 4);
  CHECK(m.mean == 2.5);
  CHECK(m.stddev == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
  CHECK(moments_from_sums(12, 48, 3).stddev == 0.0);
}

TEST_CASE("link strength is a z-score with signed infinities for zero spread") {
  CHECK(link_strength(7, {4.0, 1.5}) == doctest::Approx(2.0));
  CHECK(link_strength(5, {3.0, 0.0}) == INFINITY);
  CHECK(link_strength(3, {3.0, 0.0}) == 0.0);
  CHECK(link_strength(1, {3.0, 0.0}) == -INFINITY);
}

TEST_CASE("weight cutoff keeps ties together") {
  std::vector<std::uint32_t> w = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55};
  CHECK(weight_cutoff(w, 10) == 55);
  CHECK(weight_cutoff(w, 30) == 21);
  std::vector<std::uint32_t> ties = {4, 4, 4, 4, 1, 1, 1, 1, 1, 1};
  CHECK(weight_cutoff(ties, 10) == 4);
  CHECK(weight_cutoff(std::vector<std::uint32_t>{}, 10) == 0);
}

TEST_CASE("significant links need both the weight cutoff and the strength") {
  std::vector<ConceptLink> links;
  for (WordId i = 0; i < 20; ++i) {
    links.push_back({{i, 100}, 20 + i, {10.0, 1.0}, i >= 18 ? 2.0 : 50.0, false});
  }
  const auto net = significant_links(links, {3.0, 10.0});
  CHECK(net.weight_cutoff == 38);
  CHECK(net.significant_count() == 0);  // the two heaviest are too weak
  const auto loose = significant_links(links, {1.5, 10.0});
  CHECK(loose.significant_count() == 2);
}

TEST_CASE("tightening thresholds never adds links") {
  const auto t = table_of({{0, 1, 2}, {0, 1}, {0, 1, 3}, {2, 3}, {0, 1, 4}, {4, 5}, {0, 5}, {1, 2},
                           {0, 1, 2, 3}, {3, 4, 5}, {0, 1}, {2, 5}});
  NullModelOptions opts;
  opts.replicates = 200;
  opts.seed = 9;
  const auto links = score_links(count_pairs(t), null_stats(t, opts));
  std::size_t previous = SIZE_MAX;
  for (double s : {0.0, 0.5, 1.0, 2.0, 3.0, 5.0}) {
    const auto n = significant_links(links, {s, 50.0}).significant_count();
    CHECK(n <= previous);
    previous = n;
  }
  previous = SIZE_MAX;
  for (double w : {100.0, 50.0, 25.0, 10.0, 1.0}) {
    const auto n = significant_links(links, {0.0, w}).significant_count();
    CHECK(n <= previous);
    previous = n;
  }
}

TEST_CASE("significance config validation") {
  CHECK_THROWS_AS((SignificanceConfig{3.0, 0.0}.validate()), ConfigError);
  CHECK_THROWS_AS((SignificanceConfig{3.0, 101.0}.validate()), ConfigError);
  CHECK_NOTHROW((SignificanceConfig{3.0, 10.0}.validate()));
}
