#include <cmath>
#include <numeric>
#include <random>
#include <algorithm>

#include "acceptance.hpp"
#include "emonet/diagnostics.hpp"
#include "emonet/stats.hpp"
#include "emonet/emotionet.hpp"
#include "../support/oracles.hpp"

namespace acceptance {

using namespace emonet;

Outcome criterion_kernels() {
  constexpr double kTol = 1e-12;
  std::vector<std::string> failures;
  auto check = [&](const std::string& what, double got, double want) {
    if (!oracle::rel_close(got, want, kTol)) {
      failures.push_back(what + " got " + fmt(got, 17) + " want " + fmt(want, 17));
    }
  };

  // Spearman with ties in both inputs.
  const std::vector<double> x = {1, 2, 2, 3, 5, 5, 5, 8, 9, 9};
  const std::vector<double> y = {2, 1, 4, 4, 3, 7, 6, 6, 9, 8};
  const auto c = spearman(x, y);
  const double rho = oracle::spearman_rho(x, y);
  check("spearman rho", c.rho, rho);
  const double n = static_cast<double>(x.size());
  check("spearman p", c.p, oracle::t_two_sided(rho * std::sqrt((n - 2) / (1 - rho * rho)), n - 2));

  // BH: the worked example and a larger vector with ties.
  const std::vector<double> p3 = {0.01, 0.02, 0.04};
  const auto a3 = fdr_adjust(p3);
  const std::vector<double> want3 = {0.03, 0.03, 0.04};
  for (std::size_t i = 0; i < 3; ++i) check("bh example[" + std::to_string(i) + "]", a3[i], want3[i]);
  const std::vector<double> p9 = {0.2, 0.001, 0.04, 0.04, 0.5, 0.013, 0.9, 0.0301, 0.04};
  const auto a9 = fdr_adjust(p9);
  const auto w9 = oracle::bh(p9);
  for (std::size_t i = 0; i < p9.size(); ++i) check("bh[" + std::to_string(i) + "]", a9[i], w9[i]);

  // Pooled two-sample t-test.
  const std::vector<double> ga = {0.92, 1.31, 1.07, 0.88, 1.45, 1.12, 0.97};
  const std::vector<double> gb = {0.71, 0.95, 0.83, 1.02, 0.66, 0.79};
  const auto t = ttest_two_sample(ga, gb, true);
  const auto tw = oracle::pooled_t(ga, gb);
  check("t", t.t, tw.t);
  check("df", t.df, tw.df);
  check("cohens d", t.cohens_d, tw.d);
  check("t p", t.p, oracle::t_two_sided(tw.t, tw.df));

  // Jaccard.
  ConceptLinkSet la = make_link_set({{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "e"}});
  ConceptLinkSet lb = make_link_set({{"a", "c"}, {"b", "d"}, {"d", "f"}});
  check("jaccard", jaccard(la, lb), oracle::jaccard(la, lb));
  {
    ScopedWarningCapture quiet;
    check("jaccard empty", jaccard({}, {}), oracle::jaccard({}, {}));
  }

  Outcome o;
  o.pass = failures.empty();
  o.detail = failures.empty() ? "spearman (ties), BH, pooled t, Jaccard agree with brute force to 1e-12"
                              : failures.front() + (failures.size() > 1 ? " (+" + std::to_string(failures.size() - 1) + " more)" : "");
  return o;
}

Outcome criterion_emotion_arithmetic() {
  std::vector<std::string> failures;
  // Word counts per dimension of the published dictionary (792 words).
  std::vector<LexiconEntry> entries;
  const std::pair<EmotionDim, std::size_t> counts[] = {
      {EmotionDim::kAnger, 139},   {EmotionDim::kConfusion, 197}, {EmotionDim::kDepression, 109},
      {EmotionDim::kFatigue, 70},  {EmotionDim::kTension, 121},   {EmotionDim::kVigor, 156}};
  std::array<std::size_t, kNumDims> n{};
  for (const auto& [d, k] : counts) {
    n[index_of(d)] = k;
    for (std::size_t i = 0; i < k; ++i) {
      entries.push_back({std::string(to_string(d)) + "_" + std::to_string(i), d});
    }
  }
  const auto lex = Lexicon::from_entries(entries);
  if (lex.size() != 792) failures.push_back("lexicon size " + std::to_string(lex.size()));
  if (possible_pairs(lex, {EmotionDim::kAnger, EmotionDim::kTension}) != 16819) {
    failures.push_back("Anger-Tension possible pairs");
  }
  if (possible_pairs(lex, {EmotionDim::kFatigue, EmotionDim::kFatigue}) != 2415) {
    failures.push_back("Fatigue intra possible pairs");
  }
  for (const auto& key : all_emotion_links()) {
    const std::uint64_t ni = n[index_of(key.a)], nj = n[index_of(key.b)];
    const std::uint64_t want = key.intra() ? ni * (ni - 1) / 2 : ni * nj;
    if (possible_pairs(lex, key) != want) failures.push_back("closed form mismatch");
  }

  // Rescaled medians of non-degenerate fixtures.
  const EmotionVector fixtures[] = {
      {0.1, 0.02, 0.03, 0.0, 0.05, 0.07, 0.2, 0.01, 0.0, 0.03, 0.04, 0.06, 0.09, 0.0, 0.11, 0.013,
       0.017, 0.019, 0.0, 0.3, 0.021},
      {1e-5, 3e-5, 7e-5, 2e-5, 9e-5, 1e-4, 3e-4, 5e-5, 4e-5, 6e-5, 8e-5, 2e-4, 1.1e-4, 1.3e-4,
       1.7e-4, 1.9e-4, 2.3e-4, 2.9e-4, 3.1e-4, 3.7e-4, 4.1e-4},
      {0.333, 0.25, 0.125, 0.5, 0.75, 0.2, 0.1, 0.4, 0.6, 0.7, 0.8, 0.9, 0.15, 0.35, 0.45, 0.55,
       0.65, 0.85, 0.95, 0.05, 1.0},
  };
  for (const auto& raw : fixtures) {
    EmotionNetwork net;
    net.raw = raw;
    const auto r = rescale(net);
    if (median(r.rescaled) != 1.0) failures.push_back("rescaled median " + fmt(median(r.rescaled), 17));
  }
  Outcome o;
  o.pass = failures.empty();
  o.detail = failures.empty()
                 ? "792-word lexicon: Anger-Tension 16819, Fatigue intra 2415, all 21 closed forms; "
                   "rescaled median exactly 1 on 3 fixtures"
                 : failures.front();
  return o;
}

Outcome criterion_stability_calibration() {
  constexpr int kSeeds = 50;
  constexpr std::size_t kUniverse = 300;
  constexpr std::size_t kWindows = 6;
  std::size_t total = 0, small = 0;
  for (int s = 0; s < kSeeds; ++s) {
    // Flags drawn from the test's own null: each window marks a fixed number
    // of distinct links uniformly at random.
    std::mt19937_64 gen(4242 + s);
    std::vector<std::vector<bool>> flags(kUniverse, std::vector<bool>(kWindows, false));
    for (std::size_t t = 0; t < kWindows; ++t) {
      std::vector<std::size_t> idx(kUniverse);
      std::iota(idx.begin(), idx.end(), 0);
      std::shuffle(idx.begin(), idx.end(), gen);
      const std::size_t k = 20 + 10 * t;
      for (std::size_t i = 0; i < k; ++i) flags[idx[i]][t] = true;
    }
    const auto res = link_stability(flags, kUniverse, 1000, 9000 + s);
    for (double p : res.p) {
      ++total;
      small += p <= 0.05;
    }
  }
  const double frac = static_cast<double>(small) / static_cast<double>(total);
  const double se = std::sqrt(0.05 * 0.95 / static_cast<double>(total));
  Outcome o;
  o.pass = frac <= 0.05 + 3 * se;
  o.detail = "fraction p <= 0.05: " + fmt(frac, 5) + " over " + std::to_string(total) +
             " links in 50 seeds (need <= " + fmt(0.05 + 3 * se, 5) + ")";
  return o;
}

}  // namespace acceptance
