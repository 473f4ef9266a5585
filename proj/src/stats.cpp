#include "emonet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "emonet/diagnostics.hpp"
#include "emonet/error.hpp"
#include "emonet/rng.hpp"

namespace emonet {
namespace {

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Sum of squared deviations from the mean.
double centered_ss(std::span<const double> v, double m) {
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const double mx = mean_of(x), my = mean_of(y);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

bool is_constant(std::span<const double> v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

double mean_or(const std::vector<double>& v, double fallback) {
  if (v.empty()) return fallback;
  return mean_of(v);
}

double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  return std::sqrt(centered_ss(v, m) / static_cast<double>(v.size() - 1));
}

struct PairFamily {
  std::vector<double> rho;
  std::vector<double> p;
  std::vector<double> jaccard;
};

void score_pair(const Snapshot& a, const Snapshot& b, LinkScope scope, PairFamily& fam) {
  const auto x = scoped_values(a.raw, scope);
  const auto y = scoped_values(b.raw, scope);
  Correlation c;
  try {
    c = spearman(x, y);
  } catch (const DegenerateError& e) {
    throw DegenerateError("comparing \"" + a.label + "\" with \"" + b.label + "\": " + e.what());
  }
  fam.rho.push_back(c.rho);
  fam.p.push_back(c.p);
  fam.jaccard.push_back(jaccard(a.significant, b.significant));
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double student_t_two_sided_p(double t, double df) {
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  const boost::math::students_t_distribution<double> dist(df);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))));
}

Correlation spearman(std::span<const double> x, std::span<const double> y, PValueMethod method) {
  if (x.size() != y.size()) throw DataError("spearman: vectors differ in length");
  if (x.size() < 3) throw DataError("spearman: needs at least 3 observations");
  if (is_constant(x) || is_constant(y)) {
    throw DegenerateError("spearman: correlation undefined for a constant vector");
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  Correlation out;
  out.rho = pearson(rx, ry);
  const double n = static_cast<double>(x.size());

  if (method == PValueMethod::kTApproximation) {
    if (std::fabs(out.rho) >= 1.0) {
      out.p = 0.0;
    } else {
      const double t = out.rho * std::sqrt((n - 2) / (1 - out.rho * out.rho));
      out.p = student_t_two_sided_p(t, n - 2);
    }
    return out;
  }

  if (x.size() > 8) throw ConfigError("exact spearman p-value is limited to n <= 8");
  std::vector<std::size_t> perm(x.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<double> shuffled(x.size());
  std::size_t extreme = 0, total = 0;
  const double observed = std::fabs(out.rho) - 1e-12;
  do {
    for (std::size_t i = 0; i < perm.size(); ++i) shuffled[i] = ry[perm[i]];
    if (std::fabs(pearson(rx, shuffled)) >= observed) ++extreme;
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.p = static_cast<double>(extreme) / static_cast<double>(total);
  return out;
}

std::vector<double> fdr_adjust(std::span<const double> p) {
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) throw DataError("fdr_adjust: p-values must lie in [0, 1]");
  }
  const std::size_t m = p.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
  std::vector<double> out(m);
  double running = 1.0;
  for (std::size_t k = m; k-- > 0;) {
    const std::size_t i = order[k];
    const double q = p[i] * static_cast<double>(m) / static_cast<double>(k + 1);
    running = std::min(running, q);
    out[i] = std::min(1.0, running);
  }
  return out;
}

ConceptLinkSet make_link_set(std::vector<std::pair<std::string, std::string>> links) {
  for (auto& [a, b] : links) {
    if (b < a) std::swap(a, b);
  }
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
  return links;
}

double jaccard(const ConceptLinkSet& a, const ConceptLinkSet& b) {
  if (a.empty() && b.empty()) {
    warn("jaccard index of two empty link sets taken as 1");
    return 1.0;
  }
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const std::size_t uni = a.size() + b.size() - common;
  return static_cast<double>(common) / static_cast<double>(uni);
}

TTestResult ttest_two_sample(std::span<const double> a, std::span<const double> b, bool pooled) {
  if (a.size() < 2 || b.size() < 2) throw DataError("t-test: each sample needs at least 2 values");
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double ma = mean_of(a), mb = mean_of(b);
  const double va = centered_ss(a, ma) / (na - 1);
  const double vb = centered_ss(b, mb) / (nb - 1);
  const double pooled_var = ((na - 1) * va + (nb - 1) * vb) / (na + nb - 2);
  const double pooled_sd = std::sqrt(pooled_var);
  const double diff = ma - mb;

  TTestResult r;
  double se = 0;
  if (pooled) {
    r.df = na + nb - 2;
    se = pooled_sd * std::sqrt(1 / na + 1 / nb);
  } else {
    const double qa = va / na, qb = vb / nb;
    se = std::sqrt(qa + qb);
    r.df = se > 0 ? (qa + qb) * (qa + qb) / (qa * qa / (na - 1) + qb * qb / (nb - 1)) : na + nb - 2;
  }
  if (se == 0) {
    if (diff == 0) return {0.0, r.df, 1.0, 0.0};
    const double inf = std::copysign(std::numeric_limits<double>::infinity(), diff);
    return {inf, r.df, 0.0, inf};
  }
  r.t = diff / se;
  r.p = student_t_two_sided_p(r.t, r.df);
  r.cohens_d = pooled_sd > 0 ? diff / pooled_sd
                             : std::copysign(std::numeric_limits<double>::infinity(), diff);
  return r;
}

StabilityResult link_stability(std::span<const std::vector<bool>> flags, std::size_t universe,
                               std::size_t resamples, std::uint64_t seed) {
  if (resamples < 100) throw ConfigError("link stability needs at least 100 resamples");
  if (universe < flags.size()) throw DataError("link stability: universe smaller than pair count");
  const std::size_t windows = flags.empty() ? 0 : flags.front().size();
  if (windows < 2) throw DataError("link stability needs at least 2 windows");

  StabilityResult out;
  out.repetitions.assign(flags.size(), 0);
  std::vector<std::size_t> per_window(windows, 0);
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i].size() != windows) throw DataError("link stability: ragged flag matrix");
    for (std::size_t t = 0; t < windows; ++t) {
      if (flags[i][t]) {
        ++out.repetitions[i];
        ++per_window[t];
      }
    }
  }

  Rng rng(seed);
  std::vector<std::uint32_t> null_count(flags.size(), 0);
  std::vector<std::uint64_t> exceed(flags.size(), 0);
  std::vector<std::uint32_t> stamp(universe, 0);
  std::vector<std::size_t> touched;
  std::uint32_t generation = 0;

  for (std::size_t s = 0; s < resamples; ++s) {
    for (std::size_t t = 0; t < windows; ++t) {
      // Floyd's sampling of per_window[t] distinct links out of the universe.
      ++generation;
      const std::size_t m = per_window[t];
      for (std::size_t j = universe - m; j < universe; ++j) {
        auto pick = static_cast<std::size_t>(rng.below(j + 1));
        if (stamp[pick] == generation) pick = j;
        stamp[pick] = generation;
        if (pick < flags.size()) {
          if (null_count[pick]++ == 0) touched.push_back(pick);
        }
      }
    }
    for (const auto i : touched) {
      if (out.repetitions[i] > 0 && null_count[i] >= out.repetitions[i]) ++exceed[i];
      null_count[i] = 0;
    }
    touched.clear();
  }

  out.p.resize(flags.size());
  for (std::size_t i = 0; i < flags.size(); ++i) {
    out.p[i] = out.repetitions[i] == 0
                   ? 1.0
                   : static_cast<double>(exceed[i]) / static_cast<double>(resamples);
  }
  return out;
}

std::string_view to_string(LinkScope s) noexcept { return s == LinkScope::kAll21 ? "all21" : "inter15"; }

std::vector<double> scoped_values(const EmotionVector& v, LinkScope scope) {
  if (scope == LinkScope::kAll21) return {v.begin(), v.end()};
  std::vector<double> out;
  out.reserve(kNumInterLinks);
  for (const auto i : inter_link_indices()) out.push_back(v[i]);
  return out;
}

ComparisonReport compare_within(std::span<const Snapshot> snapshots, LinkScope scope) {
  const std::size_t n = snapshots.size();
  if (n < 2) throw DataError("within-dataset comparison needs at least 2 snapshots");
  ComparisonReport rep;
  rep.mode = CompareMode::kWithin;
  rep.scope = scope;
  for (const auto& s : snapshots) rep.labels.push_back(s.label);
  rep.rho = Matrix(n, 1.0);
  rep.p_raw = Matrix(n, 0.0);
  rep.p_adjusted = Matrix(n, 0.0);
  rep.jaccard = Matrix(n, 1.0);
  rep.rho_sd = Matrix(n, 0.0);

  PairFamily fam;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) score_pair(snapshots[i], snapshots[j], scope, fam);
  }
  const auto adjusted = fdr_adjust(fam.p);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      rep.rho(i, j) = rep.rho(j, i) = fam.rho[k];
      rep.p_raw(i, j) = rep.p_raw(j, i) = fam.p[k];
      rep.p_adjusted(i, j) = rep.p_adjusted(j, i) = adjusted[k];
      rep.jaccard(i, j) = rep.jaccard(j, i) = fam.jaccard[k];
    }
  }
  rep.pair_rho = fam.rho;
  rep.pair_p_adjusted = adjusted;
  return rep;
}

ComparisonReport compare_across(std::span<const DatasetSnapshots> datasets, LinkScope scope) {
  const std::size_t n = datasets.size();
  if (n < 2) throw DataError("across-dataset comparison needs at least 2 datasets");
  for (const auto& d : datasets) {
    if (d.snapshots.empty()) throw DataError("dataset \"" + d.name + "\" has no snapshots");
  }
  ComparisonReport rep;
  rep.mode = CompareMode::kAcross;
  rep.scope = scope;
  for (const auto& d : datasets) rep.labels.push_back(d.name);
  rep.rho = Matrix(n, 1.0);
  rep.p_raw = Matrix(n, 0.0);
  rep.p_adjusted = Matrix(n, 0.0);
  rep.jaccard = Matrix(n, 1.0);
  rep.rho_sd = Matrix(n, 0.0);

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      const auto& sa = datasets[a].snapshots;
      const auto& sb = datasets[b].snapshots;
      PairFamily fam;
      if (a == b) {
        for (std::size_t i = 0; i < sa.size(); ++i) {
          for (std::size_t j = i + 1; j < sa.size(); ++j) score_pair(sa[i], sa[j], scope, fam);
        }
      } else {
        for (const auto& x : sa) {
          for (const auto& y : sb) score_pair(x, y, scope, fam);
        }
      }
      if (fam.rho.empty()) continue;  // single-snapshot diagonal keeps the defaults
      const auto adjusted = fdr_adjust(fam.p);
      rep.rho(a, b) = rep.rho(b, a) = mean_or(fam.rho, 1.0);
      rep.rho_sd(a, b) = rep.rho_sd(b, a) = sd_of(fam.rho);
      rep.p_raw(a, b) = rep.p_raw(b, a) = mean_or(fam.p, 0.0);
      rep.p_adjusted(a, b) = rep.p_adjusted(b, a) = mean_or(adjusted, 0.0);
      rep.jaccard(a, b) = rep.jaccard(b, a) = mean_or(fam.jaccard, 1.0);
      if (a != b) {
        rep.pair_rho.push_back(rep.rho(a, b));
        rep.pair_p_adjusted.push_back(rep.p_adjusted(a, b));
      }
    }
  }
  return rep;
}

std::vector<LinkDelta> strength_deltas(std::span<const EmotionVector> a,
                                       std::span<const EmotionVector> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw DataError("strength deltas need at least 2 snapshots per dataset");
  }
  std::vector<LinkDelta> out;
  std::vector<double> p;
  std::vector<double> xa(a.size()), xb(b.size());
  for (const auto& key : all_emotion_links()) {
    const auto k = key.index();
    for (std::size_t i = 0; i < a.size(); ++i) xa[i] = a[i][k];
    for (std::size_t i = 0; i < b.size(); ++i) xb[i] = b[i][k];
    LinkDelta d{key, ttest_two_sample(xa, xb, true), 1.0};
    p.push_back(d.test.p);
    out.push_back(d);
  }
  const auto adjusted = fdr_adjust(p);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].p_fdr = adjusted[i];
  return out;
}

std::string significance_stars(double p) {
  if (p <= 0.001) return "***";
  if (p <= 0.01) return "**";
  if (p <= 0.05) return "*";
  return "";
}

}  // namespace emonet
