#pragma once

// Brute-force reference implementations used to check the library. They are
// deliberately naive and share no code with src/.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

struct PairMoments {
  double mean = 0;
  double variance = 0;
};

struct Enumeration {
  std::size_t count = 0;  // number of valid 0/1 matrices
  std::map<std::pair<std::uint32_t, std::uint32_t>, PairMoments> pairs;
};

// Every 0/1 post-by-word matrix with the row sums and word totals of `rows`,
// each equally likely. Returns exact mean and variance of the co-occurrence
// count of every word pair.
inline Enumeration enumerate_null(const std::vector<std::vector<std::uint32_t>>& rows) {
  std::map<std::uint32_t, int> totals;
  for (const auto& r : rows) {
    for (auto w : r) ++totals[w];
  }
  std::vector<std::uint32_t> words;
  std::vector<int> remaining;
  for (auto [w, c] : totals) {
    words.push_back(w);
    remaining.push_back(c);
  }
  const std::size_t nw = words.size();
  std::vector<std::vector<std::size_t>> chosen(rows.size());
  Enumeration out;

  std::vector<std::vector<double>> c(nw, std::vector<double>(nw, 0.0));
  std::vector<std::vector<double>> s1(nw, std::vector<double>(nw, 0.0));
  std::vector<std::vector<double>> s2(nw, std::vector<double>(nw, 0.0));
  auto leaf = [&] {
    ++out.count;
    for (auto& row : c) std::fill(row.begin(), row.end(), 0.0);
    for (const auto& r : chosen) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = i + 1; j < r.size(); ++j) c[r[i]][r[j]] += 1;
      }
    }
    for (std::size_t a = 0; a < nw; ++a) {
      for (std::size_t b = a + 1; b < nw; ++b) {
        s1[a][b] += c[a][b];
        s2[a][b] += c[a][b] * c[a][b];
      }
    }
  };

  // Row by row, choose an increasing subset of words of the row's size.
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t row, std::size_t start) -> void {
    if (row == rows.size()) {
      if (std::all_of(remaining.begin(), remaining.end(), [](int r) { return r == 0; })) leaf();
      return;
    }
    if (pick.size() == rows[row].size()) {
      chosen[row] = pick;
      auto saved = pick;
      pick.clear();
      self(self, row + 1, 0);
      pick = saved;
      return;
    }
    const auto left = static_cast<int>(rows.size() - row - 1);
    for (std::size_t w = start; w < nw; ++w) {
      if (remaining[w] > 0) {
        --remaining[w];
        pick.push_back(w);
        self(self, row, w + 1);
        pick.pop_back();
        ++remaining[w];
      }
      // Picks increase, so skipping w leaves it out of this row for good.
      if (remaining[w] > left) break;
    }
  };
  rec(rec, 0, 0);

  const double n = static_cast<double>(out.count);
  for (std::size_t a = 0; a < nw; ++a) {
    for (std::size_t b = a + 1; b < nw; ++b) {
      const double mean = s1[a][b] / n;
      out.pairs[{words[a], words[b]}] = {mean, s2[a][b] / n - mean * mean};
    }
  }
  return out;
}

// Rank of x[i]: number of smaller values plus half of the equal ones (itself
// included), i.e. the average rank of a tie group.
inline std::vector<double> naive_ranks(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double less = 0, equal = 0;
    for (double y : x) {
      if (y < x[i]) ++less;
      if (y == x[i]) ++equal;
    }
    r[i] = less + (equal + 1) / 2;
  }
  return r;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double cxy = 0, cxx = 0, cyy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cxy += (x[i] - mx) * (y[i] - my);
    cxx += (x[i] - mx) * (x[i] - mx);
    cyy += (y[i] - my) * (y[i] - my);
  }
  return cxy / std::sqrt(cxx * cyy);
}

inline double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(naive_ranks(x), naive_ranks(y));
}

// Benjamini-Hochberg by definition: adj_i = min over j with p_j >= p_i of
// p_j * m / rank_j, capped at 1.
inline std::vector<double> bh(const std::vector<double>& p) {
  const double m = static_cast<double>(p.size());
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    double best = 1.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j] < p[i]) continue;
      double rank = 0;
      for (double q : p) rank += q <= p[j];
      best = std::min(best, p[j] * m / rank);
    }
    out[i] = best;
  }
  return out;
}

// Two-sided Student t tail probability by composite Simpson quadrature of
// the density over the tail, mapped onto (0, 1] with x = |t| / s.
inline double t_two_sided(double t, double df, int intervals = 1 << 18) {
  const double at = std::fabs(t);
  const double logc = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) - 0.5 * std::log(df * M_PI);
  auto density = [&](double x) { return std::exp(logc - (df + 1) / 2 * std::log1p(x * x / df)); };
  if (at == 0) return 1.0;
  auto g = [&](double s) {
    if (s == 0) return 0.0;
    const double x = at / s;
    return density(x) * at / (s * s);
  };
  const double h = 1.0 / intervals;
  double sum = g(0) + g(1);
  for (int i = 1; i < intervals; ++i) sum += g(i * h) * (i % 2 ? 4 : 2);
  return 2 * sum * h / 3;
}

struct TTest {
  double t, df, d;
};

// Student two-sample t with pooled variance, textbook formulas.
inline TTest pooled_t(const std::vector<double>& a, const std::vector<double>& b) {
  auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  auto ss = [](const std::vector<double>& v, double m) {
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return s;
  };
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double ma = mean(a), mb = mean(b);
  const double sp2 = (ss(a, ma) + ss(b, mb)) / (na + nb - 2);
  return {(ma - mb) / std::sqrt(sp2 * (1 / na + 1 / nb)), na + nb - 2, (ma - mb) / std::sqrt(sp2)};
}

inline double jaccard(const std::vector<std::pair<std::string, std::string>>& a,
                      const std::vector<std::pair<std::string, std::string>>& b) {
  std::set<std::pair<std::string, std::string>> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::size_t inter = 0;
  for (const auto& x : sa) inter += sb.count(x);
  std::set<std::pair<std::string, std::string>> uni = sa;
  uni.insert(sb.begin(), sb.end());
  return uni.empty() ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni.size());
}

inline bool rel_close(double a, double b, double tol) {
  if (a == b) return true;
  return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace oracle
