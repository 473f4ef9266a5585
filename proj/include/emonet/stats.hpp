#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "emonet/emotionet.hpp"

namespace emonet {

// 1-based ranks, ties receive the average of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

struct Correlation {
  double rho = 0;
  double p = 1;
};

enum class PValueMethod {
  kTApproximation,    // t = rho sqrt((n-2)/(1-rho^2)), df = n-2, two-sided
  kExactPermutation,  // all n! rank permutations, n <= 8
};

// Spearman correlation as the Pearson correlation of average-rank vectors.
// Needs equal lengths >= 3 and non-constant inputs (DegenerateError otherwise).
Correlation spearman(std::span<const double> x, std::span<const double> y,
                     PValueMethod method = PValueMethod::kTApproximation);

// Two-sided p-value of a Student t statistic.
double student_t_two_sided_p(double t, double df);

// Benjamini-Hochberg adjusted p-values, in input order.
std::vector<double> fdr_adjust(std::span<const double> p);

// Significant concept links keyed by word text, sorted and unique with
// first < second inside each pair.
using ConceptLinkSet = std::vector<std::pair<std::string, std::string>>;
ConceptLinkSet make_link_set(std::vector<std::pair<std::string, std::string>> links);

// |a & b| / |a | b|; two empty sets give 1 (with a warning).
double jaccard(const ConceptLinkSet& a, const ConceptLinkSet& b);

struct TTestResult {
  double t = 0;
  double df = 0;
  double p = 1;
  double cohens_d = 0;
};

// Two-sample t-test; Student (pooled variance) by default, Welch otherwise.
// Cohen's d always uses the pooled standard deviation. Positive t means a has
// the larger mean.
TTestResult ttest_two_sample(std::span<const double> a, std::span<const double> b,
                             bool pooled = true);

struct StabilityResult {
  std::vector<std::uint32_t> repetitions;  // windows in which each pair is significant
  std::vector<double> p;
};

// Concept-link stability test. flags[pair][window] marks significance; the
// tracked pairs are the first flags.size() of `universe` possible links (the
// rest are never significant). Under the null, each window draws the same
// number of significant links uniformly from the universe; p is the fraction
// of resamples in which the pair repeats at least as often as observed.
StabilityResult link_stability(std::span<const std::vector<bool>> flags, std::size_t universe,
                               std::size_t resamples, std::uint64_t seed);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t n, double fill) : n_(n), v_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return v_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return v_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> v_;
};

enum class LinkScope { kAll21, kInter15 };
enum class CompareMode { kWithin, kAcross };

std::string_view to_string(LinkScope s) noexcept;

// Strengths restricted to the scope, in canonical key order.
std::vector<double> scoped_values(const EmotionVector& v, LinkScope scope);

struct Snapshot {
  std::string label;
  EmotionVector raw{};
  ConceptLinkSet significant;
};

struct DatasetSnapshots {
  std::string name;
  std::vector<Snapshot> snapshots;
};

struct ComparisonReport {
  CompareMode mode = CompareMode::kWithin;
  LinkScope scope = LinkScope::kAll21;
  std::vector<std::string> labels;
  Matrix rho;
  Matrix p_raw;       // across: mean raw p over cross pairs
  Matrix p_adjusted;  // within: BH over all pairs; across: mean BH-adjusted p
  Matrix jaccard;
  Matrix rho_sd;      // across: spread of the cross-pair correlations
  // Off-diagonal correlations in (i < j) order; the Table-style summary.
  std::vector<double> pair_rho;
  std::vector<double> pair_p_adjusted;
};

// Pairwise comparison of the snapshots of one dataset. Diagonal cells hold 1
// (rho, jaccard) and 0 (p).
ComparisonReport compare_within(std::span<const Snapshot> snapshots, LinkScope scope);

// Dataset-level comparison: every cell averages the snapshot correlations over
// all cross pairs (distinct pairs only on the diagonal). p-values are
// BH-adjusted within each cell's family of pairs and then averaged.
ComparisonReport compare_across(std::span<const DatasetSnapshots> datasets, LinkScope scope);

struct LinkDelta {
  EmotionLinkKey key;
  TTestResult test;
  double p_fdr = 1;
};

// Per-link pooled t-test of rescaled strengths, a versus b; BH over the 21 links.
std::vector<LinkDelta> strength_deltas(std::span<const EmotionVector> a,
                                       std::span<const EmotionVector> b);

// "***" for p <= .001, "**" for p <= .01, "*" for p <= .05, else "".
std::string significance_stars(double p);

}  // namespace emonet
