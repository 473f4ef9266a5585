#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "emonet/corpus.hpp"

namespace emonet {

// Half-open [start, end).
struct Interval {
  Timestamp start;
  Timestamp end;

  bool contains(Timestamp t) const noexcept { return start <= t && t < end; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Window {
  std::string id;
  Interval span;

  friend bool operator==(const Window&, const Window&) = default;
};

// A partition of a period into ordered, non-overlapping windows that cover it
// exactly. The named constructors validate and throw ConfigError.
class WindowSpec {
 public:
  enum class Scheme { kDaily, kDailySplit, kWeekly, kQuarterly, kExplicit };

  static WindowSpec daily(Interval period);
  // First day split at `split` into a "before" and an "after" window.
  static WindowSpec daily_split(Interval period, Timestamp split);
  static WindowSpec weekly(Interval period);
  // Quarter boundaries fall on the first of every third month counted from
  // anchor_month (1-12), at local midnight for the given UTC offset.
  static WindowSpec quarterly(Interval period, unsigned anchor_month,
                              std::chrono::seconds utc_offset = std::chrono::seconds{0});
  static WindowSpec explicit_intervals(Interval period, std::vector<Interval> intervals);

  Scheme scheme() const noexcept { return scheme_; }
  const Interval& period() const noexcept { return period_; }
  const std::vector<Window>& windows() const noexcept { return windows_; }

  // Canonical one-line description, used in run fingerprints.
  std::string describe() const;

 private:
  WindowSpec(Scheme scheme, Interval period, std::vector<Interval> cuts, std::string params);

  Scheme scheme_;
  Interval period_;
  std::vector<Window> windows_;
  std::string params_;
};

struct WindowPosts {
  Window window;
  std::vector<Post> posts;  // sorted by id
};

struct WindowedCorpus {
  std::vector<WindowPosts> windows;
  std::size_t dropped = 0;  // posts outside the period
};

WindowedCorpus assign_windows(std::vector<Post> posts, const WindowSpec& spec);

}  // namespace emonet
