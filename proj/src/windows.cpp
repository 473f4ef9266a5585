#include "emonet/windows.hpp"

#include <algorithm>

#include "emonet/error.hpp"

namespace emonet {
namespace {

using std::chrono::days;
using std::chrono::seconds;

void check_period(const Interval& period) {
  if (!(period.start < period.end)) throw ConfigError("window period must have start < end");
}

std::vector<Interval> fixed_steps(Interval period, Timestamp first_cut, seconds step) {
  std::vector<Interval> out;
  Timestamp start = period.start;
  Timestamp cut = first_cut;
  while (start < period.end) {
    const Timestamp end = std::min(cut, period.end);
    out.push_back({start, end});
    start = end;
    cut = end + step;
  }
  return out;
}

std::string scheme_name(WindowSpec::Scheme s) {
  switch (s) {
    case WindowSpec::Scheme::kDaily: return "daily";
    case WindowSpec::Scheme::kDailySplit: return "daily-split";
    case WindowSpec::Scheme::kWeekly: return "weekly";
    case WindowSpec::Scheme::kQuarterly: return "quarterly";
    case WindowSpec::Scheme::kExplicit: return "explicit";
  }
  return "?";
}

}  // namespace

WindowSpec::WindowSpec(Scheme scheme, Interval period, std::vector<Interval> cuts,
                       std::string params)
    : scheme_(scheme), period_(period), params_(std::move(params)) {
  const std::size_t width = std::max<std::size_t>(2, std::to_string(cuts.size()).size());
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    std::string n = std::to_string(i + 1);
    windows_.push_back({"w" + std::string(width - n.size(), '0') + n, cuts[i]});
  }
}

WindowSpec WindowSpec::daily(Interval period) {
  check_period(period);
  return {Scheme::kDaily, period, fixed_steps(period, period.start + days{1}, days{1}), ""};
}

WindowSpec WindowSpec::daily_split(Interval period, Timestamp split) {
  check_period(period);
  const Timestamp first_day_end = std::min(period.start + days{1}, period.end);
  if (!(period.start < split && split < first_day_end)) {
    throw ConfigError("daily-split instant must fall strictly inside the first day of the period");
  }
  std::vector<Interval> cuts{{period.start, split}};
  for (const auto& iv : fixed_steps({split, period.end}, first_day_end, days{1})) {
    cuts.push_back(iv);
  }
  return {Scheme::kDailySplit, period, std::move(cuts), "split=" + format_timestamp(split)};
}

WindowSpec WindowSpec::weekly(Interval period) {
  check_period(period);
  return {Scheme::kWeekly, period, fixed_steps(period, period.start + days{7}, days{7}), ""};
}

WindowSpec WindowSpec::quarterly(Interval period, unsigned anchor_month, seconds utc_offset) {
  using namespace std::chrono;
  check_period(period);
  if (anchor_month < 1 || anchor_month > 12) {
    throw ConfigError("quarterly anchor month must be in 1..12");
  }
  // Work in local time, then shift back to UTC.
  const auto local_start = period.start + utc_offset;
  year_month ym{year_month_day{floor<days>(local_start)}.year(),
                year_month_day{floor<days>(local_start)}.month()};
  std::vector<Interval> cuts;
  Timestamp start = period.start;
  while (start < period.end) {
    ym += months{1};
    const int rel = (static_cast<int>(static_cast<unsigned>(ym.month())) -
                     static_cast<int>(anchor_month) + 12) % 3;
    if (rel != 0) continue;
    const Timestamp boundary = sys_days{ym / 1} - utc_offset;
    if (boundary <= start) continue;
    const Timestamp end = std::min(boundary, period.end);
    cuts.push_back({start, end});
    start = end;
  }
  const int off_min = static_cast<int>(utc_offset.count() / 60);
  return {Scheme::kQuarterly, period, std::move(cuts),
          "anchor=" + std::to_string(anchor_month) + ";offset_min=" + std::to_string(off_min)};
}

WindowSpec WindowSpec::explicit_intervals(Interval period, std::vector<Interval> intervals) {
  check_period(period);
  if (intervals.empty()) throw ConfigError("explicit window list is empty");
  std::string params;
  Timestamp expected = period.start;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto& iv = intervals[i];
    if (!(iv.start < iv.end)) {
      throw ConfigError("explicit window " + std::to_string(i + 1) + " is empty or reversed");
    }
    if (iv.start < expected) {
      throw ConfigError("explicit window " + std::to_string(i + 1) + " overlaps its predecessor");
    }
    if (iv.start > expected) {
      throw ConfigError("gap before explicit window " + std::to_string(i + 1));
    }
    expected = iv.end;
    params += format_timestamp(iv.start) + "/" + format_timestamp(iv.end) + ",";
  }
  if (expected != period.end) {
    throw ConfigError("explicit windows do not end at the period end");
  }
  return {Scheme::kExplicit, period, std::move(intervals), params};
}

std::string WindowSpec::describe() const {
  std::string s = scheme_name(scheme_) + ";period=" + format_timestamp(period_.start) + "/" +
                  format_timestamp(period_.end);
  if (!params_.empty()) s += ";" + params_;
  return s;
}

WindowedCorpus assign_windows(std::vector<Post> posts, const WindowSpec& spec) {
  WindowedCorpus out;
  const auto& windows = spec.windows();
  out.windows.reserve(windows.size());
  for (const auto& w : windows) out.windows.push_back({w, {}});
  for (auto& p : posts) {
    // first window whose end is past the timestamp
    const auto it = std::upper_bound(
        windows.begin(), windows.end(), p.timestamp,
        [](Timestamp t, const Window& w) { return t < w.span.end; });
    if (it == windows.end() || !it->span.contains(p.timestamp)) {
      ++out.dropped;
      continue;
    }
    out.windows[static_cast<std::size_t>(it - windows.begin())].posts.push_back(std::move(p));
  }
  for (auto& w : out.windows) {
    std::sort(w.posts.begin(), w.posts.end(), [](const Post& a, const Post& b) {
      if (a.id != b.id) return a.id < b.id;
      if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
      return a.text < b.text;
    });
  }
  return out;
}

}  // namespace emonet
