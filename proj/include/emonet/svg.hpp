#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>

namespace emonet {

struct HeatmapCell {
  double value = 0;
  std::string text;
  bool blank = false;
};

// Static SVG heatmap of an n x n matrix. Values are clamped to [lo, hi] and
// shaded from white to dark blue; `text` is drawn centred in each cell.
std::string render_heatmap(std::span<const std::string> labels,
                           const std::function<HeatmapCell(std::size_t, std::size_t)>& cell,
                           std::string_view title, double lo = 0.0, double hi = 1.0);

std::string xml_escape(std::string_view s);

}  // namespace emonet
