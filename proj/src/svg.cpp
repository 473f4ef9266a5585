#include "emonet/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace emonet {
namespace {

constexpr int kCell = 56;
constexpr int kMargin = 110;
constexpr int kTop = 48;

std::string shade(double t) {
  // #f7fbff -> #08306b
  const double a[3] = {247, 251, 255};
  const double b[3] = {8, 48, 107};
  char buf[8];
  int c[3];
  for (int i = 0; i < 3; ++i) c[i] = static_cast<int>(std::lround(a[i] + (b[i] - a[i]) * t));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

}  // namespace

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_heatmap(std::span<const std::string> labels,
                           const std::function<HeatmapCell(std::size_t, std::size_t)>& cell,
                           std::string_view title, double lo, double hi) {
  const int n = static_cast<int>(labels.size());
  const int width = kMargin + n * kCell + 20;
  const int height = kTop + n * kCell + kMargin;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << xml_escape(title) << "</text>\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto c = cell(i, j);
      const int x = kMargin + j * kCell;
      const int y = kTop + i * kCell;
      if (c.blank || !std::isfinite(c.value)) {
        svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCell << "\" height=\""
            << kCell << "\" fill=\"#dddddd\" stroke=\"white\"/>\n";
        continue;
      }
      const double t = hi > lo ? std::clamp((c.value - lo) / (hi - lo), 0.0, 1.0) : 0.0;
      svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCell << "\" height=\""
          << kCell << "\" fill=\"" << shade(t) << "\" stroke=\"white\"/>\n";
      if (!c.text.empty()) {
        svg << "<text x=\"" << x + kCell / 2 << "\" y=\"" << y + kCell / 2 + 4
            << "\" text-anchor=\"middle\" fill=\"" << (t > 0.6 ? "white" : "black") << "\">"
            << xml_escape(c.text) << "</text>\n";
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    const auto label = xml_escape(labels[i]);
    svg << "<text x=\"" << kMargin - 6 << "\" y=\"" << kTop + i * kCell + kCell / 2 + 4
        << "\" text-anchor=\"end\">" << label << "</text>\n";
    const int x = kMargin + i * kCell + kCell / 2;
    const int y = kTop + n * kCell + 8;
    svg << "<text x=\"" << x << "\" y=\"" << y << "\" text-anchor=\"end\" transform=\"rotate(-60 "
        << x << ' ' << y << ")\">" << label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace emonet
