#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace gs::svg {

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string frame(const std::string& title, const std::string& xlabel, const std::string& ylabel) {
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n"
    << "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n"
    << "<line x1=\"60\" y1=\"350\" x2=\"620\" y2=\"350\" stroke=\"black\"/>\n"
    << "<line x1=\"60\" y1=\"40\" x2=\"60\" y2=\"350\" stroke=\"black\"/>\n"
    << "<text x=\"340\" y=\"385\" text-anchor=\"middle\">" << xlabel << "</text>\n"
    << "<text x=\"16\" y=\"195\" text-anchor=\"middle\" transform=\"rotate(-90 16 195)\">" << ylabel << "</text>\n";
  return o.str();
}

}  // namespace detail

/// Histogram with `bins` equal-width bars between min and max of the data.
inline std::string histogram(const std::vector<double>& v, int bins, const std::string& title, const std::string& xlabel) {
  std::string s = detail::frame(title, xlabel, "count");
  if (v.empty() || bins < 1) return s + "</svg>\n";
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  const double lo = *mn, hi = *mx > *mn ? *mx : *mn + 1;
  std::vector<int> cnt(bins, 0);
  for (double x : v) ++cnt[std::min(bins - 1, static_cast<int>((x - lo) / (hi - lo) * bins))];
  const int top = *std::max_element(cnt.begin(), cnt.end());
  const double w = 560.0 / bins;
  std::ostringstream o;
  for (int b = 0; b < bins; ++b) {
    const double h = top ? 300.0 * cnt[b] / top : 0;
    o << "<rect x=\"" << detail::num(60 + b * w) << "\" y=\"" << detail::num(350 - h) << "\" width=\"" << detail::num(w * 0.9)
      << "\" height=\"" << detail::num(h) << "\" fill=\"steelblue\"/>\n";
  }
  o << "<text x=\"60\" y=\"366\" text-anchor=\"middle\">" << lo << "</text>\n"
    << "<text x=\"620\" y=\"366\" text-anchor=\"middle\">" << hi << "</text>\n"
    << "<text x=\"56\" y=\"54\" text-anchor=\"end\">" << top << "</text>\n";
  return s + o.str() + "</svg>\n";
}

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

/// Polylines against the point index, y on a log10 scale when `logy` (nonpositive values clamp to 1e-16).
inline std::string lines(const std::vector<Series>& series, const std::string& title, const std::string& xlabel,
                         const std::string& ylabel, bool logy) {
  std::string s = detail::frame(title, xlabel, logy ? "log10 " + ylabel : ylabel);
  auto tr = [&](double y) { return logy ? std::log10(std::max(y, 1e-16)) : y; };
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& se : series)
    for (const auto& [x, y] : se.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, tr(y));
      ymax = std::max(ymax, tr(y));
    }
  if (xmin > xmax) return s + "</svg>\n";
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  static const char* colors[] = {"steelblue", "darkorange", "seagreen", "crimson", "purple", "gray"};
  std::ostringstream o;
  int ci = 0;
  for (const auto& se : series) {
    o << "<polyline fill=\"none\" stroke=\"" << colors[ci % 6] << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : se.points)
      o << detail::num(60 + 560 * (x - xmin) / (xmax - xmin)) << "," << detail::num(350 - 300 * (tr(y) - ymin) / (ymax - ymin)) << " ";
    o << "\"/>\n<text x=\"500\" y=\"" << 50 + 16 * ci << "\" fill=\"" << colors[ci % 6] << "\">" << se.name << "</text>\n";
    ++ci;
  }
  o << "<text x=\"56\" y=\"54\" text-anchor=\"end\">" << detail::num(ymax) << "</text>\n"
    << "<text x=\"56\" y=\"350\" text-anchor=\"end\">" << detail::num(ymin) << "</text>\n";
  return s + o.str() + "</svg>\n";
}

}  // namespace gs::svg
