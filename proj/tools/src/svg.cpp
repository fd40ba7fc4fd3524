#include "ifrlag_cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ifrlag::cli {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  const double a = std::abs(v);
  if (a >= 1e6) {
    std::snprintf(buf, sizeof buf, "%gM", v / 1e6);
  } else if (a >= 1e4) {
    std::snprintf(buf, sizeof buf, "%gk", v / 1e3);
  } else {
    std::snprintf(buf, sizeof buf, "%g", v);
  }
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<double> nice_ticks(double lo, double hi, int target) {
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / std::max(1, target);
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  double step = magnitude;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * magnitude;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
    ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  }
  return ticks;
}

std::string LineChart::render() const {
  constexpr double left = 70, right = 20, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  std::size_t n = 0;
  double y_max = 0.0;
  double y_min = 0.0;
  for (const ChartSeries& s : series) {
    n = std::max(n, s.values.size());
    for (double v : s.values) {
      if (!std::isfinite(v)) continue;
      y_max = std::max(y_max, v);
      y_min = std::min(y_min, v);
    }
  }
  if (y_max <= y_min) y_max = y_min + 1.0;
  const double x_lo = 1.0;
  const double x_hi = std::max<double>(2.0, static_cast<double>(n));
  std::vector<double> y_ticks = nice_ticks(y_min, y_max);
  y_max = std::max(y_max, y_ticks.back());

  auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return top + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(width / 2.0) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
    << "</text>\n";

  o << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (double t : y_ticks) {
    o << "<line x1=\"" << num(left) << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(left + plot_w) << "\" y2=\""
      << num(py(t)) << "\"/>\n";
  }
  o << "</g>\n";
  o << "<g text-anchor=\"end\">\n";
  for (double t : y_ticks) {
    o << "<text x=\"" << num(left - 6) << "\" y=\"" << num(py(t) + 4) << "\">" << tick_label(t) << "</text>\n";
  }
  o << "</g>\n<g text-anchor=\"middle\">\n";
  for (double t : nice_ticks(x_lo, x_hi, 10)) {
    o << "<text x=\"" << num(px(t)) << "\" y=\"" << num(top + plot_h + 18) << "\">" << tick_label(t) << "</text>\n";
  }
  o << "</g>\n";
  o << "<line x1=\"" << num(left) << "\" y1=\"" << num(top + plot_h) << "\" x2=\"" << num(left + plot_w) << "\" y2=\""
    << num(top + plot_h) << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left) << "\" y2=\""
    << num(top + plot_h) << "\" stroke=\"black\"/>\n";
  o << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(height - 10.0) << "\" text-anchor=\"middle\">"
    << escape(x_label) << "</text>\n";
  o << "<text x=\"16\" y=\"" << num(top + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << num(top + plot_h / 2) << ")\">" << escape(y_label) << "</text>\n";

  for (int m : markers) {
    const double x = px(m + 0.5);
    o << "<line class=\"marker\" x1=\"" << num(x) << "\" y1=\"" << num(top) << "\" x2=\"" << num(x) << "\" y2=\""
      << num(top + plot_h) << "\" stroke=\"#888888\" stroke-dasharray=\"4 3\"/>\n";
  }

  for (const ChartSeries& s : series) {
    o << "<polyline fill=\"none\" stroke=\"" << escape(s.color) << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t j = 0; j < s.values.size(); ++j) {
      if (j > 0) o << ' ';
      const double v = std::isfinite(s.values[j]) ? s.values[j] : 0.0;
      o << num(px(static_cast<double>(j + 1))) << ',' << num(py(v));
    }
    o << "\"/>\n";
  }

  double ly = top + 8;
  for (const ChartSeries& s : series) {
    const double lx = left + 12;
    o << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 22) << "\" y2=\"" << num(ly)
      << "\" stroke=\"" << escape(s.color) << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << num(lx + 28) << "\" y=\"" << num(ly + 4) << "\">" << escape(s.name) << "</text>\n";
    ly += 16;
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace ifrlag::cli
