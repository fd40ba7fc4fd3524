#ifndef IFRLAG_CLI_SVG_HPP
#define IFRLAG_CLI_SVG_HPP

#include <string>
#include <vector>

namespace ifrlag::cli {

struct ChartSeries {
  std::string name;
  std::string color;  // any SVG colour
  std::vector<double> values;  // values[j] is plotted at x = j + 1
};

/// A plain line chart: linear axes with tick labels, one polyline per
/// series, a legend, and optional dashed vertical markers.
struct LineChart {
  std::string title;
  std::string x_label = "day";
  std::string y_label;
  std::vector<ChartSeries> series;
  /// Drawn between day x and x + 1.
  std::vector<int> markers;
  int width = 900;
  int height = 420;

  std::string render() const;
};

/// Up to about `target` round tick values covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

}  // namespace ifrlag::cli

#endif  // IFRLAG_CLI_SVG_HPP
