#pragma once

#include <string>
#include <vector>

namespace manilap {

// Minimal line/scatter plot writer. Presentation only: the CSV files are the
// stable output format, this is just for eyeballing results.
struct SvgSeries {
  std::vector<double> xs;
  std::vector<double> ys;
  std::string label;
  bool markers = true;
  bool line = true;
};

void write_svg_plot(const std::string& path, const std::vector<SvgSeries>& series,
                    const std::string& title, bool log_x = false, bool log_y = false);

}  // namespace manilap
