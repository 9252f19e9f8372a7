#include "manilap/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace manilap {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

double tf(double v, bool log_scale) {
  if (!log_scale) return v;
  return std::log10(std::max(v, 1e-300));
}

}  // namespace

void write_svg_plot(const std::string& path, const std::vector<SvgSeries>& series,
                    const std::string& title, bool log_x, bool log_y) {
  const double width = 720, height = 480;
  const double ml = 70, mr = 20, mt = 40, mb = 50;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (size_t i = 0; i < s.xs.size(); ++i) {
      double x = tf(s.xs[i], log_x), y = tf(s.ys[i], log_y);
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      xmin = std::min(xmin, x); xmax = std::max(xmax, x);
      ymin = std::min(ymin, y); ymax = std::max(ymax, y);
    }
  }
  if (!std::isfinite(xmin)) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
  if (xmax == xmin) { xmax += 0.5; xmin -= 0.5; }
  if (ymax == ymin) { ymax += 0.5; ymin -= 0.5; }

  auto px = [&](double x) { return ml + (tf(x, log_x) - xmin) / (xmax - xmin) * (width - ml - mr); };
  auto py = [&](double y) { return height - mb - (tf(y, log_y) - ymin) / (ymax - ymin) * (height - mt - mb); };

  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open svg output: " + path);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
  // axes
  os << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
     << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
     << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  // corner tick labels are enough for a quick look
  os << "<text x=\"" << ml << "\" y=\"" << height - mb + 18
     << "\" font-family=\"sans-serif\" font-size=\"11\">" << xmin << (log_x ? " (log10)" : "") << "</text>\n";
  os << "<text x=\"" << width - mr << "\" y=\"" << height - mb + 18
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << xmax << "</text>\n";
  os << "<text x=\"" << ml - 6 << "\" y=\"" << height - mb
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << ymin << "</text>\n";
  os << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 4
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << ymax
     << (log_y ? " (log10)" : "") << "</text>\n";

  for (size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % 8];
    if (s.line && s.xs.size() > 1) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (size_t i = 0; i < s.xs.size(); ++i) {
        double x = tf(s.xs[i], log_x), y = tf(s.ys[i], log_y);
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        os << px(s.xs[i]) << "," << py(s.ys[i]) << " ";
      }
      os << "\"/>\n";
    }
    if (s.markers) {
      for (size_t i = 0; i < s.xs.size(); ++i) {
        double x = tf(s.xs[i], log_x), y = tf(s.ys[i], log_y);
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        os << "<circle cx=\"" << px(s.xs[i]) << "\" cy=\"" << py(s.ys[i])
           << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
      }
    }
    if (!s.label.empty()) {
      os << "<text x=\"" << width - mr - 8 << "\" y=\"" << mt + 16 + 16 * si
         << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
         << color << "\">" << s.label << "</text>\n";
    }
  }
  os << "</svg>\n";
}

}  // namespace manilap
