#include "mc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "mc/errors.hpp"

namespace mc {

namespace {

constexpr int kWidth = 640, kHeight = 480;
constexpr int kLeft = 70, kRight = 20, kTop = 20, kBottom = 50;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

}  // namespace

std::string render_ber_svg(const std::vector<BerPoint>& points) {
  double tb_min = 1e300, tb_max = -1e300;
  double log_min = 0.0, log_max = -300.0;
  for (const auto& p : points) {
    tb_min = std::min(tb_min, p.tb_seconds);
    tb_max = std::max(tb_max, p.tb_seconds);
    if (p.ber() > 0.0) {
      double lb = std::log10(p.ber());
      log_min = std::min(log_min, lb);
      log_max = std::max(log_max, lb);
    }
  }
  if (tb_max <= tb_min) tb_max = tb_min + 1.0;
  log_min = std::floor(std::min(log_min, -1.0));
  log_max = std::ceil(std::max(log_max, 0.0));

  auto map_x = [&](double tb) {
    return kLeft + (tb - tb_min) / (tb_max - tb_min) * (kWidth - kLeft - kRight);
  };
  auto map_y = [&](double ber) {
    double lb = std::log10(ber);
    return kTop + (log_max - lb) / (log_max - log_min) * (kHeight - kTop - kBottom);
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n"
      << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";

  // axes
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << (kHeight - kBottom) << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << (kHeight - kBottom)
      << "\" x2=\"" << (kWidth - kRight) << "\" y2=\"" << (kHeight - kBottom)
      << "\" stroke=\"black\"/>\n";
  for (int d = static_cast<int>(log_min); d <= static_cast<int>(log_max); ++d) {
    double y = map_y(std::pow(10.0, d));
    svg << "<text x=\"8\" y=\"" << y + 4 << "\" font-size=\"12\">1e" << d
        << "</text>\n";
  }
  for (const auto& p : points) {
    double x = map_x(p.tb_seconds);
    svg << "<text x=\"" << x - 10 << "\" y=\"" << (kHeight - kBottom + 18)
        << "\" font-size=\"12\">" << p.tb_seconds << "</text>\n";
  }
  svg << "<text x=\"" << (kWidth / 2 - 60) << "\" y=\"" << (kHeight - 10)
      << "\" font-size=\"13\">equivalent bit interval T_b (s)</text>\n";

  // one series per scheme, in first-appearance order
  std::vector<Scheme> order;
  for (const auto& p : points) {
    if (std::find(order.begin(), order.end(), p.scheme) == order.end()) {
      order.push_back(p.scheme);
    }
  }
  for (std::size_t si = 0; si < order.size(); ++si) {
    const char* color = kColors[si % 5];
    std::ostringstream pts;
    for (const auto& p : points) {
      if (p.scheme != order[si] || p.ber() <= 0.0) continue;
      pts << map_x(p.tb_seconds) << "," << map_y(p.ber()) << " ";
    }
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\""
        << pts.str() << "\"/>\n"
        << "<text x=\"" << (kWidth - 140) << "\" y=\"" << (kTop + 20 + 18 * si)
        << "\" font-size=\"13\" fill=\"" << color << "\">"
        << scheme_name(order[si]) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_ber_svg(const std::string& path, const std::vector<BerPoint>& points) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open SVG output path " + path);
  out << render_ber_svg(points);
}

}  // namespace mc
