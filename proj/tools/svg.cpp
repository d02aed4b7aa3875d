#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hessbound/io.hpp"

namespace hessbound::cli {

namespace {

const char* kColors[] = {"#4c72b0", "#55a868", "#c44e52", "#8172b2", "#ccb974", "#64b5cd"};

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

std::string f(double v) { return io::format12(std::round(v * 100.0) / 100.0); }

}  // namespace

std::string bar_chart(const std::string& title, const std::vector<BarGroup>& groups) {
  const double W = 720, H = 360, left = 60, bottom = 40, top = 40;
  double vmax = 0.0;
  std::size_t nbars = 0;
  for (const auto& g : groups) {
    for (const auto& b : g.bars) vmax = std::max(vmax, b.value);
    nbars += g.bars.size();
  }
  if (vmax <= 0.0) vmax = 1.0;
  // Log scale once the bars span more than two decades.
  double vmin = vmax;
  for (const auto& g : groups)
    for (const auto& b : g.bars)
      if (b.value > 0.0) vmin = std::min(vmin, b.value);
  const bool log_scale = vmax / vmin > 100.0;
  const double lo = log_scale ? std::floor(std::log10(vmin)) : 0.0;
  const double hi = log_scale ? std::ceil(std::log10(vmax)) : vmax * 1.1;
  auto ypos = [&](double v) {
    const double s = log_scale ? (std::log10(std::max(v, 1e-300)) - lo) / (hi - lo) : v / hi;
    return H - bottom - std::clamp(s, 0.0, 1.0) * (H - bottom - top);
  };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
    << esc(title) << (log_scale ? " (log scale)" : "") << "</text>\n";
  s << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - 10 << "\" y2=\"" << H - bottom
    << "\" stroke=\"black\"/>\n";
  const double slot = (W - left - 10) / std::max<std::size_t>(1, nbars + groups.size());
  double x = left + slot / 2;
  for (const auto& g : groups) {
    const double gx = x;
    for (std::size_t i = 0; i < g.bars.size(); ++i) {
      const auto& b = g.bars[i];
      const double y = ypos(b.value);
      s << "<rect x=\"" << f(x) << "\" y=\"" << f(y) << "\" width=\"" << f(slot * 0.8) << "\" height=\""
        << f(H - bottom - y) << "\" fill=\"" << kColors[i % 6] << "\"/>\n";
      s << "<text x=\"" << f(x + slot * 0.4) << "\" y=\"" << f(y - 4)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << io::format12(b.value)
        << "</text>\n";
      s << "<text x=\"" << f(x + slot * 0.4) << "\" y=\"" << H - bottom + 14
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << esc(b.label) << "</text>\n";
      x += slot;
    }
    s << "<text x=\"" << f((gx + x) / 2) << "\" y=\"" << H - bottom + 30
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << esc(g.title) << "</text>\n";
    x += slot;
  }
  s << "</svg>\n";
  return s.str();
}

std::string line_chart(const std::string& title, const std::string& xlabel, const std::vector<Series>& series,
                       bool log_y) {
  const double W = 720, H = 400, left = 70, right = 150, bottom = 50, top = 40;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  auto ty = [&](double v) { return log_y ? std::log10(std::max(v, 1e-300)) : v; };
  for (const auto& se : series) {
    for (double v : se.x) {
      xmin = std::min(xmin, v);
      xmax = std::max(xmax, v);
    }
    for (double v : se.y) {
      ymin = std::min(ymin, ty(v));
      ymax = std::max(ymax, ty(v));
    }
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  auto px = [&](double v) { return left + (v - xmin) / (xmax - xmin) * (W - left - right); };
  auto py = [&](double v) { return H - bottom - (ty(v) - ymin) / (ymax - ymin) * (H - bottom - top); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << (W - right + left) / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
    << "font-size=\"14\">" << esc(title) << "</text>\n";
  s << "<polyline fill=\"none\" stroke=\"black\" points=\"" << left << ',' << top << ' ' << left << ','
    << H - bottom << ' ' << W - right << ',' << H - bottom << "\"/>\n";
  s << "<text x=\"" << (W - right + left) / 2 << "\" y=\"" << H - 12
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << esc(xlabel) << "</text>\n";
  s << "<text x=\"" << left - 6 << "\" y=\"" << H - bottom << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
    << "font-size=\"10\">" << io::format12(log_y ? std::pow(10.0, ymin) : ymin) << "</text>\n";
  s << "<text x=\"" << left - 6 << "\" y=\"" << top + 8 << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
    << "font-size=\"10\">" << io::format12(log_y ? std::pow(10.0, ymax) : ymax) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& se = series[k];
    s << "<polyline fill=\"none\" stroke=\"" << kColors[k % 6] << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < se.x.size(); ++i) s << f(px(se.x[i])) << ',' << f(py(se.y[i])) << ' ';
    s << "\"/>\n";
    s << "<text x=\"" << W - right + 10 << "\" y=\"" << top + 16 * (k + 1) << "\" fill=\"" << kColors[k % 6]
      << "\" font-family=\"sans-serif\" font-size=\"12\">" << esc(se.label) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace hessbound::cli
