#include "wrom/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace wrom {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool ok() const { return lo < hi; }
};

}  // namespace

void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::vector<PlotSeries>& series, bool loglog) {
  const double W = 640, H = 480, ml = 70, mr = 20, mt = 40, mb = 55;
  auto tx = [&](double u) { return ml + u * (W - ml - mr); };
  auto ty = [&](double u) { return H - mb - u * (H - mt - mb); };

  Range rx, ry;
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      double x = s.x[i], y = s.y[i];
      if (loglog) {
        if (x <= 0 || y <= 0) continue;
        x = std::log10(x);
        y = std::log10(y);
      }
      if (std::isfinite(x) && std::isfinite(y)) {
        rx.add(x);
        ry.add(y);
      }
    }
  if (!rx.ok()) {
    rx.lo -= 1;
    rx.hi = rx.lo + 2;
  }
  if (!ry.ok()) {
    ry.lo = ry.lo == std::numeric_limits<double>::infinity() ? 0 : ry.lo - 1;
    ry.hi = ry.lo + 2;
  }
  const double padx = 0.03 * (rx.hi - rx.lo), pady = 0.05 * (ry.hi - ry.lo);
  rx.lo -= padx;
  rx.hi += padx;
  ry.lo -= pady;
  ry.hi += pady;
  auto ux = [&](double x) { return (x - rx.lo) / (rx.hi - rx.lo); };
  auto uy = [&](double y) { return (y - ry.lo) / (ry.hi - ry.lo); };

  std::ofstream os(path);
  if (!os) return;  // plot failure never aborts the pipeline
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
     << "' viewBox='0 0 " << W << " " << H << "'>\n"
     << "<rect width='100%' height='100%' fill='white'/>\n"
     << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='15'>"
     << title << "</text>\n"
     << "<text x='" << (ml + W - mr) / 2 << "' y='" << H - 12
     << "' text-anchor='middle' font-size='12'>" << xlabel << "</text>\n"
     << "<text x='16' y='" << (mt + H - mb) / 2
     << "' text-anchor='middle' font-size='12' transform='rotate(-90 16 "
     << (mt + H - mb) / 2 << ")'>" << ylabel << "</text>\n"
     << "<rect x='" << ml << "' y='" << mt << "' width='" << W - ml - mr
     << "' height='" << H - mt - mb << "' fill='none' stroke='black'/>\n";

  auto ticks = [&](const Range& r) {
    std::vector<double> t;
    if (loglog) {
      for (int k = static_cast<int>(std::floor(r.lo)); k <= std::ceil(r.hi); ++k)
        if (k >= r.lo && k <= r.hi) t.push_back(k);
    } else {
      const double step = std::pow(10.0, std::floor(std::log10((r.hi - r.lo) / 4)));
      double v = std::ceil(r.lo / step) * step;
      for (; v <= r.hi; v += step)
        if (t.empty() || v - t.back() > 0.45 * (r.hi - r.lo) / 8) t.push_back(v);
    }
    return t;
  };
  char buf[64];
  for (double t : ticks(rx)) {
    const double px = tx(ux(t));
    std::snprintf(buf, sizeof buf, loglog ? "1e%g" : "%g", t);
    os << "<line x1='" << px << "' y1='" << H - mb << "' x2='" << px << "' y2='"
       << H - mb + 5 << "' stroke='black'/>\n"
       << "<text x='" << px << "' y='" << H - mb + 18
       << "' text-anchor='middle' font-size='10'>" << buf << "</text>\n";
  }
  for (double t : ticks(ry)) {
    const double py = ty(uy(t));
    std::snprintf(buf, sizeof buf, loglog ? "1e%g" : "%g", t);
    os << "<line x1='" << ml - 5 << "' y1='" << py << "' x2='" << ml << "' y2='" << py
       << "' stroke='black'/>\n"
       << "<text x='" << ml - 8 << "' y='" << py + 3
       << "' text-anchor='end' font-size='10'>" << buf << "</text>\n";
  }

  for (size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % 8];
    os << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
    for (size_t i = 0; i < s.x.size(); ++i) {
      double x = s.x[i], y = s.y[i];
      if (loglog) {
        if (x <= 0 || y <= 0) continue;
        x = std::log10(x);
        y = std::log10(y);
      }
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      os << tx(ux(x)) << "," << ty(uy(y)) << " ";
    }
    os << "'/>\n";
    const double lx = W - mr - 150, ly = mt + 16 + 16 * static_cast<double>(k);
    os << "<line x1='" << lx << "' y1='" << ly - 4 << "' x2='" << lx + 24 << "' y2='"
       << ly - 4 << "' stroke='" << color << "' stroke-width='2'/>\n"
       << "<text x='" << lx + 30 << "' y='" << ly << "' font-size='11'>" << s.label
       << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace wrom
