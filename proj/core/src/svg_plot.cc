#include "uavsim/svg_plot.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "uavsim/errors.h"

namespace uavsim {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0, kRight = 170.0, kTop = 40.0, kBottom = 60.0;
constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

std::string Join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ' ';
    out += cells[i];
  }
  return out;
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string Tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

double ParseCell(const std::string& s) {
  try {
    return std::stod(s);
  } catch (...) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void Add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void Finish() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) {
      const double pad = std::max(std::abs(lo) * 0.05, 0.5);
      lo -= pad;
      hi += pad;
    }
  }
};

}  // namespace

std::string RenderSvg(const PlotSpec& spec) {
  // Numeric values, with log10 applied to y when requested.
  std::vector<std::vector<std::pair<double, double>>> pts(spec.series.size());
  Range xr, yr;
  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const PlotSeries& ser = spec.series[s];
    const std::size_t n = std::min(ser.x.size(), ser.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      double x = ParseCell(ser.x[i]);
      double y = ParseCell(ser.y[i]);
      if (spec.log_y) y = y > 0.0 ? std::log10(y) : std::numeric_limits<double>::quiet_NaN();
      pts[s].emplace_back(x, y);
      if (std::isfinite(x) && std::isfinite(y)) {
        xr.Add(x);
        yr.Add(y);
      }
    }
  }
  xr.Finish();
  yr.Finish();
  double plot_w = kWidth - kLeft - kRight;
  double plot_h = kHeight - kTop - kBottom;
  if (spec.equal_aspect) {
    // Same meters-per-pixel on both axes.
    const double scale = std::max((xr.hi - xr.lo) / plot_w, (yr.hi - yr.lo) / plot_h);
    const double cx = 0.5 * (xr.lo + xr.hi), cy = 0.5 * (yr.lo + yr.hi);
    xr.lo = cx - 0.5 * scale * plot_w;
    xr.hi = cx + 0.5 * scale * plot_w;
    yr.lo = cy - 0.5 * scale * plot_h;
    yr.hi = cy + 0.5 * scale * plot_h;
  }
  auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto sy = [&](double y) { return kTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << Num(kLeft + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-size=\"15\">" << Escape(spec.title) << "</text>\n"
      << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << Num(plot_w)
      << "\" height=\"" << Num(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 5; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / 5.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / 5.0;
    const std::string ylabel = spec.log_y ? "1e" + Tick(fy) : Tick(fy);
    svg << "<line x1=\"" << Num(sx(fx)) << "\" y1=\"" << Num(kTop) << "\" x2=\""
        << Num(sx(fx)) << "\" y2=\"" << Num(kTop + plot_h)
        << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << Num(sx(fx)) << "\" y=\"" << Num(kTop + plot_h + 16)
        << "\" text-anchor=\"middle\">" << Tick(fx) << "</text>\n"
        << "<line x1=\"" << Num(kLeft) << "\" y1=\"" << Num(sy(fy)) << "\" x2=\""
        << Num(kLeft + plot_w) << "\" y2=\"" << Num(sy(fy))
        << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << Num(kLeft - 6) << "\" y=\"" << Num(sy(fy) + 4)
        << "\" text-anchor=\"end\">" << ylabel << "</text>\n";
  }
  svg << "<text x=\"" << Num(kLeft + plot_w / 2) << "\" y=\"" << Num(kHeight - 16)
      << "\" text-anchor=\"middle\">" << Escape(spec.x_label) << "</text>\n"
      << "<text transform=\"translate(18," << Num(kTop + plot_h / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << Escape(spec.y_label)
      << "</text>\n";

  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const PlotSeries& ser = spec.series[s];
    const char* color = kPalette[s % kPalette.size()];
    svg << "<polyline class=\"series\" data-label=\"" << Escape(ser.label)
        << "\" data-x=\"" << Join(ser.x) << "\" data-y=\"" << Join(ser.y)
        << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& [x, y] : pts[s]) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!first) svg << ' ';
      svg << Num(sx(x)) << ',' << Num(sy(y));
      first = false;
    }
    svg << "\"/>\n";
    if (ser.markers) {
      for (const auto& [x, y] : pts[s]) {
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        svg << "<circle cx=\"" << Num(sx(x)) << "\" cy=\"" << Num(sy(y))
            << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    }
    const double ly = kTop + 14 + 18 * static_cast<double>(s);
    svg << "<line x1=\"" << Num(kWidth - kRight + 12) << "\" y1=\"" << Num(ly - 4)
        << "\" x2=\"" << Num(kWidth - kRight + 36) << "\" y2=\"" << Num(ly - 4)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << Num(kWidth - kRight + 42) << "\" y=\"" << Num(ly)
        << "\">" << Escape(ser.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void WriteSvg(const std::filesystem::path& path, const PlotSpec& spec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << RenderSvg(spec);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace uavsim
