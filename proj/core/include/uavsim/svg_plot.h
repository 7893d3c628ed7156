#ifndef UAVSIM_SVG_PLOT_H_
#define UAVSIM_SVG_PLOT_H_

#include <filesystem>
#include <string>
#include <vector>

namespace uavsim {

// A plotted series keeps the exact text of its source cells; they are written
// into the SVG as data-x / data-y attributes next to the drawn polyline.
struct PlotSeries {
  std::string label;
  std::vector<std::string> x;
  std::vector<std::string> y;
  bool markers = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  bool equal_aspect = false;
  std::vector<PlotSeries> series;
};

std::string RenderSvg(const PlotSpec& spec);

// Throws IoError.
void WriteSvg(const std::filesystem::path& path, const PlotSpec& spec);

}  // namespace uavsim

#endif  // UAVSIM_SVG_PLOT_H_
