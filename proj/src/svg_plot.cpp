#include "mcf/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mcf/errors.hpp"

namespace mcf {

namespace {

constexpr int kWidth = 720, kHeight = 480;
constexpr int kLeft = 72, kRight = 24, kTop = 40, kBottom = 56;

const char* kPalette[] = {"#1f6fb4", "#d1495b", "#3a923a", "#8a5fb0", "#c87f1e"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

} // namespace

void svg_line_plot(const std::string& path, const std::string& title,
                   const std::string& xlabel, const std::string& ylabel,
                   const std::vector<PlotSeries>& series, bool log_y) {
  std::vector<PlotSeries> clean;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series) {
    PlotSeries cs;
    cs.label = s.label;
    for (auto [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (log_y) {
        if (!(y > 0.0)) continue;
        y = std::log10(y);
      }
      cs.points.emplace_back(x, y);
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
    if (!cs.points.empty()) clean.push_back(std::move(cs));
  }
  if (clean.empty()) throw Error("plot '" + title + "' has no drawable points");
  if (xmax - xmin < 1e-300) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-12) {
    ymax += 0.5;
    ymin -= 0.5;
  }
  double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
  auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * plot_h; };

  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw IoError("cannot write " + path);
  std::fprintf(f,
               "<svg xmlns='http://www.w3.org/2000/svg' width='%d' height='%d' "
               "viewBox='0 0 %d %d'>\n",
               kWidth, kHeight, kWidth, kHeight);
  std::fprintf(f, "<rect width='%d' height='%d' fill='white'/>\n", kWidth, kHeight);
  std::fprintf(f,
               "<text x='%d' y='24' font-family='sans-serif' font-size='15' "
               "text-anchor='middle'>%s</text>\n",
               kWidth / 2, title.c_str());

  // frame and ticks
  std::fprintf(f,
               "<rect x='%d' y='%d' width='%.1f' height='%.1f' fill='none' "
               "stroke='black'/>\n",
               kLeft, kTop, plot_w, plot_h);
  for (int i = 0; i <= 5; ++i) {
    double x = xmin + (xmax - xmin) * i / 5.0;
    double y = ymin + (ymax - ymin) * i / 5.0;
    std::fprintf(f, "<line x1='%.1f' y1='%.1f' x2='%.1f' y2='%.1f' stroke='black'/>\n",
                 px(x), kTop + plot_h, px(x), kTop + plot_h + 5);
    std::fprintf(f,
                 "<text x='%.1f' y='%.1f' font-family='sans-serif' font-size='11' "
                 "text-anchor='middle'>%s</text>\n",
                 px(x), kTop + plot_h + 18, fmt(x).c_str());
    std::fprintf(f, "<line x1='%d' y1='%.1f' x2='%d' y2='%.1f' stroke='black'/>\n",
                 kLeft - 5, py(y), kLeft, py(y));
    std::fprintf(f,
                 "<text x='%d' y='%.1f' font-family='sans-serif' font-size='11' "
                 "text-anchor='end'>%s</text>\n",
                 kLeft - 8, py(y) + 4, fmt(y).c_str());
  }
  std::fprintf(f,
               "<text x='%d' y='%d' font-family='sans-serif' font-size='13' "
               "text-anchor='middle'>%s</text>\n",
               kLeft + static_cast<int>(plot_w) / 2, kHeight - 12, xlabel.c_str());
  std::fprintf(f,
               "<text x='16' y='%d' font-family='sans-serif' font-size='13' "
               "text-anchor='middle' transform='rotate(-90 16 %d)'>%s%s</text>\n",
               kTop + static_cast<int>(plot_h) / 2, kTop + static_cast<int>(plot_h) / 2,
               log_y ? "log10 " : "", ylabel.c_str());

  for (size_t si = 0; si < clean.size(); ++si) {
    std::fprintf(f, "<polyline fill='none' stroke='%s' stroke-width='1.5' points='",
                 kPalette[si % 5]);
    for (auto [x, y] : clean[si].points)
      std::fprintf(f, "%.2f,%.2f ", px(x), py(y));
    std::fputs("'/>\n", f);
    if (clean.size() > 1) {
      std::fprintf(f,
                   "<text x='%.1f' y='%.1f' font-family='sans-serif' font-size='12' "
                   "fill='%s'>%s</text>\n",
                   kLeft + plot_w - 150.0, kTop + 18.0 + 16.0 * si, kPalette[si % 5],
                   clean[si].label.c_str());
    }
  }
  std::fputs("</svg>\n", f);
  if (std::fclose(f) != 0) throw IoError("failed to flush " + path);
}

} // namespace mcf
