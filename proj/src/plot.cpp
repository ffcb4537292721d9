#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "maxbandit/experiment.hpp"

namespace maxbandit {
namespace {

constexpr const char* kPalette[] = {"#7b3294", "#1b9e77", "#d7301f", "#4aa3df",
                                    "#f28e2b", "#525252", "#8c6d31"};

struct Panel {
  double x, y, w, h;
  double t_max;
  double lo, hi;

  double px(double t) const { return x + w * (t - 1.0) / std::max(t_max - 1.0, 1.0); }
  double py(double v) const { return y + h - h * (v - lo) / (hi - lo); }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Keeps at most ~2000 vertices per curve.
std::size_t stride(std::size_t n) { return std::max<std::size_t>(1, n / 2000); }

std::string polyline(const Panel& p, const std::vector<double>& v, const char* color) {
  std::string pts;
  const std::size_t step = stride(v.size());
  for (std::size_t t = 0; t < v.size(); t += step) {
    if (!std::isfinite(v[t])) continue;
    pts += num(p.px(static_cast<double>(t + 1))) + "," + num(p.py(v[t])) + " ";
  }
  return "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" +
         pts + "\"/>\n";
}

std::string band(const Panel& p, const std::vector<double>& lower, const std::vector<double>& upper,
                 const char* color) {
  std::string pts;
  const std::size_t step = stride(lower.size());
  for (std::size_t t = 0; t < lower.size(); t += step) {
    pts += num(p.px(static_cast<double>(t + 1))) + "," + num(p.py(upper[t])) + " ";
  }
  for (std::size_t t = lower.size(); t-- > 0;) {
    if (t % step != 0) continue;
    pts += num(p.px(static_cast<double>(t + 1))) + "," + num(p.py(lower[t])) + " ";
  }
  return "<polygon fill=\"" + std::string(color) + "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"" +
         pts + "\"/>\n";
}

std::string axes(const Panel& p, const std::string& label) {
  std::string s = "<rect x=\"" + num(p.x) + "\" y=\"" + num(p.y) + "\" width=\"" + num(p.w) +
                  "\" height=\"" + num(p.h) + "\" fill=\"none\" stroke=\"#000\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = p.lo + (p.hi - p.lo) * i / 4.0;
    s += "<text x=\"" + num(p.x - 6) + "\" y=\"" + num(p.py(v) + 4) +
         "\" font-size=\"11\" text-anchor=\"end\">" + tick(v) + "</text>\n";
    const double t = 1.0 + (p.t_max - 1.0) * i / 4.0;
    s += "<text x=\"" + num(p.px(t)) + "\" y=\"" + num(p.y + p.h + 16) +
         "\" font-size=\"11\" text-anchor=\"middle\">" + tick(std::round(t)) + "</text>\n";
  }
  s += "<text x=\"" + num(p.x + p.w / 2) + "\" y=\"" + num(p.y - 8) +
       "\" font-size=\"13\" text-anchor=\"middle\">" + label + "</text>\n";
  return s;
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series, std::string_view title, std::size_t window) {
  if (series.empty()) throw std::invalid_argument("render_svg: nothing to plot");
  bool ratio = false;
  double lo = kInfinity, hi = -kInfinity, t_max = 1.0;
  for (const auto& s : series) {
    const auto& ts = *s.series;
    t_max = std::max(t_max, static_cast<double>(ts.size()));
    const bool q = ts.has_quantiles();
    for (std::size_t t = 0; t < ts.size(); ++t) {
      const double a = q ? ts.max_q25[t] : ts.max_mean[t] - ts.max_stderr[t];
      const double b = q ? ts.max_q75[t] : ts.max_mean[t] + ts.max_stderr[t];
      if (std::isfinite(a)) lo = std::min(lo, a);
      if (std::isfinite(b)) hi = std::max(hi, b);
      if (std::isfinite(ts.opt_ratio[t])) ratio = true;
    }
  }
  if (!(hi > lo)) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double width = ratio ? 1000 : 560;
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
                    "\" height=\"420\" font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
  svg += "<text x=\"" + num(width / 2) + "\" y=\"20\" font-size=\"15\" text-anchor=\"middle\">" +
         std::string(title) + "</text>\n";
  const Panel max_panel{70, 50, 420, 300, t_max, lo, hi};
  svg += axes(max_panel, "observed maximum");
  const Panel ratio_panel{560, 50, 420, 300, t_max, 0.0, 1.0};
  if (ratio) svg += axes(ratio_panel, "optimal-arm ratio (moving average, " + std::to_string(window) + " steps)");

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    const auto& ts = *series[i].series;
    if (ts.has_quantiles()) {
      svg += band(max_panel, ts.max_q25, ts.max_q75, color);
      svg += polyline(max_panel, ts.max_median, color);
    } else {
      std::vector<double> a(ts.size()), b(ts.size());
      for (std::size_t t = 0; t < ts.size(); ++t) {
        a[t] = ts.max_mean[t] - ts.max_stderr[t];
        b[t] = ts.max_mean[t] + ts.max_stderr[t];
      }
      svg += band(max_panel, a, b, color);
      svg += polyline(max_panel, ts.max_mean, color);
    }
    if (ratio) svg += polyline(ratio_panel, smooth(ts.opt_ratio, window), color);
    const double ly = 380 + 0.0;
    const double lx = 70 + 130.0 * static_cast<double>(i);
    svg += "<rect x=\"" + num(lx) + "\" y=\"" + num(ly) + "\" width=\"14\" height=\"4\" fill=\"" + color + "\"/>\n";
    svg += "<text x=\"" + num(lx + 18) + "\" y=\"" + num(ly + 6) + "\" font-size=\"12\">" + series[i].label +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace maxbandit
