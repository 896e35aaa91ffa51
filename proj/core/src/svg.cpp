#include "pullfit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "pullfit/kde.hpp"

namespace pullfit::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kMarginLeft = 60.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;

struct Frame {
  double x_lo, x_hi, y_hi;

  double px(double x) const {
    return kMarginLeft + (x - x_lo) / (x_hi - x_lo) * (kWidth - kMarginLeft - kMarginRight);
  }
  double py(double y) const {
    return kHeight - kMarginBottom - y / y_hi * (kHeight - kMarginTop - kMarginBottom);
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

void open_document(std::ostringstream& os, const Frame& f, const std::string& title,
                   const char* x_label) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"15\">"
     << escape(title) << "</text>\n";
  const double y0 = kHeight - kMarginBottom;
  os << "<line x1=\"" << kMarginLeft << "\" y1=\"" << y0 << "\" x2=\""
     << kWidth - kMarginRight << "\" y2=\"" << y0 << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\""
     << kMarginLeft << "\" y2=\"" << y0 << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = f.x_lo + (f.x_hi - f.x_lo) * i / 4.0;
    os << "<text x=\"" << num(f.px(x)) << "\" y=\"" << y0 + 16
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
       << num(x) << "</text>\n";
  }
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
     << x_label << "</text>\n";
}

std::vector<double> histogram(std::span<const double> values, double lo, double hi,
                              std::size_t bins) {
  std::vector<double> counts(bins, 0.0);
  for (double v : values) {
    if (!std::isfinite(v)) continue;
    auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
    counts[std::min(b, bins - 1)] += 1.0;
  }
  return counts;
}

std::pair<double, double> padded_range(std::span<const double> a,
                                       std::span<const double> b = {}) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (auto s : {a, b}) {
    for (double v : s) {
      if (!std::isfinite(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo < hi)) {
    lo = std::isfinite(lo) ? lo - 1.0 : -1.0;
    hi = std::isfinite(hi) ? hi + 1.0 : 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

void bars(std::ostringstream& os, const Frame& f, const std::vector<double>& heights,
          double lo, double step, const char* fill) {
  for (std::size_t i = 0; i < heights.size(); ++i) {
    const double x0 = f.px(lo + step * static_cast<double>(i));
    const double x1 = f.px(lo + step * static_cast<double>(i + 1));
    const double y = f.py(heights[i]);
    os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y) << "\" width=\""
       << num(x1 - x0) << "\" height=\"" << num(kHeight - kMarginBottom - y)
       << "\" fill=\"" << fill << "\" stroke=\"white\"/>\n";
  }
}

} // namespace

std::string delta_aic_histogram(std::span<const double> delta_aic,
                                const std::string& title) {
  auto [lo, hi] = padded_range(delta_aic);
  lo = std::min(lo, -1.0);
  hi = std::max(hi, 1.0);
  constexpr std::size_t bins = 20;
  const auto counts = histogram(delta_aic, lo, hi, bins);
  const double top = std::max(1.0, *std::max_element(counts.begin(), counts.end()));
  const Frame f{lo, hi, top * 1.1};
  std::ostringstream os;
  open_document(os, f, title, "AIC difference (mixture - optimal)");
  bars(os, f, counts, lo, (hi - lo) / bins, "#7a5195");
  os << "<line x1=\"" << num(f.px(0.0)) << "\" y1=\"" << kMarginTop << "\" x2=\""
     << num(f.px(0.0)) << "\" y2=\"" << kHeight - kMarginBottom
     << "\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::string fit_overlay(std::span<const double> observed,
                        std::span<const double> synthetic, const std::string& title) {
  const auto [lo, hi] = padded_range(observed, synthetic);
  constexpr std::size_t bins = 40;
  const double step = (hi - lo) / bins;
  auto heights = histogram(observed, lo, hi, bins);
  const double scale = observed.empty() ? 0.0 : 1.0 / (static_cast<double>(observed.size()) * step);
  for (double& h : heights) h *= scale;

  std::vector<std::pair<double, double>> curve;
  if (synthetic.size() >= 2) {
    const double h = likelihood_bandwidth(synthetic, 1.0);
    const KdeModel kde = build_kde(synthetic, h);
    for (int i = 0; i <= 200; ++i) {
      const double x = lo + (hi - lo) * i / 200.0;
      curve.emplace_back(x, std::max(0.0, density_at(kde, x) - kde.density_floor()));
    }
  }
  double top = heights.empty() ? 0.0 : *std::max_element(heights.begin(), heights.end());
  for (const auto& [x, y] : curve) top = std::max(top, y);
  const Frame f{lo, hi, std::max(top, 1e-9) * 1.1};

  std::ostringstream os;
  open_document(os, f, title, "estimated position (px)");
  bars(os, f, heights, lo, step, "#9ecae1");
  if (!curve.empty()) {
    os << "<polyline fill=\"none\" stroke=\"#7a5195\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : curve) {
      os << num(f.px(x)) << ',' << num(f.py(y)) << ' ';
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

} // namespace pullfit::svg
