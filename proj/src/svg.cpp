#include "shocklab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace shocklab {

namespace {

constexpr double kWidth = 720.0, kHeight = 480.0;
constexpr double kLeft = 72.0, kRight = 24.0, kTop = 40.0, kBottom = 52.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v, bool log_axis) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", log_axis ? std::pow(10.0, v) : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label,
                 bool log_x, bool log_y)
    : title_(std::move(title)),
      x_label_(std::move(x_label)),
      y_label_(std::move(y_label)),
      log_x_(log_x),
      log_y_(log_y) {}

void SvgPlot::add_series(const std::string& name, const std::vector<double>& x,
                         const std::vector<double>& y) {
  if (x.size() != y.size())
    throw std::logic_error("svg series coordinate lengths differ");
  series_.push_back({name, x, y});
}

void SvgPlot::add_comment(const std::string& text) {
  comments_.push_back(text);
}

std::string SvgPlot::str() const {
  // Transform to plot coordinates, dropping points a log axis cannot show.
  struct Pt {
    double x, y;
  };
  std::vector<std::vector<Pt>> pts(series_.size());
  double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  bool any = false;
  for (std::size_t s = 0; s < series_.size(); ++s) {
    for (std::size_t i = 0; i < series_[s].x.size(); ++i) {
      double x = series_[s].x[i], y = series_[s].y[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (log_x_) {
        if (!(x > 0.0)) continue;
        x = std::log10(x);
      }
      if (log_y_) {
        if (!(y > 0.0)) continue;
        y = std::log10(y);
      }
      if (!any) {
        x_lo = x_hi = x;
        y_lo = y_hi = y;
        any = true;
      }
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
      pts[s].push_back({x, y});
    }
  }
  if (x_hi - x_lo < 1e-12) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  if (y_hi - y_lo < 1e-12) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto px = [&](double x) {
    return kLeft + pw * (x - x_lo) / (x_hi - x_lo);
  };
  const auto py = [&](double y) {
    return kTop + ph * (1.0 - (y - y_lo) / (y_hi - y_lo));
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
         "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) +
         " " + num(kHeight) + "\">\n";
  for (const std::string& c : comments_)
    out += "<!-- " + escape(c) + " -->\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(kWidth / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" +
         escape(title_) + "</text>\n";

  // Frame and ticks.
  out += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" +
         num(pw) + "\" height=\"" + num(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  const int n_ticks = 5;
  for (int k = 0; k <= n_ticks; ++k) {
    const double fx = x_lo + (x_hi - x_lo) * k / n_ticks;
    const double fy = y_lo + (y_hi - y_lo) * k / n_ticks;
    out += "<line x1=\"" + num(px(fx)) + "\" y1=\"" + num(kTop + ph) +
           "\" x2=\"" + num(px(fx)) + "\" y2=\"" + num(kTop + ph + 5) +
           "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(px(fx)) + "\" y=\"" + num(kTop + ph + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           tick_label(fx, log_x_) + "</text>\n";
    out += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(py(fy)) +
           "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(py(fy)) +
           "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py(fy) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           tick_label(fy, log_y_) + "</text>\n";
  }
  out += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 10) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" +
         escape(x_label_) + "</text>\n";
  out += "<text x=\"16\" y=\"" + num(kTop + ph / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 16 " +
         num(kTop + ph / 2) + ")\">" +
         escape(y_label_) + "</text>\n";

  for (std::size_t s = 0; s < series_.size(); ++s) {
    const char* color = kPalette[s % (sizeof kPalette / sizeof *kPalette)];
    std::string poly = "<polyline fill=\"none\" stroke=\"";
    poly += color;
    poly += "\" stroke-width=\"1.5\" points=\"";
    for (const Pt& q : pts[s])
      poly += num(px(q.x)) + "," + num(py(q.y)) + " ";
    poly += "\"/>\n";
    out += poly;
    out += "<text x=\"" + num(kLeft + pw - 6) + "\" y=\"" +
           num(kTop + 16.0 + 15.0 * static_cast<double>(s)) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\" fill=\"" +
           color + "\">" + escape(series_[s].name) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

void SvgPlot::write(const std::string& path) const {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f << str();
    if (!f.good()) throw std::runtime_error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move " + tmp + " into place");
}

}  // namespace shocklab
