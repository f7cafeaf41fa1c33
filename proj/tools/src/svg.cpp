#include "tailcond_cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace tailcond::svg {

namespace {

constexpr double kPlot = 280.0;   // side of one plot area
constexpr double kMargin = 40.0;  // room for labels around it
constexpr double kTitle = 28.0;

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

class Document {
 public:
  Document(double width, double height, const std::string& title) : width_(width) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
         << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\" font-family=\"sans-serif\">\n";
    out_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    text(width / 2.0, 18.0, title, 14, "middle");
  }

  void text(double x, double y, const std::string& s, int size, const char* anchor) {
    out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << size << "\" text-anchor=\""
         << anchor << "\">" << escape(s) << "</text>\n";
  }

  void box(double x, double y, double w, double h) {
    out_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
         << "\" fill=\"none\" stroke=\"black\"/>\n";
  }

  void dot(double x, double y, double r, const std::string& fill) {
    out_ << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r) << "\" fill=\"" << fill
         << "\"/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const char* stroke, bool dashed) {
    out_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\"" << (dashed ? " stroke-dasharray=\"4 3\"" : "")
         << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      out_ << (i ? " " : "") << num(pts[i].first) << ',' << num(pts[i].second);
    }
    out_ << "\"/>\n";
  }

  void polygon(const std::vector<std::pair<double, double>>& pts) {
    out_ << "<polygon fill=\"none\" stroke=\"black\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      out_ << (i ? " " : "") << num(pts[i].first) << ',' << num(pts[i].second);
    }
    out_ << "\"/>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

  [[nodiscard]] double width() const { return width_; }

 private:
  std::ostringstream out_;
  double width_;
};

struct Range {
  double lo, hi;
  [[nodiscard]] double map(double v, double a, double b) const { return a + (v - lo) / (hi - lo) * (b - a); }
};

Range padded_range(const std::vector<double>& values) {
  double lo = *std::min_element(values.begin(), values.end());
  double hi = *std::max_element(values.begin(), values.end());
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

// Axis frame with the range endpoints as tick labels.
void frame(Document& doc, double x0, double y0, Range rx, Range ry, const std::string& xl, const std::string& yl) {
  doc.box(x0, y0, kPlot, kPlot);
  doc.text(x0, y0 + kPlot + 14, num(rx.lo), 10, "start");
  doc.text(x0 + kPlot, y0 + kPlot + 14, num(rx.hi), 10, "end");
  doc.text(x0 - 4, y0 + kPlot, num(ry.lo), 10, "end");
  doc.text(x0 - 4, y0 + 10, num(ry.hi), 10, "end");
  doc.text(x0 + kPlot / 2, y0 + kPlot + 28, xl, 12, "middle");
  doc.text(x0 - 28, y0 + kPlot / 2, yl, 12, "middle");
}

}  // namespace

std::string scatter(const MaximaSample& sample, const std::string& title) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < sample.cols(); ++a) {
    for (std::size_t b = a + 1; b < sample.cols(); ++b) pairs.emplace_back(a, b);
  }
  const double cell = kPlot + 2 * kMargin;
  Document doc(cell * static_cast<double>(std::max<std::size_t>(pairs.size(), 1)), cell + kTitle, title);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [a, b] = pairs[p];
    const auto xs = sample.column(a);
    const auto ys = sample.column(b);
    const Range rx = padded_range(xs), ry = padded_range(ys);
    const double x0 = cell * static_cast<double>(p) + kMargin, y0 = kTitle + 10;
    frame(doc, x0, y0, rx, ry, "m" + std::to_string(a + 1), "m" + std::to_string(b + 1));
    for (std::size_t r = 0; r < xs.size(); ++r) {
      doc.dot(rx.map(xs[r], x0, x0 + kPlot), ry.map(ys[r], y0 + kPlot, y0), 2.0, "steelblue");
    }
  }
  return doc.finish();
}

std::string pickands(const SimplexGrid& grid, std::span<const double> a_hat, const std::string& title) {
  const double cell = kPlot + 2 * kMargin;
  Document doc(cell, cell + kTitle, title);
  const double x0 = kMargin, y0 = kTitle + 10;
  if (grid.dim() == 2) {
    const Range rx{0.0, 1.0}, ry{0.5, 1.0};
    frame(doc, x0, y0, rx, ry, "t", "A(t)");
    auto at = [&](double t, double a) { return std::pair{rx.map(t, x0, x0 + kPlot), ry.map(a, y0 + kPlot, y0)}; };
    doc.polyline({at(0.0, 1.0), at(1.0, 1.0)}, "gray", true);
    doc.polyline({at(0.0, 1.0), at(0.5, 0.5), at(1.0, 1.0)}, "gray", true);
    std::vector<std::pair<double, double>> curve;
    for (std::size_t i = 0; i < grid.size(); ++i) curve.push_back(at(grid.point(i)[0], a_hat[i]));
    doc.polyline(curve, "firebrick", false);
  } else if (grid.dim() == 3) {
    const double h = kPlot * std::sqrt(3.0) / 2.0;
    const double base = y0 + (kPlot + h) / 2.0;
    auto at = [&](std::span<const double> t) {
      return std::pair{x0 + kPlot * (t[1] + t[2] / 2.0), base - h * t[2]};
    };
    const double e1[3]{1, 0, 0}, e2[3]{0, 1, 0}, e3[3]{0, 0, 1};
    doc.polygon({at(e1), at(e2), at(e3)});
    doc.text(at(e1).first - 4, at(e1).second + 14, "t1", 12, "end");
    doc.text(at(e2).first + 4, at(e2).second + 14, "t2", 12, "start");
    doc.text(at(e3).first, at(e3).second - 6, "t3", 12, "middle");
    const double r = std::max(1.0, 0.45 * kPlot * grid.mesh());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      // Grey level from A = 1/3 (black) to A = 1 (white).
      const double level = std::clamp((a_hat[i] - 1.0 / 3.0) * 1.5, 0.0, 1.0);
      const int g = static_cast<int>(std::lround(255.0 * level));
      char fill[16];
      std::snprintf(fill, sizeof fill, "#%02x%02x%02x", g, g, g);
      const auto [x, y] = at(grid.point(i));
      doc.dot(x, y, r, fill);
    }
    doc.text(doc.width() / 2.0, y0 + kPlot + 28, "shade: A from 1/3 (black) to 1 (white)", 11, "middle");
  } else {
    std::vector<double> idx(grid.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
    const Range rx = padded_range(idx), ry{1.0 / static_cast<double>(grid.dim()), 1.0};
    frame(doc, x0, y0, rx, ry, "grid index", "A");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      doc.dot(rx.map(idx[i], x0, x0 + kPlot), ry.map(a_hat[i], y0 + kPlot, y0), 1.2, "firebrick");
    }
  }
  return doc.finish();
}

}  // namespace tailcond::svg
