#include "qha/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace qha::svg {
namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kMargin = 60;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<Series>& series) {
  double x0 = std::numeric_limits<double>::infinity();
  double x1 = -x0;
  double y0 = x0;
  double y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const double pw = kWidth - 2 * kMargin;
  const double ph = kHeight - 2 * kMargin;
  auto px = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kHeight - kMargin - (y - y0) / (y1 - y0) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title) << "</text>\n";
  os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\" font-size=\"12\">"
     << escape(x_label) << "</text>\n";
  os << "<text x=\"15\" y=\"" << kHeight / 2 << "\" font-size=\"12\" transform=\"rotate(-90 15 " << kHeight / 2
     << ")\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x0 + (x1 - x0) * t / 4.0;
    const double yv = y0 + (y1 - y0) * t / 4.0;
    os << "<text x=\"" << num(px(xv)) << "\" y=\"" << kHeight - kMargin + 16
       << "\" text-anchor=\"middle\" font-size=\"10\">" << num(xv) << "</text>\n";
    os << "<text x=\"" << kMargin - 6 << "\" y=\"" << num(py(yv) + 3) << "\" text-anchor=\"end\" font-size=\"10\">"
       << num(yv) << "</text>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (s.dashed) os << " stroke-dasharray=\"4 3\"";
    os << " points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      os << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << kMargin + 8 << "\" y=\"" << kMargin + 14 + 14 * static_cast<int>(k) << "\" font-size=\"11\" fill=\""
       << color << "\">" << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string heatmap(const std::string& title, const RMatrix& values, int max_cells) {
  const int d = static_cast<int>(values.rows());
  const int step = std::max(1, (d + max_cells - 1) / max_cells);
  const int cells = (d + step - 1) / step;
  // Average blocks of the origin-centered grid; rows are time, columns frequency.
  RMatrix block = RMatrix::Zero(cells, cells);
  RMatrix count = RMatrix::Zero(cells, cells);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const int ci = ((i + d / 2) % d) / step;
      const int cj = ((j + d / 2) % d) / step;
      block(ci, cj) += values(i, j);
      count(ci, cj) += 1.0;
    }
  }
  block = block.cwiseQuotient(count);
  const double lo = block.minCoeff();
  const double hi = block.maxCoeff() > lo ? block.maxCoeff() : lo + 1.0;
  const int size = 400;
  const double px = static_cast<double>(size) / cells;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 20 << "\" height=\"" << size + 50 << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << (size + 20) / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
     << "</text>\n";
  for (int ci = 0; ci < cells; ++ci) {
    for (int cj = 0; cj < cells; ++cj) {
      const int level = 255 - static_cast<int>(std::lround(255.0 * (block(ci, cj) - lo) / (hi - lo)));
      // Time runs left to right, frequency bottom to top.
      os << "<rect x=\"" << num(10 + ci * px) << "\" y=\"" << num(40 + (cells - 1 - cj) * px) << "\" width=\""
         << num(px + 0.05) << "\" height=\"" << num(px + 0.05) << "\" fill=\"rgb(" << level << ',' << level << ','
         << level << ")\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace qha::svg
