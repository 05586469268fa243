#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

namespace pseudohyp {

// Shortest round-trip decimal form.
inline std::string fmt_double(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
    s += "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + fmt_double(r[i]);
      s += "\n";
    }
    return s;
  }
};

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// Polylines in a chart window mapped onto a square canvas.
class SvgCanvas {
 public:
  SvgCanvas(double x0, double x1, double y0, double y1, int px = 600) : x0_(x0), x1_(x1), y0_(y0), y1_(y1), px_(px) {}

  void polyline(const std::vector<Eigen::Vector2d>& pts, const std::string& color, double width = 1.0) {
    if (pts.size() < 2) return;
    std::string d;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      d += (i ? " L" : "M") + fmt_double(sx(pts[i].x())) + "," + fmt_double(sy(pts[i].y()));
    }
    body_ += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + fmt_double(width) + "\"/>\n";
  }

  void polygon(const std::vector<Eigen::Vector2d>& pts, const std::string& fill) {
    std::string d;
    for (const auto& p : pts) d += fmt_double(sx(p.x())) + "," + fmt_double(sy(p.y())) + " ";
    body_ += "<polygon points=\"" + d + "\" fill=\"" + fill + "\" stroke=\"none\"/>\n";
  }

  void dot(const Eigen::Vector2d& p, const std::string& color, double r = 3.0) {
    body_ += "<circle cx=\"" + fmt_double(sx(p.x())) + "\" cy=\"" + fmt_double(sy(p.y())) + "\" r=\"" + fmt_double(r) +
             "\" fill=\"" + color + "\"/>\n";
  }

  std::string str() const {
    const std::string n = std::to_string(px_);
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + n + "\" height=\"" + n + "\" viewBox=\"0 0 " + n + " " +
           n + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body_ + "</svg>\n";
  }

 private:
  double sx(double x) const { return (x - x0_) / (x1_ - x0_) * px_; }
  double sy(double y) const { return (y1_ - y) / (y1_ - y0_) * px_; }
  double x0_, x1_, y0_, y1_;
  int px_;
  std::string body_;
};

}  // namespace pseudohyp
