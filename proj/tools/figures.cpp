// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#include "figures.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace specpoint::cli {
namespace {

constexpr double kSize = 600.0;
constexpr double kPad = 30.0;

std::string num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
  (void)ec;
  std::string s(buf, end);
  if (s == "-0.000") s = "0.000";
  return s;
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

struct Frame {
  double xmin, xmax, ymin, ymax;
  double sx() const { return (kSize - 2 * kPad) / (xmax - xmin); }
  double sy() const { return (kSize - 2 * kPad) / (ymax - ymin); }
  double X(double x) const { return kPad + (x - xmin) * sx(); }
  double Y(double y) const { return kSize - kPad - (y - ymin) * sy(); }
};

void header(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kSize) << "\" height=\""
     << num(kSize) << "\" viewBox=\"0 0 " << num(kSize) << ' ' << num(kSize) << "\">\n";
  os << "<title>" << escape(title) << "</title>\n";
  os << "<defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"3\" "
        "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"black\"/></marker>\n"
        "<pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\">"
        "<line x1=\"0\" y1=\"3\" x2=\"6\" y2=\"3\" stroke=\"black\" stroke-width=\"0.6\"/>"
        "</pattern></defs>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void axes(std::ostringstream& os, const Frame& f) {
  os << "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  if (f.ymin <= 0 && 0 <= f.ymax) {
    os << "<line x1=\"" << num(f.X(f.xmin)) << "\" y1=\"" << num(f.Y(0)) << "\" x2=\""
       << num(f.X(f.xmax)) << "\" y2=\"" << num(f.Y(0)) << "\" marker-end=\"url(#arrow)\"/>\n";
  }
  if (f.xmin <= 0 && 0 <= f.xmax) {
    os << "<line x1=\"" << num(f.X(0)) << "\" y1=\"" << num(f.Y(f.ymin)) << "\" x2=\""
       << num(f.X(0)) << "\" y2=\"" << num(f.Y(f.ymax)) << "\" marker-end=\"url(#arrow)\"/>\n";
  }
  os << "</g>\n";
}

void circle(std::ostringstream& os, const Frame& f, double cx, double cy, double r,
            const std::string& style) {
  os << "<ellipse cx=\"" << num(f.X(cx)) << "\" cy=\"" << num(f.Y(cy)) << "\" rx=\""
     << num(r * f.sx()) << "\" ry=\"" << num(r * f.sy()) << "\" " << style << "/>\n";
}

}  // namespace

std::string plane_spectrum_svg(const homog2d::PlaneSpectrum& s, const std::string& title) {
  const Frame f{s.bounds.xmin, s.bounds.xmax, s.bounds.ymin, s.bounds.ymax};
  std::ostringstream os;
  header(os, title);

  os << "<g id=\"region\" fill=\"url(#hatch)\" stroke=\"none\">\n";
  const double w = s.dx() * f.sx();
  const double h = s.dy() * f.sy();
  for (std::size_t iy = 0; iy < s.resolution; ++iy) {
    // Merge runs of InSpectrum cells in a row into one rectangle.
    std::size_t ix = 0;
    while (ix < s.resolution) {
      if (s.at(ix, iy) != homog2d::Label::InSpectrum) {
        ++ix;
        continue;
      }
      std::size_t end = ix;
      while (end < s.resolution && s.at(end, iy) == homog2d::Label::InSpectrum) ++end;
      const double x0 = s.bounds.xmin + static_cast<double>(ix) * s.dx();
      const double y1 = s.bounds.ymin + static_cast<double>(iy + 1) * s.dy();
      os << "<rect x=\"" << num(f.X(x0)) << "\" y=\"" << num(f.Y(y1)) << "\" width=\""
         << num(w * static_cast<double>(end - ix)) << "\" height=\"" << num(h) << "\"/>\n";
      ix = end;
    }
  }
  os << "</g>\n";

  axes(os, f);

  os << "<g id=\"curve\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n<polyline points=\"";
  const auto pts = s.curve.points();
  // Thin very dense curves; the figure does not need every refinement sample.
  const std::size_t stride = std::max<std::size_t>(1, pts.size() / 4096);
  for (std::size_t k = 0; k < pts.size(); k += stride) {
    os << num(f.X(pts[k].a)) << ',' << num(f.Y(pts[k].b)) << ' ';
  }
  if (!pts.empty() && s.curve.closed) os << num(f.X(pts[0].a)) << ',' << num(f.Y(pts[0].b));
  os << "\"/>\n</g>\n</svg>\n";
  return os.str();
}

std::string shift_model_svg(const structured::ShiftModelReport& r) {
  const double m = 1.25 * r.sigma_radius;
  const Frame f{-m, m, -m, m};
  std::ostringstream os;
  header(os, "spectrum of the shift model");
  os << "<g id=\"region\">\n";
  circle(os, f, 0, 0, r.sigma_radius, "fill=\"url(#hatch)\" stroke=\"none\"");
  os << "</g>\n";
  axes(os, f);
  os << "<g id=\"curve\" fill=\"none\" stroke=\"black\">\n";
  circle(os, f, 0, 0, r.Sigma_radius, "stroke-width=\"1.5\"");
  circle(os, f, 0, 0, r.sigma_omega_radius, "stroke-width=\"1\" stroke-dasharray=\"4 3\"");
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace specpoint::cli
