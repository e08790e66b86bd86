#pragma once

#include <cstdio>
#include <string>

#include "hypergon/core.hpp"
#include "hypergon/polygon.hpp"

namespace hypergon {

namespace detail {

inline std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return std::string(buf);
}

// Disk coordinates to a 1000x1000 canvas, y pointing up.
inline double svg_x(double x) { return 500.0 + 500.0 * x; }
inline double svg_y(double y) { return 500.0 - 500.0 * y; }

}  // namespace detail

// Deterministic standalone SVG: unit circle, one path per side (inward
// carriers blue, outward red), vertex markers and 1-based labels.
inline std::string render_svg(const HyperbolicPolygon& p) {
  using detail::fmt4;
  using detail::svg_x;
  using detail::svg_y;
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" "
         "viewBox=\"0 0 1000 1000\">\n";
  out += "<rect width=\"1000\" height=\"1000\" fill=\"#ffffff\"/>\n";
  out += "<circle cx=\"500\" cy=\"500\" r=\"500\" fill=\"none\" stroke=\"#888888\" "
         "stroke-width=\"1\"/>\n";
  Complex centroid(0.0, 0.0);
  for (const DiskPoint& v : p.vertices()) centroid += v.value();
  centroid /= static_cast<double>(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    const GeodesicSide& s = p.sides()[k];
    const Complex a = s.start.value(), b = s.end.value();
    const bool inward = classify_side(p, k).orientation == SideOrientation::Inward;
    const char* color = inward ? "#1660c9" : "#c93030";
    out += "<path d=\"M " + fmt4(svg_x(a.real())) + " " + fmt4(svg_y(a.imag())) + " ";
    if (s.arc.kind == ArcKind::CircularArc) {
      const double r = 500.0 * s.arc.radius;
      const char* sweep = detail::carrier_sweep(s) > 0.0 ? "0" : "1";
      out += "A " + fmt4(r) + " " + fmt4(r) + " 0 0 " + sweep + " ";
    } else {
      out += "L ";
    }
    out += fmt4(svg_x(b.real())) + " " + fmt4(svg_y(b.imag())) + "\" fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"2\"/>\n";
  }
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Complex v = p.vertices()[k].value();
    out += "<circle cx=\"" + fmt4(svg_x(v.real())) + "\" cy=\"" + fmt4(svg_y(v.imag())) +
           "\" r=\"4\" fill=\"#222222\"/>\n";
    Complex dir = v - centroid;
    const double len = std::abs(dir);
    dir = len > 1e-9 ? dir / len : Complex(0.0, 1.0);
    const Complex lp = v + 0.035 * dir;
    out += "<text x=\"" + fmt4(svg_x(lp.real())) + "\" y=\"" + fmt4(svg_y(lp.imag())) +
           "\" font-family=\"monospace\" font-size=\"18\" fill=\"#222222\" "
           "text-anchor=\"middle\" dominant-baseline=\"middle\">z" +
           std::to_string(k + 1) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace hypergon
