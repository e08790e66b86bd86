#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hypergon/core.hpp"

namespace hypergon {

struct ValidationOptions {
  bool auto_orient = false;
};

class HyperbolicPolygon;
HyperbolicPolygon validate(std::vector<DiskPoint> vertices, const ValidationOptions& opts);

// Closed geodesic polygon, positively oriented, no two consecutive vertices
// equal. Construct through validate().
class HyperbolicPolygon {
 public:
  const std::vector<DiskPoint>& vertices() const { return vertices_; }
  const std::vector<GeodesicSide>& sides() const { return sides_; }
  std::size_t size() const { return vertices_.size(); }
  bool reversed() const { return reversed_; }

  bool all_interior() const {
    for (const DiskPoint& v : vertices_) {
      if (v.ideal()) return false;
    }
    return true;
  }

 private:
  HyperbolicPolygon() = default;
  friend HyperbolicPolygon validate(std::vector<DiskPoint>, const ValidationOptions&);

  std::vector<DiskPoint> vertices_;
  std::vector<GeodesicSide> sides_;
  bool reversed_ = false;
};

namespace detail {

// Plain Euclidean shoelace sum of the raw coordinates; only its sign is used,
// to decide orientation. Zero (collinear input) counts as positive.
inline double euclidean_shoelace(const std::vector<DiskPoint>& vs) {
  const std::size_t n = vs.size();
  std::vector<double> terms(n);
  for (std::size_t k = 0; k < n; ++k) {
    terms[k] = std::imag(std::conj(vs[k].value()) * vs[(k + 1) % n].value());
  }
  return sum_canonical(std::move(terms));
}

}  // namespace detail

inline HyperbolicPolygon validate(std::vector<DiskPoint> vertices,
                                  const ValidationOptions& opts = {}) {
  if (vertices.size() < 3) {
    throw TooFewVertices("a polygon needs at least 3 vertices, got " +
                         std::to_string(vertices.size()));
  }
  const std::size_t n = vertices.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(vertices[(k + 1) % n].value() - vertices[k].value()) <= kDegenerateEps) {
      throw DegenerateSide("consecutive vertices " + std::to_string(k) + " and " +
                           std::to_string((k + 1) % n) + " coincide");
    }
  }
  bool reversed = false;
  if (detail::euclidean_shoelace(vertices) < 0.0) {
    if (!opts.auto_orient) {
      throw NegativeOrientation("vertex order is clockwise");
    }
    std::reverse(vertices.begin(), vertices.end());
    reversed = true;
  }
  HyperbolicPolygon p;
  p.vertices_ = std::move(vertices);
  p.reversed_ = reversed;
  p.sides_.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    p.sides_.push_back(make_geodesic_side(p.vertices_[k], p.vertices_[(k + 1) % n]));
  }
  return p;
}

inline HyperbolicPolygon validate(const std::vector<Complex>& vertices,
                                  const ValidationOptions& opts = {}) {
  std::vector<DiskPoint> pts;
  pts.reserve(vertices.size());
  for (const Complex& v : vertices) pts.emplace_back(v);
  return validate(std::move(pts), opts);
}

enum class SideOrientation { Inward, Outward };

struct SideClassification {
  SideOrientation orientation;
  double cross;  // x_k y_{k+1} - y_k x_{k+1}
};

// Inward iff the side's carrier bulges toward the origin (cross > 0).
// Diameter segments count as outward.
inline SideClassification classify_side(const HyperbolicPolygon& p, std::size_t k) {
  const GeodesicSide& s = p.sides().at(k);
  const double cross = std::imag(std::conj(s.start.value()) * s.end.value());
  const bool inward = cross > 0.0 && s.arc.kind == ArcKind::CircularArc;
  return SideClassification{inward ? SideOrientation::Inward : SideOrientation::Outward,
                            cross};
}

inline std::vector<SideClassification> classify_sides(const HyperbolicPolygon& p) {
  std::vector<SideClassification> out;
  out.reserve(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) out.push_back(classify_side(p, k));
  return out;
}

namespace detail {

inline double area_term(Complex z, Complex w) {
  const Complex zw = std::conj(z) * w;
  return 2.0 * std::atan2(std::imag(zw), 1.0 - std::real(zw));
}

// Raw cyclic area sum over bare vertex values. Coincident neighbors
// contribute zero instead of erroring; optimization kernels rely on that.
inline double area_raw(const std::vector<Complex>& vs) {
  const std::size_t n = vs.size();
  std::vector<double> terms(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex z = vs[k], w = vs[(k + 1) % n];
    if (z != w) terms[k] = area_term(z, w);
  }
  return sum_canonical(std::move(terms));
}

// Raw cyclic perimeter over bare vertex values, via the side coefficient
// modulus so it matches the polygon perimeter bit for bit.
inline double perimeter_raw(const std::vector<Complex>& vs) {
  const std::size_t n = vs.size();
  std::vector<double> terms(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex z = vs[k], w = vs[(k + 1) % n];
    if (z == w) continue;
    const Complex a = (1.0 - std::conj(z) * w) / (w - z);
    terms[k] = atanh2_log(1.0 / std::abs(a));
  }
  return sum_canonical(std::move(terms));
}

}  // namespace detail

// Signed-arc-tangent area: sum of 2 atan((x_k y_{k+1} - y_k x_{k+1}) /
// (1 - x_k x_{k+1} - y_k y_{k+1})) over the cyclic vertex list.
inline double area_computational(const HyperbolicPolygon& p) {
  std::vector<double> terms(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    const GeodesicSide& s = p.sides()[k];
    terms[k] = detail::area_term(s.start.value(), s.end.value());
  }
  return detail::sum_canonical(std::move(terms));
}

// Arc-angle area: inward sweeps count positive, outward negative.
inline double area_geometric(const HyperbolicPolygon& p) {
  std::vector<double> terms(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double angle = p.sides()[k].arc_angle;
    terms[k] = classify_side(p, k).orientation == SideOrientation::Inward ? angle : -angle;
  }
  return detail::sum_canonical(std::move(terms));
}

struct AngleSet {
  std::vector<double> interior;  // zero at ideal vertices by convention
  std::vector<double> exterior;  // exterior[k] == pi - interior[k] exactly
};

namespace detail {

// Direction of travel at the start of the side.
inline Complex tangent_at_start(const GeodesicSide& s) {
  if (s.a_coeff) return (1.0 - std::norm(s.start.value())) / *s.a_coeff;
  if (s.arc.kind == ArcKind::DiameterSegment) return s.end.value() - s.start.value();
  const Complex radial = s.start.value() - s.arc.center;
  return carrier_sweep(s) >= 0.0 ? Complex(0.0, 1.0) * radial : Complex(0.0, -1.0) * radial;
}

// Direction of travel at the end of the side.
inline Complex tangent_at_end(const GeodesicSide& s) {
  if (s.a_coeff) {
    const Complex z = s.start.value();
    const Complex a = *s.a_coeff;
    const Complex d = std::conj(z) + a;
    return a * (1.0 - std::norm(z)) / (d * d);
  }
  if (s.arc.kind == ArcKind::DiameterSegment) return s.end.value() - s.start.value();
  const Complex radial = s.end.value() - s.arc.center;
  return carrier_sweep(s) >= 0.0 ? Complex(0.0, 1.0) * radial : Complex(0.0, -1.0) * radial;
}

}  // namespace detail

// Turn angles between adjacent side tangents. Exterior angles use the
// principal argument in (-pi, pi]; ideal vertices get interior 0, exterior pi.
inline AngleSet interior_angles(const HyperbolicPolygon& p) {
  const std::size_t n = p.size();
  AngleSet out;
  out.interior.resize(n);
  out.exterior.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double ext_raw;
    if (p.vertices()[k].ideal()) {
      ext_raw = kPi;
    } else {
      const GeodesicSide& incoming = p.sides()[(k + n - 1) % n];
      const GeodesicSide& outgoing = p.sides()[k];
      Complex w = detail::tangent_at_start(outgoing) / detail::tangent_at_end(incoming);
      // pin arg(-1) to +pi regardless of the sign of a zero imaginary part
      if (std::imag(w) == 0.0) w = Complex(std::real(w), 0.0);
      ext_raw = std::arg(w);
    }
    out.interior[k] = kPi - ext_raw;
    out.exterior[k] = kPi - out.interior[k];
  }
  return out;
}

bool is_simple(const HyperbolicPolygon& p);

// Angle-defect area pi (n - 2) - sum of interior angles. Needs a simple
// boundary; the raw formulas below do not.
inline double area_classical(const HyperbolicPolygon& p) {
  if (!is_simple(p)) {
    throw NotSimple("angle-defect area needs a simple boundary");
  }
  const AngleSet angles = interior_angles(p);
  return kPi * static_cast<double>(p.size() - 2) -
         detail::sum_canonical(angles.interior);
}

// Sum of side lengths; +infinity as soon as any vertex is ideal.
inline double perimeter(const HyperbolicPolygon& p) {
  std::vector<double> terms(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) terms[k] = p.sides()[k].length;
  return detail::sum_canonical(std::move(terms));
}

// A + iP = (2/i) sum log((|a_k|^2 + conj(a_k z_k)) / (|a_k|^2 + |a_k|)).
// Interior vertices only.
inline Complex area_perimeter_identity(const HyperbolicPolygon& p) {
  std::vector<Complex> terms;
  terms.reserve(p.size());
  for (const GeodesicSide& s : p.sides()) {
    if (!s.a_coeff || s.end.ideal()) {
      throw IdealVertex("area-perimeter identity needs interior vertices");
    }
    const Complex a = *s.a_coeff;
    const Complex az = a * s.start.value();
    const double mod = std::abs(a);
    const double mod2 = std::norm(a);
    terms.push_back(std::log((mod2 + std::conj(az)) / (mod2 + mod)));
  }
  return Complex(0.0, -2.0) * detail::sum_canonical(std::move(terms));
}

enum class OriginLocation { Interior, Exterior };

namespace detail {

inline double distance_to_branch_cut(Complex w) {
  // distance to the real segment [-1, 0]
  if (w.real() >= -1.0 && w.real() <= 0.0) return std::fabs(w.imag());
  return std::min(std::abs(w), std::abs(w + 1.0));
}

// Adaptive winding-number evaluator: per-side sample polylines refined until
// every principal-argument increment is unambiguous. Build once, query often.
class PointLocator {
 public:
  explicit PointLocator(const HyperbolicPolygon& p) {
    geoms_.reserve(p.size());
    for (const GeodesicSide& s : p.sides()) {
      SideGeometry g;
      g.side = &s;
      g.sweep = carrier_sweep(s);
      const int segments =
          std::max(2, static_cast<int>(std::ceil(std::fabs(g.sweep) / (kPi / 8.0))));
      g.us.resize(segments + 1);
      g.pts.resize(segments + 1);
      for (int i = 0; i <= segments; ++i) {
        g.us[i] = static_cast<double>(i) / segments;
        g.pts[i] = side_point(s, g.us[i]);
      }
      geoms_.push_back(std::move(g));
    }
  }

  // Winding number of the boundary around q; nullopt when q sits too close
  // to the boundary for the increments to resolve.
  std::optional<int> winding(Complex q) const {
    bool undecidable = false;
    double total = 0.0;
    for (const SideGeometry& g : geoms_) {
      for (std::size_t i = 0; i + 1 < g.pts.size(); ++i) {
        total += piece(g, g.us[i], g.pts[i], g.us[i + 1], g.pts[i + 1], q, 0, undecidable);
        if (undecidable) return std::nullopt;
      }
    }
    const double turns = total / (2.0 * kPi);
    const long r = std::lround(turns);
    if (std::fabs(turns - static_cast<double>(r)) > 0.25) return std::nullopt;
    return static_cast<int>(r);
  }

 private:
  struct SideGeometry {
    const GeodesicSide* side = nullptr;
    double sweep = 0.0;
    std::vector<double> us;
    std::vector<Complex> pts;
  };

  // Chord deviation bound for a sub-arc spanning du of the parameter range.
  double sagitta(const SideGeometry& g, double du) const {
    if (g.side->arc.kind == ArcKind::DiameterSegment) return 0.0;
    return g.side->arc.radius * (1.0 - std::cos(0.5 * std::fabs(g.sweep) * du));
  }

  // Principal-argument increment contributed by the sub-arc [u0, u1]. Splits
  // while the chord increment is ambiguous or q could hide between chord and
  // arc; a straight chord never needs splitting.
  double piece(const SideGeometry& g, double u0, Complex p0, double u1, Complex p1,
               Complex q, int depth, bool& undecidable) const {
    const Complex r = (p1 - q) * std::conj(p0 - q);
    const double inc = std::atan2(std::imag(r), std::real(r));
    if (g.side->arc.kind == ArcKind::DiameterSegment) return inc;
    const bool ambiguous = std::fabs(inc) > 0.5 * kPi ||
                           point_segment_distance(q, p0, p1) <= sagitta(g, u1 - u0);
    if (!ambiguous) return inc;
    if (depth >= 48) {
      undecidable = true;
      return 0.0;
    }
    const double um = 0.5 * (u0 + u1);
    const Complex pm = side_point(*g.side, um);
    return piece(g, u0, p0, um, pm, q, depth + 1, undecidable) +
           piece(g, um, pm, u1, p1, q, depth + 1, undecidable);
  }

  std::vector<SideGeometry> geoms_;
};

inline double boundary_distance(const HyperbolicPolygon& p, Complex q) {
  double d = kInfinity;
  for (const GeodesicSide& s : p.sides()) d = std::min(d, side_distance(s, q));
  return d;
}

}  // namespace detail

// Winding-route area. The caller asserts where the origin lies; the numeric
// winding number double-checks the assertion. Needs interior nonzero vertices
// and every a_k z_k off the branch cut [-1, 0].
inline double area_winding(const HyperbolicPolygon& p, OriginLocation origin) {
  for (const DiskPoint& v : p.vertices()) {
    if (v.ideal()) throw IdealVertex("winding-route area needs interior vertices");
    if (v.value() == Complex(0.0, 0.0)) {
      throw ZeroVertex("winding-route area needs nonzero vertices");
    }
  }
  if (detail::boundary_distance(p, Complex(0.0, 0.0)) <= 1e-9) {
    throw OriginOnBoundary("origin lies on (or within 1e-9 of) the boundary");
  }
  std::vector<double> terms;
  terms.reserve(p.size());
  for (const GeodesicSide& s : p.sides()) {
    const Complex az = *s.a_coeff * s.start.value();
    if (detail::distance_to_branch_cut(az) <= 1e-12) {
      throw BranchViolation("a_k z_k lies on the branch cut [-1, 0]");
    }
    terms.push_back(2.0 * std::arg(1.0 + 1.0 / az));
  }
  const std::optional<int> w = detail::PointLocator(p).winding(Complex(0.0, 0.0));
  const int expected = origin == OriginLocation::Interior ? 1 : 0;
  if (!w || *w != expected) {
    throw WindingMismatch("numeric winding " +
                          (w ? std::to_string(*w) : std::string("undecidable")) +
                          " contradicts the asserted origin location");
  }
  const double s = detail::sum_canonical(std::move(terms));
  return origin == OriginLocation::Interior ? s - 4.0 * kPi : s;
}

// | (signed carrier sweeps) + (exterior turns) - 2 pi |; zero for simple
// positively oriented polygons. Inward sweeps count negative.
inline double turning_residual(const HyperbolicPolygon& p) {
  if (!is_simple(p)) {
    throw NotSimple("turning residual needs a simple boundary");
  }
  const AngleSet angles = interior_angles(p);
  std::vector<double> terms;
  terms.reserve(2 * p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double angle = p.sides()[k].arc_angle;
    terms.push_back(classify_side(p, k).orientation == SideOrientation::Inward ? -angle
                                                                               : angle);
    terms.push_back(angles.exterior[k]);
  }
  return std::fabs(detail::sum_canonical(std::move(terms)) - 2.0 * kPi);
}

namespace detail {

// Intersection candidates of the two carriers (at most two points).
inline std::vector<Complex> carrier_intersections(const GeodesicSide& s1,
                                                  const GeodesicSide& s2) {
  const bool c1 = s1.arc.kind == ArcKind::CircularArc;
  const bool c2 = s2.arc.kind == ArcKind::CircularArc;
  std::vector<Complex> out;
  if (c1 && c2) {
    const Complex d = s2.arc.center - s1.arc.center;
    const double dist = std::abs(d);
    if (dist <= 1e-12) return out;  // same carrier circle: overlap is not a crossing
    const double r1 = s1.arc.radius, r2 = s2.arc.radius;
    const double a = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist);
    const double h2 = r1 * r1 - a * a;
    if (h2 < -1e-15) return out;
    const double h = std::sqrt(std::max(0.0, h2));
    const Complex u = d / dist;
    const Complex base = s1.arc.center + a * u;
    const Complex perp = Complex(0.0, 1.0) * u;
    out.push_back(base + h * perp);
    if (h > 0.0) out.push_back(base - h * perp);
    return out;
  }
  if (!c1 && !c2) {
    // chord lines; parallel or collinear pairs do not cross
    const Complex a1 = s1.start.value(), d1 = s1.end.value() - a1;
    const Complex a2 = s2.start.value(), d2 = s2.end.value() - a2;
    const double det = d1.real() * d2.imag() - d1.imag() * d2.real();
    if (std::fabs(det) <= 1e-15) return out;
    const Complex r = a2 - a1;
    const double t = (r.real() * d2.imag() - r.imag() * d2.real()) / det;
    out.push_back(a1 + t * d1);
    return out;
  }
  const GeodesicSide& circ = c1 ? s1 : s2;
  const GeodesicSide& line = c1 ? s2 : s1;
  const Complex a = line.start.value();
  const Complex dir = line.end.value() - a;
  const Complex ac = a - circ.arc.center;
  const double qa = std::norm(dir);
  const double qb = 2.0 * (ac.real() * dir.real() + ac.imag() * dir.imag());
  const double qc = std::norm(ac) - circ.arc.radius * circ.arc.radius;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0 || qa == 0.0) return out;
  const double sq = std::sqrt(disc);
  out.push_back(a + ((-qb + sq) / (2.0 * qa)) * dir);
  if (sq > 0.0) out.push_back(a + ((-qb - sq) / (2.0 * qa)) * dir);
  return out;
}

}  // namespace detail

// True when no two sides touch away from their shared vertices. Same-carrier
// overlap does not count as a crossing, so Euclidean-degenerate collinear
// polygons are accepted.
inline bool is_simple(const HyperbolicPolygon& p) {
  const std::size_t n = p.size();
  const double tol = 1e-9;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Adjacent sides on distinct carriers can only meet at the shared
      // vertex: two distinct geodesic carriers intersect the closed disk at
      // most once (the second circle-circle root is an inversion point
      // outside the disk). Testing them would only pick up tangency noise at
      // ideal vertices.
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      const GeodesicSide& si = p.sides()[i];
      const GeodesicSide& sj = p.sides()[j];
      for (const Complex& q : detail::carrier_intersections(si, sj)) {
        if (detail::side_distance(si, q) > tol || detail::side_distance(sj, q) > tol) {
          continue;
        }
        return false;
      }
    }
  }
  return true;
}

// Cross-checked area summary: every formula that applies to the polygon, the
// spread between them, and the tolerance they are expected to meet.
struct AreaReport {
  double a_computational = 0.0;
  double a_geometric = 0.0;
  std::optional<double> a_classical;
  std::optional<double> a_winding;
  std::optional<OriginLocation> winding_origin;
  double perimeter = 0.0;
  std::optional<Complex> identity_value;
  std::optional<Complex> identity_residual;
  bool simple = false;
  double max_pairwise_discrepancy = 0.0;
  double tolerance = 0.0;
};

inline AreaReport compute_area_report(const HyperbolicPolygon& p, double tolerance) {
  AreaReport r;
  r.tolerance = tolerance;
  r.a_computational = area_computational(p);
  r.a_geometric = area_geometric(p);
  r.simple = is_simple(p);
  if (r.simple) r.a_classical = area_classical(p);
  r.perimeter = perimeter(p);
  if (p.all_interior()) {
    r.identity_value = area_perimeter_identity(p);
    r.identity_residual = *r.identity_value - Complex(r.a_computational, r.perimeter);
  }
  if (p.all_interior() &&
      detail::boundary_distance(p, Complex(0.0, 0.0)) > 1e-9) {
    const std::optional<int> w = detail::PointLocator(p).winding(Complex(0.0, 0.0));
    if (w && (*w == 0 || *w == 1)) {
      const OriginLocation loc =
          *w == 1 ? OriginLocation::Interior : OriginLocation::Exterior;
      try {
        r.a_winding = area_winding(p, loc);
        r.winding_origin = loc;
      } catch (const Error&) {
        // branch cut or zero vertex: the winding route simply does not apply
      }
    }
  }
  std::vector<double> values{r.a_computational, r.a_geometric};
  if (r.a_classical) values.push_back(*r.a_classical);
  if (r.a_winding) values.push_back(*r.a_winding);
  if (r.identity_value) values.push_back(r.identity_value->real());
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      worst = std::max(worst, std::fabs(values[i] - values[j]));
    }
  }
  r.max_pairwise_discrepancy = worst;
  return r;
}

}  // namespace hypergon
