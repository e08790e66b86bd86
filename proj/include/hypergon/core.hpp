#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypergon {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Moduli within this of 1 snap onto the unit circle and become ideal points.
inline constexpr double kBoundarySnapEps = 1e-12;
// Endpoints closer than this make a side degenerate.
inline constexpr double kDegenerateEps = 1e-14;
// Relative threshold on Im(conj(z) w) below which a side runs along a diameter.
inline constexpr double kDiameterRelEps = 1e-13;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PointOutsideDisk : Error { using Error::Error; };
struct DegenerateSide : Error { using Error::Error; };
struct TooFewVertices : Error { using Error::Error; };
struct NegativeOrientation : Error { using Error::Error; };
struct IdealVertex : Error { using Error::Error; };
struct ZeroVertex : Error { using Error::Error; };
struct BranchViolation : Error { using Error::Error; };
struct OriginOnBoundary : Error { using Error::Error; };
struct WindingMismatch : Error { using Error::Error; };
struct NotSimple : Error { using Error::Error; };
struct ToleranceNotMet : Error { using Error::Error; };
struct NoFeasibleIterate : Error { using Error::Error; };
struct PerimeterOutOfRange : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// Point of the closed unit disk. |z| >= 1 - kBoundarySnapEps is normalized
// onto the unit circle and flagged ideal; |z| > 1 + kBoundarySnapEps is
// rejected.
class DiskPoint {
 public:
  DiskPoint() : value_(0.0, 0.0), ideal_(false) {}

  explicit DiskPoint(Complex value) {
    const double r = std::abs(value);
    if (!(r <= 1.0 + kBoundarySnapEps)) {
      throw PointOutsideDisk("point modulus " + std::to_string(r) +
                             " lies outside the closed unit disk");
    }
    if (r >= 1.0 - kBoundarySnapEps) {
      value_ = value / r;
      ideal_ = true;
    } else {
      value_ = value;
      ideal_ = false;
    }
  }

  static DiskPoint from_xy(double x, double y) { return DiskPoint(Complex(x, y)); }

  Complex value() const { return value_; }
  bool ideal() const { return ideal_; }

  friend bool operator==(const DiskPoint& a, const DiskPoint& b) {
    return a.value_ == b.value_ && a.ideal_ == b.ideal_;
  }
  friend bool operator!=(const DiskPoint& a, const DiskPoint& b) { return !(a == b); }

 private:
  Complex value_;
  bool ideal_;
};

// Disk automorphism z -> e^{i theta} (z - a) / (1 - conj(a) z), |a| < 1.
class MobiusIsometry {
 public:
  MobiusIsometry() : a_(0.0, 0.0), theta_(0.0) {}

  MobiusIsometry(Complex a, double theta) : a_(a), theta_(theta) {
    if (!(std::abs(a) < 1.0)) {
      throw std::invalid_argument("Mobius translation parameter needs |a| < 1");
    }
  }

  Complex a() const { return a_; }
  double theta() const { return theta_; }

  Complex apply_value(Complex z) const {
    return std::polar(1.0, theta_) * (z - a_) / (1.0 - std::conj(a_) * z);
  }

  // M^{-1}(w) = e^{-i theta} (w + a e^{i theta}) / (1 + conj(a) e^{-i theta} w).
  MobiusIsometry inverse() const {
    return MobiusIsometry(-a_ * std::polar(1.0, theta_), -theta_);
  }

 private:
  Complex a_;
  double theta_;
};

// outer after inner, normalized back to the (a, theta) form via the 2x2
// matrix representation [[e^{i theta}, -e^{i theta} a], [-conj(a), 1]].
inline MobiusIsometry compose(const MobiusIsometry& outer, const MobiusIsometry& inner) {
  const Complex e2 = std::polar(1.0, outer.theta());
  const Complex e1 = std::polar(1.0, inner.theta());
  const Complex a2 = outer.a();
  const Complex a1 = inner.a();
  const Complex num = e2 * (e1 + a2 * std::conj(a1));
  const Complex c = -(std::conj(a2) * e1 + std::conj(a1));
  const Complex den = 1.0 + std::conj(a2) * e1 * a1;
  return MobiusIsometry(-std::conj(c / den), std::arg(num / den));
}

inline DiskPoint mobius_apply(const MobiusIsometry& m, const DiskPoint& p) {
  return DiskPoint(m.apply_value(p.value()));
}

namespace detail {

// 2 atanh(x) in log form; saturates to +infinity once 1 - x < 1e-15.
inline double atanh2_log(double x) {
  if (1.0 - x < 1e-15) return kInfinity;
  return std::log((1.0 + x) / (1.0 - x));
}

// Magnitude-ordered accumulation. The result depends only on the multiset of
// terms, so cyclic reindexing cannot perturb it, and a global sign flip
// negates it exactly.
inline double sum_canonical(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end(), [](double a, double b) {
    const double ma = std::fabs(a), mb = std::fabs(b);
    if (ma != mb) return ma < mb;
    return a < b;
  });
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

inline Complex sum_canonical(std::vector<Complex> terms) {
  std::sort(terms.begin(), terms.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  Complex s(0.0, 0.0);
  for (const Complex& t : terms) s += t;
  return s;
}

}  // namespace detail

// Geodesic distance 2 atanh |(w - z) / (1 - conj(z) w)|. Zero only for equal
// points; +infinity when distinct points involve an ideal endpoint.
inline double hyperbolic_distance(const DiskPoint& z, const DiskPoint& w) {
  if (z.value() == w.value()) return 0.0;
  if (z.ideal() || w.ideal()) return kInfinity;
  const double x =
      std::abs((w.value() - z.value()) / (1.0 - std::conj(z.value()) * w.value()));
  return detail::atanh2_log(x);
}

// a = (1 - conj(z) w) / (w - z); |a| > 1 for interior endpoints, |a| = 1 when
// w is ideal. Requires an interior start point.
inline Complex side_coefficient(const DiskPoint& z, const DiskPoint& w) {
  if (z.ideal()) throw IdealVertex("side coefficient needs an interior start point");
  if (std::abs(w.value() - z.value()) <= kDegenerateEps) {
    throw DegenerateSide("side endpoints coincide");
  }
  return (1.0 - std::conj(z.value()) * w.value()) / (w.value() - z.value());
}

enum class ArcKind { CircularArc, DiameterSegment };

// Carrier of a geodesic side: an arc of a circle orthogonal to the unit
// circle (so |center|^2 = radius^2 + 1) or a segment of a diameter.
struct ArcDescriptor {
  ArcKind kind = ArcKind::DiameterSegment;
  Complex center{0.0, 0.0};  // CircularArc only
  double radius = 0.0;       // CircularArc only
};

inline bool is_diameter_pair(Complex z, Complex w) {
  return std::abs(std::imag(std::conj(z) * w)) <=
         kDiameterRelEps * (1.0 + std::abs(z) * std::abs(w));
}

inline ArcDescriptor geodesic_circle(const DiskPoint& z, const DiskPoint& w) {
  const Complex zv = z.value(), wv = w.value();
  if (std::abs(wv - zv) <= kDegenerateEps) {
    throw DegenerateSide("side endpoints coincide");
  }
  if (is_diameter_pair(zv, wv)) return ArcDescriptor{};
  const Complex den = std::conj(zv) * wv - zv * std::conj(wv);
  const Complex c = ((1.0 + std::norm(zv)) * wv - (1.0 + std::norm(wv)) * zv) / den;
  return ArcDescriptor{ArcKind::CircularArc, c, std::sqrt(std::max(0.0, std::norm(c) - 1.0))};
}

// Central angle the side subtends on its carrier circle, in [0, pi]; zero for
// diameter segments. Valid on the closed disk.
inline double arc_angle(const DiskPoint& z, const DiskPoint& w) {
  if (std::abs(w.value() - z.value()) <= kDegenerateEps) {
    throw DegenerateSide("side endpoints coincide");
  }
  if (is_diameter_pair(z.value(), w.value())) return 0.0;
  const Complex zw = std::conj(z.value()) * w.value();
  return 2.0 * std::atan2(std::abs(std::imag(zw)), 1.0 - std::real(zw));
}

// Oriented geodesic side together with its precomputed geometry. a_coeff is
// absent when the start point is ideal; length is +infinity whenever either
// endpoint is ideal.
struct GeodesicSide {
  DiskPoint start;
  DiskPoint end;
  std::optional<Complex> a_coeff;
  ArcDescriptor arc;
  double arc_angle = 0.0;
  double length = 0.0;
};

inline GeodesicSide make_geodesic_side(const DiskPoint& start, const DiskPoint& end) {
  GeodesicSide s;
  s.start = start;
  s.end = end;
  s.arc = geodesic_circle(start, end);
  s.arc_angle = hypergon::arc_angle(start, end);
  if (!start.ideal()) s.a_coeff = side_coefficient(start, end);
  if (start.ideal() || end.ideal()) {
    s.length = kInfinity;
  } else {
    s.length = detail::atanh2_log(1.0 / std::abs(*s.a_coeff));
  }
  return s;
}

// gamma(t) = (t + a z) / (t conj(z) + a); gamma(0) = start, gamma(1) = end,
// unit-speed-free parameterization along the geodesic.
inline DiskPoint geodesic_parameterize(const GeodesicSide& side, double t) {
  if (!side.a_coeff) {
    throw IdealVertex("parameterization needs an interior start point");
  }
  const Complex z = side.start.value();
  const Complex a = *side.a_coeff;
  return DiskPoint((t + a * z) / (t * std::conj(z) + a));
}

// gamma'(t) = a (1 - |z|^2) / (t conj(z) + a)^2.
inline Complex geodesic_derivative(const GeodesicSide& side, double t) {
  if (!side.a_coeff) {
    throw IdealVertex("parameterization needs an interior start point");
  }
  const Complex z = side.start.value();
  const Complex a = *side.a_coeff;
  const Complex d = t * std::conj(z) + a;
  return a * (1.0 - std::norm(z)) / (d * d);
}

namespace detail {

// Signed sweep of the side on its carrier circle, in [-pi, pi]; zero for
// diameter segments. Positive means counterclockwise around the center.
inline double carrier_sweep(const GeodesicSide& s) {
  if (s.arc.kind == ArcKind::DiameterSegment) return 0.0;
  return std::arg((s.end.value() - s.arc.center) / (s.start.value() - s.arc.center));
}

// Point at fraction u in [0, 1] along the side, following the carrier. Works
// for ideal endpoints too, unlike geodesic_parameterize.
inline Complex side_point(const GeodesicSide& s, double u) {
  if (s.arc.kind == ArcKind::DiameterSegment) {
    return s.start.value() + u * (s.end.value() - s.start.value());
  }
  const Complex rs = s.start.value() - s.arc.center;
  return s.arc.center + rs * std::polar(1.0, carrier_sweep(s) * u);
}

inline double point_segment_distance(Complex q, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(q - a);
  const Complex aq = q - a;
  double t = (aq.real() * ab.real() + aq.imag() * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(q - (a + t * ab));
}

// Euclidean distance from q to the side, using the carrier geometry.
inline double side_distance(const GeodesicSide& s, Complex q) {
  if (s.arc.kind == ArcKind::DiameterSegment) {
    return point_segment_distance(q, s.start.value(), s.end.value());
  }
  const Complex c = s.arc.center;
  const double r = s.arc.radius;
  const Complex cq = q - c;
  const double d = std::abs(cq);
  const double endpoint_min =
      std::min(std::abs(q - s.start.value()), std::abs(q - s.end.value()));
  if (d == 0.0) return std::min(r, endpoint_min);
  // nearest carrier point, accepted only if it lies on the arc
  const double sweep = carrier_sweep(s);
  const double u = std::arg(cq / (s.start.value() - c));
  const bool on_arc = sweep >= 0.0 ? (u >= -1e-12 && u <= sweep + 1e-12)
                                   : (u <= 1e-12 && u >= sweep - 1e-12);
  if (on_arc) return std::min(std::fabs(d - r), endpoint_min);
  return endpoint_min;
}

struct Box {
  double xmin = kInfinity, xmax = -kInfinity;
  double ymin = kInfinity, ymax = -kInfinity;

  void expand(Complex p) {
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
};

// Tight axis-aligned box around the side: endpoints plus whichever of the
// four carrier-circle extremes lie on the arc.
inline Box side_box(const GeodesicSide& s) {
  Box b;
  b.expand(s.start.value());
  b.expand(s.end.value());
  if (s.arc.kind == ArcKind::CircularArc) {
    const Complex c = s.arc.center;
    const double r = s.arc.radius;
    const double sweep = carrier_sweep(s);
    const Complex rs = s.start.value() - c;
    const Complex axis[4] = {Complex(r, 0.0), Complex(-r, 0.0), Complex(0.0, r),
                             Complex(0.0, -r)};
    for (const Complex& e : axis) {
      const double u = std::arg(e / rs);
      const bool on_arc = sweep >= 0.0 ? (u >= 0.0 && u <= sweep)
                                       : (u <= 0.0 && u >= sweep);
      if (on_arc) b.expand(c + e);
    }
  }
  return b;
}

}  // namespace detail

}  // namespace hypergon
