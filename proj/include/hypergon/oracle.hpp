#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <thread>

#include "hypergon/core.hpp"
#include "hypergon/polygon.hpp"
#include "hypergon/random.hpp"

namespace hypergon {

struct QuadratureConfig {
  double abs_tol = 1e-9;
  int max_depth = 40;
};

namespace detail {

inline void check_quadrature_config(const QuadratureConfig& cfg) {
  if (!(cfg.abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
  if (cfg.max_depth < 10) throw std::invalid_argument("max_depth must be at least 10");
}

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1]. Odd-index nodes are the
// embedded Gauss-7 nodes.
inline constexpr double kGK15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kGK15Kronrod[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGK15Gauss[4] = {0.129484966168870, 0.279705391489277,
                                         0.381830050505119, 0.417959183673469};

struct GK15Result {
  Complex kronrod;
  Complex gauss;
};

template <typename F>
GK15Result gk15(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Complex ik(0.0, 0.0), ig(0.0, 0.0);
  for (int i = 0; i < 7; ++i) {
    const Complex lo = f(mid - half * kGK15Nodes[i]);
    const Complex hi = f(mid + half * kGK15Nodes[i]);
    ik += kGK15Kronrod[i] * (lo + hi);
    if (i % 2 == 1) ig += kGK15Gauss[i / 2] * (lo + hi);
  }
  const Complex center = f(mid);
  ik += kGK15Kronrod[7] * center;
  ig += kGK15Gauss[3] * center;
  return GK15Result{ik * half, ig * half};
}

// Depth-first adaptive bisection; throws once an interval reaches max_depth
// still out of tolerance. Deterministic: evaluation order is a fixed stack
// discipline.
template <typename F>
Complex integrate_adaptive(F&& f, double a, double b, const QuadratureConfig& cfg) {
  struct Interval {
    double a, b, tol;
    int depth;
  };
  std::vector<Interval> stack{{a, b, cfg.abs_tol, 0}};
  Complex total(0.0, 0.0);
  while (!stack.empty()) {
    const Interval iv = stack.back();
    stack.pop_back();
    const GK15Result r = gk15(f, iv.a, iv.b);
    const double err = std::abs(r.kronrod - r.gauss);
    if (err <= iv.tol || iv.b - iv.a < 1e-300) {
      total += r.kronrod;
      continue;
    }
    if (iv.depth >= cfg.max_depth) {
      throw ToleranceNotMet("quadrature interval failed to converge at depth " +
                            std::to_string(iv.depth));
    }
    const double mid = 0.5 * (iv.a + iv.b);
    stack.push_back({mid, iv.b, 0.5 * iv.tol, iv.depth + 1});
    stack.push_back({iv.a, mid, 0.5 * iv.tol, iv.depth + 1});
  }
  return total;
}

}  // namespace detail

struct LineIntegralResult {
  double area = 0.0;
  double real_residual = 0.0;  // |Im| of the full contour integral, ideally 0
};

// Contour integral of 2 conj(gamma) / (1 - |gamma|^2) d gamma around the
// boundary, divided by i; its real part is the hyperbolic area. Fully
// independent of the closed forms: it sees only the parameterization.
inline LineIntegralResult line_integral_area(const HyperbolicPolygon& p,
                                             const QuadratureConfig& cfg = {}) {
  detail::check_quadrature_config(cfg);
  if (!p.all_interior()) {
    throw IdealVertex("line-integral area needs interior vertices");
  }
  std::vector<Complex> parts;
  parts.reserve(p.size());
  for (const GeodesicSide& s : p.sides()) {
    auto integrand = [&s](double t) {
      const Complex g = geodesic_parameterize(s, t).value();
      const Complex gp = geodesic_derivative(s, t);
      return 2.0 * std::conj(g) / (1.0 - std::norm(g)) * gp;
    };
    parts.push_back(detail::integrate_adaptive(integrand, 0.0, 1.0, cfg));
  }
  const Complex v = detail::sum_canonical(std::move(parts)) / Complex(0.0, 1.0);
  return LineIntegralResult{v.real(), std::fabs(v.imag())};
}

// Arc length of one side by integrating 2 |gamma'| / (1 - |gamma|^2).
inline double arclength_numeric(const GeodesicSide& side,
                                const QuadratureConfig& cfg = {}) {
  detail::check_quadrature_config(cfg);
  if (side.start.ideal() || side.end.ideal()) {
    throw IdealVertex("numeric arc length needs interior endpoints");
  }
  auto integrand = [&side](double t) {
    const Complex g = geodesic_parameterize(side, t).value();
    const Complex gp = geodesic_derivative(side, t);
    return Complex(2.0 * std::abs(gp) / (1.0 - std::norm(g)), 0.0);
  };
  return detail::integrate_adaptive(integrand, 0.0, 1.0, cfg).real();
}

enum class PointLocation { Inside, Outside, OnBoundary };

// Winding-number point location by adaptive principal-argument summation,
// with a guard band: anything within 1e-9 of a side, or whose winding is
// numerically ambiguous, reports OnBoundary.
inline PointLocation point_in_polygon(const HyperbolicPolygon& p, const DiskPoint& q) {
  if (detail::boundary_distance(p, q.value()) <= 1e-9) return PointLocation::OnBoundary;
  const std::optional<int> w = detail::PointLocator(p).winding(q.value());
  if (!w) return PointLocation::OnBoundary;
  return *w != 0 ? PointLocation::Inside : PointLocation::Outside;
}

namespace detail {

// Exact winding evaluator built for bulk queries: winding number of the
// straight-chord polygon by the standard crossing rule, corrected by +-1 for
// points inside a chord/arc lens. Agrees with the adaptive locator everywhere
// off the boundary; nullopt inside the 1e-9 boundary guard band.
class ChordLensLocator {
 public:
  explicit ChordLensLocator(const HyperbolicPolygon& p) {
    sides_.reserve(p.size());
    for (const GeodesicSide& s : p.sides()) {
      SideData d;
      d.side = &s;
      d.z = s.start.value();
      d.w = s.end.value();
      d.dir = d.w - d.z;
      if (s.arc.kind == ArcKind::CircularArc) {
        d.is_arc = true;
        d.c = s.arc.center;
        d.r2 = s.arc.radius * s.arc.radius;
        const Complex cz = d.c - d.z;
        d.cross_center = d.dir.real() * cz.imag() - d.dir.imag() * cz.real();
        d.sweep_sign = carrier_sweep(s) > 0.0 ? 1 : -1;
        // |dist(q, carrier)| <= 1e-9 implies ||q-c|^2 - r^2| <= this, |q| <= 1
        d.near_margin = 1e-9 * (1.0 + std::abs(d.c) + s.arc.radius + 1e-9);
      } else {
        d.is_arc = false;
        d.near_margin = 1e-9 * std::abs(d.dir);
      }
      sides_.push_back(d);
    }
  }

  std::optional<int> winding_guarded(Complex q) const {
    int w = 0;
    for (const SideData& d : sides_) {
      const Complex zq = q - d.z;
      const double cross = d.dir.real() * zq.imag() - d.dir.imag() * zq.real();
      if (d.z.imag() <= q.imag()) {
        if (d.w.imag() > q.imag() && cross > 0.0) ++w;
      } else {
        if (d.w.imag() <= q.imag() && cross < 0.0) --w;
      }
      if (d.is_arc) {
        const double qc2 = std::norm(q - d.c);
        if (std::fabs(qc2 - d.r2) <= d.near_margin &&
            side_distance(*d.side, q) <= 1e-9) {
          return std::nullopt;
        }
        // lens: across the chord from the carrier center, inside the carrier
        if (cross * d.cross_center < 0.0 && qc2 < d.r2) w += d.sweep_sign;
      } else {
        if (std::fabs(cross) <= d.near_margin &&
            point_segment_distance(q, d.z, d.w) <= 1e-9) {
          return std::nullopt;
        }
      }
    }
    return w;
  }

 private:
  struct SideData {
    const GeodesicSide* side = nullptr;
    Complex z, w, dir, c;
    double r2 = 0.0;
    double cross_center = 0.0;
    double near_margin = 0.0;
    int sweep_sign = 0;
    bool is_arc = false;
  };
  std::vector<SideData> sides_;
};

}  // namespace detail

struct MonteCarloResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr const char* kMonteCarloGenerator = "mt19937_64";

// Hit-or-miss integration of the hyperbolic area element (2/(1-|q|^2))^2 over
// the bounding box. 64 fixed substreams make the result a pure function of
// (polygon, samples, seed) regardless of thread count.
inline MonteCarloResult montecarlo_area(const HyperbolicPolygon& p,
                                        std::uint64_t samples, std::uint64_t seed) {
  if (!p.all_interior()) {
    throw IdealVertex("Monte Carlo area needs interior vertices");
  }
  if (samples == 0) throw std::invalid_argument("samples must be positive");
  detail::Box box;
  for (const GeodesicSide& s : p.sides()) {
    const detail::Box b = detail::side_box(s);
    box.expand(Complex(b.xmin, b.ymin));
    box.expand(Complex(b.xmax, b.ymax));
  }
  const double width = box.xmax - box.xmin;
  const double height = box.ymax - box.ymin;
  const double box_area = width * height;
  const detail::ChordLensLocator locator(p);

  constexpr std::uint64_t kShards = 64;
  struct Partial {
    double sum = 0.0;
    double sumsq = 0.0;
  };
  std::vector<Partial> partials(kShards);
  auto run_shard = [&](std::uint64_t shard) {
    const std::uint64_t base = samples / kShards;
    const std::uint64_t count = base + (shard < samples % kShards ? 1 : 0);
    std::mt19937_64 eng(detail::substream_seed(seed, shard));
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t i = 0; i < count; ++i) {
      const double x = box.xmin + detail::uniform01(eng) * width;
      const double y = box.ymin + detail::uniform01(eng) * height;
      const Complex q(x, y);
      double f = 0.0;
      const double qn = std::norm(q);
      if (qn < 1.0) {
        const std::optional<int> w = locator.winding_guarded(q);
        if (w && *w != 0) {
          const double rho = 2.0 / (1.0 - qn);
          f = rho * rho;
        }
      }
      sum += f;
      sumsq += f * f;
    }
    partials[shard] = Partial{sum, sumsq};
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t workers = std::min<std::uint64_t>(kShards, hw);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::uint64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::uint64_t shard = w; shard < kShards; shard += workers) run_shard(shard);
    });
  }
  for (std::thread& t : pool) t.join();

  // pairwise tree reduction in a fixed order, independent of thread timing
  std::vector<Partial> level = std::move(partials);
  while (level.size() > 1) {
    std::vector<Partial> next((level.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      const Partial& a = level[2 * i];
      if (2 * i + 1 < level.size()) {
        const Partial& b = level[2 * i + 1];
        next[i] = Partial{a.sum + b.sum, a.sumsq + b.sumsq};
      } else {
        next[i] = a;
      }
    }
    level = std::move(next);
  }
  const double total = level[0].sum;
  const double total_sq = level[0].sumsq;
  const double nd = static_cast<double>(samples);
  const double mean = total / nd;
  const double var =
      samples > 1 ? std::max(0.0, (total_sq - nd * mean * mean) / (nd - 1.0)) : 0.0;
  MonteCarloResult r;
  r.estimate = box_area * mean;
  r.std_error = box_area * std::sqrt(var / nd);
  r.samples = samples;
  r.seed = seed;
  return r;
}

}  // namespace hypergon
