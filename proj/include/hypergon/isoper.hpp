#pragma once

#include <cstdint>
#include <random>

#include "hypergon/core.hpp"
#include "hypergon/polygon.hpp"
#include "hypergon/random.hpp"

namespace hypergon {

// Largest area an n-gon of perimeter P can enclose:
// pi (n - 2) - 2n asin(cos(pi/n) / cosh(P / 2n)).
inline double area_bound(std::size_t n, double perimeter) {
  if (n < 3) throw std::invalid_argument("bound needs n >= 3");
  if (!(perimeter >= 0.0)) throw std::invalid_argument("bound needs P >= 0");
  const double y = perimeter / (2.0 * static_cast<double>(n));
  if (y > 350.0) {
    throw PerimeterOutOfRange("P / 2n too large for cosh to represent");
  }
  const double ch = std::cosh(y);
  const double bound = kPi * static_cast<double>(n - 2) -
                       2.0 * static_cast<double>(n) * std::asin(std::cos(kPi / n) / ch);
  // equality form of the bound: cos((A + 2 pi) / 2n) cosh(P / 2n) = cos(pi / n)
  const double residual =
      std::fabs(std::cos((bound + 2.0 * kPi) / (2.0 * static_cast<double>(n))) * ch -
                std::cos(kPi / n));
  if (residual > std::max(1e-12, 1e-14 * ch)) {
    throw std::logic_error("area bound failed its internal consistency check");
  }
  return bound;
}

// Every vertex of a perimeter-P polygon through the origin satisfies
// |z| <= tanh(P / 2); used as a search-space clamp.
inline double feasibility_radius(double perimeter) {
  return std::tanh(0.5 * perimeter);
}

namespace detail {

inline std::vector<Complex> regular_vertices(std::size_t n, double r) {
  std::vector<Complex> vs(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    vs[k] = Complex(r * std::cos(t), r * std::sin(t));
  }
  return vs;
}

// Best circumradius for a regular n-gon of perimeter P, by bisection; the
// perimeter is strictly increasing in r. Second value is the residual left at
// the returned radius (floating point caps how closely huge P is reachable).
inline std::pair<double, double> regular_circumradius(std::size_t n, double perimeter) {
  double lo = 0.0, hi = 1.0 - 2e-12;
  double best_r = 0.5 * hi, best_err = kInfinity;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double pm = perimeter_raw(regular_vertices(n, mid));
    const double err = std::fabs(pm - perimeter);
    if (err < best_err) {
      best_err = err;
      best_r = mid;
    }
    if (pm < perimeter) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {best_r, best_err};
}

}  // namespace detail

// Regular n-gon centered at the origin with the requested perimeter. Throws
// when no representable circumradius reaches P within 1e-12 (P beyond the
// resolution of double near the boundary).
inline HyperbolicPolygon regular_ngon(std::size_t n, double perimeter) {
  if (n < 3) throw std::invalid_argument("polygon needs n >= 3");
  if (!(perimeter > 0.0)) throw std::invalid_argument("polygon needs P > 0");
  const auto [r, err] = detail::regular_circumradius(n, perimeter);
  if (!(err <= 1e-12)) {
    throw PerimeterOutOfRange("no representable circumradius reaches P = " +
                              std::to_string(perimeter));
  }
  return validate(detail::regular_vertices(n, r), ValidationOptions{});
}

struct IsoperimetricProblem {
  std::size_t n = 3;
  double target_perimeter = 1.0;
};

struct OptimizerConfig {
  double perimeter_tol = 1e-8;
  double gap_tol = 1e-4;  // callers compare bound - area against this
  std::size_t starts = 8;
  std::uint64_t seed = 0;
  int nm_iters_per_dim = 200;  // Nelder-Mead budget per penalty stage
  int polish_rounds = 80;
};

struct TracePoint {
  std::size_t iteration = 0;
  double area = 0.0;
  double perimeter_residual = 0.0;
};

struct IsoperimetricResult {
  std::vector<DiskPoint> vertices;  // first vertex pinned at the origin
  double area = 0.0;
  double perimeter_residual = 0.0;
  double bound_value = 0.0;
  std::size_t iterations = 0;
  bool simple = false;
  std::vector<TracePoint> trace;
};

namespace detail {

// Scale all vertices about the origin until the perimeter hits the target.
// Perimeter is strictly increasing in the scale, so bisection suffices.
// Returns false when the target is not reachable under the radius cap.
inline bool rescale_to_perimeter(std::vector<Complex>& vs, double target, double r_cap) {
  double vmax = 0.0;
  for (const Complex& v : vs) vmax = std::max(vmax, std::abs(v));
  if (vmax == 0.0) return false;
  const double s_hi = r_cap / vmax;
  auto perim_scaled = [&](double s) {
    std::vector<Complex> scaled(vs.size());
    for (std::size_t k = 0; k < vs.size(); ++k) scaled[k] = s * vs[k];
    return perimeter_raw(scaled);
  };
  if (!(perim_scaled(s_hi) >= target)) return false;
  double lo = 0.0, hi = s_hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (perim_scaled(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double s = 0.5 * (lo + hi);
  for (Complex& v : vs) v *= s;
  return std::isfinite(perimeter_raw(vs));
}

// Deterministic Nelder-Mead minimizer with standard coefficients. Sorting is
// stable, so ties break toward the older vertex and reruns are bit-identical.
template <typename F>
std::size_t nelder_mead(F&& f, std::vector<double>& x, double step, int max_iters) {
  const std::size_t dim = x.size();
  struct Vertex {
    std::vector<double> x;
    double fx;
  };
  std::vector<Vertex> simplex(dim + 1);
  simplex[0] = Vertex{x, f(x)};
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> xi = x;
    xi[i] += step;
    simplex[i + 1] = Vertex{std::move(xi), 0.0};
    simplex[i + 1].fx = f(simplex[i + 1].x);
  }
  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; });
  };
  order();
  std::size_t iters = 0;
  for (int it = 0; it < max_iters; ++it) {
    ++iters;
    if (simplex.back().fx - simplex.front().fx <
        1e-13 * (1.0 + std::fabs(simplex.front().fx))) {
      break;
    }
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i].x[j];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);
    auto affine = [&](double t) {
      std::vector<double> p(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        p[j] = centroid[j] + t * (simplex.back().x[j] - centroid[j]);
      }
      return p;
    };
    std::vector<double> xr = affine(-1.0);
    const double fr = f(xr);
    if (fr < simplex.front().fx) {
      std::vector<double> xe = affine(-2.0);
      const double fe = f(xe);
      if (fe < fr) {
        simplex.back() = Vertex{std::move(xe), fe};
      } else {
        simplex.back() = Vertex{std::move(xr), fr};
      }
    } else if (fr < simplex[dim - 1].fx) {
      simplex.back() = Vertex{std::move(xr), fr};
    } else {
      const bool outside = fr < simplex.back().fx;
      std::vector<double> xc = affine(outside ? -0.5 : 0.5);
      const double fc = f(xc);
      if (fc < std::min(fr, simplex.back().fx)) {
        simplex.back() = Vertex{std::move(xc), fc};
      } else {
        for (std::size_t i = 1; i <= dim; ++i) {
          for (std::size_t j = 0; j < dim; ++j) {
            simplex[i].x[j] = 0.5 * (simplex[i].x[j] + simplex[0].x[j]);
          }
          simplex[i].fx = f(simplex[i].x);
        }
      }
    }
    order();
  }
  x = simplex.front().x;
  return iters;
}

inline bool lex_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
    if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
    if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
  }
  return a.size() < b.size();
}

}  // namespace detail

// Penalized Nelder-Mead over vertex coordinates (first vertex pinned at the
// origin, every vertex clamped to the feasibility radius), followed by exact
// perimeter projection and a projected-gradient polish. Multistart; every
// stage is seeded, so runs are reproducible; best-of reduction compares
// (area, then lexicographic vertices) and is order-independent.
inline IsoperimetricResult optimize(const IsoperimetricProblem& problem,
                                    const OptimizerConfig& cfg = {}) {
  const std::size_t n = problem.n;
  const double target = problem.target_perimeter;
  if (n < 3) throw std::invalid_argument("optimizer needs n >= 3");
  if (!(target > 0.0)) throw std::invalid_argument("optimizer needs P > 0");
  if (target / (2.0 * static_cast<double>(n)) > 350.0) {
    throw PerimeterOutOfRange("P / 2n too large for the bound to represent");
  }
  if (cfg.starts == 0) throw std::invalid_argument("optimizer needs at least one start");
  const double r_cap = std::min(feasibility_radius(target), 1.0 - 1e-9);
  const std::size_t dim = 2 * (n - 1);

  auto decode = [&](const std::vector<double>& x) {
    std::vector<Complex> vs(n);
    vs[0] = Complex(0.0, 0.0);
    for (std::size_t k = 1; k < n; ++k) {
      Complex z(x[2 * (k - 1)], x[2 * (k - 1) + 1]);
      const double r = std::abs(z);
      if (r > r_cap) z *= r_cap / r;
      vs[k] = z;
    }
    return vs;
  };
  auto encode = [&](const std::vector<Complex>& vs) {
    std::vector<double> x(dim);
    for (std::size_t k = 1; k < n; ++k) {
      x[2 * (k - 1)] = vs[k].real();
      x[2 * (k - 1) + 1] = vs[k].imag();
    }
    return x;
  };

  bool have_best = false;
  IsoperimetricResult best;
  std::vector<Complex> best_vs;
  for (std::size_t start = 0; start < cfg.starts; ++start) {
    std::mt19937_64 eng(detail::substream_seed(cfg.seed, start));
    try {
      std::vector<Complex> vs;
      if (start == 0) {
        // regular polygon moved so its first vertex sits at the origin, then
        // nudged off the symmetric point
        const double r0 = detail::regular_circumradius(n, target).first;
        vs = detail::regular_vertices(n, r0);
        const MobiusIsometry shift(vs[0], 0.0);
        for (Complex& v : vs) v = shift.apply_value(v);
        for (std::size_t k = 1; k < n; ++k) {
          vs[k] += 1e-3 * Complex(detail::uniform01(eng) - 0.5,
                                  detail::uniform01(eng) - 0.5);
        }
        vs[0] = Complex(0.0, 0.0);
      } else {
        vs.resize(n);
        vs[0] = Complex(0.0, 0.0);
        for (std::size_t k = 1; k < n; ++k) {
          vs[k] = random_disk_value(eng, 0.8 * r_cap);
        }
        Complex centroid(0.0, 0.0);
        for (const Complex& v : vs) centroid += v;
        centroid /= static_cast<double>(n);
        std::sort(vs.begin(), vs.end(), [&](const Complex& a, const Complex& b) {
          const double aa = std::arg(a - centroid), ab = std::arg(b - centroid);
          if (aa != ab) return aa < ab;
          if (a.real() != b.real()) return a.real() < b.real();
          return a.imag() < b.imag();
        });
        const auto zero_it = std::find(vs.begin(), vs.end(), Complex(0.0, 0.0));
        if (zero_it != vs.end()) std::rotate(vs.begin(), zero_it, vs.end());
      }
      if (!detail::rescale_to_perimeter(vs, target, r_cap)) continue;

      std::vector<TracePoint> trace;
      std::size_t iterations = 0;
      std::vector<double> x = encode(vs);
      for (const double mu : {1e1, 1e2, 1e3, 1e4}) {
        auto objective = [&](const std::vector<double>& xx) {
          const std::vector<Complex> zz = decode(xx);
          const double area = detail::area_raw(zz);
          const double perim = detail::perimeter_raw(zz);
          const double gap = perim - target;
          return -(area - mu * gap * gap);
        };
        iterations += detail::nelder_mead(objective, x, 0.02,
                                          cfg.nm_iters_per_dim * static_cast<int>(dim));
        std::vector<Complex> zz = decode(x);
        trace.push_back(TracePoint{iterations, detail::area_raw(zz),
                                   std::fabs(detail::perimeter_raw(zz) - target)});
      }

      vs = decode(x);
      if (!detail::rescale_to_perimeter(vs, target, r_cap)) continue;

      // projected ascent on the area with central-difference gradients
      double eta = 1e-3;
      double area_now = detail::area_raw(vs);
      std::vector<double> xs = encode(vs);
      for (int round = 0; round < cfg.polish_rounds && eta > 1e-12; ++round) {
        ++iterations;
        std::vector<double> grad(dim);
        const double h = 1e-6;
        for (std::size_t j = 0; j < dim; ++j) {
          std::vector<double> xp = xs, xm = xs;
          xp[j] += h;
          xm[j] -= h;
          grad[j] = (detail::area_raw(decode(xp)) - detail::area_raw(decode(xm))) /
                    (2.0 * h);
        }
        std::vector<double> xn(dim);
        for (std::size_t j = 0; j < dim; ++j) xn[j] = xs[j] + eta * grad[j];
        std::vector<Complex> cand = decode(xn);
        if (!detail::rescale_to_perimeter(cand, target, r_cap)) {
          eta *= 0.5;
          continue;
        }
        const double area_cand = detail::area_raw(cand);
        if (area_cand > area_now) {
          area_now = area_cand;
          xs = encode(cand);
          eta *= 1.3;
          trace.push_back(TracePoint{iterations, area_now,
                                     std::fabs(detail::perimeter_raw(cand) - target)});
        } else {
          eta *= 0.5;
        }
      }
      vs = decode(xs);
      if (!detail::rescale_to_perimeter(vs, target, r_cap)) continue;

      IsoperimetricResult r;
      r.vertices.reserve(n);
      for (const Complex& v : vs) r.vertices.emplace_back(v);
      r.area = detail::area_raw(vs);
      r.perimeter_residual = std::fabs(detail::perimeter_raw(vs) - target);
      r.bound_value = area_bound(n, target);
      r.iterations = iterations;
      r.trace = std::move(trace);
      try {
        r.simple = is_simple(validate(vs, ValidationOptions{}));
      } catch (const Error&) {
        r.simple = false;
      }
      if (r.perimeter_residual > cfg.perimeter_tol) continue;
      if (!have_best || r.area > best.area ||
          (r.area == best.area && detail::lex_less(vs, best_vs))) {
        best = std::move(r);
        best_vs = vs;
        have_best = true;
      }
    } catch (const Error&) {
      // this start failed; others may still succeed
    }
  }
  if (!have_best) {
    throw NoFeasibleIterate("no start produced a perimeter-feasible polygon");
  }
  return best;
}

}  // namespace hypergon
