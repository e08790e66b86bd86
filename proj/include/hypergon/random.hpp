#pragma once

#include <cstdint>
#include <numeric>
#include <random>

#include "hypergon/core.hpp"
#include "hypergon/polygon.hpp"

namespace hypergon {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Decorrelated per-shard seed so substreams can run in any order or thread.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

// Uniform in [0, 1) from the top 53 bits; avoids distribution objects whose
// output is not pinned down by the standard.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

inline Complex random_disk_value(std::mt19937_64& eng, double rmax) {
  const double r = rmax * std::sqrt(detail::uniform01(eng));
  const double t = 2.0 * kPi * detail::uniform01(eng);
  return Complex(r * std::cos(t), r * std::sin(t));
}

inline MobiusIsometry random_isometry(std::mt19937_64& eng, double amax = 0.7) {
  const Complex a = random_disk_value(eng, amax);
  const double theta = 2.0 * kPi * detail::uniform01(eng) - kPi;
  return MobiusIsometry(a, theta);
}

// Draws n points, orders them by angle around their centroid, and keeps the
// result only if it validates as a positively oriented simple polygon with no
// near-coincident neighbors. Near-collinear draws can be counterclockwise as
// chords yet clockwise as geodesics, so the hyperbolic signed area must be
// checked too, not just the Euclidean shoelace.
inline HyperbolicPolygon random_simple_polygon(std::mt19937_64& eng, std::size_t n,
                                               double rmax = 0.9) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    std::vector<Complex> pts(n);
    for (Complex& p : pts) p = random_disk_value(eng, rmax);
    Complex centroid = std::accumulate(pts.begin(), pts.end(), Complex(0.0, 0.0)) /
                       static_cast<double>(n);
    std::sort(pts.begin(), pts.end(), [&](const Complex& a, const Complex& b) {
      const double aa = std::arg(a - centroid), ab = std::arg(b - centroid);
      if (aa != ab) return aa < ab;
      if (std::abs(a - centroid) != std::abs(b - centroid)) {
        return std::abs(a - centroid) < std::abs(b - centroid);
      }
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });
    double min_gap = kInfinity;
    for (std::size_t k = 0; k < n; ++k) {
      min_gap = std::min(min_gap, std::abs(pts[(k + 1) % n] - pts[k]));
    }
    if (min_gap <= 1e-6) continue;
    if (detail::euclidean_shoelace([&] {
          std::vector<DiskPoint> dps;
          dps.reserve(n);
          for (const Complex& p : pts) dps.emplace_back(p);
          return dps;
        }()) <= 0.0) {
      continue;
    }
    HyperbolicPolygon poly = validate(pts, ValidationOptions{});
    if (area_computational(poly) > 0.0 && is_simple(poly)) return poly;
  }
  throw Error("failed to draw a simple polygon in 500 attempts");
}

}  // namespace hypergon
