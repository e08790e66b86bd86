// Acceptance gate: twelve criteria, one line each, nonzero exit on failure.
// Tolerances and runtime budgets are pinned here on purpose.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <hypergon/hypergon.hpp>

using hypergon::Complex;
using hypergon::DiskPoint;
using hypergon::HyperbolicPolygon;
using hypergon::kPi;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// Ratio-style detail: worst observed value against its limit.
Outcome judge(double worst, double limit) {
  return Outcome{worst <= limit, "worst " + fmt(worst) + ", limit " + fmt(limit)};
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& command) {
  CliResult r;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
  const int rc = pclose(pipe);
  if (WIFEXITED(rc)) r.exit_code = WEXITSTATUS(rc);
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<HyperbolicPolygon> corpus_500() {
  std::vector<HyperbolicPolygon> out;
  out.reserve(500);
  for (std::size_t i = 0; i < 500; ++i) {
    std::mt19937_64 eng(hypergon::detail::substream_seed(7, i));
    out.push_back(hypergon::random_simple_polygon(eng, 3 + i % 8, 0.9));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli, golden_dir, data_dir, input_dir;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string key = argv[i];
    if (key == "--cli") cli = argv[i + 1];
    if (key == "--golden") golden_dir = argv[i + 1];
    if (key == "--data") data_dir = argv[i + 1];
    if (key == "--inputs") input_dir = argv[i + 1];
  }
  if (cli.empty() || golden_dir.empty() || data_dir.empty() || input_dir.empty()) {
    std::fprintf(stderr, "usage: acceptance --cli PATH --golden DIR --data DIR --inputs DIR\n");
    return 64;
  }

  const std::vector<HyperbolicPolygon> corpus = corpus_500();
  const double square_area = 8.0 * std::atan(0.25);
  int failures = 0;

  struct Criterion {
    const char* description;
    double budget_seconds;  // 0 = no stated budget
    std::function<Outcome()> run;
  };

  const std::vector<Criterion> criteria = {
      {"ideal n-gon areas hit pi(n-2)", 1.0,
       [&] {
         double worst = 0.0;
         for (std::size_t n = 3; n <= 12; ++n) {
           std::vector<Complex> vs;
           for (std::size_t k = 0; k < n; ++k) {
             vs.push_back(std::polar(1.0, 2.0 * kPi * static_cast<double>(k) /
                                              static_cast<double>(n)));
           }
           const double a = hypergon::area_computational(
               hypergon::validate(vs, hypergon::ValidationOptions{}));
           worst = std::max(worst, std::fabs(a - kPi * static_cast<double>(n - 2)));
         }
         return judge(worst, 1e-12);
       }},
      {"four-way formula agreement on 500 polygons", 30.0,
       [&] {
         double worst = 0.0;
         for (const HyperbolicPolygon& p : corpus) {
           const hypergon::AreaReport rep = hypergon::compute_area_report(p, 1e-9);
           worst = std::max(worst, rep.max_pairwise_discrepancy);
         }
         return judge(worst, 1e-9);
       }},
      {"contour-integral oracle agreement", 120.0,
       [&] {
         double worst = 0.0;
         for (const HyperbolicPolygon& p : corpus) {
           const hypergon::LineIntegralResult r = hypergon::line_integral_area(p);
           worst = std::max(worst, std::fabs(r.area - hypergon::area_computational(p)));
           worst = std::max(worst, r.real_residual);
         }
         return judge(worst, 1e-7);
       }},
      {"perimeter: quadrature, distance sum, ln 3 anchor", 0.0,
       [&] {
         double worst_arc = 0.0, worst_sum = 0.0;
         for (const HyperbolicPolygon& p : corpus) {
           std::vector<double> dists(p.size());
           for (std::size_t k = 0; k < p.size(); ++k) {
             dists[k] = hypergon::hyperbolic_distance(p.vertices()[k],
                                                      p.vertices()[(k + 1) % p.size()]);
           }
           worst_sum = std::max(worst_sum,
                                std::fabs(hypergon::perimeter(p) -
                                          hypergon::detail::sum_canonical(std::move(dists))));
         }
         for (const HyperbolicPolygon& p : corpus) {
           for (const hypergon::GeodesicSide& s : p.sides()) {
             worst_arc =
                 std::max(worst_arc, std::fabs(hypergon::arclength_numeric(s) - s.length));
           }
         }
         const double anchor =
             std::fabs(hypergon::hyperbolic_distance(DiskPoint(Complex(0.0, 0.0)),
                                                     DiskPoint(Complex(0.5, 0.0))) -
                       std::log(3.0));
         const bool ok = worst_arc <= 1e-7 && worst_sum <= 1e-12 && anchor <= 1e-14;
         return Outcome{ok, "arc " + fmt(worst_arc) + "<=1e-7, sums " + fmt(worst_sum) +
                                "<=1e-12, anchor " + fmt(anchor) + "<=1e-14"};
       }},
      {"combined identity reproduces area and perimeter", 0.0,
       [&] {
         double worst = 0.0;
         for (const HyperbolicPolygon& p : corpus) {
           const Complex id = hypergon::area_perimeter_identity(p);
           worst = std::max(worst, std::fabs(id.real() - hypergon::area_computational(p)));
           worst = std::max(worst, std::fabs(id.imag() - hypergon::perimeter(p)));
         }
         return judge(worst, 1e-10);
       }},
      {"isometry invariance, 100 maps x 50 polygons", 0.0,
       [&] {
         double worst = 0.0;
         std::mt19937_64 eng(hypergon::detail::substream_seed(7, 1 << 20));
         for (std::size_t i = 0; i < 50; ++i) {
           const HyperbolicPolygon& p = corpus[i];
           const double a0 = hypergon::area_computational(p);
           const double p0 = hypergon::perimeter(p);
           for (int k = 0; k < 100; ++k) {
             const hypergon::MobiusIsometry m = hypergon::random_isometry(eng);
             std::vector<Complex> moved;
             moved.reserve(p.size());
             for (const DiskPoint& v : p.vertices()) {
               moved.push_back(hypergon::mobius_apply(m, v).value());
             }
             worst = std::max(worst, std::fabs(hypergon::detail::area_raw(moved) - a0));
             worst = std::max(worst, std::fabs(hypergon::detail::perimeter_raw(moved) - p0));
           }
         }
         return judge(worst, 1e-10);
       }},
      {"tangent turning residual on simple polygons", 0.0,
       [&] {
         double worst = 0.0;
         for (const HyperbolicPolygon& p : corpus) {
           worst = std::max(worst, hypergon::turning_residual(p));
         }
         return judge(worst, 1e-10);
       }},
      {"regular polygons attain the area bound", 1.0,
       [&] {
         double worst = 0.0;
         for (std::size_t n = 3; n <= 12; ++n) {
           for (double p : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
             const double a = hypergon::area_computational(hypergon::regular_ngon(n, p));
             worst = std::max(worst, std::fabs(a - hypergon::area_bound(n, p)));
           }
         }
         return judge(worst, 1e-9);
       }},
      {"bound never violated on 10^4 random polygons", 60.0,
       [&] {
         double worst = -hypergon::kInfinity;
         for (std::size_t i = 0; i < 10000; ++i) {
           std::mt19937_64 eng(hypergon::detail::substream_seed(9, i));
           const HyperbolicPolygon p = hypergon::random_simple_polygon(eng, 3 + i % 6, 0.9);
           const double margin = hypergon::area_computational(p) -
                                 hypergon::area_bound(p.size(), hypergon::perimeter(p));
           worst = std::max(worst, margin);
         }
         return judge(worst, 1e-9);
       }},
      {"optimizer reaches the bound on three problems", 120.0,
       [&] {
         double worst_gap = 0.0, worst_res = 0.0;
         for (const auto& [n, p] : std::vector<std::pair<std::size_t, double>>{
                  {3, 4.0}, {4, 6.7229}, {5, 5.0}}) {
           const hypergon::IsoperimetricResult r = hypergon::optimize(
               hypergon::IsoperimetricProblem{n, p}, hypergon::OptimizerConfig{});
           worst_gap = std::max(worst_gap, hypergon::area_bound(n, p) - r.area);
           worst_res = std::max(worst_res, r.perimeter_residual);
         }
         const bool ok = worst_gap <= 1e-4 && worst_res <= 1e-8;
         return Outcome{ok, "gap " + fmt(worst_gap) + "<=1e-4, residual " + fmt(worst_res) +
                                "<=1e-8"};
       }},
      {"monte carlo brackets the square in 99 of 100 runs", 120.0,
       [&] {
         const HyperbolicPolygon square = hypergon::validate(
             std::vector<Complex>{{0.5, 0.0}, {0.0, 0.5}, {-0.5, 0.0}, {0.0, -0.5}},
             hypergon::ValidationOptions{});
         int hits = 0;
         for (std::uint64_t seed = 0; seed < 100; ++seed) {
           const hypergon::MonteCarloResult r =
               hypergon::montecarlo_area(square, 1000000, seed);
           if (std::fabs(r.estimate - square_area) <= 4.0 * r.std_error) ++hits;
         }
         return Outcome{hits >= 99, std::to_string(hits) + "/100 runs within 4 sigma"};
       }},
      {"cli determinism and exit codes on the area examples", 0.0,
       [&] {
         const std::string base = "env -u HYPERGON_SEED " + cli;
         std::string notes;
         bool ok = true;
         auto expect = [&](bool cond, const std::string& what) {
           if (!cond) {
             ok = false;
             notes += (notes.empty() ? "" : "; ") + what;
           }
         };
         for (const char* name : {"square", "ideal_triangle"}) {
           const std::string want = slurp(golden_dir + "/" + name + "_area.json");
           expect(!want.empty(), std::string(name) + " golden unreadable");
           for (int round = 0; round < 2; ++round) {
             const CliResult r =
                 run_cli(base + " area " + data_dir + "/" + name + ".txt");
             expect(r.exit_code == 0, std::string(name) + " exit");
             expect(r.out == want, std::string(name) + " bytes round " +
                                       std::to_string(round + 1));
           }
         }
         const CliResult neg =
             run_cli(base + " area " + input_dir + "/clockwise_square_noorient.txt");
         expect(neg.exit_code == 3, "clockwise exit 3");
         expect(neg.out.empty(), "clockwise stdout empty");
         {
           const std::string garbage = "/tmp/hypergon_acceptance_garbage.txt";
           std::ofstream g(garbage);
           g << "vertices two\nnot numbers\n";
           g.close();
           expect(run_cli(base + " area " + garbage).exit_code == 2, "parse exit 2");
         }
         expect(run_cli(base + " render " + data_dir +
                        "/square.txt /nonexistent_dir_hypergon/out.svg")
                        .exit_code == 4,
                "render unwritable exit 4");
         return Outcome{ok, ok ? "bytes stable, exits 0/3/2/4 as contracted" : notes};
       }},
  };

  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].run();
    } catch (const std::exception& e) {
      outcome = Outcome{false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].budget_seconds > 0.0 && secs > criteria[i].budget_seconds) {
      outcome.ok = false;
      outcome.detail += "; over budget " + fmt(criteria[i].budget_seconds) + "s";
    }
    if (!outcome.ok) ++failures;
    std::printf("[%02zu] %s %s (%s, %.2f s)\n", i + 1, outcome.ok ? "PASS" : "FAIL",
                criteria[i].description, outcome.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
