// hypergon: compute and cross-check hyperbolic areas and perimeters of
// geodesic polygons in the unit-disk model, render them as SVG, and run the
// fixed-perimeter area maximizer against its closed-form ceiling.
//
// Exit codes: 0 success, 1 discrepancy or optimizer failure, 2 parse error,
// 3 validation error, 4 unwritable output.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypergon/hypergon.hpp"

namespace {

using hypergon::Complex;
using nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitDiscrepancy = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitUnwritable = 4;

ordered_json xy(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t flag_value) {
  if (opt != nullptr && opt->count() > 0) return flag_value;
  if (const char* env = std::getenv("HYPERGON_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw hypergon::ParseError("HYPERGON_SEED is not an unsigned integer: " +
                                 std::string(env));
    }
  }
  return flag_value;
}

ordered_json side_table(const hypergon::HyperbolicPolygon& poly) {
  ordered_json sides = ordered_json::array();
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const hypergon::GeodesicSide& s = poly.sides()[k];
    const hypergon::SideClassification cls = hypergon::classify_side(poly, k);
    ordered_json side;
    side["index"] = k + 1;
    side["from"] = xy(s.start.value());
    side["to"] = xy(s.end.value());
    side["a_abs"] = s.a_coeff ? ordered_json(std::abs(*s.a_coeff)) : ordered_json(nullptr);
    side["classification"] =
        cls.orientation == hypergon::SideOrientation::Inward ? "inward" : "outward";
    side["cross"] = cls.cross;
    ordered_json arc;
    if (s.arc.kind == hypergon::ArcKind::CircularArc) {
      arc["kind"] = "circular_arc";
      arc["center"] = xy(s.arc.center);
      arc["radius"] = s.arc.radius;
    } else {
      arc["kind"] = "diameter_segment";
      arc["center"] = nullptr;
      arc["radius"] = nullptr;
    }
    side["arc"] = arc;
    side["arc_angle"] = s.arc_angle;
    side["length"] = s.length;
    sides.push_back(side);
  }
  return sides;
}

struct AreaFlags {
  std::string input;
  bool verify = false;
  double tol = 1e-8;
  std::uint64_t mc_samples = 200000;
  std::uint64_t seed = 0;
};

int cmd_area(const AreaFlags& flags) {
  const hypergon::PolygonFile file = hypergon::read_polygon_file(flags.input);
  const hypergon::HyperbolicPolygon poly = file.realize();
  const hypergon::AreaReport report = hypergon::compute_area_report(poly, flags.tol);

  std::size_t ideal_count = 0;
  for (const hypergon::DiskPoint& v : poly.vertices()) {
    if (v.ideal()) ++ideal_count;
  }

  ordered_json j;
  j["tool"] = "hypergon";
  j["version"] = kVersion;
  j["command"] = "area";
  ordered_json input;
  input["path"] = std::filesystem::path(flags.input).filename().string();
  input["auto_orient"] = file.auto_orient;
  input["allow_ideal"] = file.allow_ideal;
  ordered_json echo = ordered_json::array();
  for (const std::array<double, 2>& v : file.vertices) {
    echo.push_back(ordered_json::array({v[0], v[1]}));
  }
  input["vertices"] = echo;
  j["input"] = input;
  j["orientation"] = poly.reversed() ? "reversed" : "unchanged";
  ordered_json pj;
  pj["n"] = poly.size();
  pj["ideal_vertex_count"] = ideal_count;
  pj["simple"] = report.simple;
  j["polygon"] = pj;
  j["sides"] = side_table(poly);

  ordered_json area;
  area["computational"] = report.a_computational;
  area["geometric"] = report.a_geometric;
  area["classical"] =
      report.a_classical ? ordered_json(*report.a_classical) : ordered_json(nullptr);
  area["winding"] =
      report.a_winding ? ordered_json(*report.a_winding) : ordered_json(nullptr);
  area["winding_origin"] =
      report.winding_origin
          ? ordered_json(*report.winding_origin == hypergon::OriginLocation::Interior
                             ? "interior"
                             : "exterior")
          : ordered_json(nullptr);
  area["identity"] =
      report.identity_value ? xy(*report.identity_value) : ordered_json(nullptr);
  area["identity_residual"] =
      report.identity_residual ? xy(*report.identity_residual) : ordered_json(nullptr);
  j["area"] = area;
  j["perimeter"] = report.perimeter;
  j["max_pairwise_discrepancy"] = report.max_pairwise_discrepancy;
  j["tolerance"] = report.tolerance;

  bool pass = report.max_pairwise_discrepancy <= flags.tol;
  if (flags.verify && poly.all_interior()) {
    ordered_json oracle;
    const hypergon::LineIntegralResult li = hypergon::line_integral_area(poly);
    ordered_json lij;
    lij["area"] = li.area;
    lij["residual"] = li.real_residual;
    oracle["line_integral"] = lij;
    const hypergon::MonteCarloResult mc =
        hypergon::montecarlo_area(poly, flags.mc_samples, flags.seed);
    ordered_json mcj;
    mcj["estimate"] = mc.estimate;
    mcj["std_error"] = mc.std_error;
    mcj["samples"] = mc.samples;
    mcj["seed"] = mc.seed;
    mcj["generator"] = hypergon::kMonteCarloGenerator;
    oracle["montecarlo"] = mcj;
    j["oracle"] = oracle;
    const double oracle_tol = std::max(flags.tol, 1e-7);
    if (std::fabs(li.area - report.a_computational) > oracle_tol) pass = false;
    if (li.real_residual > oracle_tol) pass = false;
    if (std::fabs(mc.estimate - report.a_computational) > 4.0 * mc.std_error) {
      pass = false;
    }
  } else {
    j["oracle"] = nullptr;
  }
  j["seed"] = flags.seed;
  j["pass"] = pass;
  std::cout << hypergon::dump_report(j);
  return pass ? kExitOk : kExitDiscrepancy;
}

int cmd_render(const std::string& input, const std::string& output) {
  const hypergon::PolygonFile file = hypergon::read_polygon_file(input);
  const hypergon::HyperbolicPolygon poly = file.realize();
  const std::string svg = hypergon::render_svg(poly);
  std::ofstream out(output, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open '" << output << "' for writing\n";
    return kExitUnwritable;
  }
  out << svg;
  out.flush();
  if (!out) {
    std::cerr << "error: failed writing '" << output << "'\n";
    return kExitUnwritable;
  }
  return kExitOk;
}

struct IsoperFlags {
  std::size_t n = 3;
  double perimeter = 1.0;
  std::uint64_t seed = 0;
  std::size_t starts = 8;
  double perimeter_tol = 1e-8;
  double gap = 1e-4;
  std::string svg_path;
};

int cmd_isoper(const IsoperFlags& flags) {
  hypergon::IsoperimetricProblem problem{flags.n, flags.perimeter};
  hypergon::OptimizerConfig cfg;
  cfg.perimeter_tol = flags.perimeter_tol;
  cfg.gap_tol = flags.gap;
  cfg.starts = flags.starts;
  cfg.seed = flags.seed;
  const double bound = hypergon::area_bound(flags.n, flags.perimeter);

  ordered_json j;
  j["tool"] = "hypergon";
  j["version"] = kVersion;
  j["command"] = "isoper";
  ordered_json pj;
  pj["n"] = flags.n;
  pj["perimeter"] = flags.perimeter;
  j["problem"] = pj;
  ordered_json cj;
  cj["starts"] = cfg.starts;
  cj["seed"] = cfg.seed;
  cj["perimeter_tol"] = cfg.perimeter_tol;
  cj["gap_tol"] = cfg.gap_tol;
  j["config"] = cj;
  j["bound"] = bound;
  try {
    const hypergon::HyperbolicPolygon reg = hypergon::regular_ngon(flags.n, flags.perimeter);
    j["regular_area"] = hypergon::area_computational(reg);
  } catch (const hypergon::PerimeterOutOfRange&) {
    j["regular_area"] = nullptr;
  }

  const hypergon::IsoperimetricResult result = hypergon::optimize(problem, cfg);
  const double gap = result.bound_value - result.area;
  ordered_json rj;
  ordered_json verts = ordered_json::array();
  for (const hypergon::DiskPoint& v : result.vertices) verts.push_back(xy(v.value()));
  rj["vertices"] = verts;
  rj["area"] = result.area;
  rj["perimeter_residual"] = result.perimeter_residual;
  rj["gap"] = gap;
  rj["iterations"] = result.iterations;
  rj["simple"] = result.simple;
  j["result"] = rj;
  ordered_json trace = ordered_json::array();
  for (const hypergon::TracePoint& t : result.trace) {
    ordered_json tj;
    tj["iteration"] = t.iteration;
    tj["area"] = t.area;
    tj["perimeter_residual"] = t.perimeter_residual;
    trace.push_back(tj);
  }
  j["trace"] = trace;
  const bool pass = gap <= flags.gap && result.perimeter_residual <= flags.perimeter_tol;
  j["pass"] = pass;
  std::cout << hypergon::dump_report(j);

  if (!flags.svg_path.empty()) {
    try {
      std::vector<hypergon::DiskPoint> vs = result.vertices;
      const hypergon::HyperbolicPolygon poly =
          hypergon::validate(std::move(vs), hypergon::ValidationOptions{true});
      std::ofstream out(flags.svg_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot open '" << flags.svg_path << "' for writing\n";
        return kExitUnwritable;
      }
      out << hypergon::render_svg(poly);
      out.flush();
      if (!out) return kExitUnwritable;
    } catch (const hypergon::Error& e) {
      std::cerr << "warning: result polygon not renderable: " << e.what() << "\n";
    }
  }
  return pass ? kExitOk : kExitDiscrepancy;
}

struct VerifyFlags {
  std::string corpus;
  std::size_t random_count = 100;
  std::uint64_t seed = 0;
};

struct SuiteStat {
  std::size_t pass = 0;
  std::size_t fail = 0;
  double worst = 0.0;

  void record(double value, double limit) {
    worst = std::max(worst, value);
    if (value <= limit) {
      ++pass;
    } else {
      ++fail;
    }
  }
};

void print_suite(const std::string& name, const SuiteStat& s, double limit) {
  std::printf("%-14s %zu/%zu pass  (worst %.3e, limit %.1e)\n", name.c_str(), s.pass,
              s.pass + s.fail, s.worst, limit);
}

int check_polygon(const hypergon::HyperbolicPolygon& poly, std::mt19937_64& eng,
                  SuiteStat& cross, SuiteStat& isometry, SuiteStat& turning,
                  SuiteStat& bound) {
  const hypergon::AreaReport report = hypergon::compute_area_report(poly, 1e-9);
  cross.record(report.max_pairwise_discrepancy, 1e-9);

  if (poly.all_interior()) {
    // The image traversal keeps the original's hyperbolic orientation, but its
    // Euclidean shoelace can flip sign, so auto-orient would negate the area.
    // Evaluate the raw kernels on the moved vertex list instead.
    const hypergon::MobiusIsometry m = hypergon::random_isometry(eng);
    std::vector<hypergon::Complex> moved;
    moved.reserve(poly.size());
    for (const hypergon::DiskPoint& v : poly.vertices()) {
      moved.push_back(hypergon::mobius_apply(m, v).value());
    }
    const double da =
        std::fabs(hypergon::detail::area_raw(moved) - report.a_computational);
    const double dp =
        std::fabs(hypergon::detail::perimeter_raw(moved) - report.perimeter);
    isometry.record(std::max(da, dp), 1e-10);
  }
  if (report.simple) {
    turning.record(hypergon::turning_residual(poly), 1e-10);
    if (poly.all_interior()) {
      const double b = hypergon::area_bound(poly.size(), report.perimeter);
      bound.record(report.a_computational - b, 1e-9);
    }
  }
  return 0;
}

int cmd_verify(const VerifyFlags& flags) {
  SuiteStat cross, isometry, turning, bound;
  std::size_t validation_failures = 0;

  if (!flags.corpus.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(flags.corpus)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      std::cerr << "error: no .txt polygon files in '" << flags.corpus << "'\n";
      return kExitParse;
    }
    std::mt19937_64 eng(hypergon::detail::substream_seed(flags.seed, 0));
    for (const std::filesystem::path& path : files) {
      try {
        const hypergon::PolygonFile file = hypergon::read_polygon_file(path.string());
        const hypergon::HyperbolicPolygon poly = file.realize();
        check_polygon(poly, eng, cross, isometry, turning, bound);
        std::printf("%s: ok%s\n", path.filename().string().c_str(),
                    poly.reversed() ? " (reversed)" : "");
      } catch (const hypergon::Error& e) {
        ++validation_failures;
        std::printf("%s: FAIL (%s)\n", path.filename().string().c_str(), e.what());
      }
    }
  } else {
    for (std::size_t i = 0; i < flags.random_count; ++i) {
      std::mt19937_64 eng(hypergon::detail::substream_seed(flags.seed, i));
      const std::size_t n = 3 + static_cast<std::size_t>(i % 8);
      const hypergon::HyperbolicPolygon poly =
          hypergon::random_simple_polygon(eng, n, 0.9);
      check_polygon(poly, eng, cross, isometry, turning, bound);
    }
  }

  print_suite("cross-formula", cross, 1e-9);
  print_suite("isometry", isometry, 1e-10);
  print_suite("turning", turning, 1e-10);
  print_suite("bound", bound, 1e-9);
  if (validation_failures > 0) {
    std::printf("validation failures: %zu\n", validation_failures);
  }
  const bool ok = cross.fail == 0 && isometry.fail == 0 && turning.fail == 0 &&
                  bound.fail == 0 && validation_failures == 0;
  std::printf("overall: %s\n", ok ? "PASS" : "FAIL");
  return ok ? kExitOk : kExitDiscrepancy;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbolic polygon area/perimeter toolkit"};
  app.set_version_flag("--version", std::string("hypergon ") + kVersion);
  app.require_subcommand(1);

  AreaFlags area_flags;
  CLI::App* area = app.add_subcommand("area", "compute and cross-check areas");
  area->add_option("input", area_flags.input, "polygon file")->required();
  area->add_flag("--verify", area_flags.verify, "run quadrature and Monte Carlo oracles");
  area->add_option("--tol", area_flags.tol, "pairwise discrepancy tolerance");
  area->add_option("--mc-samples", area_flags.mc_samples, "Monte Carlo sample count");
  CLI::Option* area_seed = area->add_option("--seed", area_flags.seed, "RNG seed");

  std::string render_input, render_output;
  CLI::App* render = app.add_subcommand("render", "render a polygon to SVG");
  render->add_option("input", render_input, "polygon file")->required();
  render->add_option("output", render_output, "SVG output path")->required();

  IsoperFlags isoper_flags;
  CLI::App* isoper = app.add_subcommand("isoper", "fixed-perimeter area maximizer");
  isoper->add_option("n", isoper_flags.n, "vertex count")->required();
  isoper->add_option("perimeter", isoper_flags.perimeter, "target perimeter")->required();
  CLI::Option* isoper_seed = isoper->add_option("--seed", isoper_flags.seed, "RNG seed");
  isoper->add_option("--starts", isoper_flags.starts, "multistart count");
  isoper->add_option("--perimeter-tol", isoper_flags.perimeter_tol,
                     "perimeter feasibility tolerance");
  isoper->add_option("--gap", isoper_flags.gap, "allowed gap to the area bound");
  isoper->add_option("--svg", isoper_flags.svg_path, "render the result to this SVG path");

  VerifyFlags verify_flags;
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--corpus", verify_flags.corpus, "directory of polygon files");
  verify->add_option("--random", verify_flags.random_count,
                     "number of random polygons when no corpus is given");
  CLI::Option* verify_seed = verify->add_option("--seed", verify_flags.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*area) {
      area_flags.seed = resolve_seed(area_seed, area_flags.seed);
      return cmd_area(area_flags);
    }
    if (*render) {
      return cmd_render(render_input, render_output);
    }
    if (*isoper) {
      isoper_flags.seed = resolve_seed(isoper_seed, isoper_flags.seed);
      return cmd_isoper(isoper_flags);
    }
    if (*verify) {
      verify_flags.seed = resolve_seed(verify_seed, verify_flags.seed);
      return cmd_verify(verify_flags);
    }
  } catch (const hypergon::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const hypergon::NoFeasibleIterate& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDiscrepancy;
  } catch (const hypergon::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
