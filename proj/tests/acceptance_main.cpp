// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero when any criterion fails. The path to the
// command-line binary must be supplied with --cli so the last criterion can
// exercise the executable exactly as a user would.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gamcal/calculus.hpp"
#include "gamcal/chain.hpp"
#include "gamcal/hamilton_jacobi.hpp"
#include "gamcal/hamiltonian.hpp"
#include "gamcal/io.hpp"
#include "gamcal/multivector.hpp"
#include "gamcal/random.hpp"
#include "gamcal/selftest.hpp"
#include "gamcal/solver.hpp"
#include "gamcal/util.hpp"

namespace fs = std::filesystem;
using namespace gamcal;

namespace {

const double kPi = std::acos(-1.0);

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

// ---------------------------------------------------------------- criterion 1

Outcome check_identity_suite() {
  const auto checks = run_ga_selftest(20260823, 1000, {3, 4, 5}, 1e-12);
  double worst = 0.0;
  bool all = true;
  for (const auto& check : checks) {
    worst = std::max(worst, check.max_rel_error);
    all = all && check.pass && check.cases == 3000;
  }
  return {all && checks.size() == 10,
          std::to_string(checks.size()) + " identities, max rel err " + fmt(worst)};
}

// ---------------------------------------------------------------- criterion 2

Outcome check_momentum_derivative() {
  const int n = 4;
  Rng rng(2);
  const auto H = [](const Multivector&, const Multivector& P) {
    return squared_magnitude(P);
  };
  double worst = 0.0;
  for (int c = 0; c < 100; ++c) {
    const Multivector P = rng.pure_grade(n, 2);
    const Multivector got = multivector_derivative(H, Multivector(n), P, 2);
    worst = std::max(worst, magnitude(got - 2.0 * reverse(P)));
  }
  return {worst <= 1e-5, "max deviation " + fmt(worst) + " over 100 draws"};
}

// ---------------------------------------------------------------- criterion 3

double ft_gap(const SimplexChain& patch, const ChainIntegrand& L) {
  return magnitude(directed_integral(L, boundary_chain(patch)) -
                   interior_derivative_integral(L, patch));
}

Outcome check_fundamental_theorem() {
  const ChainIntegrand flat_l = [](const Multivector& m, const Multivector& q) {
    const std::vector<double> x = q.vector_part();
    return m * (std::exp(0.3 * x[0]) * (std::sin(x[1]) + 2.0));
  };
  const auto embed = [](double u, double v) {
    return std::vector<double>{u, v, 0.3 * std::sin(u) * std::cos(v)};
  };
  const ChainIntegrand graph_l = [](const Multivector& m, const Multivector& q) {
    const std::vector<double> x = q.vector_part();
    return m * (std::exp(0.2 * x[0] + 0.1 * x[2]) * (std::cos(x[1]) + 2.0));
  };

  std::vector<double> flat_err, graph_err;
  for (int m : {8, 16, 32}) {
    flat_err.push_back(ft_gap(triangulated_rectangle(0.0, 1.0, 0.0, 1.0, m, m), flat_l));
    graph_err.push_back(
        ft_gap(triangulated_graph(3, embed, 0.0, 1.5, 0.0, 1.0, m, m), graph_l));
  }
  double worst_order = 1e9;
  for (const auto& err : {flat_err, graph_err}) {
    for (std::size_t i = 0; i + 1 < err.size(); ++i) {
      worst_order = std::min(worst_order, std::log2(err[i] / err[i + 1]));
    }
  }
  return {worst_order >= 1.9, "weakest refinement order " + fmt(worst_order)};
}

// ---------------------------------------------------------------- criterion 4

HamiltonianSpec oscillator() {
  const SplitFrame frame = SplitFrame::mechanics(2);
  return mechanics_hamiltonian(
      separable_mechanics(Potential({0.0, 0.0, 0.5}), frame), frame);
}

Outcome check_oscillator() {
  const HamiltonianSpec H = oscillator();
  const Multivector q0 = Multivector::vector(2, {0.0, 1.0});
  const Multivector p0 =
      with_constraint_momentum(H, q0, Multivector::vector(2, {0.0, 0.0}));

  const MotionCurve period = solve_mechanics(H, q0, p0, 2.0 * kPi, 1e-3);
  const double position_error = std::abs(period.points.back()[0b10] - 1.0);

  const MotionCurve long_run = solve_mechanics(H, q0, p0, 20.0 * kPi, 1e-3);
  const double drift = energy_drift(long_run);
  const double residual = constraint_residual(H, long_run);

  const bool pass = position_error <= 1e-6 && drift <= 1e-8 && residual <= 1e-8;
  return {pass, "x(2pi) error " + fmt(position_error) + ", drift " + fmt(drift) +
                    ", |H| " + fmt(residual) + " over 10 periods"};
}

// ---------------------------------------------------------------- criterion 5

Outcome check_static_field() {
  const Potential V({0.0, 0.0, 0.5});
  const HamiltonianSpec H = dw_hamiltonian(V, SplitFrame::field_theory(2));

  std::vector<double> errs, spacings, continuity;
  double momentum_worst = 0.0;
  for (int m : {0, 1, 2}) {
    const int nx = 20 * (1 << m) + 1;
    const int ny = 8 * (1 << m) + 1;
    FieldGrid grid = FieldGrid::make({0.0, 0.0}, {kPi, 1.0}, {nx, ny});
    grid.set_dirichlet([](const std::vector<double>& x) { return std::sin(x[0]); });
    const FieldGrid solved = solve_scalar_field(H, grid, 1e-10, 200000);

    double err = 0.0;
    for (int node = 0; node < solved.node_count(); ++node) {
      const auto x = solved.coordinates(solved.unravel(node));
      err = std::max(err, std::abs(solved.phi[node] - std::sin(x[0])));
    }
    errs.push_back(err);
    spacings.push_back(kPi / (nx - 1));
    momentum_worst = std::max(momentum_worst, dw_residuals(solved, V).momentum_relation);
    continuity.push_back(continuity_residual(energy_momentum_tensor(solved, V)));
  }

  const double constant = errs[0] / (spacings[0] * spacings[0]);
  bool within_budget = true;
  for (std::size_t i = 0; i < errs.size(); ++i) {
    within_budget =
        within_budget && errs[i] <= 2.0 * constant * spacings[i] * spacings[i];
  }
  double worst_order = 1e9;
  for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
    worst_order = std::min(worst_order, std::log2(errs[i] / errs[i + 1]));
    worst_order = std::min(worst_order, std::log2(continuity[i] / continuity[i + 1]));
  }
  const bool pass = within_budget && worst_order >= 1.9 && momentum_worst <= 1e-14;
  return {pass, "errors " + fmt(errs[0]) + "/" + fmt(errs[1]) + "/" + fmt(errs[2]) +
                    ", weakest order " + fmt(worst_order) + ", momentum gap " +
                    fmt(momentum_worst)};
}

// ---------------------------------------------------------------- criterion 6

Outcome check_geodesics() {
  const double lambda = 2.0;
  const HamiltonianSpec H = string_hamiltonian(lambda, 1, 4);
  const Multivector q0 = Multivector::vector(4, {0.5, -0.25, 1.0, 0.0});
  Multivector v = Multivector::vector(4, {1.0, 2.0, 2.0, 0.0});
  v /= magnitude(v);
  const double s_end = 3.0;
  const MotionCurve motion = solve_geodesic(H, q0, v, s_end, 1e-3);

  double line_dev = 0.0, momentum_dev = 0.0;
  for (std::size_t i = 0; i < motion.sample_count(); ++i) {
    line_dev = std::max(line_dev,
                        magnitude(motion.points[i] - (q0 + motion.tau[i] * v)));
    momentum_dev =
        std::max(momentum_dev, std::abs(magnitude(motion.momenta[i]) - lambda));
  }
  const double action_gap = std::abs(action_value(motion) - lambda * s_end);

  const SurfaceMesh plane = SurfaceMesh::from_map(
      3, [](double u, double w) { return std::vector<double>{u, w, 0.25 * u}; },
      0.0, 1.0, 0.0, 1.0, 17, 17);
  const double plane_spur = spur_residual(plane).max_value;

  double catenoid_order = 0.0;
  {
    const auto catenoid = [](double u, double w) {
      return std::vector<double>{std::cosh(w) * std::cos(u),
                                 std::cosh(w) * std::sin(u), w};
    };
    const double coarse =
        spur_residual(SurfaceMesh::from_map(3, catenoid, 0.0, 2.0, -0.8, 0.8, 17, 17))
            .max_value;
    const double fine =
        spur_residual(SurfaceMesh::from_map(3, catenoid, 0.0, 2.0, -0.8, 0.8, 33, 33))
            .max_value;
    catenoid_order = std::log2(coarse / fine);
  }

  double sphere_gap = 0.0;
  for (double radius : {1.0, 2.0}) {
    const SurfaceMesh sphere = SurfaceMesh::from_map(
        3,
        [radius](double u, double w) {
          return std::vector<double>{radius * std::sin(u) * std::cos(w),
                                     radius * std::sin(u) * std::sin(w),
                                     radius * std::cos(u)};
        },
        0.6, kPi - 0.6, 0.3, 2.0, 33, 33);
    const SpurField field = spur_residual(sphere);
    for (double value : field.values) {
      sphere_gap = std::max(sphere_gap, std::abs(value - 2.0 / radius) / (2.0 / radius));
    }
  }

  const bool pass = line_dev <= 1e-10 && momentum_dev <= 1e-10 &&
                    action_gap <= 1e-8 && plane_spur <= 1e-10 &&
                    catenoid_order >= 1.9 && sphere_gap <= 0.05;
  return {pass, "line " + fmt(line_dev) + ", action gap " + fmt(action_gap) +
                    ", plane spur " + fmt(plane_spur) + ", catenoid order " +
                    fmt(catenoid_order) + ", sphere gap " + fmt(sphere_gap * 100) +
                    "%"};
}

// ---------------------------------------------------------------- criterion 7

Outcome check_hamilton_jacobi() {
  const int n = 4;
  const double lambda = 2.0;
  const Multivector source = Multivector::vector(n, {0.0, 0.0, 0.0, 0.0});
  const HJFunction S = point_source_hj(lambda, source, 1e-4);

  Rng rng(7);
  double momentum_gap = 0.0;
  for (int c = 0; c < 1000; ++c) {
    const double radius = rng.uniform(0.5, 2.5);
    const Multivector q = source + radius * rng.unit_vector(n);
    momentum_gap =
        std::max(momentum_gap, std::abs(magnitude(hj_momentum(S, q)) - lambda));
  }

  Multivector v = Multivector::vector(n, {2.0, 1.0, 2.0, 0.0});
  v /= magnitude(v);
  const Multivector start = source + v;
  const HamiltonianSpec H = string_hamiltonian(lambda, 1, n);
  const MotionCurve ray = solve_geodesic(H, start, v, 2.0, 1e-2);
  double ray_spread = 0.0;
  for (int k = 0; k < S.param_count; ++k) {
    ray_spread = std::max(ray_spread, conserved_quantity(S, ray, k).spread);
  }

  MotionCurve arc;
  arc.config_dim = n;
  for (int i = 0; i <= 100; ++i) {
    const double theta = 0.5 * kPi * i / 100;
    arc.tau.push_back(theta);
    arc.points.push_back(Multivector::vector(
        n, {2.0 + std::cos(theta), std::sin(theta), 0.0, 0.0}));
    arc.momenta.push_back(lambda * Multivector::vector(
                              n, {-std::sin(theta), std::cos(theta), 0.0, 0.0}));
    arc.constraint_residuals.push_back(0.0);
    arc.energies.push_back(lambda);
  }
  double arc_spread = 0.0;
  for (int k = 0; k < S.param_count; ++k) {
    arc_spread = std::max(arc_spread, conserved_quantity(S, arc, k).spread);
  }

  const MotionCurve built = motion_from_hj(start, v, 2.0, 1e-2, lambda);
  double match = 0.0;
  for (std::size_t i = 0; i < built.sample_count(); ++i) {
    match = std::max(match, magnitude(built.points[i] - ray.points[i]));
    match = std::max(match, magnitude(built.momenta[i] - ray.momenta[i]));
  }

  const bool pass = momentum_gap <= 1e-6 && ray_spread <= 1e-8 &&
                    arc_spread >= 0.01 && match <= 1e-10;
  return {pass, "|dS| gap " + fmt(momentum_gap) + ", ray spread " + fmt(ray_spread) +
                    ", arc spread " + fmt(arc_spread) + ", motion match " +
                    fmt(match)};
}

// ---------------------------------------------------------------- criterion 8

int run_cli(const std::string& cli, const std::string& args) {
  const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
  return -2;
}

bool dirs_identical(const fs::path& a, const fs::path& b, std::string& why) {
  std::vector<std::string> names_a, names_b;
  for (const auto& entry : fs::directory_iterator(a)) {
    names_a.push_back(entry.path().filename().string());
  }
  for (const auto& entry : fs::directory_iterator(b)) {
    names_b.push_back(entry.path().filename().string());
  }
  std::sort(names_a.begin(), names_a.end());
  std::sort(names_b.begin(), names_b.end());
  if (names_a != names_b) {
    why = "artifact lists differ";
    return false;
  }
  for (const auto& name : names_a) {
    if (read_file((a / name).string()) != read_file((b / name).string())) {
      why = name + " differs between reruns";
      return false;
    }
  }
  return true;
}

Outcome check_cli(const std::string& cli) {
  if (cli.empty()) return {false, "no --cli path supplied"};
  const fs::path root = fs::current_path() / "acceptance_tmp";
  fs::remove_all(root);
  fs::create_directories(root);

  const auto config_path = [&](const std::string& name) {
    return (root / name).string();
  };
  write_file(config_path("mechanics.json"), R"({
  "scenario": "mechanics",
  "hamiltonian": {"type": "mechanics", "potential": [0, 0, 0.5], "dims": {"n": 2, "D": 1}},
  "numeric": {"dt": 1e-3, "t_end": 6.283185307179586},
  "initial": {"x0": [1.0], "p0": [0.0]}
}
)");
  write_file(config_path("scalar-field.json"), R"({
  "scenario": "scalar-field",
  "hamiltonian": {"type": "dw", "potential": [0, 0, 0.5], "dims": {"n": 3, "D": 2}},
  "numeric": {"tol": 1e-10, "max_iter": 200000,
              "grid": {"mins": [0, 0], "maxs": [3.141592653589793, 1], "counts": [41, 17]}},
  "boundary": {"profile": "sin_x1", "coeffs": [1.0]}
}
)");
  write_file(config_path("geodesic.json"), R"({
  "scenario": "geodesic",
  "hamiltonian": {"type": "string", "lambda": 2.0, "dims": {"n": 4, "D": 1}},
  "numeric": {"ds": 0.01, "s_end": 3.0},
  "initial": {"q0": [0.5, -0.25, 1.0, 0.0], "v": [1.0, 2.0, 2.0, 0.0]}
}
)");
  write_file(config_path("hj-check.json"), R"({
  "scenario": "hj-check",
  "hamiltonian": {"type": "string", "lambda": 2.0, "dims": {"n": 4, "D": 1}},
  "numeric": {"ds": 0.01, "s_end": 3.0, "h": 1e-5, "samples": 1000},
  "initial": {"q0": [0.5, -0.25, 1.0, 0.0], "v": [1.0, 2.0, 2.0, 0.0]}
}
)");
  write_file(config_path("ga-selftest.json"), R"({
  "scenario": "ga-selftest",
  "seed": 42
}
)");

  const std::vector<std::string> scenarios = {"mechanics", "scalar-field", "geodesic",
                                              "hj-check", "ga-selftest"};
  for (const auto& scenario : scenarios) {
    for (const char* tag : {"a", "b"}) {
      const fs::path out = root / (scenario + "_" + tag);
      const int rc = run_cli(cli, scenario + " --config \"" +
                                      config_path(scenario + ".json") + "\" --out \"" +
                                      out.string() + "\"");
      if (rc != 0) {
        return {false, scenario + " run exited with code " + std::to_string(rc)};
      }
    }
    std::string why;
    if (!dirs_identical(root / (scenario + "_a"), root / (scenario + "_b"), why)) {
      return {false, scenario + ": " + why};
    }
  }

  const std::vector<std::pair<std::string, std::string>> artifacts = {
      {"mechanics", "trajectory.csv"},
      {"scalar-field", "field.csv"},
      {"geodesic", "trajectory.csv"},
      {"hj-check", "trajectory.csv"}};
  for (const auto& [scenario, file] : artifacts) {
    const int rc = run_cli(cli, "verify --config \"" +
                                    config_path(scenario + ".json") + "\" --data \"" +
                                    (root / (scenario + "_a") / file).string() + "\"");
    if (rc != 0) {
      return {false, "verify on " + scenario + " artifacts exited with code " +
                         std::to_string(rc)};
    }
  }

  // Corrupt one momentum column of the mechanics trajectory and require the
  // verifier to reject it.
  const auto rows = read_csv((root / "mechanics_a" / "trajectory.csv").string());
  std::string corrupted;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<std::string> row = rows[r];
    if (r > 0) {
      bool ok = false;
      const double p2 = parse_double(row[4], &ok);
      if (!ok) return {false, "could not parse the trajectory momentum column"};
      row[4] = format_double(p2 + 0.1);
    }
    for (std::size_t i = 0; i < row.size(); ++i) corrupted += (i ? "," : "") + row[i];
    corrupted += "\n";
  }
  write_file((root / "corrupted.csv").string(), corrupted);
  const int rc = run_cli(cli, "verify --config \"" + config_path("mechanics.json") +
                                  "\" --data \"" + (root / "corrupted.csv").string() +
                                  "\"");
  if (rc == 0) return {false, "verify accepted a corrupted trajectory"};

  return {true, "5 scenarios byte-stable, verify accepts clean and rejects "
                "corrupted data (exit " +
                    std::to_string(rc) + ")"};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"product identity suite holds to 1e-12 over dims 3-5",
       check_identity_suite},
      {"momentum derivative of |P|^2 returns twice the reversed momentum",
       check_momentum_derivative},
      {"boundary and interior integrals converge together at second order",
       check_fundamental_theorem},
      {"oscillator returns home with conserved energy and constraint",
       check_oscillator},
      {"static field solve converges at second order with exact momenta",
       check_static_field},
      {"geodesics run straight; spur matches plane, catenoid, and spheres",
       check_geodesics},
      {"point-source generating family reproduces momenta and motions",
       check_hamilton_jacobi},
      {"command line is deterministic and verification gates corruption",
       [&cli] { return check_cli(cli); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("raised: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("[%s] criterion %zu: %s (%s)\n", outcome.pass ? "PASS" : "FAIL",
                i + 1, criteria[i].first.c_str(), outcome.detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d of %zu acceptance criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu acceptance criteria passed\n", criteria.size());
  return 0;
}
