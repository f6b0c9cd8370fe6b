#include "gamcal/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "gamcal/calculus.hpp"
#include "gamcal/errors.hpp"
#include "gamcal/hamilton_jacobi.hpp"
#include "gamcal/io.hpp"
#include "gamcal/random.hpp"
#include "gamcal/selftest.hpp"
#include "gamcal/solver.hpp"
#include "gamcal/util.hpp"

namespace gamcal {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

double positive_number(const json& block, const char* key, double fallback) {
  if (!block.contains(key)) return fallback;
  const double v = block.at(key).get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string("numeric.") + key + " must be a positive number");
  }
  return v;
}

std::vector<double> finite_array(const json& block, const char* key,
                                 const std::vector<double>& fallback) {
  if (!block.contains(key)) return fallback;
  const auto v = block.at(key).get<std::vector<double>>();
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw ConfigError(std::string(key) + " must hold finite numbers");
    }
  }
  return v;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void write_json_file(const std::string& path, const ordered& j) {
  write_file(path, j.dump(2) + "\n");
}

// Canonical summary skeleton shared by every scenario.
ordered summary_base(const ScenarioConfig& config) {
  ordered s;
  s["scenario"] = config.scenario;
  s["config_hash"] = config.config_hash;
  s["seed"] = config.seed;
  s["max_H_residual"] = nullptr;
  s["energy_drift"] = nullptr;
  s["continuity_residual"] = nullptr;
  s["action"] = nullptr;
  return s;
}

Multivector point_from(const std::vector<double>& coords, int dim, const char* key) {
  if (static_cast<int>(coords.size()) != dim) {
    throw ConfigError(std::string("initial.") + key + " must hold " +
                      std::to_string(dim) + " components");
  }
  return Multivector::vector(dim, coords);
}

Multivector unit_direction(const std::vector<double>& coords, int dim) {
  const Multivector v = point_from(coords, dim, "v");
  const double m = magnitude(v);
  if (m < 1e-12) throw ConfigError("initial.v must be a nonzero direction");
  return v / m;
}

FieldGrid grid_from_config(const ScenarioConfig& config, int motion_dim) {
  if (static_cast<int>(config.grid_counts.size()) != motion_dim ||
      static_cast<int>(config.grid_mins.size()) != motion_dim ||
      static_cast<int>(config.grid_maxs.size()) != motion_dim) {
    throw ConfigError("numeric.grid needs mins, maxs, and counts with one entry per "
                      "motion axis");
  }
  return FieldGrid::make(config.grid_mins, config.grid_maxs, config.grid_counts);
}

std::function<double(const std::vector<double>&)> boundary_from_config(
    const ScenarioConfig& config) {
  const auto coeff = [&config](std::size_t k) {
    return k < config.boundary_coeffs.size() ? config.boundary_coeffs[k] : 0.0;
  };
  if (config.boundary_profile == "constant") {
    const double c = coeff(0);
    return [c](const std::vector<double>&) { return c; };
  }
  if (config.boundary_profile == "linear") {
    std::vector<double> cs = config.boundary_coeffs;
    return [cs](const std::vector<double>& x) {
      double v = cs.empty() ? 0.0 : cs[0];
      for (std::size_t k = 0; k < x.size(); ++k) {
        if (k + 1 < cs.size()) v += cs[k + 1] * x[k];
      }
      return v;
    };
  }
  if (config.boundary_profile == "sin_x1") {
    const double c = coeff(0);
    return [c](const std::vector<double>& x) { return c * std::sin(x[0]); };
  }
  throw ConfigError("unknown boundary.profile '" + config.boundary_profile +
                    "' (expected constant, linear, or sin_x1)");
}

struct Aggregate {
  int samples = 0;
  double max_value = 0.0;
  double sum = 0.0;

  void add(double v) {
    ++samples;
    max_value = std::max(max_value, v);
    sum += v;
  }
  double mean() const { return samples ? sum / samples : 0.0; }

  ordered report(const char* op) const {
    ordered r;
    r["op"] = op;
    r["samples"] = samples;
    r["max_residual"] = max_value;
    r["mean_residual"] = mean();
    return r;
  }
};

ordered run_mechanics(const ScenarioConfig& config, const std::string& out_dir) {
  const HamiltonianSpec H = hamiltonian_from_json(config.hamiltonian);
  if (H.kind != "mechanics") {
    throw ConfigError("the mechanics scenario needs hamiltonian.type \"mechanics\"");
  }
  const int n = H.config_dim;
  const int spatial = n - 1;
  if (static_cast<int>(config.x0.size()) != spatial ||
      static_cast<int>(config.p0.size()) != spatial) {
    throw ConfigError("the mechanics scenario needs initial.x0 and initial.p0 with " +
                      std::to_string(spatial) + " spatial components");
  }
  std::vector<double> q_coords(n, 0.0), p_coords(n, 0.0);
  for (int j = 0; j < spatial; ++j) {
    q_coords[j + 1] = config.x0[j];
    p_coords[j + 1] = config.p0[j];
  }
  const Multivector q0 = Multivector::vector(n, q_coords);
  const Multivector p0 =
      with_constraint_momentum(H, q0, Multivector::vector(n, p_coords));

  const MotionCurve motion = solve_mechanics(H, q0, p0, config.t_end, config.dt);
  write_motion_csv(join_path(out_dir, "trajectory.csv"), motion);

  ordered summary = summary_base(config);
  summary["max_H_residual"] = constraint_residual(H, motion);
  summary["energy_drift"] = energy_drift(motion);
  summary["action"] = action_value(motion);
  return summary;
}

ordered run_scalar_field(const ScenarioConfig& config, const std::string& out_dir) {
  const HamiltonianSpec H = hamiltonian_from_json(config.hamiltonian);
  if (H.kind != "dw") {
    throw ConfigError("the scalar-field scenario needs hamiltonian.type \"dw\"");
  }
  FieldGrid grid = grid_from_config(config, H.motion_dim);
  grid.set_dirichlet(boundary_from_config(config));
  const FieldGrid solved =
      solve_scalar_field(H, std::move(grid), config.tol, config.max_iter, config.relax);

  write_field_csv(join_path(out_dir, "field.csv"), solved);
  const EnergyMomentumField T = energy_momentum_tensor(solved, *H.potential);
  write_emt_csv(join_path(out_dir, "energy_momentum.csv"), solved, T);

  const FieldResiduals residuals = dw_residuals(solved, *H.potential);
  ordered summary = summary_base(config);
  summary["max_H_residual"] = constraint_residual(H, solved);
  summary["continuity_residual"] = continuity_residual(T);
  summary["momentum_relation_residual"] = residuals.momentum_relation;
  summary["field_equation_residual"] = residuals.field_equation;
  return summary;
}

ordered run_geodesic(const ScenarioConfig& config, const std::string& out_dir) {
  const HamiltonianSpec H = hamiltonian_from_json(config.hamiltonian);
  if (H.kind != "string" || H.motion_dim != 1) {
    throw ConfigError("the geodesic scenario needs hamiltonian.type \"string\" with "
                      "dims.D = 1");
  }
  const int n = H.config_dim;
  const Multivector q0 = point_from(config.q0, n, "q0");
  const Multivector v = unit_direction(config.v, n);

  const MotionCurve motion = solve_geodesic(H, q0, v, config.s_end, config.ds);
  write_motion_csv(join_path(out_dir, "trajectory.csv"), motion);

  ordered summary = summary_base(config);
  summary["max_H_residual"] = constraint_residual(H, motion);
  summary["energy_drift"] = energy_drift(motion);
  summary["action"] = action_value(motion);
  return summary;
}

ordered run_hj_check(const ScenarioConfig& config, const std::string& out_dir) {
  const HamiltonianSpec H = hamiltonian_from_json(config.hamiltonian);
  if (H.kind != "string" || H.motion_dim != 1) {
    throw ConfigError("the hj-check scenario needs hamiltonian.type \"string\" with "
                      "dims.D = 1");
  }
  const int n = H.config_dim;
  const double lambda = H.lambda_constant;
  const Multivector start = point_from(config.q0, n, "q0");
  const Multivector v = unit_direction(config.v, n);
  const StepSize h(config.h);

  // Keep the family's singular point one unit behind the motion start so
  // every sampled point stays clear of the exclusion zone.
  const Multivector source = start - v;
  const HJFunction S = point_source_hj(lambda, source, 10.0 * config.h);

  Rng rng(config.seed);
  Aggregate hj_res, momentum_mag;
  for (int k = 0; k < config.samples; ++k) {
    const double radius = rng.uniform(0.5, 2.5);
    const Multivector q = source + radius * rng.unit_vector(n);
    hj_res.add(hj_residual(H, S, q, h));
    momentum_mag.add(std::abs(magnitude(hj_momentum(S, q, h)) - lambda));
  }

  const MotionCurve motion = motion_from_hj(start, v, config.s_end, config.ds, lambda);
  const MotionCurve oracle = solve_geodesic(H, start, v, config.s_end, config.ds);
  Aggregate match;
  for (std::size_t i = 0; i < motion.sample_count(); ++i) {
    match.add(std::max(magnitude(motion.points[i] - oracle.points[i]),
                       magnitude(motion.momenta[i] - oracle.momenta[i])));
  }
  Aggregate conserved;
  for (int k = 0; k < S.param_count; ++k) {
    conserved.add(conserved_quantity(S, motion, k).spread);
  }

  write_motion_csv(join_path(out_dir, "trajectory.csv"), motion);
  ordered report;
  report["scenario"] = config.scenario;
  report["config_hash"] = config.config_hash;
  report["seed"] = config.seed;
  report["checks"] = ordered::array({hj_res.report("hj_residual"),
                                     momentum_mag.report("momentum_magnitude"),
                                     conserved.report("conserved_spread"),
                                     match.report("motion_match")});
  write_json_file(join_path(out_dir, "hj_report.json"), report);

  ordered summary = summary_base(config);
  summary["max_H_residual"] = constraint_residual(H, motion);
  summary["energy_drift"] = energy_drift(motion);
  summary["action"] = action_value(motion);
  summary["hj_max_residual"] = hj_res.max_value;
  return summary;
}

ordered run_ga_selftest_scenario(const ScenarioConfig& config,
                                 const std::string& out_dir) {
  const auto checks = run_ga_selftest(config.seed);
  ordered listing;
  listing["scenario"] = config.scenario;
  listing["config_hash"] = config.config_hash;
  listing["seed"] = config.seed;
  listing["identities"] = ordered::array();
  int passed = 0;
  double worst = 0.0;
  std::string failed_names;
  for (const auto& check : checks) {
    ordered entry;
    entry["name"] = check.name;
    entry["cases"] = check.cases;
    entry["max_rel_error"] = check.max_rel_error;
    entry["pass"] = check.pass;
    listing["identities"].push_back(std::move(entry));
    worst = std::max(worst, check.max_rel_error);
    if (check.pass) {
      ++passed;
    } else {
      failed_names += failed_names.empty() ? check.name : ", " + check.name;
    }
  }
  listing["all_pass"] = passed == static_cast<int>(checks.size());
  write_json_file(join_path(out_dir, "selftest.json"), listing);

  ordered summary = summary_base(config);
  summary["identities_passed"] = passed;
  summary["identities_total"] = static_cast<int>(checks.size());
  summary["max_rel_error"] = worst;
  if (!failed_names.empty()) {
    throw Error("algebra identity checks failed: " + failed_names);
  }
  return summary;
}

}  // namespace

ScenarioConfig ScenarioConfig::load(const std::string& path) {
  const std::string raw = read_file(path);
  ScenarioConfig c;
  c.config_hash = fnv1a64_hex(raw);
  json root;
  try {
    root = json::parse(raw);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    if (!root.is_object()) throw ConfigError("config root must be an object");
    c.scenario = root.value("scenario", std::string{});
    if (root.contains("hamiltonian")) c.hamiltonian = root.at("hamiltonian");
    if (root.contains("seed")) {
      const auto s = root.at("seed").get<std::int64_t>();
      if (s < 0) throw ConfigError("seed must be non-negative");
      c.seed = static_cast<std::uint64_t>(s);
    }

    const json numeric = root.value("numeric", json::object());
    c.dt = positive_number(numeric, "dt", c.dt);
    c.t_end = positive_number(numeric, "t_end", c.t_end);
    c.ds = positive_number(numeric, "ds", c.ds);
    c.s_end = positive_number(numeric, "s_end", c.s_end);
    c.h = positive_number(numeric, "h", c.h);
    c.tol = positive_number(numeric, "tol", c.tol);
    c.relax = positive_number(numeric, "relax", c.relax);
    if (numeric.contains("max_iter")) {
      c.max_iter = numeric.at("max_iter").get<int>();
      if (c.max_iter < 1) throw ConfigError("numeric.max_iter must be positive");
    }
    if (numeric.contains("samples")) {
      c.samples = numeric.at("samples").get<int>();
      if (c.samples < 1) throw ConfigError("numeric.samples must be positive");
    }
    if (numeric.contains("grid")) {
      const json& grid = numeric.at("grid");
      c.grid_mins = finite_array(grid, "mins", {});
      c.grid_maxs = finite_array(grid, "maxs", {});
      if (grid.contains("counts")) {
        c.grid_counts = grid.at("counts").get<std::vector<int>>();
      }
      if (c.grid_mins.size() != c.grid_maxs.size() ||
          c.grid_mins.size() != c.grid_counts.size()) {
        throw ConfigError("numeric.grid mins, maxs, and counts must have equal "
                          "lengths");
      }
      for (std::size_t k = 0; k < c.grid_counts.size(); ++k) {
        if (c.grid_counts[k] < 3) {
          throw ConfigError("numeric.grid.counts entries must be at least 3");
        }
        if (!(c.grid_maxs[k] > c.grid_mins[k])) {
          throw ConfigError("numeric.grid needs max > min on every axis");
        }
      }
    }

    const json boundary = root.value("boundary", json::object());
    c.boundary_profile = boundary.value("profile", c.boundary_profile);
    c.boundary_coeffs = finite_array(boundary, "coeffs", c.boundary_coeffs);

    const json initial = root.value("initial", json::object());
    c.x0 = finite_array(initial, "x0", {});
    c.p0 = finite_array(initial, "p0", {});
    c.q0 = finite_array(initial, "q0", {});
    c.v = finite_array(initial, "v", {});

    const json verify = root.value("verify", json::object());
    c.constraint_tol = positive_number(verify, "constraint_tol", c.constraint_tol);
    c.energy_tol = positive_number(verify, "energy_tol", c.energy_tol);
    c.momentum_tol = positive_number(verify, "momentum_tol", c.momentum_tol);
    c.field_tol = positive_number(verify, "field_tol", c.field_tol);
    c.match_tol = positive_number(verify, "match_tol", c.match_tol);
    c.conserved_tol = positive_number(verify, "conserved_tol", c.conserved_tol);
    if (verify.contains("continuity_tol")) {
      const double v = verify.at("continuity_tol").get<double>();
      if (v < 0.0 || !std::isfinite(v)) {
        throw ConfigError("verify.continuity_tol must be non-negative");
      }
      c.continuity_tol = v;
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field has the wrong type: ") + e.what());
  }
  return c;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"mechanics", "scalar-field",
                                                 "geodesic", "hj-check", "ga-selftest"};
  return names;
}

json run_scenario(const ScenarioConfig& config, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create output directory: " + out_dir);

  ordered summary;
  if (config.scenario == "mechanics") {
    summary = run_mechanics(config, out_dir);
  } else if (config.scenario == "scalar-field") {
    summary = run_scalar_field(config, out_dir);
  } else if (config.scenario == "geodesic") {
    summary = run_geodesic(config, out_dir);
  } else if (config.scenario == "hj-check") {
    summary = run_hj_check(config, out_dir);
  } else if (config.scenario == "ga-selftest") {
    summary = run_ga_selftest_scenario(config, out_dir);
  } else {
    std::string names;
    for (const auto& name : scenario_names()) {
      names += names.empty() ? name : ", " + name;
    }
    throw ConfigError("unknown scenario '" + config.scenario + "' (valid: " + names +
                      ")");
  }
  write_json_file(join_path(out_dir, "summary.json"), summary);
  return summary;
}

json verify_data(const ScenarioConfig& config, const std::string& data_path) {
  ordered report;
  report["scenario"] = config.scenario;
  report["config_hash"] = config.config_hash;
  report["data"] = data_path;
  report["gates"] = ordered::array();
  bool all_pass = true;
  const auto gate = [&report, &all_pass](const char* name, double value, double tol) {
    ordered g;
    g["name"] = name;
    g["value"] = value;
    g["tol"] = tol;
    g["pass"] = value <= tol;
    all_pass = all_pass && value <= tol;
    report["gates"].push_back(std::move(g));
  };

  if (config.scenario == "mechanics") {
    const HamiltonianSpec H = hamiltonian_from_json(config.hamiltonian);
    if (H.kind != "mechanics") {
      throw ConfigError("verify: the mechanics scenario needs a mechanics "
                        "Hamiltonian");
    }
    const MotionCurve motion = read_motion_csv(data_path, H.config_dim);
    const Multivector et = H.frame->time_axis;
    double drift = 0.0, column = 0.0, first = 0.0;
    for (std::size_t i = 0; i < motion.sample_count(); ++i) {
      const double e = H.value(motion.points[i], motion.momenta[i]) -
                       inner(motion.momenta[i], et).scalar_part();
      if (i == 0) first = e;
      drift = std::max(drift, std::abs(e - first));
      column = std::max(column, std::abs(e - motion.energies[i]));
    }
    gate("constraint_residual", constraint_residual(H, motion), config.constraint_tol);
    gate("energy_drift", drift, config.energy_tol);
    gate("energy_column", column, config.energy_tol);
  } else if (config.scenario == "geodesic") {
    const HamiltonianSpec H = hamiltonian_from_json(config.hamiltonian);
    if (H.kind != "string" || H.motion_dim != 1) {
      throw ConfigError("verify: the geodesic scenario needs a string Hamiltonian "
                        "with dims.D = 1");
    }
    const MotionCurve motion = read_motion_csv(data_path, H.config_dim);
    double momentum = 0.0, column = 0.0;
    for (std::size_t i = 0; i < motion.sample_count(); ++i) {
      const double mag = magnitude(motion.momenta[i]);
      momentum = std::max(momentum, std::abs(mag - H.lambda_constant));
      column = std::max(column, std::abs(mag - motion.energies[i]));
    }
    gate("constraint_residual", constraint_residual(H, motion), config.constraint_tol);
    gate("momentum_magnitude", momentum, config.momentum_tol);
    gate("energy_column", column, config.energy_tol);
  } else if (config.scenario == "hj-check") {
    const HamiltonianSpec H = hamiltonian_from_json(config.hamiltonian);
    if (H.kind != "string" || H.motion_dim != 1) {
      throw ConfigError("verify: the hj-check scenario needs a string Hamiltonian "
                        "with dims.D = 1");
    }
    const int n = H.config_dim;
    const MotionCurve motion = read_motion_csv(data_path, n);
    const Multivector start = point_from(config.q0, n, "q0");
    const Multivector v = unit_direction(config.v, n);
    const Multivector source = start - v;
    const HJFunction S = point_source_hj(H.lambda_constant, source, 10.0 * config.h);

    double momentum = 0.0, line = 0.0;
    for (std::size_t i = 0; i < motion.sample_count(); ++i) {
      momentum = std::max(
          momentum, std::abs(magnitude(motion.momenta[i]) - H.lambda_constant));
      line = std::max(
          line, magnitude(motion.points[i] - (start + motion.tau[i] * v)));
    }
    double conserved = 0.0;
    for (int k = 0; k < S.param_count; ++k) {
      conserved = std::max(conserved, conserved_quantity(S, motion, k).spread);
    }
    gate("constraint_residual", constraint_residual(H, motion), config.constraint_tol);
    gate("momentum_magnitude", momentum, config.momentum_tol);
    gate("line_match", line, config.match_tol);
    gate("conserved_spread", conserved, config.conserved_tol);
  } else if (config.scenario == "scalar-field") {
    const HamiltonianSpec H = hamiltonian_from_json(config.hamiltonian);
    if (H.kind != "dw") {
      throw ConfigError("verify: the scalar-field scenario needs a field "
                        "Hamiltonian");
    }
    FieldGrid grid = grid_from_config(config, H.motion_dim);
    read_field_csv(data_path, grid);
    const FieldResiduals residuals = dw_residuals(grid, *H.potential);
    gate("constraint_residual", constraint_residual(H, grid), config.constraint_tol);
    gate("momentum_relation", residuals.momentum_relation, config.momentum_tol);
    gate("field_equation", residuals.field_equation, config.field_tol);
    if (config.continuity_tol > 0.0) {
      gate("continuity_residual",
           continuity_residual(energy_momentum_tensor(grid, *H.potential)),
           config.continuity_tol);
    }
  } else if (config.scenario == "ga-selftest") {
    throw ConfigError("verify: the ga-selftest scenario produces no data artifact");
  } else {
    throw ConfigError("verify: the config must name a scenario with data artifacts");
  }

  report["pass"] = all_pass;
  return report;
}

}  // namespace gamcal
