#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gamcal/hamiltonian.hpp"

namespace gamcal {

// Parsed run configuration. Each scenario reads the subset it needs;
// validation happens on load and again at the point of use.
struct ScenarioConfig {
  std::string scenario;
  nlohmann::json hamiltonian;  // raw block for hamiltonian_from_json
  std::string config_hash;     // hash of the raw config bytes
  std::uint64_t seed = 42;

  // numeric block
  double dt = 1e-3;
  double t_end = 1.0;
  double ds = 1e-3;
  double s_end = 1.0;
  double h = 1e-5;
  double tol = 1e-10;
  int max_iter = 50000;
  double relax = 1.0;
  int samples = 1000;
  std::vector<double> grid_mins;
  std::vector<double> grid_maxs;
  std::vector<int> grid_counts;

  // boundary block (scalar-field): named profile plus coefficients
  std::string boundary_profile = "constant";
  std::vector<double> boundary_coeffs = {0.0};

  // initial block
  std::vector<double> x0;  // spatial position (mechanics)
  std::vector<double> p0;  // spatial momentum (mechanics)
  std::vector<double> q0;  // start point (geodesic / hj-check)
  std::vector<double> v;   // unit direction (geodesic / hj-check)

  // verify tolerances
  double constraint_tol = 1e-8;
  double energy_tol = 1e-8;
  double momentum_tol = 1e-9;
  // The field-equation residual composes two first-derivative stencils, so it
  // carries an O(h^2) truncation floor; gate it loosely by default.
  double field_tol = 0.1;
  double continuity_tol = 0.0;  // 0 disables the continuity gate
  double match_tol = 1e-8;
  double conserved_tol = 1e-8;

  static ScenarioConfig load(const std::string& path);
};

// Execute one scenario, writing its artifacts under out_dir. Returns the
// summary JSON that was written. Raises ConfigError / ConvergenceError /
// Error for the caller to map onto exit codes.
nlohmann::json run_scenario(const ScenarioConfig& config, const std::string& out_dir);

// Re-derive the residuals of a stored artifact and compare them with the
// configured tolerances. Returns the report; `pass` in the report tells
// whether every gate held.
nlohmann::json verify_data(const ScenarioConfig& config, const std::string& data_path);

const std::vector<std::string>& scenario_names();

}  // namespace gamcal
