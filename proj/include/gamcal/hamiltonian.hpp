#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gamcal/multivector.hpp"

namespace gamcal {

// Polynomial in one variable, coefficients in ascending order of power.
class Potential {
 public:
  explicit Potential(std::vector<double> coefficients);

  double operator()(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;
  const std::vector<double>& coefficients() const { return coeffs_; }

 private:
  std::vector<double> coeffs_;
};

// Orthonormal split of the configuration algebra: a unit time axis e_t for
// particle motion, or a unit motion-space blade I_x = e_1...e_D together with
// the field axis e_y = e_{D+1} and the derived momentum frame
// E_j = I_x e_j e_y for field motion.
struct SplitFrame {
  int config_dim = 0;
  int motion_dim = 0;
  Multivector time_axis;
  Multivector motion_volume;
  Multivector field_axis;
  std::vector<Multivector> momentum_frame;

  // Particle frame over R^n: e_t = e_1, spatial axes e_2..e_n.
  static SplitFrame mechanics(int config_dim);
  // Field frame over R^{D+1}: I_x = e_1...e_D, e_y = e_{D+1}.
  static SplitFrame field_theory(int motion_dim);
};

// A constraint Hamiltonian H(q, P) = 0 over points q (grade 1) and momenta P
// (grade motion_dim), with its analytic derivatives. The closures validate
// argument grades and dimensions on every call.
struct HamiltonianSpec {
  std::string kind;  // "mechanics" | "dw" | "string"
  int motion_dim = 0;
  int config_dim = 0;
  std::optional<SplitFrame> frame;
  std::optional<Potential> potential;
  double lambda_constant = 0.0;  // string tension scale, 0 elsewhere

  std::function<double(const Multivector&, const Multivector&)> value;
  std::function<Multivector(const Multivector&, const Multivector&)> grad_q_explicit;
  std::function<Multivector(const Multivector&, const Multivector&)> grad_momentum;
};

// Energy function H0(q, p) for particle mechanics with its analytic
// gradients. Its momentum dependence must be orthogonal to the time axis.
struct MechanicsSystem {
  std::function<double(const Multivector&, const Multivector&)> value;
  std::function<Multivector(const Multivector&, const Multivector&)> grad_q;
  std::function<Multivector(const Multivector&, const Multivector&)> grad_p;
};

// Kinetic-plus-potential system: H0 = |p - (p.e_t) e_t|^2 / 2 + sum over
// spatial axes of V(x_j).
MechanicsSystem separable_mechanics(const Potential& V, const SplitFrame& frame);

// H(q, P) = P . e_t + H0(q, P). Probes that e_t . dH0/dp vanishes and raises
// otherwise.
HamiltonianSpec mechanics_hamiltonian(const MechanicsSystem& h0, const SplitFrame& frame);

// De Donder-Weyl scalar field constraint:
// H(q, P) = P . I_x + (1/2) sum_j (P . E_j)^2 + V(e_y . q).
HamiltonianSpec dw_hamiltonian(const Potential& V, const SplitFrame& frame);

// Fixed-magnitude (string/geodesic) constraint H(q, P) = (|P|^2 - lambda^2)/2
// on grade-D momenta; its momentum gradient is reverse(P).
HamiltonianSpec string_hamiltonian(double lambda, int motion_dim, int config_dim);

// Build a Hamiltonian from its JSON description
// {type: "mechanics"|"dw"|"string", potential: [c0,...], lambda, dims: {n, D}}.
// Raises ConfigError on schema or range violations.
HamiltonianSpec hamiltonian_from_json(const nlohmann::json& block);

}  // namespace gamcal
