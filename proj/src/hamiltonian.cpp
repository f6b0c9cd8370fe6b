#include "gamcal/hamiltonian.hpp"

#include <cmath>

#include <json.hpp>

#include "gamcal/errors.hpp"
#include "gamcal/random.hpp"

namespace gamcal {

namespace {

void check_phase_args(const Multivector& q, const Multivector& P, int config_dim,
                      int motion_dim, const char* kind) {
  if (q.dim() != config_dim || P.dim() != config_dim) {
    throw Error(std::string(kind) + " Hamiltonian: arguments live in the wrong algebra");
  }
  if (!is_pure_grade(q, 1) && !q.is_zero()) {
    throw Error(std::string(kind) + " Hamiltonian: q must be grade-1");
  }
  if (!is_pure_grade(P, motion_dim)) {
    throw Error(std::string(kind) + " Hamiltonian: P must be grade-" +
                std::to_string(motion_dim));
  }
}

}  // namespace

Potential::Potential(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw Error("Potential: non-finite coefficient");
  }
}

double Potential::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Potential::derivative(double x) const {
  double acc = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 1;) {
    acc = acc * x + static_cast<double>(k) * coeffs_[k];
  }
  return acc;
}

double Potential::second_derivative(double x) const {
  double acc = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 2;) {
    acc = acc * x + static_cast<double>(k) * static_cast<double>(k - 1) * coeffs_[k];
  }
  return acc;
}

SplitFrame SplitFrame::mechanics(int config_dim) {
  SplitFrame f;
  f.config_dim = config_dim;
  f.motion_dim = 1;
  f.time_axis = Multivector::basis_vector(config_dim, 1);
  f.motion_volume = f.time_axis;
  f.field_axis = Multivector(config_dim);
  return f;
}

SplitFrame SplitFrame::field_theory(int motion_dim) {
  if (motion_dim < 2) {
    throw Error("field frame: motion dimension must be at least 2");
  }
  const int n = motion_dim + 1;
  SplitFrame f;
  f.config_dim = n;
  f.motion_dim = motion_dim;
  f.time_axis = Multivector(n);
  std::uint32_t mask = 0;
  for (int j = 0; j < motion_dim; ++j) mask |= std::uint32_t{1} << j;
  f.motion_volume = Multivector::basis_blade(n, mask);
  f.field_axis = Multivector::basis_vector(n, n);
  for (int j = 1; j <= motion_dim; ++j) {
    f.momentum_frame.push_back(geometric_product(
        geometric_product(f.motion_volume, Multivector::basis_vector(n, j)),
        f.field_axis));
  }
  return f;
}

MechanicsSystem separable_mechanics(const Potential& V, const SplitFrame& frame) {
  if (frame.motion_dim != 1) {
    throw Error("separable_mechanics: needs a particle frame");
  }
  const Multivector et = frame.time_axis;
  const int n = frame.config_dim;
  MechanicsSystem sys;
  sys.value = [V, et, n](const Multivector& q, const Multivector& p) {
    const Multivector p_perp = p - inner(p, et).scalar_part() * et;
    double value = 0.5 * squared_magnitude(p_perp);
    const auto x = q.vector_part();
    for (int j = 1; j < n; ++j) value += V(x[j]);
    return value;
  };
  sys.grad_q = [V, n](const Multivector& q, const Multivector&) {
    const auto x = q.vector_part();
    std::vector<double> g(n, 0.0);
    for (int j = 1; j < n; ++j) g[j] = V.derivative(x[j]);
    return Multivector::vector(n, g);
  };
  sys.grad_p = [et](const Multivector&, const Multivector& p) {
    return p - inner(p, et).scalar_part() * et;
  };
  return sys;
}

HamiltonianSpec mechanics_hamiltonian(const MechanicsSystem& h0, const SplitFrame& frame) {
  if (frame.motion_dim != 1 || frame.time_axis.is_zero()) {
    throw Error("mechanics Hamiltonian: needs a particle frame with a time axis");
  }
  if (!h0.value || !h0.grad_q || !h0.grad_p) {
    throw Error("mechanics Hamiltonian: the energy function needs value and gradients");
  }
  const int n = frame.config_dim;
  const Multivector et = frame.time_axis;

  // The theory needs H0 blind to the momentum component along e_t; probe a
  // few random phase points and refuse otherwise.
  Rng rng(0x67616d63616cull);
  for (int trial = 0; trial < 8; ++trial) {
    const Multivector q = rng.vector(n);
    const Multivector p = rng.vector(n);
    const double delta = 1e-6;
    const double up = h0.value(q, p + delta * et);
    const double down = h0.value(q, p - delta * et);
    if (std::abs(up - down) / (2.0 * delta) > 1e-6 * (1.0 + std::abs(up))) {
      throw Error("mechanics Hamiltonian: the energy function depends on the time "
                  "momentum component");
    }
  }

  HamiltonianSpec spec;
  spec.kind = "mechanics";
  spec.motion_dim = 1;
  spec.config_dim = n;
  spec.frame = frame;
  spec.value = [h0, et, n](const Multivector& q, const Multivector& P) {
    check_phase_args(q, P, n, 1, "mechanics");
    return inner(P, et).scalar_part() + h0.value(q, P);
  };
  spec.grad_q_explicit = [h0, n](const Multivector& q, const Multivector& P) {
    check_phase_args(q, P, n, 1, "mechanics");
    return h0.grad_q(q, P);
  };
  spec.grad_momentum = [h0, et, n](const Multivector& q, const Multivector& P) {
    check_phase_args(q, P, n, 1, "mechanics");
    return et + h0.grad_p(q, P);
  };
  return spec;
}

HamiltonianSpec dw_hamiltonian(const Potential& V, const SplitFrame& frame) {
  if (frame.motion_dim < 2 || frame.momentum_frame.empty()) {
    throw Error("field Hamiltonian: needs a field frame of motion dimension >= 2");
  }
  const int n = frame.config_dim;
  const int d = frame.motion_dim;
  const Multivector ix = frame.motion_volume;
  const Multivector ey = frame.field_axis;
  const std::vector<Multivector> frame_e = frame.momentum_frame;

  HamiltonianSpec spec;
  spec.kind = "dw";
  spec.motion_dim = d;
  spec.config_dim = n;
  spec.frame = frame;
  spec.potential = V;
  spec.value = [V, ix, ey, frame_e, n, d](const Multivector& q, const Multivector& P) {
    check_phase_args(q, P, n, d, "field");
    double value = inner(P, ix).scalar_part();
    for (const Multivector& ej : frame_e) {
      const double pj = inner(P, ej).scalar_part();
      value += 0.5 * pj * pj;
    }
    return value + V(inner(q, ey).scalar_part());
  };
  spec.grad_q_explicit = [V, ey, n, d](const Multivector& q, const Multivector& P) {
    check_phase_args(q, P, n, d, "field");
    return V.derivative(inner(q, ey).scalar_part()) * ey;
  };
  spec.grad_momentum = [ix, frame_e, n, d](const Multivector& q, const Multivector& P) {
    check_phase_args(q, P, n, d, "field");
    Multivector g = ix;
    for (const Multivector& ej : frame_e) {
      g += inner(P, ej).scalar_part() * ej;
    }
    return g;
  };
  return spec;
}

HamiltonianSpec string_hamiltonian(double lambda, int motion_dim, int config_dim) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error("string Hamiltonian: the magnitude scale must be positive");
  }
  if (motion_dim < 1 || motion_dim >= config_dim) {
    throw Error("string Hamiltonian: motion dimension must lie in [1, n)");
  }
  HamiltonianSpec spec;
  spec.kind = "string";
  spec.motion_dim = motion_dim;
  spec.config_dim = config_dim;
  spec.lambda_constant = lambda;
  spec.value = [lambda, config_dim, motion_dim](const Multivector& q,
                                                const Multivector& P) {
    check_phase_args(q, P, config_dim, motion_dim, "string");
    return 0.5 * (squared_magnitude(P) - lambda * lambda);
  };
  spec.grad_q_explicit = [config_dim, motion_dim](const Multivector& q,
                                                  const Multivector& P) {
    check_phase_args(q, P, config_dim, motion_dim, "string");
    return Multivector(config_dim);
  };
  spec.grad_momentum = [config_dim, motion_dim](const Multivector& q,
                                                const Multivector& P) {
    check_phase_args(q, P, config_dim, motion_dim, "string");
    return reverse(P);
  };
  return spec;
}

HamiltonianSpec hamiltonian_from_json(const nlohmann::json& block) {
  if (!block.is_object()) throw ConfigError("hamiltonian block must be an object");
  if (!block.contains("type") || !block.at("type").is_string()) {
    throw ConfigError("hamiltonian block needs a string 'type'");
  }
  const std::string type = block.at("type").get<std::string>();
  if (!block.contains("dims") || !block.at("dims").is_object()) {
    throw ConfigError("hamiltonian block needs a 'dims' object {n, D}");
  }
  const auto& dims = block.at("dims");
  if (!dims.contains("n") || !dims.contains("D")) {
    throw ConfigError("hamiltonian dims need fields 'n' and 'D'");
  }
  const int n = dims.at("n").get<int>();
  const int d = dims.at("D").get<int>();
  if (n < 2 || n > 8) throw ConfigError("hamiltonian dims: n must lie in [2, 8]");
  if (d < 1 || d >= n) throw ConfigError("hamiltonian dims: D must lie in [1, n)");

  std::vector<double> coeffs = {0.0};
  if (block.contains("potential")) {
    if (!block.at("potential").is_array()) {
      throw ConfigError("hamiltonian potential must be an array of coefficients");
    }
    coeffs = block.at("potential").get<std::vector<double>>();
    if (coeffs.empty()) coeffs = {0.0};
  }

  if (type == "mechanics") {
    if (d != 1) throw ConfigError("mechanics needs D = 1");
    const SplitFrame frame = SplitFrame::mechanics(n);
    const Potential V(coeffs);
    HamiltonianSpec spec = mechanics_hamiltonian(separable_mechanics(V, frame), frame);
    spec.potential = V;
    return spec;
  }
  if (type == "dw") {
    if (n != d + 1) throw ConfigError("the field Hamiltonian needs n = D + 1");
    return dw_hamiltonian(Potential(coeffs), SplitFrame::field_theory(d));
  }
  if (type == "string") {
    if (!block.contains("lambda")) {
      throw ConfigError("the string Hamiltonian needs a 'lambda'");
    }
    const double lambda = block.at("lambda").get<double>();
    if (!(lambda > 0.0)) throw ConfigError("the string Hamiltonian needs lambda > 0");
    return string_hamiltonian(lambda, d, n);
  }
  throw ConfigError("unknown hamiltonian type '" + type +
                    "' (expected mechanics, dw, or string)");
}

}  // namespace gamcal
