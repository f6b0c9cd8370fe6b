#include "gamcal/hamilton_jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gamcal/errors.hpp"

namespace gamcal {

namespace {

PointFunction as_point_function(const HJFunction& S) {
  PointFunction pf;
  pf.input_dim = S.config_dim;
  pf.output_dim = S.config_dim;
  pf.fn = [&S](const Multivector& q) { return S(q); };
  return pf;
}

}  // namespace

Multivector HJFunction::operator()(const Multivector& q) const {
  if (!value) throw Error("generating function: no callable value");
  if (q.dim() != config_dim) {
    throw Error("generating function: point lives in the wrong algebra");
  }
  const Multivector out = value(q);
  if (out.dim() != config_dim) {
    throw Error("generating function: value lives in the wrong algebra");
  }
  if (!is_finite(out)) throw Error("generating function: non-finite value");
  if (!out.is_zero() && !is_pure_grade(out, output_grade)) {
    throw Error("generating function: value must be pure grade " +
                std::to_string(output_grade));
  }
  return out;
}

Multivector hj_momentum(const HJFunction& S, const Multivector& q, StepSize h) {
  return grade_project(vector_derivative(as_point_function(S), q, h),
                       S.output_grade + 1);
}

double hj_residual(const HamiltonianSpec& H, const HJFunction& S, const Multivector& q,
                   StepSize h) {
  if (H.config_dim != S.config_dim) {
    throw Error("hj_residual: the Hamiltonian and the generating function live in "
                "different algebras");
  }
  if (H.motion_dim != S.output_grade + 1) {
    throw Error("hj_residual: the generating function's grade must be one below the "
                "momentum grade");
  }
  return std::abs(H.value(q, hj_momentum(S, q, h)));
}

double weyl_hj_residual(const Potential& V, const SplitFrame& frame, const HJFunction& s,
                        const Multivector& q, StepSize h) {
  if (s.config_dim != frame.config_dim || s.output_grade != 1) {
    throw Error("weyl_hj_residual: needs a vector generating field over the frame's "
                "algebra");
  }
  if (q.dim() != frame.config_dim) {
    throw Error("weyl_hj_residual: point lives in the wrong algebra");
  }
  const Multivector s_val = s(q);
  const double scale = std::max(1.0, magnitude(s_val));
  if (magnitude(outer(s_val, frame.motion_volume)) > 1e-10 * scale) {
    throw Error("weyl_hj_residual: the generating field is not parallel to the "
                "motion volume");
  }
  const PointFunction pf = as_point_function(s);
  const double div = grade_project(vector_derivative(pf, q, h), 0).scalar_part();
  const Multivector dphi_s = directional_derivative(pf, q, frame.field_axis, h);
  const double phi = inner(q, frame.field_axis).scalar_part();
  return std::abs(div + 0.5 * squared_magnitude(dphi_s) + V(phi));
}

double weyl_hj_residual(const Potential& V, const HJFunction& s, const Multivector& q,
                        StepSize h) {
  return weyl_hj_residual(V, SplitFrame::field_theory(s.config_dim - 1), s, q, h);
}

ConservedSamples conserved_quantity(const HJFunction& S, const MotionCurve& motion,
                                    int param_index) {
  if (S.output_grade != 0) {
    throw Error("conserved_quantity: needs a scalar generating function");
  }
  if (!S.param_derivative) {
    throw Error("conserved_quantity: the family has no parameter derivative");
  }
  if (param_index < 0 || param_index >= S.param_count) {
    throw Error("conserved_quantity: parameter index out of range");
  }
  motion.validate();
  if (motion.config_dim != S.config_dim) {
    throw Error("conserved_quantity: the motion lives in the wrong algebra");
  }
  ConservedSamples out;
  out.values.reserve(motion.sample_count());
  for (const Multivector& q : motion.points) {
    const Multivector d = S.param_derivative(param_index, q);
    if (!is_finite(d)) throw Error("conserved_quantity: non-finite sample");
    out.values.push_back(d.scalar_part());
  }
  const auto [lo, hi] = std::minmax_element(out.values.begin(), out.values.end());
  out.spread = *hi - *lo;
  return out;
}

MotionCurve motion_from_hj(const Multivector& q0, const Multivector& v, double s_end,
                           double ds, double lambda) {
  const int n = q0.dim();
  if (v.dim() != n) throw Error("motion_from_hj: mismatched algebras");
  if ((!is_pure_grade(q0, 1) && !q0.is_zero()) || !is_pure_grade(v, 1)) {
    throw Error("motion_from_hj: the start point and direction must be grade-1");
  }
  if (std::abs(magnitude(v) - 1.0) > 1e-12) {
    throw Error("motion_from_hj: the direction must be a unit vector");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error("motion_from_hj: the magnitude scale must be positive");
  }
  if (!(s_end > 0.0) || !(ds > 0.0)) {
    throw Error("motion_from_hj: the span and step must be positive");
  }
  const HamiltonianSpec H = string_hamiltonian(lambda, 1, n);
  const int steps = std::max(static_cast<int>(std::ceil(s_end / ds - 1e-9)), 1);
  const double step = s_end / steps;
  const Multivector p = lambda * v;

  MotionCurve motion;
  motion.config_dim = n;
  for (int i = 0; i <= steps; ++i) {
    const double s = step * i;
    const Multivector q = q0 + s * v;
    motion.tau.push_back(s);
    motion.points.push_back(q);
    motion.momenta.push_back(p);
    motion.constraint_residuals.push_back(std::abs(H.value(q, p)));
    motion.energies.push_back(magnitude(p));
  }
  motion.validate();
  return motion;
}

double hj_continuity_check(const HJFunction& S, int param_index,
                           const SimplexChain& patch) {
  if (!S.param_derivative) {
    throw Error("hj_continuity_check: the family has no parameter derivative");
  }
  if (param_index < 0 || param_index >= S.param_count) {
    throw Error("hj_continuity_check: parameter index out of range");
  }
  if (patch.ambient_dim != S.config_dim) {
    throw Error("hj_continuity_check: the patch lives in the wrong algebra");
  }
  if (patch.simplex_dim < 2) {
    throw Error("hj_continuity_check: the patch must be at least two-dimensional so "
                "its boundary closes");
  }
  const SimplexChain rim = boundary_chain(patch);
  const ChainIntegrand flux = [&S, param_index](const Multivector& measure,
                                                const Multivector& q) {
    return inner(measure, S.param_derivative(param_index, q));
  };
  return directed_integral(flux, rim).scalar_part();
}

HJFunction point_source_hj(double lambda, const Multivector& q0,
                           double exclusion_radius) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error("point_source_hj: the magnitude scale must be positive");
  }
  if (!is_pure_grade(q0, 1) && !q0.is_zero()) {
    throw Error("point_source_hj: the source must be a grade-1 point");
  }
  if (exclusion_radius < 0.0 || !std::isfinite(exclusion_radius)) {
    throw Error("point_source_hj: the exclusion radius must be non-negative");
  }
  const int n = q0.dim();

  const auto offset = [q0, exclusion_radius, n](const Multivector& q) {
    if (q.dim() != n) throw Error("point_source_hj: point lives in the wrong algebra");
    const Multivector d = q - q0;
    const double r = magnitude(d);
    if (r <= exclusion_radius || r < 1e-12) {
      throw Error("point_source_hj: evaluation inside the exclusion zone of the "
                  "source");
    }
    return d;
  };

  HJFunction S;
  S.config_dim = n;
  S.output_grade = 0;
  S.param_count = n;
  S.value = [offset, lambda, n](const Multivector& q) {
    return Multivector::scalar(n, lambda * magnitude(offset(q)));
  };
  S.param_derivative = [offset, lambda, n](int k, const Multivector& q) {
    if (k < 0 || k >= n) throw Error("point_source_hj: parameter index out of range");
    const Multivector d = offset(q);
    const double r = magnitude(d);
    const double component = d[std::uint32_t{1} << k];
    return Multivector::scalar(n, -lambda * component / r);
  };
  return S;
}

}  // namespace gamcal
