#pragma once

#include <functional>

#include "gamcal/calculus.hpp"
#include "gamcal/chain.hpp"
#include "gamcal/hamiltonian.hpp"
#include "gamcal/multivector.hpp"
#include "gamcal/solver.hpp"

namespace gamcal {

// Generating function S(q) of pure grade output_grade (motion dimension
// minus one), optionally parametrized by a family of scalars alpha with the
// derivative dS/d alpha_k supplied as a callable.
struct HJFunction {
  int config_dim = 0;
  int output_grade = 0;
  std::function<Multivector(const Multivector&)> value;

  int param_count = 0;
  std::function<Multivector(int, const Multivector&)> param_derivative;

  Multivector operator()(const Multivector& q) const;
};

// Momentum candidate: the grade (output_grade + 1) part of the vector
// derivative of S (the curl d ^ S; the gradient when S is scalar).
Multivector hj_momentum(const HJFunction& S, const Multivector& q,
                        StepSize h = StepSize{});

// |H(q, d ^ S)|: how far S is from generating a motion of H at q.
double hj_residual(const HamiltonianSpec& H, const HJFunction& S, const Multivector& q,
                   StepSize h = StepSize{});

// Residual of the reduced field-theory characteristic equation
// |d . s + (1/2) (d_phi s)^2 + V(phi)| for a vector generating field s
// parallel to the frame's motion volume; phi = e_y . q and d_phi = e_y . d.
double weyl_hj_residual(const Potential& V, const SplitFrame& frame, const HJFunction& s,
                        const Multivector& q, StepSize h = StepSize{});
// Same with the standard field frame inferred from s (D = config_dim - 1).
double weyl_hj_residual(const Potential& V, const HJFunction& s, const Multivector& q,
                        StepSize h = StepSize{});

// Samples of dS/d alpha_k along a motion; on a motion generated by S the
// samples are constant. spread = max - min.
struct ConservedSamples {
  std::vector<double> values;
  double spread = 0.0;
};
ConservedSamples conserved_quantity(const HJFunction& S, const MotionCurve& motion,
                                    int param_index);

// Straight-line motion induced by a point-source generating family: points
// q0 + s v with momenta lambda v. v must be a unit vector.
MotionCurve motion_from_hj(const Multivector& q0, const Multivector& v, double s_end,
                           double ds, double lambda);

// Boundary integral of dSigma . (dS/d alpha_k) over the oriented boundary of
// a D-dimensional patch; near zero at second order when S generates the
// motion the patch samples.
double hj_continuity_check(const HJFunction& S, int param_index,
                           const SimplexChain& patch);

// The family S = lambda |q - q0| with parameters q0 (one per coordinate) and
// its closed-form parameter derivatives. Evaluation inside the given
// exclusion radius of the source raises, keeping finite differences away
// from the singular point.
HJFunction point_source_hj(double lambda, const Multivector& q0,
                           double exclusion_radius);

}  // namespace gamcal
