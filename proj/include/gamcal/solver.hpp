#pragma once

#include <functional>
#include <vector>

#include "gamcal/chain.hpp"
#include "gamcal/hamiltonian.hpp"
#include "gamcal/multivector.hpp"

namespace gamcal {

// Sampled particle motion: uniformly spaced parameter values with the point,
// momentum, constraint residual |H|, and energy recorded at each sample.
struct MotionCurve {
  int config_dim = 0;
  std::vector<double> tau;
  std::vector<Multivector> points;
  std::vector<Multivector> momenta;
  std::vector<double> constraint_residuals;
  std::vector<double> energies;

  std::size_t sample_count() const { return tau.size(); }
  // Checks matching lengths, strictly increasing tau, and finite entries.
  void validate() const;
};

// Uniform tensor grid over a box in motion space carrying the field value phi
// and, after a solve, the derived momenta pi_j = e_j . d phi per node.
struct FieldGrid {
  std::vector<double> mins;
  std::vector<double> spacings;
  std::vector<int> counts;
  std::vector<double> phi;
  std::vector<std::vector<double>> momenta;

  static FieldGrid make(const std::vector<double>& mins,
                        const std::vector<double>& maxs,
                        const std::vector<int>& counts);

  int axes() const { return static_cast<int>(counts.size()); }
  int node_count() const;
  int stride(int axis) const;
  std::vector<int> unravel(int node) const;
  int ravel(const std::vector<int>& idx) const;
  bool on_boundary(const std::vector<int>& idx) const;
  std::vector<double> coordinates(const std::vector<int>& idx) const;

  // Assign phi on boundary nodes from a coordinate function; interior nodes
  // keep their current values (zero for a fresh grid).
  void set_dirichlet(const std::function<double(const std::vector<double>&)>& value);

  // Second-order derivative of a nodal array along one axis: central inside,
  // one-sided three-point at the faces.
  std::vector<double> derivative(const std::vector<double>& values, int axis) const;
};

// Structured quadrilateral point grid on a parametric surface patch in R^n.
struct SurfaceMesh {
  int config_dim = 0;
  int nu = 0;
  int nv = 0;
  std::vector<Multivector> points;  // row-major, nu rows by nv columns

  static SurfaceMesh from_map(
      int dim, const std::function<std::vector<double>(double, double)>& embed,
      double u0, double u1, double v0, double v1, int nu, int nv);

  const Multivector& at(int iu, int iv) const { return points[iu * nv + iv]; }

  // Unit tangent 2-blade by central differences in the mesh parameters.
  // Defined away from the outer ring; raises on a degenerate tangent pair.
  Multivector unit_tangent_blade(int iu, int iv) const;
};

// Energy-momentum components T_jk per grid node, row-major in (j, k).
struct EnergyMomentumField {
  int axes = 0;
  std::vector<int> counts;
  std::vector<double> spacings;
  std::vector<double> values;  // node-major, then j*axes + k

  double at(int node, int j, int k) const {
    return values[static_cast<std::size_t>(node) * axes * axes + j * axes + k];
  }
};

// Integrate the particle form of the canonical equations with classical RK4:
// dx/dt = dH0/dp, dp/dt = -dH0/dq (the time component of p evolves with the
// explicit time dependence of H0). q0 must satisfy H(q0, p0) = 0; use
// with_constraint_momentum to complete a spatial momentum.
MotionCurve solve_mechanics(const HamiltonianSpec& H, const Multivector& q0,
                            const Multivector& p0, double t_end, double dt);

// Completes a spatial momentum with the time component -H0(q, p) so the
// constraint holds exactly at the initial point.
Multivector with_constraint_momentum(const HamiltonianSpec& H, const Multivector& q,
                                     const Multivector& p_spatial);

// Damped nonlinear Gauss-Seidel relaxation of the static field reduction
// laplacian(phi) = -V'(phi) with Dirichlet data from the grid's boundary
// nodes. Raises ConvergenceError when max_iter sweeps leave the residual
// above tol. Momenta are filled from the converged field.
FieldGrid solve_scalar_field(const HamiltonianSpec& H, FieldGrid grid, double tol,
                             int max_iter, double relax = 1.0);

// Straight-line motion dq/ds = v, dv/ds = 0 with momenta lambda * v for the
// fixed-magnitude constraint; v must be a unit vector.
MotionCurve solve_geodesic(const HamiltonianSpec& H, const Multivector& q0,
                           const Multivector& v0, double s_end, double ds);

// Max over samples of |H(q_i, p_i)|.
double constraint_residual(const HamiltonianSpec& H, const MotionCurve& motion);

// Max over nodes of |H(q, P)| with P assembled from the stored momenta and
// the motion-volume component derived from the field through the constraint;
// zero exactly when the stored momenta match the field derivatives.
double constraint_residual(const HamiltonianSpec& H, const FieldGrid& grid);

// Residuals of the field-theory reduction: max |pi_j - d_j phi| over nodes
// and max |sum_j d_j pi_j + V'(phi)| over interior nodes.
struct FieldResiduals {
  double momentum_relation = 0.0;
  double field_equation = 0.0;
};
FieldResiduals dw_residuals(const FieldGrid& grid, const Potential& V);

// T_jk = -delta_jk L + (d_j phi)(d_k phi) with L = |d phi|^2 / 2 - V(phi).
EnergyMomentumField energy_momentum_tensor(const FieldGrid& grid, const Potential& V);

// Max over rows j and deep-interior nodes of |sum_k d_k T_jk| by central
// differences.
double continuity_residual(const EnergyMomentumField& T);

// Pointwise norm of (I . d) . I for the mesh's unit tangent blade field I,
// evaluated where every stencil stays on central differences. For a minimal
// surface this vanishes; for a sphere of radius R it approaches 2/R.
struct SpurField {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;
  double max_value = 0.0;
};
SpurField spur_residual(const SurfaceMesh& mesh);

// Curve analogue |(t . d) t| (the curvature magnitude) from sampled points.
double curve_spur_residual(const std::vector<Multivector>& points);

// Directed action integral of P . dGamma over the sampled motion, midpoint
// momenta per segment.
double action_value(const MotionCurve& motion);

// Directed area action lambda * integral of |dGamma| over the triangulated
// mesh (the fixed-magnitude momentum aligned with the tangent blade).
double action_value(const SurfaceMesh& mesh, double lambda);

// Max over samples of |energy_i - energy_0|.
double energy_drift(const MotionCurve& motion);

// Two triangles per mesh quad, consistently oriented.
SimplexChain mesh_to_chain(const SurfaceMesh& mesh);

}  // namespace gamcal
