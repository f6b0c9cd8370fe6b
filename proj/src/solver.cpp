#include "gamcal/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "gamcal/errors.hpp"

namespace gamcal {

namespace {

int steps_for(double span, double step, const char* what) {
  if (!(span > 0.0) || !std::isfinite(span)) {
    throw Error(std::string(what) + ": the integration span must be positive");
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(std::string(what) + ": the step must be positive");
  }
  const int n = static_cast<int>(std::ceil(span / step - 1e-9));
  return std::max(n, 1);
}

void require_point(const Multivector& q, int dim, const char* what) {
  if (q.dim() != dim) {
    throw Error(std::string(what) + ": point lives in the wrong algebra");
  }
  if (!is_pure_grade(q, 1) && !q.is_zero()) {
    throw Error(std::string(what) + ": point must be grade-1");
  }
}

}  // namespace

void MotionCurve::validate() const {
  const std::size_t n = tau.size();
  if (n == 0) throw Error("motion curve: no samples");
  if (points.size() != n || momenta.size() != n || constraint_residuals.size() != n ||
      energies.size() != n) {
    throw Error("motion curve: sample arrays have mismatched lengths");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(tau[i]) || !std::isfinite(constraint_residuals[i]) ||
        !std::isfinite(energies[i])) {
      throw Error("motion curve: non-finite sample data");
    }
    if (i > 0 && !(tau[i] > tau[i - 1])) {
      throw Error("motion curve: parameter values must increase");
    }
    if (points[i].dim() != config_dim || momenta[i].dim() != config_dim) {
      throw Error("motion curve: sample lives in the wrong algebra");
    }
    if (!is_finite(points[i]) || !is_finite(momenta[i])) {
      throw Error("motion curve: non-finite sample data");
    }
  }
}

FieldGrid FieldGrid::make(const std::vector<double>& mins,
                          const std::vector<double>& maxs,
                          const std::vector<int>& counts) {
  const std::size_t d = counts.size();
  if (d == 0) throw Error("field grid: no axes");
  if (mins.size() != d || maxs.size() != d) {
    throw Error("field grid: mins/maxs/counts have mismatched lengths");
  }
  FieldGrid g;
  g.mins = mins;
  g.counts = counts;
  g.spacings.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    if (counts[k] < 3) throw Error("field grid: each axis needs at least 3 nodes");
    if (!(maxs[k] > mins[k]) || !std::isfinite(mins[k]) || !std::isfinite(maxs[k])) {
      throw Error("field grid: each axis needs max > min");
    }
    g.spacings[k] = (maxs[k] - mins[k]) / (counts[k] - 1);
  }
  g.phi.assign(static_cast<std::size_t>(g.node_count()), 0.0);
  return g;
}

int FieldGrid::node_count() const {
  int n = 1;
  for (int c : counts) n *= c;
  return n;
}

int FieldGrid::stride(int axis) const {
  int s = 1;
  for (int k = axes() - 1; k > axis; --k) s *= counts[k];
  return s;
}

std::vector<int> FieldGrid::unravel(int node) const {
  std::vector<int> idx(axes());
  for (int k = axes() - 1; k >= 0; --k) {
    idx[k] = node % counts[k];
    node /= counts[k];
  }
  return idx;
}

int FieldGrid::ravel(const std::vector<int>& idx) const {
  int node = 0;
  for (int k = 0; k < axes(); ++k) node = node * counts[k] + idx[k];
  return node;
}

bool FieldGrid::on_boundary(const std::vector<int>& idx) const {
  for (int k = 0; k < axes(); ++k) {
    if (idx[k] == 0 || idx[k] == counts[k] - 1) return true;
  }
  return false;
}

std::vector<double> FieldGrid::coordinates(const std::vector<int>& idx) const {
  std::vector<double> x(axes());
  for (int k = 0; k < axes(); ++k) x[k] = mins[k] + spacings[k] * idx[k];
  return x;
}

void FieldGrid::set_dirichlet(
    const std::function<double(const std::vector<double>&)>& value) {
  const int n = node_count();
  for (int node = 0; node < n; ++node) {
    const auto idx = unravel(node);
    if (!on_boundary(idx)) continue;
    const double v = value(coordinates(idx));
    if (!std::isfinite(v)) throw Error("field grid: non-finite boundary value");
    phi[node] = v;
  }
}

std::vector<double> FieldGrid::derivative(const std::vector<double>& values,
                                          int axis) const {
  if (axis < 0 || axis >= axes()) throw Error("field grid: axis out of range");
  const int n = node_count();
  if (static_cast<int>(values.size()) != n) {
    throw Error("field grid: nodal array has the wrong length");
  }
  const int s = stride(axis);
  const int m = counts[axis];
  const double h = spacings[axis];
  std::vector<double> out(values.size());
  for (int node = 0; node < n; ++node) {
    const int i = (node / s) % m;
    if (i == 0) {
      out[node] =
          (-3.0 * values[node] + 4.0 * values[node + s] - values[node + 2 * s]) /
          (2.0 * h);
    } else if (i == m - 1) {
      out[node] =
          (3.0 * values[node] - 4.0 * values[node - s] + values[node - 2 * s]) /
          (2.0 * h);
    } else {
      out[node] = (values[node + s] - values[node - s]) / (2.0 * h);
    }
  }
  return out;
}

SurfaceMesh SurfaceMesh::from_map(
    int dim, const std::function<std::vector<double>(double, double)>& embed,
    double u0, double u1, double v0, double v1, int nu, int nv) {
  if (nu < 2 || nv < 2) throw Error("surface mesh: need at least 2 samples per axis");
  if (!(u1 > u0) || !(v1 > v0)) throw Error("surface mesh: empty parameter box");
  SurfaceMesh mesh;
  mesh.config_dim = dim;
  mesh.nu = nu;
  mesh.nv = nv;
  mesh.points.reserve(static_cast<std::size_t>(nu) * nv);
  for (int iu = 0; iu < nu; ++iu) {
    const double u = u0 + (u1 - u0) * iu / (nu - 1);
    for (int iv = 0; iv < nv; ++iv) {
      const double v = v0 + (v1 - v0) * iv / (nv - 1);
      const auto coords = embed(u, v);
      if (static_cast<int>(coords.size()) != dim) {
        throw Error("surface mesh: embedding returned the wrong number of coordinates");
      }
      mesh.points.push_back(Multivector::vector(dim, coords));
    }
  }
  return mesh;
}

Multivector SurfaceMesh::unit_tangent_blade(int iu, int iv) const {
  if (iu < 1 || iu > nu - 2 || iv < 1 || iv > nv - 2) {
    throw Error("surface mesh: tangent blade needs interior indices");
  }
  const Multivector tu = 0.5 * (at(iu + 1, iv) - at(iu - 1, iv));
  const Multivector tv = 0.5 * (at(iu, iv + 1) - at(iu, iv - 1));
  const Multivector blade = outer(tu, tv);
  const double norm = magnitude(blade);
  const double scale = magnitude(tu) * magnitude(tv);
  if (norm <= 1e-12 * std::max(scale, 1e-30)) {
    throw Error("surface mesh: degenerate tangent pair");
  }
  return blade / norm;
}

MotionCurve solve_mechanics(const HamiltonianSpec& H, const Multivector& q0,
                            const Multivector& p0, double t_end, double dt) {
  if (!H.frame.has_value() || H.frame->motion_dim != 1 ||
      H.frame->time_axis.is_zero()) {
    throw Error("solve_mechanics: needs a particle Hamiltonian with a time axis");
  }
  const int n = H.config_dim;
  require_point(q0, n, "solve_mechanics");
  require_point(p0, n, "solve_mechanics");
  const Multivector et = H.frame->time_axis;

  const double initial = H.value(q0, p0);
  if (std::abs(initial) > 1e-9 * (1.0 + squared_magnitude(p0))) {
    throw Error("solve_mechanics: the initial point violates the constraint "
                "(|H| = " + std::to_string(std::abs(initial)) +
                "); complete the momentum with with_constraint_momentum");
  }

  const int steps = steps_for(t_end, dt, "solve_mechanics");
  const double step = t_end / steps;

  MotionCurve motion;
  motion.config_dim = n;
  motion.tau.reserve(steps + 1);
  motion.points.reserve(steps + 1);
  motion.momenta.reserve(steps + 1);
  motion.constraint_residuals.reserve(steps + 1);
  motion.energies.reserve(steps + 1);

  const auto record = [&](double t, const Multivector& q, const Multivector& p) {
    motion.tau.push_back(t);
    motion.points.push_back(q);
    motion.momenta.push_back(p);
    motion.constraint_residuals.push_back(std::abs(H.value(q, p)));
    // the instantaneous energy H0 = H - p.e_t, measured rather than copied
    // from the conserved time momentum
    motion.energies.push_back(H.value(q, p) - inner(p, et).scalar_part());
  };

  Multivector q = q0;
  Multivector p = p0;
  record(0.0, q, p);
  for (int i = 0; i < steps; ++i) {
    const auto fq = [&H](const Multivector& qq, const Multivector& pp) {
      return H.grad_momentum(qq, pp);
    };
    const auto fp = [&H](const Multivector& qq, const Multivector& pp) {
      return -H.grad_q_explicit(qq, pp);
    };
    const Multivector k1q = fq(q, p), k1p = fp(q, p);
    const Multivector q2 = q + 0.5 * step * k1q, p2 = p + 0.5 * step * k1p;
    const Multivector k2q = fq(q2, p2), k2p = fp(q2, p2);
    const Multivector q3 = q + 0.5 * step * k2q, p3 = p + 0.5 * step * k2p;
    const Multivector k3q = fq(q3, p3), k3p = fp(q3, p3);
    const Multivector q4 = q + step * k3q, p4 = p + step * k3p;
    const Multivector k4q = fq(q4, p4), k4p = fp(q4, p4);
    q += (step / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    p += (step / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    if (!is_finite(q) || !is_finite(p)) {
      throw Error("solve_mechanics: the state diverged at step " + std::to_string(i));
    }
    record(step * (i + 1), q, p);
  }
  motion.validate();
  return motion;
}

Multivector with_constraint_momentum(const HamiltonianSpec& H, const Multivector& q,
                                     const Multivector& p_spatial) {
  if (!H.frame.has_value() || H.frame->motion_dim != 1 ||
      H.frame->time_axis.is_zero()) {
    throw Error("with_constraint_momentum: needs a particle Hamiltonian");
  }
  require_point(q, H.config_dim, "with_constraint_momentum");
  require_point(p_spatial, H.config_dim, "with_constraint_momentum");
  const Multivector et = H.frame->time_axis;
  const Multivector p_perp = p_spatial - inner(p_spatial, et).scalar_part() * et;
  const double h0 = H.value(q, p_perp);  // time component zero => value is H0
  return p_perp - h0 * et;
}

FieldGrid solve_scalar_field(const HamiltonianSpec& H, FieldGrid grid, double tol,
                             int max_iter, double relax) {
  if (H.kind != "dw" || !H.potential.has_value()) {
    throw Error("solve_scalar_field: needs a field Hamiltonian with a potential");
  }
  if (grid.axes() != H.motion_dim) {
    throw Error("solve_scalar_field: grid axes do not match the motion dimension");
  }
  if (!(tol > 0.0)) throw Error("solve_scalar_field: tolerance must be positive");
  if (max_iter < 1) throw Error("solve_scalar_field: max_iter must be positive");
  if (!(relax > 0.0) || !(relax < 2.0)) {
    throw Error("solve_scalar_field: relaxation factor must lie in (0, 2)");
  }

  const Potential& V = *H.potential;
  const int d = grid.axes();
  const int n = grid.node_count();
  std::vector<int> strides(d);
  std::vector<double> inv_h2(d);
  double diag = 0.0;
  for (int k = 0; k < d; ++k) {
    strides[k] = grid.stride(k);
    inv_h2[k] = 1.0 / (grid.spacings[k] * grid.spacings[k]);
    diag += 2.0 * inv_h2[k];
  }
  std::vector<char> interior(n, 0);
  std::vector<int> interior_nodes;
  for (int node = 0; node < n; ++node) {
    if (!grid.on_boundary(grid.unravel(node))) {
      interior[node] = 1;
      interior_nodes.push_back(node);
    }
  }

  // residual of the discrete field equation at one node
  const auto residual_at = [&](int node) {
    double lap = 0.0;
    for (int k = 0; k < d; ++k) {
      lap += (grid.phi[node + strides[k]] - 2.0 * grid.phi[node] +
              grid.phi[node - strides[k]]) *
             inv_h2[k];
    }
    return lap + V.derivative(grid.phi[node]);
  };

  double last_residual = 0.0;
  for (int sweep = 1; sweep <= max_iter; ++sweep) {
    for (int node : interior_nodes) {
      const double r = residual_at(node);
      const double denom = diag - V.second_derivative(grid.phi[node]);
      if (!(std::abs(denom) > 1e-12)) {
        throw Error("solve_scalar_field: the relaxation denominator vanished");
      }
      grid.phi[node] += relax * r / denom;
    }
    last_residual = 0.0;
    for (int node : interior_nodes) {
      last_residual = std::max(last_residual, std::abs(residual_at(node)));
    }
    if (!std::isfinite(last_residual)) {
      throw Error("solve_scalar_field: the field diverged");
    }
    if (last_residual <= tol) {
      grid.momenta.clear();
      for (int k = 0; k < d; ++k) grid.momenta.push_back(grid.derivative(grid.phi, k));
      return grid;
    }
  }
  throw ConvergenceError("solve_scalar_field: residual " +
                             std::to_string(last_residual) + " after " +
                             std::to_string(max_iter) + " sweeps (tol " +
                             std::to_string(tol) + ")",
                         last_residual, max_iter);
}

MotionCurve solve_geodesic(const HamiltonianSpec& H, const Multivector& q0,
                           const Multivector& v0, double s_end, double ds) {
  if (H.kind != "string" || H.motion_dim != 1) {
    throw Error("solve_geodesic: needs a fixed-magnitude Hamiltonian on vector momenta");
  }
  const int n = H.config_dim;
  require_point(q0, n, "solve_geodesic");
  require_point(v0, n, "solve_geodesic");
  if (std::abs(magnitude(v0) - 1.0) > 1e-12) {
    throw Error("solve_geodesic: the direction must be a unit vector");
  }
  const double lambda = H.lambda_constant;
  const int steps = steps_for(s_end, ds, "solve_geodesic");
  const double step = s_end / steps;
  const Multivector p = lambda * v0;

  MotionCurve motion;
  motion.config_dim = n;
  for (int i = 0; i <= steps; ++i) {
    const double s = step * i;
    const Multivector q = q0 + s * v0;
    motion.tau.push_back(s);
    motion.points.push_back(q);
    motion.momenta.push_back(p);
    motion.constraint_residuals.push_back(std::abs(H.value(q, p)));
    motion.energies.push_back(magnitude(p));
  }
  motion.validate();
  return motion;
}

double constraint_residual(const HamiltonianSpec& H, const MotionCurve& motion) {
  motion.validate();
  double worst = 0.0;
  for (std::size_t i = 0; i < motion.sample_count(); ++i) {
    worst = std::max(worst, std::abs(H.value(motion.points[i], motion.momenta[i])));
  }
  return worst;
}

double constraint_residual(const HamiltonianSpec& H, const FieldGrid& grid) {
  if (H.kind != "dw" || !H.frame.has_value() || !H.potential.has_value()) {
    throw Error("constraint_residual: needs a field Hamiltonian");
  }
  const SplitFrame& frame = *H.frame;
  const int d = grid.axes();
  if (d != frame.motion_dim) {
    throw Error("constraint_residual: grid axes do not match the motion dimension");
  }
  if (static_cast<int>(grid.momenta.size()) != d) {
    throw Error("constraint_residual: the grid carries no momenta");
  }
  const int n_nodes = grid.node_count();
  for (const auto& column : grid.momenta) {
    if (static_cast<int>(column.size()) != n_nodes) {
      throw Error("constraint_residual: momentum column has the wrong length");
    }
  }
  const Potential& V = *H.potential;

  // True field gradients fix the motion-volume component of P through the
  // constraint; the stored momenta fill the rest. Any disagreement between
  // the two shows up as a nonzero Hamiltonian value.
  std::vector<std::vector<double>> grads;
  for (int k = 0; k < d; ++k) grads.push_back(grid.derivative(grid.phi, k));

  const Multivector ix_rev = reverse(frame.motion_volume);
  std::vector<Multivector> frame_rev;
  for (const auto& ej : frame.momentum_frame) frame_rev.push_back(reverse(ej));

  double worst = 0.0;
  for (int node = 0; node < n_nodes; ++node) {
    const auto idx = grid.unravel(node);
    const auto x = grid.coordinates(idx);
    std::vector<double> q_coords(frame.config_dim, 0.0);
    for (int k = 0; k < d; ++k) q_coords[k] = x[k];
    q_coords[d] = grid.phi[node];
    const Multivector q = Multivector::vector(frame.config_dim, q_coords);

    double kinetic = 0.0;
    for (int k = 0; k < d; ++k) kinetic += 0.5 * grads[k][node] * grads[k][node];
    Multivector P = -(kinetic + V(grid.phi[node])) * ix_rev;
    for (int k = 0; k < d; ++k) P += grid.momenta[k][node] * frame_rev[k];

    worst = std::max(worst, std::abs(H.value(q, P)));
  }
  return worst;
}

FieldResiduals dw_residuals(const FieldGrid& grid, const Potential& V) {
  const int d = grid.axes();
  const int n = grid.node_count();
  if (static_cast<int>(grid.momenta.size()) != d) {
    throw Error("dw_residuals: the grid carries no momenta");
  }
  FieldResiduals out;
  std::vector<std::vector<double>> divergences;
  for (int k = 0; k < d; ++k) {
    const auto grad_k = grid.derivative(grid.phi, k);
    for (int node = 0; node < n; ++node) {
      out.momentum_relation =
          std::max(out.momentum_relation, std::abs(grid.momenta[k][node] - grad_k[node]));
    }
    divergences.push_back(grid.derivative(grid.momenta[k], k));
  }
  for (int node = 0; node < n; ++node) {
    const auto idx = grid.unravel(node);
    if (grid.on_boundary(idx)) continue;
    double div = 0.0;
    for (int k = 0; k < d; ++k) div += divergences[k][node];
    out.field_equation =
        std::max(out.field_equation, std::abs(div + V.derivative(grid.phi[node])));
  }
  return out;
}

EnergyMomentumField energy_momentum_tensor(const FieldGrid& grid, const Potential& V) {
  const int d = grid.axes();
  const int n = grid.node_count();
  std::vector<std::vector<double>> grads;
  for (int k = 0; k < d; ++k) grads.push_back(grid.derivative(grid.phi, k));

  EnergyMomentumField T;
  T.axes = d;
  T.counts = grid.counts;
  T.spacings = grid.spacings;
  T.values.assign(static_cast<std::size_t>(n) * d * d, 0.0);
  for (int node = 0; node < n; ++node) {
    double kinetic = 0.0;
    for (int k = 0; k < d; ++k) kinetic += 0.5 * grads[k][node] * grads[k][node];
    const double lagrangian = kinetic - V(grid.phi[node]);
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        double t = grads[j][node] * grads[k][node];
        if (j == k) t -= lagrangian;
        T.values[static_cast<std::size_t>(node) * d * d + j * d + k] = t;
      }
    }
  }
  return T;
}

double continuity_residual(const EnergyMomentumField& T) {
  const int d = T.axes;
  int n = 1;
  for (int c : T.counts) n *= c;
  std::vector<int> strides(d);
  for (int k = 0; k < d; ++k) {
    int s = 1;
    for (int m = d - 1; m > k; --m) s *= T.counts[m];
    strides[k] = s;
  }
  const auto unravel = [&](int node) {
    std::vector<int> idx(d);
    for (int k = d - 1; k >= 0; --k) {
      idx[k] = node % T.counts[k];
      node /= T.counts[k];
    }
    return idx;
  };

  for (int depth = 2; depth >= 1; --depth) {
    double worst = 0.0;
    int used = 0;
    for (int node = 0; node < n; ++node) {
      const auto idx = unravel(node);
      bool inside = true;
      for (int k = 0; k < d; ++k) {
        if (idx[k] < depth || idx[k] > T.counts[k] - 1 - depth) inside = false;
      }
      if (!inside) continue;
      ++used;
      for (int j = 0; j < d; ++j) {
        double div = 0.0;
        for (int k = 0; k < d; ++k) {
          div += (T.at(node + strides[k], j, k) - T.at(node - strides[k], j, k)) /
                 (2.0 * T.spacings[k]);
        }
        worst = std::max(worst, std::abs(div));
      }
    }
    if (used >= 3) return worst;
  }
  throw Error("continuity_residual: the grid is too small for an interior estimate");
}

SpurField spur_residual(const SurfaceMesh& mesh) {
  if (mesh.nu < 5 || mesh.nv < 5) {
    throw Error("spur_residual: the mesh is too small for an interior estimate");
  }
  SpurField out;
  out.rows = mesh.nu - 4;
  out.cols = mesh.nv - 4;
  out.values.assign(static_cast<std::size_t>(out.rows) * out.cols, 0.0);

  for (int iu = 2; iu <= mesh.nu - 3; ++iu) {
    for (int iv = 2; iv <= mesh.nv - 3; ++iv) {
      // index-space tangents and the matching index-space derivatives of the
      // unit tangent blade field
      const Multivector tu = 0.5 * (mesh.at(iu + 1, iv) - mesh.at(iu - 1, iv));
      const Multivector tv = 0.5 * (mesh.at(iu, iv + 1) - mesh.at(iu, iv - 1));
      const Multivector dIdu = 0.5 * (mesh.unit_tangent_blade(iu + 1, iv) -
                                      mesh.unit_tangent_blade(iu - 1, iv));
      const Multivector dIdv = 0.5 * (mesh.unit_tangent_blade(iu, iv + 1) -
                                      mesh.unit_tangent_blade(iu, iv - 1));

      // orthonormal tangent directions with their derivative combinations
      const double tu_norm = magnitude(tu);
      if (tu_norm <= 1e-14) throw Error("spur_residual: degenerate mesh tangent");
      const Multivector u1 = tu / tu_norm;
      const Multivector d1 = dIdu / tu_norm;
      const double c = inner(tv, u1).scalar_part() / tu_norm;  // tv . tu / |tu|^2
      const Multivector w = tv - (c * tu_norm) * u1;
      const double w_norm = magnitude(w);
      if (w_norm <= 1e-14) throw Error("spur_residual: degenerate mesh tangent");
      const Multivector u2 = w / w_norm;
      const Multivector d2 = (dIdv - c * dIdu) / w_norm;

      const Multivector blade = mesh.unit_tangent_blade(iu, iv);
      const Multivector spur =
          inner(inner(blade, u1), d1) + inner(inner(blade, u2), d2);
      out.values[static_cast<std::size_t>(iu - 2) * out.cols + (iv - 2)] =
          magnitude(spur);
    }
  }
  for (double v : out.values) out.max_value = std::max(out.max_value, v);
  return out;
}

double curve_spur_residual(const std::vector<Multivector>& points) {
  const std::size_t n = points.size();
  if (n < 5) throw Error("curve_spur_residual: need at least 5 samples");
  std::vector<Multivector> tangents;
  tangents.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || i + 1 == n) {
      tangents.push_back(Multivector(points[0].dim()));
      continue;
    }
    const Multivector t = 0.5 * (points[i + 1] - points[i - 1]);
    const double norm = magnitude(t);
    if (norm <= 1e-14) throw Error("curve_spur_residual: degenerate curve tangent");
    tangents.push_back(t / norm);
  }
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double arc = magnitude(points[i + 1] - points[i - 1]);
    if (arc <= 1e-14) throw Error("curve_spur_residual: degenerate curve tangent");
    const Multivector rate = (tangents[i + 1] - tangents[i - 1]) / arc;
    worst = std::max(worst, magnitude(rate));
  }
  return worst;
}

double action_value(const MotionCurve& motion) {
  motion.validate();
  double action = 0.0;
  for (std::size_t i = 0; i + 1 < motion.sample_count(); ++i) {
    const Multivector mid = 0.5 * (motion.momenta[i] + motion.momenta[i + 1]);
    const Multivector dq = motion.points[i + 1] - motion.points[i];
    action += inner(mid, dq).scalar_part();
  }
  return action;
}

double action_value(const SurfaceMesh& mesh, double lambda) {
  if (!(lambda > 0.0)) throw Error("action_value: the magnitude scale must be positive");
  const SimplexChain chain = mesh_to_chain(mesh);
  double area = 0.0;
  for (std::size_t c = 0; c < chain.cell_count(); ++c) {
    area += magnitude(chain.volume_element(c));
  }
  return lambda * area;
}

double energy_drift(const MotionCurve& motion) {
  motion.validate();
  double worst = 0.0;
  for (double e : motion.energies) {
    worst = std::max(worst, std::abs(e - motion.energies.front()));
  }
  return worst;
}

SimplexChain mesh_to_chain(const SurfaceMesh& mesh) {
  if (mesh.nu < 2 || mesh.nv < 2) throw Error("mesh_to_chain: the mesh has no quads");
  std::vector<std::vector<std::vector<double>>> simplices;
  simplices.reserve(static_cast<std::size_t>(mesh.nu - 1) * (mesh.nv - 1) * 2);
  for (int iu = 0; iu + 1 < mesh.nu; ++iu) {
    for (int iv = 0; iv + 1 < mesh.nv; ++iv) {
      const auto p00 = mesh.at(iu, iv).vector_part();
      const auto p10 = mesh.at(iu + 1, iv).vector_part();
      const auto p01 = mesh.at(iu, iv + 1).vector_part();
      const auto p11 = mesh.at(iu + 1, iv + 1).vector_part();
      simplices.push_back({p00, p10, p11});
      simplices.push_back({p00, p11, p01});
    }
  }
  return SimplexChain::from_simplices(mesh.config_dim, simplices);
}

}  // namespace gamcal
