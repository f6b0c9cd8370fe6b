#include <doctest.h>

#include <cmath>
#include <vector>

#include "gamcal/chain.hpp"
#include "gamcal/errors.hpp"
#include "gamcal/hamilton_jacobi.hpp"
#include "gamcal/hamiltonian.hpp"
#include "gamcal/random.hpp"
#include "gamcal/solver.hpp"
#include "test_helpers.hpp"

using gamcal::HamiltonianSpec;
using gamcal::HJFunction;
using gamcal::MotionCurve;
using gamcal::Multivector;
using gamcal::Potential;
using gamcal::SimplexChain;
using gamcal::SplitFrame;

namespace {

const double kPi = std::acos(-1.0);

// s(q) = y k - (|k|^2 / 2D) x over the field split of R^{D+1}: a linear
// generating field whose characteristic residual vanishes for V = 0.
HJFunction flat_family(int d, const std::vector<double>& k) {
  const int n = d + 1;
  double k2 = 0.0;
  for (double kj : k) k2 += kj * kj;
  HJFunction s;
  s.config_dim = n;
  s.output_grade = 1;
  s.value = [n, d, k, k2](const Multivector& q) {
    const std::vector<double> x = q.vector_part();
    std::vector<double> out(n, 0.0);
    for (int j = 0; j < d; ++j) {
      out[j] = x[d] * k[j] - k2 / (2.0 * d) * x[j];
    }
    return Multivector::vector(n, out);
  };
  s.param_count = d;
  s.param_derivative = [n, d, k](int idx, const Multivector& q) {
    const std::vector<double> x = q.vector_part();
    std::vector<double> out(n, 0.0);
    out[idx] = x[d];
    for (int j = 0; j < d; ++j) {
      out[j] -= k[idx] / d * x[j];
    }
    return Multivector::vector(n, out);
  };
  return s;
}

}  // namespace

TEST_CASE("hj functions validate their output grade") {
  HJFunction s;
  s.config_dim = 3;
  s.output_grade = 1;
  s.value = [](const Multivector& q) { return q; };
  CHECK(gamcal::is_pure_grade(s(Multivector::vector(3, {1.0, 2.0, 3.0})), 1));

  s.value = [](const Multivector& q) {
    return Multivector::scalar(q.dim(), 1.0) + q;
  };
  CHECK_THROWS_AS(s(Multivector::vector(3, {1.0, 0.0, 0.0})), gamcal::Error);
  HJFunction empty;
  CHECK_THROWS_AS(empty(Multivector::vector(3, {0.0, 0.0, 0.0})), gamcal::Error);
}

TEST_CASE("a linear generating function solves the free-particle constraint") {
  // H = p.e_t + |p_perp|^2 / 2 and S = -t/2 + x: dS = -e_1/2 + e_2 gives
  // H(q, dS) = -1/2 + 1/2 = 0.
  const int n = 2;
  const SplitFrame frame = SplitFrame::mechanics(n);
  const HamiltonianSpec H =
      mechanics_hamiltonian(separable_mechanics(Potential({0.0}), frame), frame);
  HJFunction S;
  S.config_dim = n;
  S.output_grade = 0;
  S.value = [n](const Multivector& q) {
    const std::vector<double> x = q.vector_part();
    return Multivector::scalar(n, -0.5 * x[0] + x[1]);
  };
  gamcal::Rng rng(101);
  for (int c = 0; c < 10; ++c) {
    const Multivector q = rng.vector(n);
    CHECK(oracle::distance(gamcal::hj_momentum(S, q),
                           Multivector::vector(n, {-0.5, 1.0})) < 1e-9);
    CHECK(gamcal::hj_residual(H, S, q) < 1e-9);
  }

  // A wrong energy split leaves a visible residual.
  HJFunction wrong = S;
  wrong.value = [n](const Multivector& q) {
    const std::vector<double> x = q.vector_part();
    return Multivector::scalar(n, -0.1 * x[0] + x[1]);
  };
  CHECK(gamcal::hj_residual(H, wrong, Multivector::vector(n, {0.3, 0.7})) > 0.3);
}

TEST_CASE("point-source families know their closed-form derivatives") {
  const int n = 3;
  const double lambda = 2.0;
  const Multivector q0 = Multivector::vector(n, {0.5, -0.25, 1.0});
  const HJFunction S = gamcal::point_source_hj(lambda, q0, 1e-4);
  CHECK(S.param_count == n);

  gamcal::Rng rng(103);
  for (int c = 0; c < 10; ++c) {
    const double radius = rng.uniform(0.5, 2.0);
    const Multivector q = q0 + radius * rng.unit_vector(n);
    CHECK(S(q).scalar_part() == doctest::Approx(lambda * radius).epsilon(1e-12));
    CHECK(gamcal::magnitude(gamcal::hj_momentum(S, q)) ==
          doctest::Approx(lambda).epsilon(1e-8));

    // Parameter derivatives against a finite difference over shifted sources.
    const double delta = 1e-6;
    for (int k = 0; k < n; ++k) {
      const Multivector shifted_q0 =
          q0 + delta * Multivector::basis_vector(n, k + 1);
      const HJFunction shifted = gamcal::point_source_hj(lambda, shifted_q0, 1e-4);
      const double fd = (shifted(q).scalar_part() - S(q).scalar_part()) / delta;
      CHECK(std::abs(S.param_derivative(k, q).scalar_part() - fd) < 1e-5);
    }
  }

  CHECK_THROWS_AS(S(q0), gamcal::Error);  // inside the exclusion zone
  CHECK_THROWS_AS(gamcal::point_source_hj(0.0, q0, 1e-4), gamcal::Error);
  CHECK_THROWS_AS(gamcal::point_source_hj(1.0, q0, -1.0), gamcal::Error);
}

TEST_CASE("the point-source family solves the fixed-magnitude constraint") {
  const int n = 4;
  const double lambda = 1.5;
  const HamiltonianSpec H = gamcal::string_hamiltonian(lambda, 1, n);
  const Multivector q0 = Multivector::vector(n, {0.0, 0.0, 0.0, 0.0});
  const HJFunction S = gamcal::point_source_hj(lambda, q0, 1e-4);
  gamcal::Rng rng(107);
  for (int c = 0; c < 20; ++c) {
    const double radius = rng.uniform(0.5, 2.5);
    const Multivector q = q0 + radius * rng.unit_vector(n);
    CHECK(gamcal::hj_residual(H, S, q) < 1e-6);
  }
}

TEST_CASE("conserved samples stay flat on generated motions only") {
  const int n = 3;
  const double lambda = 2.0;
  const Multivector source = Multivector::vector(n, {-0.3, 0.2, 0.0});
  const HJFunction S = gamcal::point_source_hj(lambda, source, 1e-4);

  // A radial ray from the source is a motion the family generates.
  Multivector v = Multivector::vector(n, {2.0, 1.0, 2.0});
  v /= gamcal::magnitude(v);
  const Multivector start = source + v;  // one unit out of the source
  const HamiltonianSpec H = gamcal::string_hamiltonian(lambda, 1, n);
  const MotionCurve ray = solve_geodesic(H, start, v, 2.0, 0.01);
  for (int k = 0; k < S.param_count; ++k) {
    const gamcal::ConservedSamples samples = conserved_quantity(S, ray, k);
    CHECK(samples.values.size() == ray.sample_count());
    CHECK(samples.spread < 1e-10);
  }

  // A circular arc is not radial, so the samples move.
  MotionCurve arc;
  arc.config_dim = n;
  const int m = 100;
  for (int i = 0; i <= m; ++i) {
    const double theta = 0.5 * kPi * i / m;
    arc.tau.push_back(theta);
    arc.points.push_back(Multivector::vector(
        n, {2.0 + std::cos(theta), std::sin(theta), 0.0}));
    arc.momenta.push_back(lambda * Multivector::vector(
                              n, {-std::sin(theta), std::cos(theta), 0.0}));
    arc.constraint_residuals.push_back(0.0);
    arc.energies.push_back(lambda);
  }
  double worst = 0.0;
  for (int k = 0; k < S.param_count; ++k) {
    worst = std::max(worst, conserved_quantity(S, arc, k).spread);
  }
  CHECK(worst > 0.01);

  CHECK_THROWS_AS(conserved_quantity(S, ray, -1), gamcal::Error);
  CHECK_THROWS_AS(conserved_quantity(S, ray, S.param_count), gamcal::Error);
  HJFunction no_params = S;
  no_params.param_count = 0;
  no_params.param_derivative = nullptr;
  CHECK_THROWS_AS(conserved_quantity(no_params, ray, 0), gamcal::Error);
}

TEST_CASE("hj-generated motion matches the geodesic integrator") {
  const int n = 4;
  const double lambda = 2.0;
  const Multivector q0 = Multivector::vector(n, {0.5, -0.25, 1.0, 0.0});
  Multivector v = Multivector::vector(n, {1.0, 2.0, 2.0, 0.0});
  v /= gamcal::magnitude(v);

  const MotionCurve from_hj = gamcal::motion_from_hj(q0, v, 3.0, 0.01, lambda);
  const MotionCurve reference =
      solve_geodesic(gamcal::string_hamiltonian(lambda, 1, n), q0, v, 3.0, 0.01);
  REQUIRE(from_hj.sample_count() == reference.sample_count());
  for (std::size_t i = 0; i < from_hj.sample_count(); ++i) {
    CHECK(oracle::distance(from_hj.points[i], reference.points[i]) < 1e-12);
    CHECK(oracle::distance(from_hj.momenta[i], reference.momenta[i]) < 1e-12);
  }

  const Multivector not_unit = Multivector::vector(4, {1.0, 1.0, 0.0, 0.0});
  CHECK_THROWS_AS(gamcal::motion_from_hj(q0, not_unit, 1.0, 0.01, lambda),
                  gamcal::Error);
  CHECK_THROWS_AS(gamcal::motion_from_hj(q0, v, 1.0, 0.01, -1.0), gamcal::Error);
}

TEST_CASE("characteristic residuals of linear generating fields") {
  const int d = 2;
  const int n = d + 1;
  const SplitFrame frame = SplitFrame::field_theory(d);
  gamcal::Rng rng(109);

  // s = x1 e1: divergence 1, no field-axis variation.
  HJFunction s1;
  s1.config_dim = n;
  s1.output_grade = 1;
  s1.value = [n](const Multivector& q) {
    const std::vector<double> x = q.vector_part();
    return Multivector::vector(n, {x[0], 0.0, 0.0});
  };
  const Multivector q = rng.vector(n);
  CHECK(gamcal::weyl_hj_residual(Potential({-1.0}), frame, s1, q) < 1e-9);
  CHECK(gamcal::weyl_hj_residual(Potential({0.0}), frame, s1, q) ==
        doctest::Approx(1.0).epsilon(1e-7));

  // s = 2 phi e1: zero divergence, field-axis derivative 2 e1.
  HJFunction s2 = s1;
  s2.value = [n](const Multivector& q2) {
    const std::vector<double> x = q2.vector_part();
    return Multivector::vector(n, {2.0 * x[2], 0.0, 0.0});
  };
  CHECK(gamcal::weyl_hj_residual(Potential({-2.0}), frame, s2, q) < 1e-7);

  // The flat family solves the V = 0 characteristic equation at every point.
  const HJFunction flat = flat_family(d, {0.7, -0.4});
  for (int c = 0; c < 10; ++c) {
    CHECK(gamcal::weyl_hj_residual(Potential({0.0}), flat, rng.vector(n)) < 1e-7);
  }

  // Fields with a component off the motion volume are rejected.
  HJFunction off_axis = s1;
  off_axis.value = [n](const Multivector& q2) {
    const std::vector<double> x = q2.vector_part();
    return Multivector::vector(n, {x[0], 0.0, 0.5});
  };
  CHECK_THROWS_AS(gamcal::weyl_hj_residual(Potential({0.0}), frame, off_axis, q),
                  gamcal::Error);
}

TEST_CASE("boundary flux of a parameter derivative vanishes for solutions") {
  const int d = 2;
  const int n = d + 1;
  const double y_level = 0.3;
  // A flat patch at constant field value, triangulated in the motion plane.
  const SimplexChain patch = gamcal::triangulated_graph(
      n,
      [y_level](double u, double v) {
        return std::vector<double>{u, v, y_level};
      },
      0.0, 1.0, 0.0, 1.0, 8, 8);

  // Constant-parameter derivative: the flux closes for any family.
  HJFunction constant;
  constant.config_dim = n;
  constant.output_grade = 1;
  constant.value = [n](const Multivector&) { return Multivector(n); };
  constant.param_count = 1;
  constant.param_derivative = [n](int, const Multivector&) {
    return Multivector::vector(n, {0.4, -1.2, 0.0});
  };
  CHECK(std::abs(gamcal::hj_continuity_check(constant, 0, patch)) < 1e-12);

  // The flat solution family closes on patches of constant field value.
  const HJFunction flat = flat_family(d, {0.7, -0.4});
  for (int k = 0; k < d; ++k) {
    CHECK(std::abs(gamcal::hj_continuity_check(flat, k, patch)) < 1e-12);
  }

  // A non-gradient derivative leaves the enclosed-area circulation.
  HJFunction swirl = constant;
  swirl.param_derivative = [n](int, const Multivector& q) {
    const std::vector<double> x = q.vector_part();
    return Multivector::vector(n, {x[1], 0.0, 0.0});
  };
  CHECK(std::abs(gamcal::hj_continuity_check(swirl, 0, patch)) ==
        doctest::Approx(1.0).epsilon(1e-10));

  // Open chains have no closed boundary to integrate over.
  const SimplexChain open_chain =
      gamcal::segment_chain(n, {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}});
  CHECK_THROWS_AS(gamcal::hj_continuity_check(constant, 0, open_chain),
                  gamcal::Error);
  CHECK_THROWS_AS(gamcal::hj_continuity_check(constant, 2, patch), gamcal::Error);
  HJFunction no_params = constant;
  no_params.param_count = 0;
  no_params.param_derivative = nullptr;
  CHECK_THROWS_AS(gamcal::hj_continuity_check(no_params, 0, patch), gamcal::Error);
}
