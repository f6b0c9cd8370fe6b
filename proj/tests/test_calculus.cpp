#include <doctest.h>

#include <cmath>
#include <vector>

#include "gamcal/calculus.hpp"
#include "gamcal/errors.hpp"
#include "gamcal/multivector.hpp"
#include "gamcal/random.hpp"
#include "test_helpers.hpp"

using gamcal::LinearMap;
using gamcal::Multivector;
using gamcal::PointFunction;
using gamcal::Rng;
using gamcal::StepSize;

namespace {

PointFunction scalar_field(int n, std::function<double(const Multivector&)> f) {
  return PointFunction{n, n, [n, f](const Multivector& q) {
                         return Multivector::scalar(n, f(q));
                       }};
}

LinearMap random_map(Rng& rng, int n) {
  std::vector<double> m(static_cast<std::size_t>(n) * n);
  for (double& x : m) x = rng.uniform(-1.0, 1.0);
  return LinearMap(n, std::move(m));
}

}  // namespace

TEST_CASE("directional derivative of a linear field is exact") {
  const int n = 4;
  Rng rng(31);
  const Multivector a = rng.vector(n);
  const Multivector bivec = rng.pure_grade(n, 2);
  // F(q) = (a . q) B: derivative along c is (a . c) B for every c.
  const PointFunction F{n, n, [&](const Multivector& q) {
                          return inner(a, q).scalar_part() * bivec;
                        }};
  for (int c = 0; c < 10; ++c) {
    const Multivector dir = rng.vector(n);
    const Multivector expected = inner(a, dir).scalar_part() * bivec;
    CHECK(oracle::distance(directional_derivative(F, rng.vector(n), dir), expected) <
          1e-9);
  }
}

TEST_CASE("directional derivative of the squared norm") {
  const int n = 3;
  Rng rng(37);
  const PointFunction F = scalar_field(n, [](const Multivector& q) {
    return gamcal::squared_magnitude(q);
  });
  const Multivector q = rng.vector(n);
  const Multivector dir = rng.vector(n);
  const double expected = 2.0 * inner(q, dir).scalar_part();
  CHECK(directional_derivative(F, q, dir).scalar_part() ==
        doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("vector derivative reproduces gradient, divergence, and curl") {
  const int n = 3;
  Rng rng(41);
  const Multivector a = rng.vector(n);

  // Gradient of q . a is a.
  const PointFunction linear = scalar_field(n, [&](const Multivector& q) {
    return inner(q, a).scalar_part();
  });
  const Multivector q = rng.vector(n);
  CHECK(oracle::distance(vector_derivative(linear, q), a) < 1e-9);

  // The identity map has derivative n (all divergence, no curl).
  const PointFunction ident{n, n, [](const Multivector& p) { return p; }};
  const Multivector dq = vector_derivative(ident, q);
  CHECK(oracle::distance(dq, Multivector::scalar(n, 3.0)) < 1e-9);

  // Gradient of |q|^2 is 2q.
  const PointFunction norm2 = scalar_field(n, [](const Multivector& p) {
    return gamcal::squared_magnitude(p);
  });
  CHECK(oracle::distance(vector_derivative(norm2, q), 2.0 * q) < 1e-8);

  // Rotation field x2 e1 - x1 e2: divergence 0, curl part -2 e12.
  const PointFunction rot{n, n, [n](const Multivector& p) {
                            const std::vector<double> x = p.vector_part();
                            return Multivector::vector(n, {x[1], -x[0], 0.0});
                          }};
  const Multivector drot = vector_derivative(rot, q);
  CHECK(std::abs(drot.scalar_part()) < 1e-9);
  CHECK(oracle::distance(grade_project(drot, 2),
                         -2.0 * Multivector::basis_blade(n, 0b011)) < 1e-9);

  // Cubic scalar field: gradient 3 (q.a)^2 a within the h^2 truncation.
  const PointFunction cubic = scalar_field(n, [&](const Multivector& p) {
    const double s = inner(p, a).scalar_part();
    return s * s * s;
  });
  const double s = inner(q, a).scalar_part();
  CHECK(oracle::distance(vector_derivative(cubic, q), 3.0 * s * s * a) < 1e-7);
}

TEST_CASE("multivector derivative recovers the coefficient frame") {
  // H(P) = <reverse(A) P>_0 = sum_J A_J P_J, so the derivative
  // sum_J reverse(e_J) (e_J . d_P) H collapses to reverse(A).
  Rng rng(43);
  for (int n = 3; n <= 5; ++n) {
    for (int grade = 1; grade <= n; ++grade) {
      const Multivector A = rng.pure_grade(n, grade);
      const auto H = [&](const Multivector&, const Multivector& P) {
        return geometric_product(reverse(A), P).scalar_part();
      };
      const Multivector got = gamcal::multivector_derivative(
          H, Multivector(n), rng.pure_grade(n, grade), grade);
      CHECK(oracle::distance(got, reverse(A)) < 1e-8);
    }
  }
}

TEST_CASE("multivector derivative of the squared norm is twice the reverse") {
  const int n = 4;
  Rng rng(47);
  const auto H = [](const Multivector&, const Multivector& P) {
    return gamcal::squared_magnitude(P);
  };
  for (int c = 0; c < 10; ++c) {
    const Multivector P = rng.pure_grade(n, 2);
    const Multivector got = gamcal::multivector_derivative(H, Multivector(n), P, 2);
    CHECK(oracle::distance(got, 2.0 * reverse(P)) < 1e-5);
  }
}

TEST_CASE("multivector derivative validates the momentum grade") {
  const auto H = [](const Multivector&, const Multivector& P) {
    return gamcal::squared_magnitude(P);
  };
  const Multivector mixed =
      Multivector::basis_vector(3, 1) + Multivector::basis_blade(3, 0b011);
  CHECK_THROWS_AS(gamcal::multivector_derivative(H, Multivector(3), mixed, 2),
                  gamcal::Error);
}

TEST_CASE("step sizes must be positive") {
  CHECK_THROWS_AS(StepSize(0.0), gamcal::Error);
  CHECK_THROWS_AS(StepSize(-1e-5), gamcal::Error);
}

TEST_CASE("points passed to derivatives must be grade-1") {
  const PointFunction ident{3, 3, [](const Multivector& p) { return p; }};
  CHECK_THROWS_AS(vector_derivative(ident, Multivector::basis_blade(3, 0b011)),
                  gamcal::Error);
  CHECK_THROWS_AS(vector_derivative(ident, Multivector(4)), gamcal::Error);
}

TEST_CASE("jacobian of a linear map recovers the matrix") {
  const int n = 3;
  Rng rng(53);
  const LinearMap M = random_map(rng, n);
  const PointFunction f{n, n, [&](const Multivector& q) {
                          return M.apply_vector(q);
                        }};
  const LinearMap J = LinearMap::jacobian(f, rng.vector(n));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      CHECK(std::abs(J.entry(r, c) - M.entry(r, c)) < 1e-9);
    }
  }
}

TEST_CASE("outermorphism maps blades factor by factor") {
  const int n = 4;
  Rng rng(59);
  const LinearMap M = random_map(rng, n);
  for (int c = 0; c < 10; ++c) {
    const Multivector a = rng.vector(n);
    const Multivector b = rng.vector(n);
    const Multivector cvec = rng.vector(n);
    CHECK(oracle::distance(M.apply(outer(a, b)),
                           outer(M.apply_vector(a), M.apply_vector(b))) < 1e-10);
    CHECK(oracle::distance(
              M.apply(gamcal::wedge_all({a, b, cvec})),
              gamcal::wedge_all({M.apply_vector(a), M.apply_vector(b),
                                 M.apply_vector(cvec)})) < 1e-10);
  }
  // Scalars pass through unchanged.
  CHECK(M.apply(Multivector::scalar(n, 2.5)).scalar_part() == 2.5);
}

TEST_CASE("outermorphism scales the pseudoscalar by the determinant") {
  Rng rng(61);
  for (int n = 2; n <= 5; ++n) {
    const LinearMap M = random_map(rng, n);
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) rows[r][c] = M.entry(r, c);
    }
    const double det = oracle::cofactor_det(rows);
    const Multivector pseudo = Multivector::basis_blade(n, (1u << n) - 1);
    CHECK(oracle::distance(M.apply(pseudo), det * pseudo) < 1e-10);
  }
}

TEST_CASE("pushforward and adjoint act by the jacobian and its transpose") {
  const int n = 3;
  Rng rng(67);
  // f(x) = (sin x1, x1 x2, x3^2) with a hand-written jacobian.
  const PointFunction f{n, n, [n](const Multivector& q) {
                          const std::vector<double> x = q.vector_part();
                          return Multivector::vector(
                              n, {std::sin(x[0]), x[0] * x[1], x[2] * x[2]});
                        }};
  const Multivector q = Multivector::vector(n, {0.4, -0.7, 1.1});
  const std::vector<double> x = q.vector_part();
  const LinearMap J(n, {std::cos(x[0]), 0.0, 0.0,  //
                        x[1], x[0], 0.0,           //
                        0.0, 0.0, 2.0 * x[2]});
  const LinearMap Jt = J.transposed();

  for (int c = 0; c < 8; ++c) {
    const Multivector a = rng.vector(n);
    CHECK(oracle::distance(gamcal::pushforward(f, q, a), J.apply_vector(a)) < 1e-7);
    CHECK(oracle::distance(gamcal::adjoint(f, q, a), Jt.apply_vector(a)) < 1e-7);
    const Multivector B = rng.pure_grade(n, 2);
    CHECK(oracle::distance(gamcal::pushforward(f, q, B), J.apply(B)) < 1e-6);
    CHECK(oracle::distance(gamcal::adjoint(f, q, B), Jt.apply(B)) < 1e-6);
  }
}

TEST_CASE("adjoint is dual to the pushforward on same-grade blades") {
  const int n = 4;
  Rng rng(71);
  const PointFunction f{n, n, [n](const Multivector& q) {
                          const std::vector<double> x = q.vector_part();
                          return Multivector::vector(n, {x[0] + 0.3 * x[1] * x[1],
                                                         x[1] - x[2], x[2] * x[0],
                                                         0.5 * x[3]});
                        }};
  const Multivector q = rng.vector(n);
  for (int grade = 1; grade <= 3; ++grade) {
    const Multivector A = rng.pure_grade(n, grade);
    const Multivector B = rng.pure_grade(n, grade);
    const double lhs = inner(gamcal::pushforward(f, q, A), B).scalar_part();
    const double rhs = inner(A, gamcal::adjoint(f, q, B)).scalar_part();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6).scale(1.0));
  }
}
