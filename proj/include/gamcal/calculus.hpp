#pragma once

#include <functional>
#include <vector>

#include "gamcal/multivector.hpp"

namespace gamcal {

// Central-difference step. Strictly positive; defaults to 1e-5, which
// balances truncation against round-off for unit-scale fields.
struct StepSize {
  double value = 1e-5;
  StepSize() = default;
  explicit StepSize(double h);
};

// A multivector field sampled at grade-1 points of one algebra. input_dim is
// the dimension of the point argument, output_dim the algebra the values
// live in (usually the same).
struct PointFunction {
  int input_dim = 0;
  int output_dim = 0;
  std::function<Multivector(const Multivector&)> fn;

  Multivector operator()(const Multivector& q) const;
};

// Scalar function of a point and a conjugate multivector, H(q, P).
using PointMomentumFunction =
    std::function<double(const Multivector&, const Multivector&)>;

// (F(q + h a) - F(q - h a)) / (2h): derivative of F along the vector a.
Multivector directional_derivative(const PointFunction& F, const Multivector& q,
                                   const Multivector& a, StepSize h = StepSize{});

// Vector derivative sum_j e_j (e_j . d) F. For scalar F this is the gradient;
// for a vector field the grade-0 part is the divergence and the grade-2 part
// the curl.
Multivector vector_derivative(const PointFunction& F, const Multivector& q,
                              StepSize h = StepSize{});

// Derivative of H with respect to its grade-D multivector argument:
// sum over basis blades e_J of grade D of reverse(e_J) (e_J . d_P) H,
// each slot differentiated by central differences. P must carry grade D only.
Multivector multivector_derivative(const PointMomentumFunction& H, const Multivector& q,
                                   const Multivector& P, int grade,
                                   StepSize h = StepSize{});

// Linear map on vectors of one algebra, extended to all grades as an
// outermorphism (scalars pass through, blades map factor by factor).
class LinearMap {
 public:
  LinearMap(int dim, std::vector<double> row_major);

  // Matrix of first derivatives of a vector-valued point map, columns by
  // central differences.
  static LinearMap jacobian(const PointFunction& f, const Multivector& q,
                            StepSize h = StepSize{});

  int dim() const { return dim_; }
  double entry(int row, int col) const { return m_[row * dim_ + col]; }
  LinearMap transposed() const;

  Multivector apply_vector(const Multivector& v) const;
  Multivector apply(const Multivector& A) const;

 private:
  int dim_;
  std::vector<double> m_;
};

// Differential of f at q pushed through A as an outermorphism: vectors map by
// a . d f, blades factor-map-and-rewedge, and non-blade grade parts fall back
// to mapping each basis blade (the linear extension agrees on both routes).
Multivector pushforward(const PointFunction& f, const Multivector& q,
                        const Multivector& A, StepSize h = StepSize{});

// Adjoint of the differential (transpose of the Jacobian on vectors),
// extended as an outermorphism the same way.
Multivector adjoint(const PointFunction& f, const Multivector& q,
                    const Multivector& B, StepSize h = StepSize{});

}  // namespace gamcal
