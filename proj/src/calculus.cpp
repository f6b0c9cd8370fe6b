#include "gamcal/calculus.hpp"

#include <bit>
#include <cmath>

#include "gamcal/errors.hpp"

namespace gamcal {

namespace {

void check_point(const Multivector& q, int dim, const char* op) {
  if (q.dim() != dim) {
    throw Error(std::string(op) + ": point lives in dimension " + std::to_string(q.dim()) +
                ", expected " + std::to_string(dim));
  }
  if (!is_pure_grade(q, 1) && !q.is_zero()) {
    throw Error(std::string(op) + ": points must be grade-1");
  }
}

Multivector checked_eval(const PointFunction& F, const Multivector& q, const char* op) {
  const Multivector out = F(q);
  if (!is_finite(out)) {
    throw Error(std::string(op) + ": non-finite function value at a probe point");
  }
  return out;
}

}  // namespace

StepSize::StepSize(double h) : value(h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error("step size must be positive and finite");
  }
}

Multivector PointFunction::operator()(const Multivector& q) const {
  if (!fn) throw Error("point function has no callable");
  check_point(q, input_dim, "point function");
  Multivector out = fn(q);
  if (out.dim() != output_dim) {
    throw Error("point function returned dimension " + std::to_string(out.dim()) +
                ", declared " + std::to_string(output_dim));
  }
  return out;
}

Multivector directional_derivative(const PointFunction& F, const Multivector& q,
                                   const Multivector& a, StepSize h) {
  check_point(q, F.input_dim, "directional_derivative");
  check_point(a, F.input_dim, "directional_derivative");
  const Multivector fp = checked_eval(F, q + h.value * a, "directional_derivative");
  const Multivector fm = checked_eval(F, q - h.value * a, "directional_derivative");
  return (fp - fm) / (2.0 * h.value);
}

Multivector vector_derivative(const PointFunction& F, const Multivector& q, StepSize h) {
  check_point(q, F.input_dim, "vector_derivative");
  Multivector out(F.output_dim);
  for (int j = 1; j <= F.input_dim; ++j) {
    const Multivector ej = Multivector::basis_vector(F.input_dim, j);
    out += geometric_product(Multivector::basis_vector(F.output_dim, j),
                             directional_derivative(F, q, ej, h));
  }
  return out;
}

Multivector multivector_derivative(const PointMomentumFunction& H, const Multivector& q,
                                   const Multivector& P, int grade, StepSize h) {
  if (!H) throw Error("multivector_derivative: missing function");
  if (grade < 0 || grade > P.dim()) {
    throw Error("multivector_derivative: grade outside the algebra");
  }
  if (!is_pure_grade(P, grade)) {
    throw Error("multivector_derivative: P carries coefficients off the declared grade");
  }
  Multivector out(P.dim());
  const int reversion = (grade * (grade - 1) / 2) % 2 ? -1 : 1;
  for (std::uint32_t m = 0; m < P.size(); ++m) {
    if (std::popcount(m) != grade) continue;
    const Multivector probe = Multivector::basis_blade(P.dim(), m) * h.value;
    const double hp = H(q, P + probe);
    const double hm = H(q, P - probe);
    if (!std::isfinite(hp) || !std::isfinite(hm)) {
      throw Error("multivector_derivative: non-finite value at a probe point");
    }
    const double slope = (hp - hm) / (2.0 * h.value);
    out += Multivector::basis_blade(P.dim(), m) * (reversion * slope);
  }
  // reverse(e_J) (e_J . d) H summed over grade-`grade` blades; the two
  // reversions cancel into a plain sign on each term, applied above.
  return out;
}

LinearMap::LinearMap(int dim, std::vector<double> row_major) : dim_(dim) {
  if (row_major.size() != static_cast<std::size_t>(dim) * dim) {
    throw Error("LinearMap: matrix size does not match the dimension");
  }
  m_ = std::move(row_major);
}

LinearMap LinearMap::jacobian(const PointFunction& f, const Multivector& q, StepSize h) {
  check_point(q, f.input_dim, "jacobian");
  if (f.output_dim != f.input_dim) {
    throw Error("jacobian: point maps must stay inside one algebra");
  }
  const int n = f.input_dim;
  std::vector<double> m(static_cast<std::size_t>(n) * n);
  for (int col = 0; col < n; ++col) {
    const Multivector ej = Multivector::basis_vector(n, col + 1);
    const Multivector d = directional_derivative(f, q, ej, h);
    if (!is_pure_grade(d, 1) && !d.is_zero()) {
      throw Error("jacobian: the map must be vector-valued");
    }
    const auto column = d.vector_part();
    for (int row = 0; row < n; ++row) m[row * n + col] = column[row];
  }
  return LinearMap(n, std::move(m));
}

LinearMap LinearMap::transposed() const {
  std::vector<double> t(m_.size());
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) t[c * dim_ + r] = m_[r * dim_ + c];
  }
  return LinearMap(dim_, std::move(t));
}

Multivector LinearMap::apply_vector(const Multivector& v) const {
  if (v.dim() != dim_) throw Error("LinearMap: dimension mismatch");
  if (!is_pure_grade(v, 1) && !v.is_zero()) {
    throw Error("LinearMap: apply_vector needs a grade-1 argument");
  }
  const auto comps = v.vector_part();
  std::vector<double> out(dim_, 0.0);
  for (int r = 0; r < dim_; ++r) {
    double s = 0.0;
    for (int c = 0; c < dim_; ++c) s += m_[r * dim_ + c] * comps[c];
    out[r] = s;
  }
  return Multivector::vector(dim_, out);
}

Multivector LinearMap::apply(const Multivector& A) const {
  if (A.dim() != dim_) throw Error("LinearMap: dimension mismatch");
  Multivector out = Multivector::scalar(dim_, A.scalar_part());
  std::vector<Multivector> columns;
  columns.reserve(dim_);
  for (int j = 1; j <= dim_; ++j) {
    columns.push_back(apply_vector(Multivector::basis_vector(dim_, j)));
  }
  for (int r = 1; r <= dim_; ++r) {
    const Multivector part = grade_project(A, r);
    if (part.is_zero()) continue;
    if (r == 1) {
      out += apply_vector(part);
      continue;
    }
    const std::vector<Multivector> factors = factor_blade(part);
    if (!factors.empty()) {
      std::vector<Multivector> mapped;
      mapped.reserve(factors.size());
      for (const Multivector& v : factors) mapped.push_back(apply_vector(v));
      out += wedge_all(mapped);
      continue;
    }
    // Not a single blade: map each basis blade of the grade; the linear
    // extension agrees with factoring wherever both apply.
    for (std::uint32_t m = 0; m < part.size(); ++m) {
      const double c = part[m];
      if (c == 0.0) continue;
      std::vector<Multivector> vs;
      for (int j = 0; j < dim_; ++j) {
        if (m & (std::uint32_t{1} << j)) vs.push_back(columns[j]);
      }
      out += c * wedge_all(vs);
    }
  }
  return out;
}

Multivector pushforward(const PointFunction& f, const Multivector& q,
                        const Multivector& A, StepSize h) {
  return LinearMap::jacobian(f, q, h).apply(A);
}

Multivector adjoint(const PointFunction& f, const Multivector& q, const Multivector& B,
                    StepSize h) {
  return LinearMap::jacobian(f, q, h).transposed().apply(B);
}

}  // namespace gamcal
