#include "gamcal/multivector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "gamcal/errors.hpp"
#include "gamcal/util.hpp"

namespace gamcal {

namespace {

constexpr int kMinDim = 2;
constexpr int kMaxDim = 8;

void check_dim(int dim) {
  if (dim < kMinDim || dim > kMaxDim) {
    throw Error("algebra dimension must lie in [2, 8], got " + std::to_string(dim));
  }
}

void check_same_dim(const Multivector& a, const Multivector& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw Error(std::string(op) + ": operands live in different algebras (" +
                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
  }
}

int grade_of(std::uint32_t mask) { return std::popcount(mask); }

int reversion_sign(int r) { return (r * (r - 1) / 2) % 2 ? -1 : 1; }

}  // namespace

Multivector::Multivector(int dim) : dim_(dim) {
  check_dim(dim);
  coeffs_.assign(std::size_t{1} << dim, 0.0);
}

Multivector Multivector::scalar(int dim, double value) {
  Multivector out(dim);
  if (!std::isfinite(value)) throw Error("scalar: non-finite coefficient");
  out.coeffs_[0] = value;
  return out;
}

Multivector Multivector::basis_vector(int dim, int index) {
  Multivector out(dim);
  if (index < 1 || index > dim) {
    throw Error("basis_vector: index " + std::to_string(index) + " outside 1.." +
                std::to_string(dim));
  }
  out.coeffs_[std::uint32_t{1} << (index - 1)] = 1.0;
  return out;
}

Multivector Multivector::basis_blade(int dim, std::uint32_t mask) {
  Multivector out(dim);
  if (mask >= out.size()) throw Error("basis_blade: mask outside the algebra");
  out.coeffs_[mask] = 1.0;
  return out;
}

Multivector Multivector::from_coefficients(int dim, std::vector<double> coeffs) {
  Multivector out(dim);
  if (coeffs.size() != out.size()) {
    throw Error("from_coefficients: expected " + std::to_string(out.size()) +
                " coefficients, got " + std::to_string(coeffs.size()));
  }
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw Error("from_coefficients: non-finite coefficient");
  }
  out.coeffs_ = std::move(coeffs);
  return out;
}

Multivector Multivector::vector(int dim, const std::vector<double>& components) {
  Multivector out(dim);
  if (static_cast<int>(components.size()) != dim) {
    throw Error("vector: expected " + std::to_string(dim) + " components, got " +
                std::to_string(components.size()));
  }
  for (int j = 0; j < dim; ++j) {
    if (!std::isfinite(components[j])) throw Error("vector: non-finite component");
    out.coeffs_[std::uint32_t{1} << j] = components[j];
  }
  return out;
}

std::vector<double> Multivector::vector_part() const {
  std::vector<double> out(dim_);
  for (int j = 0; j < dim_; ++j) out[j] = coeffs_[std::uint32_t{1} << j];
  return out;
}

bool Multivector::is_zero() const {
  for (double c : coeffs_) {
    if (c != 0.0) return false;
  }
  return true;
}

std::optional<int> Multivector::single_grade() const {
  int grade = -1;
  for (std::uint32_t m = 0; m < coeffs_.size(); ++m) {
    if (coeffs_[m] == 0.0) continue;
    int g = grade_of(m);
    if (grade == -1) {
      grade = g;
    } else if (g != grade) {
      return std::nullopt;
    }
  }
  return grade == -1 ? 0 : grade;
}

Multivector Multivector::operator-() const {
  Multivector out(*this);
  for (double& c : out.coeffs_) c = -c;
  return out;
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
  check_same_dim(*this, rhs, "add");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& rhs) {
  check_same_dim(*this, rhs, "subtract");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Multivector& Multivector::operator/=(double s) {
  if (s == 0.0) throw Error("division of a multivector by zero");
  for (double& c : coeffs_) c /= s;
  return *this;
}

bool operator==(const Multivector& a, const Multivector& b) {
  return a.dim_ == b.dim_ && a.coeffs_ == b.coeffs_;
}

int reorder_sign(std::uint32_t a, std::uint32_t b) {
  a >>= 1;
  int swaps = 0;
  while (a != 0) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  return geometric_product(a, b);
}

Multivector geometric_product(const Multivector& a, const Multivector& b) {
  check_same_dim(a, b, "geometric_product");
  Multivector out(a.dim());
  const std::size_t n = a.size();
  for (std::uint32_t i = 0; i < n; ++i) {
    const double ai = a.coeffs_[i];
    if (ai == 0.0) continue;
    for (std::uint32_t j = 0; j < n; ++j) {
      const double bj = b.coeffs_[j];
      if (bj == 0.0) continue;
      out.coeffs_[i ^ j] += reorder_sign(i, j) * ai * bj;
    }
  }
  return out;
}

Multivector inner(const Multivector& a, const Multivector& b) {
  check_same_dim(a, b, "inner");
  Multivector out(a.dim());
  const std::size_t n = a.size();
  for (std::uint32_t i = 1; i < n; ++i) {  // scalar parts contribute nothing
    const double ai = a.coeffs_[i];
    if (ai == 0.0) continue;
    const int gi = grade_of(i);
    for (std::uint32_t j = 1; j < n; ++j) {
      const double bj = b.coeffs_[j];
      if (bj == 0.0) continue;
      if (grade_of(i ^ j) != std::abs(gi - grade_of(j))) continue;
      out.coeffs_[i ^ j] += reorder_sign(i, j) * ai * bj;
    }
  }
  return out;
}

Multivector outer(const Multivector& a, const Multivector& b) {
  check_same_dim(a, b, "outer");
  Multivector out(a.dim());
  const std::size_t n = a.size();
  for (std::uint32_t i = 0; i < n; ++i) {
    const double ai = a.coeffs_[i];
    if (ai == 0.0) continue;
    for (std::uint32_t j = 0; j < n; ++j) {
      const double bj = b.coeffs_[j];
      if (bj == 0.0) continue;
      if ((i & j) != 0) continue;  // shared factor: grade drops below r+s
      out.coeffs_[i ^ j] += reorder_sign(i, j) * ai * bj;
    }
  }
  return out;
}

Multivector grade_project(const Multivector& a, int r) {
  if (r < 0 || r > a.dim()) {
    throw Error("grade_project: grade " + std::to_string(r) + " outside [0, " +
                std::to_string(a.dim()) + "]");
  }
  Multivector out(a.dim());
  for (std::uint32_t m = 0; m < a.size(); ++m) {
    if (grade_of(m) == r) out.coeffs_[m] = a.coeffs_[m];
  }
  return out;
}

Multivector reverse(const Multivector& a) {
  Multivector out(a.dim());
  for (std::uint32_t m = 0; m < a.size(); ++m) {
    out.coeffs_[m] = reversion_sign(grade_of(m)) * a.coeffs_[m];
  }
  return out;
}

double squared_magnitude(const Multivector& a) {
  double s = 0.0;
  for (double c : a.coefficients()) s += c * c;
  return s;
}

double magnitude(const Multivector& a) { return std::sqrt(squared_magnitude(a)); }

Multivector blade_inverse(const Multivector& a) {
  if (!a.single_grade().has_value()) {
    throw Error("blade_inverse: mixed-grade argument is not a blade");
  }
  const double m2 = squared_magnitude(a);
  if (m2 == 0.0) throw Error("blade_inverse: zero is not invertible");
  const Multivector check = geometric_product(reverse(a), a);
  const Multivector off = check - Multivector::scalar(a.dim(), check.scalar_part());
  if (magnitude(off) > 1e-10 * m2) {
    throw Error("blade_inverse: argument fails the blade test");
  }
  return reverse(a) / m2;
}

Multivector wedge_all(const std::vector<Multivector>& vectors) {
  if (vectors.empty()) throw Error("wedge_all: empty list has no algebra dimension");
  Multivector out = Multivector::scalar(vectors.front().dim(), 1.0);
  for (const Multivector& v : vectors) {
    if (!is_pure_grade(v, 1)) throw Error("wedge_all: arguments must be grade-1");
    out = outer(out, v);
  }
  return out;
}

std::vector<Multivector> factor_blade(const Multivector& a) {
  const auto grade = a.single_grade();
  if (!grade.has_value() || *grade == 0) return {};
  const int r = *grade;
  if (r == 1) return {a};

  const double m2 = squared_magnitude(a);
  if (m2 == 0.0) return {};
  const Multivector check = geometric_product(reverse(a), a);
  const Multivector off = check - Multivector::scalar(a.dim(), check.scalar_part());
  if (magnitude(off) > 1e-10 * m2) return {};  // not a blade

  // Pivot on the largest basis coefficient; project its factors onto the
  // blade, then orthogonalize. The pivot guarantees independence.
  std::uint32_t pivot = 0;
  double best = 0.0;
  for (std::uint32_t m = 0; m < a.size(); ++m) {
    if (std::abs(a[m]) > best) {
      best = std::abs(a[m]);
      pivot = m;
    }
  }
  const Multivector inv = reverse(a) / m2;
  std::vector<Multivector> factors;
  for (int j = 0; j < a.dim(); ++j) {
    if (!(pivot & (std::uint32_t{1} << j))) continue;
    Multivector v = grade_project(
        geometric_product(inner(Multivector::basis_vector(a.dim(), j + 1), a), inv), 1);
    for (const Multivector& u : factors) {
      v -= inner(v, u).scalar_part() * u;
    }
    const double norm = magnitude(v);
    if (norm < 1e-12) return {};
    factors.push_back(v / norm);
  }
  // Unit orthogonal factors span the blade; recover the overall scale.
  const double scale =
      geometric_product(reverse(wedge_all(factors)), a).scalar_part();
  factors.front() *= scale;
  return factors;
}

double gram_det(const std::vector<Multivector>& as, const std::vector<Multivector>& bs) {
  if (as.size() != bs.size()) throw Error("gram_det: lists differ in length");
  if (as.empty()) return 1.0;
  for (const Multivector& v : as) {
    if (!is_pure_grade(v, 1)) throw Error("gram_det: arguments must be grade-1");
  }
  for (const Multivector& v : bs) {
    if (!is_pure_grade(v, 1)) throw Error("gram_det: arguments must be grade-1");
  }
  const Multivector wa = wedge_all(as);
  const Multivector wb = wedge_all(bs);
  return inner(reverse(wa), wb).scalar_part();
}

bool is_pure_grade(const Multivector& a, int r) {
  for (std::uint32_t m = 0; m < a.size(); ++m) {
    if (a[m] != 0.0 && grade_of(m) != r) return false;
  }
  return true;
}

bool is_finite(const Multivector& a) {
  for (double c : a.coefficients()) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

std::string to_string(const Multivector& a) {
  std::string out;
  for (std::uint32_t m = 0; m < a.size(); ++m) {
    const double c = a[m];
    if (c == 0.0) continue;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    out += format_double(std::abs(c));
    if (m != 0) {
      out += "*e";
      for (int j = 0; j < a.dim(); ++j) {
        if (m & (std::uint32_t{1} << j)) out += static_cast<char>('1' + j);
      }
    }
  }
  return out.empty() ? "0" : out;
}

Multivector parse_multivector(const std::string& text, int dim) {
  Multivector out(dim);
  std::size_t pos = 0;
  const std::size_t len = text.size();
  auto skip_ws = [&] {
    while (pos < len && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  skip_ws();
  if (pos == len) throw Error("parse_multivector: empty input");

  bool first = true;
  while (pos < len) {
    double sign = 1.0;
    if (!first || text[pos] == '+' || text[pos] == '-') {
      if (pos == len || (text[pos] != '+' && text[pos] != '-')) {
        throw Error("parse_multivector: expected '+' or '-' before term at offset " +
                    std::to_string(pos));
      }
      if (text[pos] == '-') sign = -1.0;
      ++pos;
      skip_ws();
    }
    const char* start = text.c_str() + pos;
    char* end = nullptr;
    const double value = std::strtod(start, &end);
    if (end == start || !std::isfinite(value)) {
      throw Error("parse_multivector: expected a coefficient at offset " +
                  std::to_string(pos));
    }
    pos += static_cast<std::size_t>(end - start);

    std::uint32_t mask = 0;
    if (pos < len && text[pos] == '*') {
      ++pos;
      if (pos >= len || text[pos] != 'e') {
        throw Error("parse_multivector: expected basis blade after '*'");
      }
      ++pos;
      std::uint32_t prev = 0;
      bool any = false;
      while (pos < len && text[pos] >= '1' && text[pos] <= '9') {
        const int idx = text[pos] - '0';
        if (idx > dim) {
          throw Error("parse_multivector: basis index " + std::to_string(idx) +
                      " outside the algebra of dimension " + std::to_string(dim));
        }
        const std::uint32_t bit = std::uint32_t{1} << (idx - 1);
        if (bit <= prev) {
          throw Error("parse_multivector: basis indices must be distinct and ascending");
        }
        mask |= bit;
        prev = bit;
        any = true;
        ++pos;
      }
      if (!any) throw Error("parse_multivector: basis blade without indices");
    }
    out.coeffs_[mask] += sign * value;
    first = false;
    skip_ws();
  }
  return out;
}

}  // namespace gamcal
