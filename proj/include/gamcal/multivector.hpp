#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gamcal {

// Dense multivector over the Euclidean geometric algebra G(R^n), 2 <= n <= 8.
//
// Coefficients are indexed by basis-blade bitmask: bit j (counting from 0)
// set in index b means the basis vector e_{j+1} appears as a factor, with
// factors ordered by ascending index. popcount(b) is the grade of the basis
// blade. Values are immutable once constructed; every operation returns a
// new value.
class Multivector {
 public:
  // Empty placeholder carrying no algebra; any mixed-dimension operation on
  // it raises. Exists so aggregates can default-construct their members.
  Multivector() : dim_(0), coeffs_(1, 0.0) {}

  // Zero multivector of the algebra over R^dim.
  explicit Multivector(int dim);

  static Multivector scalar(int dim, double value);
  static Multivector basis_vector(int dim, int index);      // index in 1..dim
  static Multivector basis_blade(int dim, std::uint32_t mask);
  static Multivector from_coefficients(int dim, std::vector<double> coeffs);
  // Grade-1 element with the given components along e_1..e_dim.
  static Multivector vector(int dim, const std::vector<double>& components);

  int dim() const { return dim_; }
  std::size_t size() const { return coeffs_.size(); }  // 2^dim

  double operator[](std::uint32_t mask) const { return coeffs_[mask]; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  double scalar_part() const { return coeffs_[0]; }
  std::vector<double> vector_part() const;  // components along e_1..e_dim

  bool is_zero() const;
  // The common grade of all nonzero coefficients, nullopt for mixed grade.
  // The zero multivector reports grade 0.
  std::optional<int> single_grade() const;

  Multivector operator-() const;
  Multivector& operator+=(const Multivector& rhs);
  Multivector& operator-=(const Multivector& rhs);
  Multivector& operator*=(double s);
  Multivector& operator/=(double s);

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator/(Multivector a, double s) { return a /= s; }
  friend Multivector operator*(const Multivector& a, const Multivector& b);

  friend bool operator==(const Multivector& a, const Multivector& b);
  friend bool operator!=(const Multivector& a, const Multivector& b) { return !(a == b); }

  friend Multivector geometric_product(const Multivector& a, const Multivector& b);
  friend Multivector inner(const Multivector& a, const Multivector& b);
  friend Multivector outer(const Multivector& a, const Multivector& b);
  friend Multivector grade_project(const Multivector& a, int r);
  friend Multivector reverse(const Multivector& a);
  friend Multivector parse_multivector(const std::string& text, int dim);

 private:
  int dim_;
  std::vector<double> coeffs_;
};

// Sign of the product e_A e_B relative to the canonical blade e_{A xor B}.
// Factors of A and B are each in ascending order; concatenating them and
// bubble-sorting into ascending order needs, for each factor of A, one
// transposition per factor of B with a strictly smaller index. Summing
// popcounts of shifted prefixes counts exactly those transpositions, so the
// result depends only on the two bitmasks and is identical on any platform.
int reorder_sign(std::uint32_t a, std::uint32_t b);

// Geometric (Clifford) product with the Euclidean metric, e_i e_i = +1.
Multivector geometric_product(const Multivector& a, const Multivector& b);

// Grade-pair inner product: for pure grades r,s > 0 the grade |r-s| part of
// the geometric product; any scalar argument contributes zero. Extended
// bilinearly to mixed-grade arguments.
Multivector inner(const Multivector& a, const Multivector& b);

// Grade-pair outer product: the grade r+s part of the geometric product,
// extended bilinearly. Scalars act by plain scaling.
Multivector outer(const Multivector& a, const Multivector& b);

// Keep only the grade-r coefficients. r must lie in [0, dim].
Multivector grade_project(const Multivector& a, int r);

// Reversion: each grade-r part picks up the sign (-1)^{r(r-1)/2}.
Multivector reverse(const Multivector& a);

// sqrt of the scalar part of reverse(a) * a; equals the Euclidean norm of the
// coefficient vector in an orthonormal basis.
double magnitude(const Multivector& a);
double squared_magnitude(const Multivector& a);

// Inverse of an invertible blade: reverse(a) / |a|^2. Raises gamcal::Error if
// a has mixed grade, is numerically zero, or fails the blade test (the
// non-scalar part of reverse(a)*a exceeds 1e-10 * |a|^2).
Multivector blade_inverse(const Multivector& a);

// Outer product of a non-empty list of grade-1 elements (an empty list
// carries no algebra dimension and raises).
Multivector wedge_all(const std::vector<Multivector>& vectors);

// Factor a blade of grade r >= 1 into r mutually orthogonal vectors whose
// outer product reproduces it. Returns an empty list when the argument is not
// a blade within the blade-test tolerance.
std::vector<Multivector> factor_blade(const Multivector& a);

// Gram determinant det(inner(a_j, b_k)) evaluated algebraically as
// inner(reverse(a_1 ^ ... ^ a_r), b_1 ^ ... ^ b_r). Lists must have equal
// length and contain grade-1 elements of one algebra; empty lists give 1.
double gram_det(const std::vector<Multivector>& as, const std::vector<Multivector>& bs);

// True when every coefficient with popcount(mask) != r vanishes exactly.
bool is_pure_grade(const Multivector& a, int r);

// True when every coefficient is finite.
bool is_finite(const Multivector& a);

// Canonical text form: terms "coef*e{indices}" joined with " + " / " - ",
// scalar terms as a bare number, indices ascending, zero printed as "0".
// Example: "1 + 1.5*e13 - 0.25*e134". Round-trips exactly through
// parse_multivector.
std::string to_string(const Multivector& a);

// Parse the canonical text form into an algebra of the given dimension.
// Raises gamcal::Error on malformed input, indices out of range, or
// non-ascending index groups.
Multivector parse_multivector(const std::string& text, int dim);

}  // namespace gamcal
