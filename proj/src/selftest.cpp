#include "gamcal/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "gamcal/multivector.hpp"
#include "gamcal/random.hpp"

namespace gamcal {

namespace {

double parity_sign(int exponent) { return (exponent % 2 == 0) ? 1.0 : -1.0; }

double relative_error(const Multivector& lhs, const Multivector& rhs) {
  const double scale = std::max({1.0, magnitude(lhs), magnitude(rhs)});
  return magnitude(lhs - rhs) / scale;
}

// Laplace expansion along the first row; independent of the algebra code.
double cofactor_determinant(const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1.0;
  if (n == 1) return m[0][0];
  double det = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<std::vector<double>> minor;
    for (std::size_t row = 1; row < n; ++row) {
      std::vector<double> line;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) line.push_back(m[row][c]);
      }
      minor.push_back(std::move(line));
    }
    det += parity_sign(static_cast<int>(col)) * m[0][col] * cofactor_determinant(minor);
  }
  return det;
}

using CaseRunner = std::function<double(Rng&, int)>;

struct Identity {
  const char* name;
  CaseRunner run;
};

const std::vector<Identity>& identity_table() {
  static const std::vector<Identity> table = {
      {"inner_reorder",
       [](Rng& rng, int n) {
         const int r = rng.uniform_int(1, n);
         const int s = rng.uniform_int(r, n);
         const Multivector a = rng.pure_grade(n, r);
         const Multivector b = rng.pure_grade(n, s);
         return relative_error(inner(a, b), parity_sign(r * (s - 1)) * inner(b, a));
       }},
      {"outer_reorder",
       [](Rng& rng, int n) {
         const int r = rng.uniform_int(0, n);
         const int s = rng.uniform_int(0, n);
         const Multivector a = rng.pure_grade(n, r);
         const Multivector b = rng.pure_grade(n, s);
         return relative_error(outer(a, b), parity_sign(r * s) * outer(b, a));
       }},
      {"inner_of_inner_left",
       [](Rng& rng, int n) {
         const int t = rng.uniform_int(2, n);
         const int r = rng.uniform_int(1, t - 1);
         const int s = rng.uniform_int(1, t - r);
         const Multivector a = rng.pure_grade(n, r);
         const Multivector b = rng.pure_grade(n, s);
         const Multivector c = rng.pure_grade(n, t);
         return relative_error(inner(a, inner(b, c)), inner(outer(a, b), c));
       }},
      {"inner_of_inner_right",
       [](Rng& rng, int n) {
         const int t = rng.uniform_int(2, n);
         const int r = rng.uniform_int(1, t - 1);
         const int s = rng.uniform_int(1, t - r);
         const Multivector a = rng.pure_grade(n, r);
         const Multivector b = rng.pure_grade(n, s);
         const Multivector c = rng.pure_grade(n, t);
         return relative_error(inner(inner(c, b), a), inner(c, outer(b, a)));
       }},
      {"inner_chain",
       [](Rng& rng, int n) {
         const int s = rng.uniform_int(2, n);
         const int r = rng.uniform_int(1, s - 1);
         const int t = rng.uniform_int(1, s - r);
         const Multivector a = rng.pure_grade(n, r);
         const Multivector b = rng.pure_grade(n, s);
         const Multivector c = rng.pure_grade(n, t);
         return relative_error(inner(a, inner(b, c)), inner(inner(a, b), c));
       }},
      {"vector_dot_of_wedge",
       [](Rng& rng, int n) {
         const int r = rng.uniform_int(1, n);
         const int s = rng.uniform_int(1, n);
         const Multivector v = rng.vector(n);
         const Multivector a = rng.pure_grade(n, r);
         const Multivector b = rng.pure_grade(n, s);
         return relative_error(inner(v, outer(a, b)),
                               outer(inner(v, a), b) +
                                   parity_sign(r) * outer(a, inner(v, b)));
       }},
      {"vector_wedge_of_dot",
       [](Rng& rng, int n) {
         const int r = rng.uniform_int(2, n);
         const int s = rng.uniform_int(r, n);
         const Multivector v = rng.vector(n);
         const Multivector a = rng.pure_grade(n, r);
         const Multivector b = rng.pure_grade(n, s);
         return relative_error(outer(v, inner(a, b)),
                               inner(inner(v, a), b) +
                                   parity_sign(r) * inner(a, outer(v, b)));
       }},
      {"expansion",
       [](Rng& rng, int n) {
         const int r = rng.uniform_int(1, n);
         const Multivector v = rng.vector(n);
         std::vector<Multivector> factors;
         for (int j = 0; j < r; ++j) factors.push_back(rng.vector(n));
         const Multivector lhs = inner(v, wedge_all(factors));
         Multivector rhs(n);
         for (int j = 0; j < r; ++j) {
           const double dot = inner(v, factors[j]).scalar_part();
           std::vector<Multivector> rest;
           for (int k = 0; k < r; ++k) {
             if (k != j) rest.push_back(factors[k]);
           }
           const Multivector tail =
               rest.empty() ? Multivector::scalar(n, 1.0) : wedge_all(rest);
           rhs += (parity_sign(j) * dot) * tail;
         }
         return relative_error(lhs, rhs);
       }},
      {"reversion_antiautomorphism",
       [](Rng& rng, int n) {
         const Multivector a = rng.multivector(n);
         const Multivector b = rng.multivector(n);
         return relative_error(reverse(geometric_product(a, b)),
                               geometric_product(reverse(b), reverse(a)));
       }},
      {"gram_determinant",
       [](Rng& rng, int n) {
         const int r = rng.uniform_int(1, n);
         std::vector<Multivector> as, bs;
         std::vector<std::vector<double>> dots(r, std::vector<double>(r));
         for (int j = 0; j < r; ++j) as.push_back(rng.vector(n));
         for (int k = 0; k < r; ++k) bs.push_back(rng.vector(n));
         for (int j = 0; j < r; ++j) {
           for (int k = 0; k < r; ++k) {
             dots[j][k] = inner(as[j], bs[k]).scalar_part();
           }
         }
         const double lhs = gram_det(as, bs);
         const double rhs = cofactor_determinant(dots);
         return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
       }},
  };
  return table;
}

}  // namespace

std::vector<IdentityCheck> run_ga_selftest(std::uint64_t seed, int cases_per_dim,
                                           const std::vector<int>& dims, double tol) {
  std::vector<IdentityCheck> results;
  const auto& table = identity_table();
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    IdentityCheck check;
    check.name = table[idx].name;
    Rng rng(seed + 1000003ull * idx);
    for (int n : dims) {
      for (int c = 0; c < cases_per_dim; ++c) {
        check.max_rel_error = std::max(check.max_rel_error, table[idx].run(rng, n));
        ++check.cases;
      }
    }
    check.pass = check.max_rel_error <= tol;
    results.push_back(std::move(check));
  }
  return results;
}

}  // namespace gamcal
