#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gamcal {

// One algebraic identity exercised over random pure-grade inputs.
struct IdentityCheck {
  std::string name;
  int cases = 0;
  double max_rel_error = 0.0;
  bool pass = false;
};

// Property suite over the product identities of the algebra: reordering and
// associativity rules for the grade-pair products, the vector distribution
// rules, the expansion of a vector into a blade, reversion as an
// anti-automorphism, and the Gram-determinant equality (checked against a
// cofactor-expansion determinant). Each identity draws cases_per_dim random
// inputs per dimension with grades satisfying its preconditions; pass means
// max relative error <= tol.
std::vector<IdentityCheck> run_ga_selftest(std::uint64_t seed, int cases_per_dim = 1000,
                                           const std::vector<int>& dims = {3, 4, 5},
                                           double tol = 1e-12);

}  // namespace gamcal
