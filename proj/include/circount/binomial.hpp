#pragma once

// Real solutions of binomial systems x^{a_j} = c_j, j = 1..n.

#include <cstdint>

#include "circount/exact_linalg.hpp"

namespace circount {

/// Column j of `exponents` is a_j; rhs entries are nonzero rationals.
struct BinomialSystem {
  IntMatrix exponents;
  RatVector rhs;
};

enum class BinomialPositive { Zero, One, Infinite };

/// Number of roots in the positive orthant: 0, 1 or infinitely many.
BinomialPositive count_positive_binomial(const BinomialSystem& sys);

/// Number of roots in (R*)^n, either 0 or 2^(n - r) with r the mod-2 rank of
/// the exponent matrix. Throws SingularExponents when det = 0.
std::uint64_t count_torus_binomial(const BinomialSystem& sys);

const char* to_string(BinomialPositive c);

}  // namespace circount
