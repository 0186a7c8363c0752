#pragma once

// Integer polynomial systems given by an exponent support and a coefficient matrix.

#include <string>

#include "circount/exact_linalg.hpp"

namespace circount {

/// n equations in n variables. Column j of `exponents` (n x t) is the
/// exponent vector a_j; coeffs(i, j) is the coefficient of x^{a_j} in f_i.
struct PolySystem {
  IntMatrix exponents;
  IntMatrix coeffs;

  std::size_t dim() const { return exponents.rows(); }
  std::size_t terms() const { return exponents.cols(); }

  /// Throws ValidationError on shape mismatch, t outside {n+1, n+2},
  /// repeated exponent vectors, zero equations or unused monomials.
  void validate() const;

  friend bool operator==(const PolySystem&, const PolySystem&) = default;
};

/// The support matrix with a row of ones on top, (n+1) x t.
IntMatrix lifted_support(const IntMatrix& exponents);

}  // namespace circount
