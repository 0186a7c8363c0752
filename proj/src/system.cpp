#include "circount/system.hpp"

#include "circount/errors.hpp"

namespace circount {

void PolySystem::validate() const {
  const std::size_t n = exponents.rows();
  const std::size_t t = exponents.cols();
  if (n == 0) throw ValidationError("dimension must be positive");
  if (coeffs.rows() != n || coeffs.cols() != t) {
    throw ValidationError("coefficient matrix must be " + std::to_string(n) + "x" + std::to_string(t));
  }
  if (t != n + 1 && t != n + 2) {
    throw ValidationError("unsupported support size: t = " + std::to_string(t) + " with n = " +
                          std::to_string(n) + " (need n+1 or n+2)");
  }
  for (std::size_t a = 0; a < t; ++a)
    for (std::size_t b = a + 1; b < t; ++b) {
      bool same = true;
      for (std::size_t i = 0; i < n && same; ++i) same = exponents(i, a) == exponents(i, b);
      if (same) {
        throw ValidationError("duplicate exponent vectors at positions " + std::to_string(a) + " and " +
                              std::to_string(b));
      }
    }
  for (std::size_t i = 0; i < n; ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < t && zero; ++j) zero = coeffs(i, j) == 0;
    if (zero) throw ValidationError("equation " + std::to_string(i) + " is identically zero");
  }
  for (std::size_t j = 0; j < t; ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < n && zero; ++i) zero = coeffs(i, j) == 0;
    if (zero) throw ValidationError("monomial " + std::to_string(j) + " has only zero coefficients");
  }
}

IntMatrix lifted_support(const IntMatrix& exponents) {
  IntMatrix out(exponents.rows() + 1, exponents.cols());
  for (std::size_t j = 0; j < exponents.cols(); ++j) {
    out(0, j) = 1;
    for (std::size_t i = 0; i < exponents.rows(); ++i) out(i + 1, j) = exponents(i, j);
  }
  return out;
}

}  // namespace circount
