#include "circount/binomial.hpp"

#include "circount/errors.hpp"

namespace circount {

namespace {

void validate(const BinomialSystem& sys) {
  const std::size_t n = sys.exponents.rows();
  if (sys.exponents.cols() != n || sys.rhs.size() != n) {
    throw DomainError("binomial system must be square with one rhs per equation");
  }
  for (const auto& c : sys.rhs)
    if (c == 0) throw DomainError("binomial rhs entries must be nonzero");
}

}  // namespace

BinomialPositive count_positive_binomial(const BinomialSystem& sys) {
  validate(sys);
  for (const auto& c : sys.rhs)
    if (c < 0) return BinomialPositive::Zero;
  const std::size_t n = sys.exponents.rows();
  if (n == 0) return BinomialPositive::One;
  // x^A = c with A = U^-1 S V^-1 becomes z^S = c^V for z = x^(U^-1)
  SmithTriple st = smith(sys.exponents);
  std::size_t rk = 0;
  while (rk < n && st.S(rk, rk) != 0) ++rk;
  if (rk == n) return BinomialPositive::One;
  for (std::size_t j = rk; j < n; ++j) {
    IntVector col = st.V.column(j);
    if (!multiplicatively_trivial(sys.rhs, col)) return BinomialPositive::Zero;
  }
  return BinomialPositive::Infinite;
}

std::uint64_t count_torus_binomial(const BinomialSystem& sys) {
  validate(sys);
  const std::size_t n = sys.exponents.rows();
  if (determinant(sys.exponents) == 0) {
    throw SingularExponents("torus count needs linearly independent exponent vectors");
  }
  if (n >= 64) throw DomainError("dimension too large for a 64-bit root count");
  SmithTriple st = smith(sys.exponents);
  const std::size_t r = rank_mod2(sys.exponents);
  // odd invariant factors come first in the divisibility chain
  for (std::size_t j = r; j < n; ++j) {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (mpz_odd_p(st.V(i, j).get_mpz_t()) && sys.rhs[i] < 0) sign = -sign;
    if (sign < 0) return 0;
  }
  return std::uint64_t{1} << (n - r);
}

const char* to_string(BinomialPositive c) {
  switch (c) {
    case BinomialPositive::Zero:
      return "0";
    case BinomialPositive::One:
      return "1";
    case BinomialPositive::Infinite:
      return "infinite";
  }
  return "?";
}

}  // namespace circount
