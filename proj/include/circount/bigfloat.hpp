#pragma once

// Dyadic numbers and ball (midpoint-radius) arithmetic with rigorous
// enclosure semantics, plus a certified natural logarithm.

#include <gmpxx.h>

#include <compare>
#include <string>

namespace circount {

/// mantissa * 2^exponent, kept canonical (odd mantissa, or zero with exponent 0).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long v) : Dyadic(mpz_class(v), 0) {}  // NOLINT(google-explicit-constructor)
  explicit Dyadic(const mpz_class& mantissa, long exponent = 0);

  static Dyadic pow2(long e) { return Dyadic(mpz_class(1), e); }

  const mpz_class& mantissa() const { return mantissa_; }
  long exponent() const { return exponent_; }

  int sign() const { return sgn(mantissa_); }
  bool is_zero() const { return sign() == 0; }

  Dyadic operator-() const { return Dyadic(-mantissa_, exponent_); }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  Dyadic abs() const { return Dyadic(::abs(mantissa_), exponent_); }

  /// Floor of log2|x| for x != 0.
  long floor_log2() const;

  /// Round to at most `bits` significant bits, toward +inf / -inf.
  Dyadic round_up(long bits) const;
  Dyadic round_down(long bits) const;

  mpq_class to_rational() const;
  double to_double() const;
  std::string to_string() const;

 private:
  void canonicalize();

  mpz_class mantissa_ = 0;
  long exponent_ = 0;
};

/// Upper (resp. lower) dyadic bound on a rational, with `bits` significant bits.
Dyadic dyadic_upper(const mpq_class& q, long bits);
Dyadic dyadic_lower(const mpq_class& q, long bits);

/// Closed interval [mid - rad, mid + rad].
struct Ball {
  Dyadic mid;
  Dyadic rad;

  Ball() = default;
  Ball(Dyadic m, Dyadic r = Dyadic());  // NOLINT(google-explicit-constructor)

  Dyadic lower() const { return mid - rad; }
  Dyadic upper() const { return mid + rad; }
  bool contains(const mpq_class& x) const;
  bool contains(const Dyadic& x) const;
};

Ball operator+(const Ball& a, const Ball& b);
Ball operator-(const Ball& a, const Ball& b);
Ball operator-(const Ball& a);
Ball operator*(const Ball& a, const Ball& b);
Ball operator*(const Ball& a, const mpz_class& k);
inline Ball operator*(const mpz_class& k, const Ball& a) { return a * k; }

/// Rounds the midpoint to `bits` significant bits and widens the radius to
/// keep the original ball enclosed. Radius mantissa is trimmed to 32 bits.
Ball round_ball(const Ball& b, long bits);

/// Smallest ball (up to radius rounding) containing both inputs.
Ball hull(const Ball& a, const Ball& b);

/// Ball around q with radius at most 2^-abs_err_bits.
Ball ball_from_rational(const mpq_class& q, long abs_err_bits);

enum class BallSign { Negative, Straddles, Positive };

/// Positive iff mid - rad > 0, Negative iff mid + rad < 0.
BallSign ball_sign(const Ball& b);

/// Ball containing log(x) with radius <= 2^-abs_err_bits. Throws DomainError for x <= 0.
Ball log_ball(const mpq_class& x, long abs_err_bits);

std::string to_string(const Ball& b);

}  // namespace circount
