#pragma once

// Sign determination for univariate linear forms in logarithms
//   L(u) = sum_i b_i log|s_i u + o_i|
// and root counting of L on intervals via its critical values.

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

#include "circount/bigfloat.hpp"
#include "circount/unipoly.hpp"

namespace circount {

/// The affine function slope * u + offset.
struct LinearArg {
  mpq_class slope;
  mpq_class offset;

  mpq_class at(const mpq_class& u) const { return slope * u + offset; }
  bool has_pole() const { return slope != 0; }
  /// Zero of the argument; requires slope != 0.
  mpq_class pole() const { return -offset / slope; }
  friend bool operator==(const LinearArg&, const LinearArg&) = default;
};

/// L(u) = sum_i coeffs[i] * log|args[i](u)|. Coefficients are nonzero and
/// arguments pairwise non-proportional, so poles are distinct.
struct LogLinForm {
  std::vector<mpz_class> coeffs;
  std::vector<LinearArg> args;

  std::size_t size() const { return coeffs.size(); }
  /// Throws DomainError when an invariant fails.
  void validate() const;
};

std::string to_string(const LogLinForm& l);

/// A finite rational or one of the two infinities.
struct Endpoint {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  mpq_class value;

  static Endpoint neg_inf() { return {Kind::NegInf, 0}; }
  static Endpoint pos_inf() { return {Kind::PosInf, 0}; }
  static Endpoint at(const mpq_class& v) { return {Kind::Finite, v}; }
  bool finite() const { return kind == Kind::Finite; }
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// Strict order on endpoints.
bool operator<(const Endpoint& a, const Endpoint& b);
std::string to_string(const Endpoint& e);

enum class Side { Left, Right };

/// Worst-case precision data for sign decisions. All fields are upper bounds.
struct PrecisionBudget {
  std::size_t terms = 0;  // number of logarithms
  mpz_class max_coeff;    // B
  Dyadic log_height;      // max{1, max height of slopes and offsets}
  Dyadic a_bound;
  Dyadic e_bound;
  Dyadic d_bound;
  Dyadic rho;

  /// ceil(rho) clamped to a representable range, optionally lowered by `cap`.
  long ceiling_bits(long cap = 0) const;
};

PrecisionBudget precision_budget(const LogLinForm& l);

/// Integer polynomial whose real roots are the critical points of L:
/// sum_j b_j r_j prod_{k != j} (r_k u + s_k), where r_k u + s_k is args[k]
/// scaled by the lcm of its denominators. Primitive, positive leading coefficient.
IntPoly critical_poly(const LogLinForm& l);

/// M * 2^(M-1) * B * H^(2M), the coefficient bound for critical_poly with M
/// terms, B = max|b| and H the largest numerator or denominator.
mpz_class critical_poly_bound(const LogLinForm& l);

struct CriticalSet {
  IntPoly g;                                // critical_poly
  IntPoly p;                                // its square-free part
  std::vector<IsolatingInterval> intervals; // real roots of p, sorted
};

CriticalSet critical_set(const LogLinForm& l);

enum class ZeroTest { Zero, NonZero };

/// Exact decision of L(u*) = 0 at the critical point u* isolated by j.
/// Throws NotACriticalPoint when j does not isolate a root of the critical polynomial.
ZeroTest exact_zero_test(const LogLinForm& l, const IsolatingInterval& j);
ZeroTest exact_zero_test(const LogLinForm& l, const CriticalSet& cs, IsolatingInterval j);

/// Sign of L at the critical point isolated by j. Balls start at 64 bits and
/// double; exceeding `ceiling_bits` throws BudgetExceeded.
int sign_at_critical_point(const LogLinForm& l, const CriticalSet& cs, IsolatingInterval j,
                           long ceiling_bits);
int sign_at_critical_point(const LogLinForm& l, const IsolatingInterval& j,
                           const PrecisionBudget& budget);

/// Sign of sum_i e_i log|q_i| for nonzero rationals q_i.
int log_form_sign(std::span<const mpq_class> bases, std::span<const mpz_class> exponents,
                  long ceiling_bits);

/// Sign of L(w) at a rational w that is not a pole.
int sign_at_rational(const LogLinForm& l, const mpq_class& w, long ceiling_bits);

/// Sign of the limit of L at a pole or at +-infinity. Throws NotAPole for a
/// finite non-pole.
int endpoint_limit_sign(const LogLinForm& l, const Endpoint& e, Side side, long ceiling_bits);

/// endpoint_limit_sign at poles and infinities, sign_at_rational elsewhere.
int endpoint_sign(const LogLinForm& l, const Endpoint& e, Side side, long ceiling_bits);

/// Ball enclosing L on the closed interval j, which must avoid every pole.
Ball evaluate_ball(const LogLinForm& l, const IsolatingInterval& j, long abs_err_bits);
/// Ball enclosing L(u) at a rational non-pole u.
Ball evaluate_ball(const LogLinForm& l, const mpq_class& u, long abs_err_bits);

/// Roots of L on the open interval (lo, hi), counted from the sign sequence
/// (left limit, critical values, right limit).
struct IntervalCount {
  std::vector<int> signs;                   // left, critical values..., right
  std::vector<IsolatingInterval> critical;  // interior critical points, sorted
  long sign_changes = 0;
  long degenerate = 0;

  long total() const { return sign_changes + degenerate; }
};

IntervalCount count_roots_in_interval(const LogLinForm& l, const CriticalSet& cs, const Endpoint& lo,
                                      const Endpoint& hi, long ceiling_bits);
IntervalCount count_roots_in_interval(const LogLinForm& l, const Endpoint& lo, const Endpoint& hi,
                                      const PrecisionBudget& budget);

/// Critical intervals lying strictly inside (lo, hi), split at finite
/// endpoints; roots sitting exactly on an endpoint are dropped.
std::vector<IsolatingInterval> interior_roots(const IntPoly& p, const std::vector<IsolatingInterval>& roots,
                                              const Endpoint& lo, const Endpoint& hi);

}  // namespace circount
