#pragma once

// Univariate integer polynomials: exact arithmetic, square-free parts,
// certified real-root isolation and the classical root bounds.

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

#include "circount/bigfloat.hpp"

namespace circount {

/// Dense polynomial with integer coefficients, constant term first.
/// The zero polynomial has no coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly monomial(const mpz_class& c, int degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const mpz_class& lead() const { return coeffs_.back(); }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  /// Coefficient of u^k, zero past the degree.
  mpz_class coeff(int k) const;

  friend bool operator==(const IntPoly& a, const IntPoly& b) = default;
  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const mpz_class& k, const IntPoly& a);
  IntPoly operator-() const;

  /// Largest coefficient magnitude |f|_inf.
  mpz_class max_norm() const;

 private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

std::string to_string(const IntPoly& f);

IntPoly derivative(const IntPoly& f);

/// gcd of the coefficients, zero for the zero polynomial.
mpz_class content(const IntPoly& f);

/// f / content(f), with positive leading coefficient.
IntPoly primitive_part(const IntPoly& f);

/// lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

/// Primitive gcd with positive leading coefficient; gcd(0, 0) = 0.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

/// a / b when b divides a over Z[u]. Throws DomainError otherwise.
IntPoly exact_quotient(const IntPoly& a, const IntPoly& b);

/// Remainder of a modulo a monic polynomial.
IntPoly rem_monic(const IntPoly& a, const IntPoly& monic);

/// Primitive square-free part f / gcd(f, f'). Throws ZeroPolynomial.
IntPoly squarefree_part(const IntPoly& f);

/// Exact sign of f(q).
int sign_at(const IntPoly& f, const mpq_class& q);

/// Exact value f(q).
mpq_class eval(const IntPoly& f, const mpq_class& q);

/// Open interval (lo, hi) holding exactly one real root of some polynomial.
struct IsolatingInterval {
  mpq_class lo;
  mpq_class hi;

  mpq_class width() const { return hi - lo; }
  friend bool operator==(const IsolatingInterval&, const IsolatingInterval&) = default;
};

std::string to_string(const IsolatingInterval& j);

/// Sign variations of (x+1)^d f((a x + b)/(x + 1)): an upper bound on the
/// number of roots of f in (a, b), exact when it is 0 or 1.
long descartes_bound(const IntPoly& f, const mpq_class& a, const mpq_class& b);

/// One interval per distinct real root of f, sorted and pairwise disjoint.
/// The intervals isolate the roots of squarefree_part(f). Throws ZeroPolynomial.
std::vector<IsolatingInterval> isolate_real_roots(const IntPoly& f);

/// Bisects j until its width is at most `width`. f must change sign on j
/// (use the square-free part); throws NotIsolating when it does not.
IsolatingInterval refine(const IntPoly& f, IsolatingInterval j, const mpq_class& width);

/// Splits j at a point x inside it. If f(x) = 0 the root is x and nullopt-like
/// behaviour is signalled by returning false; otherwise j becomes the half
/// holding the root.
bool split_at(const IntPoly& f, IsolatingInterval& j, const mpq_class& x);

/// 1 + |f|_inf, which exceeds the magnitude of every root.
mpq_class cauchy_root_bound(const IntPoly& f);

/// Positive dyadic below the distance between any two distinct roots of f.
/// Throws DegreeTooSmall when deg f < 2.
Dyadic root_separation_bound(const IntPoly& f);

}  // namespace circount
