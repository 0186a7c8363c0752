#include "circount/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "circount/errors.hpp"

namespace circount {

namespace {

long bit_length(const mpz_class& v) {
  if (v == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

mpz_class shl(const mpz_class& v, long s) {
  mpz_class r;
  if (s >= 0) {
    mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
  } else {
    mpz_tdiv_q_2exp(r.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(-s));
  }
  return r;
}

Dyadic ldexp(const Dyadic& d, long e) { return Dyadic(d.mantissa(), d.exponent() + e); }

constexpr long kRadiusBits = 32;

}  // namespace

Dyadic::Dyadic(const mpz_class& mantissa, long exponent) : mantissa_(mantissa), exponent_(exponent) {
  canonicalize();
}

void Dyadic::canonicalize() {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  mp_bitcnt_t tz = mpz_scan1(mantissa_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_tdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), tz);
    exponent_ += static_cast<long>(tz);
  }
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  long e = std::min(a.exponent_, b.exponent_);
  mpz_class m = shl(a.mantissa_, a.exponent_ - e) + shl(b.mantissa_, b.exponent_ - e);
  return Dyadic(m, e);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

long Dyadic::floor_log2() const {
  if (is_zero()) throw DomainError("floor_log2 of zero");
  return bit_length(mantissa_) - 1 + exponent_;
}

Dyadic Dyadic::round_up(long bits) const {
  long len = bit_length(mantissa_);
  if (len <= bits) return *this;
  long shift = len - bits;
  mpz_class q;
  mpz_cdiv_q_2exp(q.get_mpz_t(), mantissa_.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  return Dyadic(q, exponent_ + shift);
}

Dyadic Dyadic::round_down(long bits) const {
  long len = bit_length(mantissa_);
  if (len <= bits) return *this;
  long shift = len - bits;
  mpz_class q;
  mpz_fdiv_q_2exp(q.get_mpz_t(), mantissa_.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  return Dyadic(q, exponent_ + shift);
}

mpq_class Dyadic::to_rational() const {
  if (exponent_ >= 0) return mpq_class(shl(mantissa_, exponent_));
  mpq_class r(mantissa_, shl(mpz_class(1), -exponent_));
  r.canonicalize();
  return r;
}

double Dyadic::to_double() const {
  if (is_zero()) return 0.0;
  long e = 0;
  double d = mpz_get_d_2exp(&e, mantissa_.get_mpz_t());
  return std::ldexp(d, static_cast<int>(std::clamp(e + exponent_, -100000L, 100000L)));
}

std::string Dyadic::to_string() const {
  std::ostringstream os;
  os << mantissa_.get_str();
  if (exponent_ != 0) os << "*2^" << exponent_;
  return os.str();
}

Dyadic dyadic_upper(const mpq_class& q, long bits) {
  if (q == 0) return Dyadic();
  long s = bits - (bit_length(abs(q.get_num())) - bit_length(q.get_den())) + 1;
  mpz_class num = shl(q.get_num(), std::max(s, 0L));
  mpz_class den = shl(q.get_den(), std::max(-s, 0L));
  mpz_class m;
  mpz_cdiv_q(m.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return Dyadic(m, -s);
}

Dyadic dyadic_lower(const mpq_class& q, long bits) {
  if (q == 0) return Dyadic();
  long s = bits - (bit_length(abs(q.get_num())) - bit_length(q.get_den())) + 1;
  mpz_class num = shl(q.get_num(), std::max(s, 0L));
  mpz_class den = shl(q.get_den(), std::max(-s, 0L));
  mpz_class m;
  mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return Dyadic(m, -s);
}

Ball::Ball(Dyadic m, Dyadic r) : mid(std::move(m)), rad(std::move(r)) {
  if (rad.sign() < 0) throw DomainError("negative ball radius");
}

bool Ball::contains(const mpq_class& x) const {
  return lower().to_rational() <= x && x <= upper().to_rational();
}

bool Ball::contains(const Dyadic& x) const { return lower() <= x && x <= upper(); }

Ball operator+(const Ball& a, const Ball& b) {
  return Ball(a.mid + b.mid, (a.rad + b.rad).round_up(kRadiusBits));
}

Ball operator-(const Ball& a, const Ball& b) {
  return Ball(a.mid - b.mid, (a.rad + b.rad).round_up(kRadiusBits));
}

Ball operator-(const Ball& a) { return Ball(-a.mid, a.rad); }

Ball operator*(const Ball& a, const Ball& b) {
  Dyadic r = a.mid.abs() * b.rad + b.mid.abs() * a.rad + a.rad * b.rad;
  return Ball(a.mid * b.mid, r.round_up(kRadiusBits));
}

Ball operator*(const Ball& a, const mpz_class& k) {
  Dyadic dk(k);
  return Ball(a.mid * dk, (a.rad * dk.abs()).round_up(kRadiusBits));
}

Ball round_ball(const Ball& b, long bits) {
  Dyadic m = b.mid.round_down(bits);
  Dyadic err = (b.mid - m).abs();
  return Ball(m, (b.rad + err).round_up(kRadiusBits));
}

Ball hull(const Ball& a, const Ball& b) {
  Dyadic lo = std::min(a.lower(), b.lower());
  Dyadic hi = std::max(a.upper(), b.upper());
  return Ball(ldexp(lo + hi, -1), ldexp(hi - lo, -1).round_up(kRadiusBits));
}

Ball ball_from_rational(const mpq_class& q, long abs_err_bits) {
  mpz_class num = shl(q.get_num(), abs_err_bits);
  mpz_class m;
  mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  Dyadic mid(m, -abs_err_bits);
  if (mid.to_rational() == q) return Ball(mid);
  return Ball(mid, Dyadic::pow2(-abs_err_bits));
}

BallSign ball_sign(const Ball& b) {
  if (b.lower().sign() > 0) return BallSign::Positive;
  if (b.upper().sign() < 0) return BallSign::Negative;
  return BallSign::Straddles;
}

namespace {

// Fixed-point value of atanh(a/b) in units of 2^-w, for |a/b| <= 1/3.
struct FixedValue {
  mpz_class value;
  mpz_class error;  // absolute error bound, same units
};

FixedValue atanh_fixed(const mpz_class& a, const mpz_class& b, long w) {
  // Truncating recurrence: power_j ~ z^(2j+1) 2^w with error <= 1/(1-z^2) <= 9/8,
  // each term adds <= 3 units; the tail once power_j hits zero is <= 3 units.
  mpz_class a2 = a * a;
  mpz_class b2 = b * b;
  mpz_class power = shl(a, w) / b;
  mpz_class sum = 0;
  long terms = 0;
  while (power != 0) {
    sum += power / (2 * terms + 1);
    power = power * a2 / b2;
    ++terms;
  }
  return {sum, mpz_class(3 * terms + 3)};
}

struct Log2Cache {
  long bits = 0;
  FixedValue value;
};

// log 2 = 2 atanh(1/3), cached per thread at the widest precision seen.
FixedValue log2_fixed(long w) {
  thread_local Log2Cache cache;
  if (cache.bits < w) {
    long target = std::max(w, 2 * cache.bits);
    FixedValue v = atanh_fixed(mpz_class(1), mpz_class(3), target);
    cache.bits = target;
    cache.value = {2 * v.value, 2 * v.error};
  }
  long drop = cache.bits - w;
  if (drop == 0) return cache.value;
  mpz_class err;
  mpz_cdiv_q_2exp(err.get_mpz_t(), cache.value.error.get_mpz_t(), static_cast<mp_bitcnt_t>(drop));
  return {shl(cache.value.value, -drop), err + 1};
}

}  // namespace

Ball log_ball(const mpq_class& x, long abs_err_bits) {
  if (x <= 0) throw DomainError("log of non-positive number " + x.get_str());
  if (abs_err_bits < 1) abs_err_bits = 1;
  if (x == 1) return Ball();

  mpz_class yn = x.get_num();
  mpz_class yd = x.get_den();
  long k = bit_length(yn) - bit_length(yd);
  if (k >= 0) {
    yd = shl(yd, k);
  } else {
    yn = shl(yn, -k);
  }
  // now y = yn/yd lies in (1/2, 2); move it into [2/3, 4/3]
  if (3 * yn > 4 * yd) {
    yd *= 2;
    ++k;
  } else if (3 * yn < 2 * yd) {
    yn *= 2;
    --k;
  }
  mpz_class za = yn - yd;
  mpz_class zb = yn + yd;

  long w = abs_err_bits + bit_length(mpz_class(std::abs(k) + 1)) + bit_length(mpz_class(abs_err_bits)) + 8;
  for (;;) {
    FixedValue z = atanh_fixed(za, zb, w);
    mpz_class center = 2 * z.value;
    mpz_class error = 2 * z.error;
    if (k != 0) {
      FixedValue l2 = log2_fixed(w);
      center += k * l2.value;
      error += std::abs(k) * l2.error;
    }
    if (error <= shl(mpz_class(1), w - abs_err_bits)) {
      return Ball(Dyadic(center, -w), Dyadic(error, -w).round_up(kRadiusBits));
    }
    w += bit_length(error) + 2;
  }
}

std::string to_string(const Ball& b) {
  std::ostringstream os;
  os << "[" << b.mid.to_double() << " +/- " << b.rad.to_double() << "]";
  return os.str();
}

}  // namespace circount
