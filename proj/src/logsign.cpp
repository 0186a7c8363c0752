#include "circount/logsign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "circount/errors.hpp"
#include "circount/exact_linalg.hpp"

namespace circount {

namespace {

constexpr long kStartBits = 64;
constexpr long kExactTestBits = 512;
constexpr long kMaxCeilingBits = 1L << 40;

long bit_length(const mpz_class& v) {
  if (v == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

mpz_class abs_sum(std::span<const mpz_class> v) {
  mpz_class s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

// r u + s = nu * (slope u + offset) with integer r, s.
struct ScaledArg {
  mpz_class nu, r, s;
};

ScaledArg scale(const LinearArg& a) {
  ScaledArg out;
  mpz_lcm(out.nu.get_mpz_t(), a.slope.get_den_mpz_t(), a.offset.get_den_mpz_t());
  out.r = a.slope.get_num() * (out.nu / a.slope.get_den());
  out.s = a.offset.get_num() * (out.nu / a.offset.get_den());
  return out;
}

Dyadic dyadic_from_upper(long double x) {
  if (!(x > 0)) return Dyadic();
  if (!std::isfinite(x)) return Dyadic::pow2(std::numeric_limits<int>::max() / 2);
  x *= 1.0L + 1e-12L;
  int e = 0;
  long double fr = std::frexp(x, &e);
  auto mant = static_cast<unsigned long>(std::ceil(std::ldexp(fr, 62)));
  return Dyadic(mpz_class(mant), e - 62);
}

bool pole_free(const LogLinForm& l, const IsolatingInterval& j) {
  for (const auto& a : l.args) {
    int slo = sgn(a.at(j.lo));
    if (slo == 0 || slo != sgn(a.at(j.hi))) return false;
  }
  return true;
}

IsolatingInterval away_from_poles(const LogLinForm& l, const IntPoly& p, IsolatingInterval j) {
  while (!pole_free(l, j)) j = refine(p, j, j.width() / 2);
  return j;
}

bool fits_ulong(const mpz_class& v) { return v.fits_ulong_p(); }

mpz_class pow_ul(const mpz_class& base, const mpz_class& e) {
  if (!fits_ulong(e)) throw DomainError("exponent too large for exact evaluation");
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e.get_ui());
  return r;
}

IntPoly powmod(IntPoly base, mpz_class e, const IntPoly& monic) {
  IntPoly result{1};
  base = rem_monic(base, monic);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = rem_monic(result * base, monic);
    e >>= 1;
    if (e > 0) base = rem_monic(base * base, monic);
  }
  return result;
}

}  // namespace

void LogLinForm::validate() const {
  if (coeffs.size() != args.size()) throw DomainError("log form: coefficient and argument counts differ");
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (coeffs[i] == 0) throw DomainError("log form: zero coefficient");
    if (args[i].slope == 0 && args[i].offset == 0) throw DomainError("log form: zero argument");
    for (std::size_t k = 0; k < i; ++k) {
      if (args[i].slope * args[k].offset == args[i].offset * args[k].slope) {
        throw DomainError("log form: proportional arguments " + std::to_string(k) + " and " +
                          std::to_string(i));
      }
    }
  }
}

std::string to_string(const LogLinForm& l) {
  std::ostringstream os;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i) os << " + ";
    os << l.coeffs[i].get_str() << "*log|" << l.args[i].slope.get_str() << "*u + "
       << l.args[i].offset.get_str() << "|";
  }
  return os.str();
}

bool operator<(const Endpoint& a, const Endpoint& b) {
  using K = Endpoint::Kind;
  if (a.kind == K::NegInf) return b.kind != K::NegInf;
  if (a.kind == K::PosInf) return false;
  if (b.kind == K::NegInf) return false;
  if (b.kind == K::PosInf) return true;
  return a.value < b.value;
}

std::string to_string(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::NegInf:
      return "-inf";
    case Endpoint::Kind::PosInf:
      return "+inf";
    case Endpoint::Kind::Finite:
      break;
  }
  return e.value.get_str();
}

long PrecisionBudget::ceiling_bits(long cap) const {
  long bits = kMaxCeilingBits;
  if (!rho.is_zero() && rho.floor_log2() < 40) {
    bits = static_cast<long>(std::ceil(rho.to_double()));
  }
  if (cap > 0) bits = std::min(bits, cap);
  return bits;
}

PrecisionBudget precision_budget(const LogLinForm& l) {
  PrecisionBudget b;
  b.terms = l.size();
  b.max_coeff = 0;
  for (const auto& c : l.coeffs) b.max_coeff = std::max(b.max_coeff, mpz_class(abs(c)));
  long double log_h = 1.0L;
  for (const auto& a : l.args) {
    log_h = std::max(log_h, static_cast<long double>(height(a.slope).approx()));
    log_h = std::max(log_h, static_cast<long double>(height(a.offset).approx()));
  }
  b.log_height = dyadic_from_upper(log_h);

  const long double m = std::max<long double>(static_cast<long double>(b.terms), 1.0L);
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, b.max_coeff.get_mpz_t());
  long double log_b = b.max_coeff == 0 ? 0.0L
                                       : std::log(static_cast<long double>(mant)) +
                                             static_cast<long double>(exp2) * std::log(2.0L);
  log_b = std::max(log_b, 0.0L);

  long double a_base = 2 * std::log(m) + (m - 1) * std::log(16.0L) + 2 * log_b + (6 * m - 2) * log_h;
  long double a_bound = std::pow(a_base, m);
  long double e_bound = 1.4L * std::pow(m, 6.5L) * std::pow(30.0L, m + 3) * (1 + std::log(m)) *
                        (1 + std::log(m) + log_b) * a_bound;
  // log(8 + m 2^(m+2) B H^(2m)) <= log 2 + max(log 8, log m + (m+2) log 2 + log B + 2m log H)
  long double big = std::log(m) + (m + 2) * std::log(2.0L) + log_b + 2 * m * log_h;
  long double log_sum = std::log(2.0L) + std::max(std::log(8.0L), big);
  long double d_bound = m * m * std::exp(1.0L) + (m + 2) * log_sum;
  long double rho = 1.443L * (d_bound + std::log(12 * m) + e_bound);

  b.a_bound = dyadic_from_upper(a_bound);
  b.e_bound = dyadic_from_upper(e_bound);
  b.d_bound = dyadic_from_upper(d_bound);
  b.rho = dyadic_from_upper(rho);
  return b;
}

IntPoly critical_poly(const LogLinForm& l) {
  const std::size_t n = l.size();
  std::vector<IntPoly> factors;
  std::vector<ScaledArg> sc;
  for (const auto& a : l.args) {
    sc.push_back(scale(a));
    factors.emplace_back(std::vector<mpz_class>{sc.back().s, sc.back().r});
  }
  std::vector<IntPoly> prefix(n + 1, IntPoly{1});
  std::vector<IntPoly> suffix(n + 1, IntPoly{1});
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] * factors[i];
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] * factors[i];
  IntPoly g;
  for (std::size_t j = 0; j < n; ++j) {
    if (sc[j].r == 0) continue;
    g = g + mpz_class(l.coeffs[j] * sc[j].r) * (prefix[j] * suffix[j + 1]);
  }
  return primitive_part(g);
}

mpz_class critical_poly_bound(const LogLinForm& l) {
  const std::size_t m = l.size();
  mpz_class b = 0;
  mpz_class h = 1;
  for (std::size_t i = 0; i < m; ++i) {
    b = std::max(b, mpz_class(abs(l.coeffs[i])));
    for (const mpq_class* q : {&l.args[i].slope, &l.args[i].offset}) {
      h = std::max(h, mpz_class(abs(q->get_num())));
      h = std::max(h, mpz_class(q->get_den()));
    }
  }
  mpz_class hp;
  mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), 2 * m);
  mpz_class two = mpz_class(1) << static_cast<mp_bitcnt_t>(m > 0 ? m - 1 : 0);
  return mpz_class(static_cast<unsigned long>(m)) * two * b * hp;
}

CriticalSet critical_set(const LogLinForm& l) {
  CriticalSet cs;
  cs.g = critical_poly(l);
  if (cs.g.is_zero()) return cs;
  cs.p = squarefree_part(cs.g);
  if (cs.p.degree() >= 1) cs.intervals = isolate_real_roots(cs.p);
  return cs;
}

ZeroTest exact_zero_test(const LogLinForm& l, const IsolatingInterval& j) {
  return exact_zero_test(l, critical_set(l), j);
}

ZeroTest exact_zero_test(const LogLinForm& l, const CriticalSet& cs, IsolatingInterval j) {
  const IntPoly& p = cs.p;
  if (p.degree() < 1 || !(j.lo < j.hi) || sign_at(p, j.lo) * sign_at(p, j.hi) >= 0) {
    throw NotACriticalPoint("interval " + to_string(j) + " does not isolate a critical point");
  }
  j = away_from_poles(l, p, j);

  // beta = lc * u* is a root of the monic integer polynomial pt(v) = lc^(d-1) p(v / lc)
  const mpz_class lc = p.lead();
  const int d = p.degree();
  std::vector<mpz_class> ptc(static_cast<std::size_t>(d) + 1);
  mpz_class lcpow = 1;
  for (int k = d - 1; k >= 0; --k) {
    ptc[static_cast<std::size_t>(k)] = p.coeff(k) * lcpow;
    lcpow *= lc;
  }
  ptc[static_cast<std::size_t>(d)] = 1;
  IntPoly pt(std::move(ptc));

  IntPoly x{1};
  IntPoly y{1};
  mpz_class cx = 1;
  mpz_class cy = 1;
  mpz_class pos_total = 0;
  mpz_class neg_total = 0;
  int sigma = 1;
  for (std::size_t i = 0; i < l.size(); ++i) {
    ScaledArg sa = scale(l.args[i]);
    IntPoly r(std::vector<mpz_class>{sa.s * lc, sa.r});
    const mpz_class& b = l.coeffs[i];
    mpz_class e = abs(b);
    if (mpz_odd_p(e.get_mpz_t()) && sgn(l.args[i].at(j.lo)) < 0) sigma = -sigma;
    if (b > 0) {
      x = rem_monic(x * powmod(r, e, pt), pt);
      cy *= pow_ul(sa.nu, e);
      pos_total += e;
    } else {
      y = rem_monic(y * powmod(r, e, pt), pt);
      cx *= pow_ul(sa.nu, e);
      neg_total += e;
    }
  }
  cx *= pow_ul(lc, neg_total);
  cy *= pow_ul(lc, pos_total);
  IntPoly h = cx * x - mpz_class(sigma) * (cy * y);
  if (h.is_zero()) return ZeroTest::Zero;
  IntPoly g = gcd(pt, h);
  if (g.degree() < 1) return ZeroTest::NonZero;
  if (sign_at(g, lc * j.lo) * sign_at(g, lc * j.hi) < 0) return ZeroTest::Zero;
  return ZeroTest::NonZero;
}

Ball evaluate_ball(const LogLinForm& l, const IsolatingInterval& j, long abs_err_bits) {
  long w = abs_err_bits + bit_length(abs_sum(l.coeffs)) + 2;
  Ball total;
  for (std::size_t i = 0; i < l.size(); ++i) {
    mpq_class vlo = abs(l.args[i].at(j.lo));
    mpq_class vhi = abs(l.args[i].at(j.hi));
    if (vlo == 0 || vhi == 0) throw DomainError("evaluate_ball: interval touches a pole");
    Ball t = log_ball(vlo, w);
    if (vhi != vlo) t = hull(t, log_ball(vhi, w));
    total = total + t * l.coeffs[i];
  }
  return total;
}

Ball evaluate_ball(const LogLinForm& l, const mpq_class& u, long abs_err_bits) {
  return evaluate_ball(l, IsolatingInterval{u, u}, abs_err_bits);
}

int sign_at_critical_point(const LogLinForm& l, const CriticalSet& cs, IsolatingInterval j,
                           long ceiling_bits) {
  j = away_from_poles(l, cs.p, j);
  bool tested = false;
  for (long prec = kStartBits;; prec *= 2) {
    long use = std::min(prec, std::max(ceiling_bits, 1L));
    j = refine(cs.p, j, mpq_class(1) / (mpz_class(1) << static_cast<mp_bitcnt_t>(use)));
    Ball b = evaluate_ball(l, j, use + 4);
    switch (ball_sign(b)) {
      case BallSign::Positive:
        return 1;
      case BallSign::Negative:
        return -1;
      case BallSign::Straddles:
        break;
    }
    if (!tested && (use >= kExactTestBits || use >= ceiling_bits)) {
      tested = true;
      if (exact_zero_test(l, cs, j) == ZeroTest::Zero) return 0;
    }
    if (use >= ceiling_bits) {
      throw BudgetExceeded("sign at critical point " + to_string(j) + " unresolved at " +
                           std::to_string(use) + " bits");
    }
  }
}

int sign_at_critical_point(const LogLinForm& l, const IsolatingInterval& j, const PrecisionBudget& budget) {
  return sign_at_critical_point(l, critical_set(l), j, budget.ceiling_bits());
}

int log_form_sign(std::span<const mpq_class> bases, std::span<const mpz_class> exponents, long ceiling_bits) {
  if (bases.size() != exponents.size()) throw DomainError("log_form_sign: size mismatch");
  bool all_zero = std::all_of(exponents.begin(), exponents.end(), [](const mpz_class& e) { return e == 0; });
  if (all_zero || multiplicatively_trivial(bases, exponents)) return 0;
  long guard = bit_length(abs_sum(exponents)) + 2;
  for (long prec = kStartBits;; prec *= 2) {
    long use = std::min(prec, std::max(ceiling_bits, 1L));
    Ball total;
    for (std::size_t i = 0; i < bases.size(); ++i) {
      if (exponents[i] == 0) continue;
      total = total + log_ball(abs(bases[i]), use + guard) * exponents[i];
    }
    switch (ball_sign(total)) {
      case BallSign::Positive:
        return 1;
      case BallSign::Negative:
        return -1;
      case BallSign::Straddles:
        break;
    }
    if (use >= ceiling_bits) {
      throw BudgetExceeded("logarithmic form unresolved at " + std::to_string(use) + " bits");
    }
  }
}

int sign_at_rational(const LogLinForm& l, const mpq_class& w, long ceiling_bits) {
  std::vector<mpq_class> vals;
  for (const auto& a : l.args) {
    vals.push_back(a.at(w));
    if (vals.back() == 0) throw DomainError("sign_at_rational: " + w.get_str() + " is a pole");
  }
  return log_form_sign(vals, l.coeffs, ceiling_bits);
}

int endpoint_limit_sign(const LogLinForm& l, const Endpoint& e, Side side, long ceiling_bits) {
  (void)side;  // log|.| makes the two one-sided limits agree
  if (e.finite()) {
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (l.args[i].has_pole() && l.args[i].pole() == e.value) return -sgn(l.coeffs[i]);
    }
    throw NotAPole(e.value.get_str() + " is not a pole of L");
  }
  mpz_class c_inf = 0;
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l.args[i].has_pole()) c_inf += l.coeffs[i];
  if (c_inf != 0) return sgn(c_inf);
  std::vector<mpq_class> bases;
  for (const auto& a : l.args) bases.push_back(a.has_pole() ? a.slope : a.offset);
  return log_form_sign(bases, l.coeffs, ceiling_bits);
}

int endpoint_sign(const LogLinForm& l, const Endpoint& e, Side side, long ceiling_bits) {
  if (e.finite()) {
    bool is_pole = std::any_of(l.args.begin(), l.args.end(),
                               [&](const LinearArg& a) { return a.has_pole() && a.pole() == e.value; });
    if (!is_pole) return sign_at_rational(l, e.value, ceiling_bits);
  }
  return endpoint_limit_sign(l, e, side, ceiling_bits);
}

std::vector<IsolatingInterval> interior_roots(const IntPoly& p, const std::vector<IsolatingInterval>& roots,
                                              const Endpoint& lo, const Endpoint& hi) {
  std::vector<IsolatingInterval> out;
  for (IsolatingInterval j : roots) {
    if (lo.kind == Endpoint::Kind::PosInf || hi.kind == Endpoint::Kind::NegInf) break;
    if (lo.finite()) {
      if (j.hi <= lo.value) continue;
      if (j.lo < lo.value && !split_at(p, j, lo.value)) continue;
      if (j.hi <= lo.value) continue;
    }
    if (hi.finite()) {
      if (j.lo >= hi.value) continue;
      if (hi.value < j.hi && !split_at(p, j, hi.value)) continue;
      if (j.lo >= hi.value) continue;
    }
    out.push_back(j);
  }
  return out;
}

IntervalCount count_roots_in_interval(const LogLinForm& l, const CriticalSet& cs, const Endpoint& lo,
                                      const Endpoint& hi, long ceiling_bits) {
  if (!(lo < hi)) throw DomainError("count_roots_in_interval: empty interval");
  if (cs.g.is_zero()) throw DomainError("count_roots_in_interval: L is constant");
  for (const auto& a : l.args) {
    if (!a.has_pole()) continue;
    Endpoint pe = Endpoint::at(a.pole());
    if (lo < pe && pe < hi) throw DomainError("count_roots_in_interval: pole " + to_string(pe) + " inside");
  }
  IntervalCount res;
  res.critical = interior_roots(cs.p, cs.intervals, lo, hi);
  res.signs.push_back(endpoint_sign(l, lo, Side::Right, ceiling_bits));
  for (const auto& j : res.critical) {
    int s = sign_at_critical_point(l, cs, j, ceiling_bits);
    if (s == 0) ++res.degenerate;
    res.signs.push_back(s);
  }
  res.signs.push_back(endpoint_sign(l, hi, Side::Left, ceiling_bits));
  for (std::size_t i = 0; i + 1 < res.signs.size(); ++i)
    if (res.signs[i] * res.signs[i + 1] < 0) ++res.sign_changes;
  return res;
}

IntervalCount count_roots_in_interval(const LogLinForm& l, const Endpoint& lo, const Endpoint& hi,
                                      const PrecisionBudget& budget) {
  return count_roots_in_interval(l, critical_set(l), lo, hi, budget.ceiling_bits());
}

}  // namespace circount
