#include "circount/unipoly.hpp"

#include <algorithm>
#include <sstream>

#include "circount/errors.hpp"

namespace circount {

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

IntPoly IntPoly::monomial(const mpz_class& c, int degree) {
  std::vector<mpz_class> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class IntPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return IntPoly(std::move(c));
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPoly(std::move(c));
}

IntPoly operator*(const mpz_class& k, const IntPoly& a) {
  std::vector<mpz_class> c = a.coeffs_;
  for (auto& x : c) x *= k;
  return IntPoly(std::move(c));
}

mpz_class IntPoly::max_norm() const {
  mpz_class m = 0;
  for (const auto& c : coeffs_) m = std::max(m, mpz_class(abs(c)));
  return m;
}

std::string to_string(const IntPoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = f.degree(); k >= 0; --k) {
    mpz_class c = f.coeff(k);
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    mpz_class a = abs(c);
    if (a != 1 || k == 0) os << a.get_str();
    if (k > 0) os << (a != 1 ? "*u" : "u");
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

IntPoly derivative(const IntPoly& f) {
  if (f.degree() < 1) return {};
  std::vector<mpz_class> c(static_cast<std::size_t>(f.degree()));
  for (int k = 1; k <= f.degree(); ++k) c[static_cast<std::size_t>(k - 1)] = k * f.coeff(k);
  return IntPoly(std::move(c));
}

mpz_class content(const IntPoly& f) {
  mpz_class g = 0;
  for (const auto& c : f.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IntPoly primitive_part(const IntPoly& f) {
  if (f.is_zero()) return f;
  mpz_class g = content(f);
  if (f.lead() < 0) g = -g;
  std::vector<mpz_class> c = f.coeffs();
  for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(c));
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw DomainError("pseudo-remainder by zero polynomial");
  std::vector<mpz_class> r = a.coeffs();
  const int db = b.degree();
  const mpz_class& lb = b.lead();
  int dr = a.degree();
  int steps = std::max(a.degree() - db + 1, 0);
  while (dr >= db && dr >= 0) {
    mpz_class lr = r[static_cast<std::size_t>(dr)];
    for (auto& x : r) x *= lb;
    for (int k = 0; k <= db; ++k) r[static_cast<std::size_t>(dr - db + k)] -= lr * b.coeff(k);
    --steps;
    IntPoly t(r);
    r = t.coeffs();
    dr = t.degree();
  }
  // keep the lc(b)^(deg a - deg b + 1) normalization
  IntPoly out(r);
  if (steps > 0) {
    mpz_class f;
    mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(steps));
    out = f * out;
  }
  return out;
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  IntPoly x = primitive_part(a);
  IntPoly y = primitive_part(b);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPoly r = pseudo_remainder(x, y);
    x = y;
    y = primitive_part(r);
  }
  return primitive_part(x);
}

IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw DomainError("division by zero polynomial");
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) throw DomainError("exact_quotient: degree mismatch");
  std::vector<mpz_class> r = a.coeffs();
  std::vector<mpz_class> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const mpz_class& lb = b.lead();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    mpz_class& top = r[static_cast<std::size_t>(k + b.degree())];
    if (top % lb != 0) throw DomainError("exact_quotient: not divisible");
    mpz_class t = top / lb;
    q[static_cast<std::size_t>(k)] = t;
    for (int j = 0; j <= b.degree(); ++j) r[static_cast<std::size_t>(k + j)] -= t * b.coeff(j);
  }
  for (const auto& x : r)
    if (x != 0) throw DomainError("exact_quotient: nonzero remainder");
  return IntPoly(std::move(q));
}

IntPoly rem_monic(const IntPoly& a, const IntPoly& monic) {
  if (monic.is_zero() || monic.lead() != 1) throw DomainError("rem_monic needs a monic divisor");
  const int d = monic.degree();
  if (a.degree() < d) return a;
  std::vector<mpz_class> r = a.coeffs();
  for (int k = a.degree(); k >= d; --k) {
    mpz_class t = r[static_cast<std::size_t>(k)];
    if (t == 0) continue;
    for (int j = 0; j <= d; ++j) r[static_cast<std::size_t>(k - d + j)] -= t * monic.coeff(j);
  }
  r.resize(static_cast<std::size_t>(d));
  return IntPoly(std::move(r));
}

IntPoly squarefree_part(const IntPoly& f) {
  if (f.is_zero()) throw ZeroPolynomial("square-free part of the zero polynomial");
  if (f.degree() == 0) return IntPoly{1};
  IntPoly g = gcd(f, derivative(f));
  return primitive_part(exact_quotient(primitive_part(f), g));
}

int sign_at(const IntPoly& f, const mpq_class& q) {
  if (f.is_zero()) return 0;
  // Horner in homogeneous form: h_k = h_{k+1} * p + c_k * q^(deg-k)
  mpz_class acc = 0;
  mpz_class qpow = 1;
  const mpz_class& p = q.get_num();
  const mpz_class& d = q.get_den();
  for (int k = f.degree(); k >= 0; --k) {
    acc = acc * p + f.coeff(k) * qpow;
    if (k > 0) qpow *= d;
  }
  return sgn(acc);
}

mpq_class eval(const IntPoly& f, const mpq_class& q) {
  mpq_class acc = 0;
  for (int k = f.degree(); k >= 0; --k) acc = acc * q + f.coeff(k);
  return acc;
}

std::string to_string(const IsolatingInterval& j) {
  return "(" + j.lo.get_str() + ", " + j.hi.get_str() + ")";
}

long descartes_bound(const IntPoly& f, const mpq_class& a, const mpq_class& b) {
  if (f.is_zero()) throw ZeroPolynomial("descartes_bound of the zero polynomial");
  const int d = f.degree();
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
  mpz_class an = a.get_num() * (den / a.get_den());
  mpz_class bn = b.get_num() * (den / b.get_den());
  // sum_k f_k (an x + bn)^k (den (x + 1))^(d - k)
  IntPoly lin(std::vector<mpz_class>{bn, an});
  IntPoly one_plus(std::vector<mpz_class>{den, den});
  std::vector<IntPoly> lin_pow{IntPoly{1}};
  std::vector<IntPoly> op_pow{IntPoly{1}};
  for (int k = 1; k <= d; ++k) {
    lin_pow.push_back(lin_pow.back() * lin);
    op_pow.push_back(op_pow.back() * one_plus);
  }
  IntPoly q;
  for (int k = 0; k <= d; ++k) {
    if (f.coeff(k) == 0) continue;
    q = q + f.coeff(k) * (lin_pow[static_cast<std::size_t>(k)] * op_pow[static_cast<std::size_t>(d - k)]);
  }
  long changes = 0;
  int last = 0;
  for (const auto& c : q.coeffs()) {
    int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

namespace {

void isolate_rec(const IntPoly& p, const mpq_class& a, const mpq_class& b,
                 std::vector<IsolatingInterval>& out) {
  long v = descartes_bound(p, a, b);
  if (v == 0) return;
  if (v == 1) {
    out.push_back({a, b});
    return;
  }
  mpq_class mid = (a + b) / 2;
  if (sign_at(p, mid) != 0) {
    isolate_rec(p, a, mid, out);
    isolate_rec(p, mid, b, out);
    return;
  }
  mpq_class h = (b - a) / 4;
  while (sign_at(p, mid - h) == 0 || sign_at(p, mid + h) == 0 ||
         descartes_bound(p, mid - h, mid + h) != 1) {
    h /= 2;
  }
  isolate_rec(p, a, mid - h, out);
  out.push_back({mid - h, mid + h});
  isolate_rec(p, mid + h, b, out);
}

mpq_class power_of_two_above(const mpq_class& x) {
  mpq_class r = 1;
  while (r <= x) r *= 2;
  return r;
}

}  // namespace

std::vector<IsolatingInterval> isolate_real_roots(const IntPoly& f) {
  IntPoly p = squarefree_part(f);
  std::vector<IsolatingInterval> out;
  if (p.degree() < 1) return out;
  mpq_class r = power_of_two_above(cauchy_root_bound(p));
  isolate_rec(p, -r, r, out);
  return out;
}

bool split_at(const IntPoly& f, IsolatingInterval& j, const mpq_class& x) {
  int sx = sign_at(f, x);
  if (sx == 0) return false;
  if (sign_at(f, j.lo) * sx < 0) {
    j.hi = x;
  } else {
    j.lo = x;
  }
  return true;
}

IsolatingInterval refine(const IntPoly& f, IsolatingInterval j, const mpq_class& width) {
  int slo = sign_at(f, j.lo);
  int shi = sign_at(f, j.hi);
  if (!(j.lo < j.hi) || slo * shi >= 0) {
    throw NotIsolating("refine: no sign change on " + to_string(j));
  }
  while (j.width() > width) {
    mpq_class mid = (j.lo + j.hi) / 2;
    int sm = sign_at(f, mid);
    if (sm == 0) {
      // the root is exactly mid; any smaller interval around it still isolates
      mpq_class h = width / 4;
      if (h > j.width() / 4) h = j.width() / 4;
      while (sign_at(f, mid - h) == 0 || sign_at(f, mid + h) == 0) h /= 2;
      return {mid - h, mid + h};
    }
    if (sm == slo) {
      j.lo = mid;
    } else {
      j.hi = mid;
    }
  }
  return j;
}

mpq_class cauchy_root_bound(const IntPoly& f) { return mpq_class(1 + f.max_norm()); }

Dyadic root_separation_bound(const IntPoly& f) {
  if (f.degree() < 2) throw DegreeTooSmall("root_separation_bound needs degree >= 2");
  IntPoly p = squarefree_part(f);
  const long d = std::max(p.degree(), 2);
  // ceil(|f|_2) from the squared norm
  mpz_class sq = 0;
  for (const auto& c : f.coeffs()) sq += c * c;
  mpz_class norm2;
  mpz_sqrt(norm2.get_mpz_t(), sq.get_mpz_t());
  if (norm2 * norm2 < sq) norm2 += 1;
  // |p|_2 <= 2^deg(p) |f|_2 for any integer factor p of f
  mpz_class hprime = norm2 << static_cast<mp_bitcnt_t>(p.degree());
  long log_d1 = static_cast<long>(mpz_sizeinbase(mpz_class(d).get_mpz_t(), 2));  // ceil(log2(d+1))
  long first = (log_d1 * (2 * d + 1) + 1) / 2;
  long bits = static_cast<long>(mpz_sizeinbase(hprime.get_mpz_t(), 2));
  return Dyadic::pow2(-(first + (d - 1) * bits));
}

}  // namespace circount
