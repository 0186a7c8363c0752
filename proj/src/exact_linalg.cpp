#include "circount/exact_linalg.hpp"

#include <algorithm>
#include <sstream>

#include "circount/errors.hpp"

namespace circount {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

namespace {

template <class T>
std::string matrix_string(const Matrix<T>& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

// Replaces rows (a, b) of each matrix by [s t; -y/g x/g] applied to them,
// where s*x + t*y = g = gcd(x, y). The 2x2 transform has determinant 1.
struct GcdStep {
  mpz_class s, t, p, q;  // new_a = s*a + t*b, new_b = p*a + q*b
};

GcdStep gcd_step(const mpz_class& x, const mpz_class& y) {
  // plain elimination when x | y; gcdext may otherwise swap the pair and cycle
  if (mpz_divisible_p(y.get_mpz_t(), x.get_mpz_t())) return {1, 0, -(y / x), 1};
  mpz_class g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return {s, t, -y / g, x / g};
}

void combine_rows(IntMatrix& m, std::size_t a, std::size_t b, const GcdStep& st) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    mpz_class va = m(a, j), vb = m(b, j);
    m(a, j) = st.s * va + st.t * vb;
    m(b, j) = st.p * va + st.q * vb;
  }
}

void combine_cols(IntMatrix& m, std::size_t a, std::size_t b, const GcdStep& st) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class va = m(i, a), vb = m(i, b);
    m(i, a) = st.s * va + st.t * vb;
    m(i, b) = st.p * va + st.q * vb;
  }
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const mpz_class& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += k * m(src, j);
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

std::string to_string(const IntMatrix& m) { return matrix_string(m); }
std::string to_string(const RatMatrix& m) { return matrix_string(m); }

RrefResult rref(const RatMatrix& m) {
  RrefResult res{m, RatMatrix::identity(m.rows()), {}};
  RatMatrix& r = res.reduced;
  RatMatrix& t = res.transform;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
    std::size_t piv = row;
    while (piv < r.rows() && r(piv, col) == 0) ++piv;
    if (piv == r.rows()) continue;
    r.swap_rows(row, piv);
    t.swap_rows(row, piv);
    mpq_class inv = 1 / r(row, col);
    for (std::size_t j = 0; j < r.cols(); ++j) r(row, j) *= inv;
    for (std::size_t j = 0; j < t.cols(); ++j) t(row, j) *= inv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, col) == 0) continue;
      mpq_class f = r(i, col);
      for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) -= f * r(row, j);
      for (std::size_t j = 0; j < t.cols(); ++j) t(i, j) -= f * t(row, j);
    }
    res.pivots.push_back(col);
    ++row;
  }
  return res;
}

std::size_t rank(const RatMatrix& m) { return rref(m).pivots.size(); }
std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

mpz_class determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

HermiteResult hermite(const IntMatrix& m) {
  HermiteResult res{IntMatrix::identity(m.rows()), m};
  IntMatrix& u = res.transform;
  IntMatrix& r = res.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
    for (std::size_t i = row + 1; i < r.rows(); ++i) {
      if (r(i, col) == 0) continue;
      GcdStep st = gcd_step(r(row, col), r(i, col));
      combine_rows(r, row, i, st);
      combine_rows(u, row, i, st);
    }
    if (r(row, col) == 0) continue;
    if (r(row, col) < 0) {
      negate_row(r, row);
      negate_row(u, row);
    }
    for (std::size_t i = 0; i < row; ++i) {
      mpz_class q = floor_div(r(i, col), r(row, col));
      add_row_multiple(r, i, row, -q);
      add_row_multiple(u, i, row, -q);
    }
    ++row;
  }
  return res;
}

SmithTriple smith(const IntMatrix& m) {
  SmithTriple res{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
  IntMatrix& s = res.S;
  const std::size_t diag = std::min(s.rows(), s.cols());
  for (std::size_t t = 0; t < diag; ++t) {
    // pivot: smallest nonzero magnitude in the trailing block
    std::size_t pi = s.rows(), pj = s.cols();
    for (std::size_t i = t; i < s.rows(); ++i)
      for (std::size_t j = t; j < s.cols(); ++j)
        if (s(i, j) != 0 && (pi == s.rows() || abs(s(i, j)) < abs(s(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == s.rows()) break;
    s.swap_rows(t, pi);
    res.U.swap_rows(t, pi);
    s.swap_cols(t, pj);
    res.V.swap_cols(t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) == 0) continue;
        GcdStep st = gcd_step(s(t, t), s(i, t));
        combine_rows(s, t, i, st);
        combine_rows(res.U, t, i, st);
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (s(t, j) == 0) continue;
        GcdStep st = gcd_step(s(t, t), s(t, j));
        combine_cols(s, t, j, st);
        combine_cols(res.V, t, j, st);
      }
      for (std::size_t i = t + 1; i < s.rows(); ++i)
        if (s(i, t) != 0) dirty = true;
      if (dirty) continue;
      // divisibility: fold an offending row into the pivot row and repeat
      std::size_t bad = s.rows();
      for (std::size_t i = t + 1; i < s.rows() && bad == s.rows(); ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (s(i, j) % s(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == s.rows()) break;
      add_row_multiple(s, t, bad, 1);
      add_row_multiple(res.U, t, bad, 1);
    }
    if (s(t, t) < 0) {
      negate_row(s, t);
      negate_row(res.U, t);
    }
  }
  return res;
}

IntVector primitive_right_kernel(const IntMatrix& m) {
  RrefResult rr = rref(to_rational(m));
  if (rr.pivots.size() + 1 != m.cols()) {
    throw RankError("primitive_right_kernel: rank " + std::to_string(rr.pivots.size()) +
                    " but expected " + std::to_string(m.cols() - 1));
  }
  std::size_t free_col = 0;
  for (std::size_t k = 0; k < rr.pivots.size() && rr.pivots[k] == free_col; ++k) ++free_col;
  RatVector x(m.cols());
  x[free_col] = 1;
  for (std::size_t k = 0; k < rr.pivots.size(); ++k) x[rr.pivots[k]] = -rr.reduced(k, free_col);
  mpz_class l = 1;
  for (const auto& v : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  IntVector out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j].get_num() * (l / x[j].get_den());
  mpz_class g = content(out);
  int sign = 0;
  for (auto& v : out) {
    v /= g;
    if (sign == 0 && v != 0) sign = sgn(v);
  }
  if (sign < 0)
    for (auto& v : out) v = -v;
  return out;
}

std::size_t rank_mod2(const IntMatrix& m) {
  std::vector<std::vector<unsigned char>> a(m.rows(), std::vector<unsigned char>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = mpz_odd_p(m(i, j).get_mpz_t()) ? 1 : 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && !a[piv][col]) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[row], a[piv]);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != row && a[i][col])
        for (std::size_t j = col; j < m.cols(); ++j) a[i][j] ^= a[row][j];
    ++row;
  }
  return row;
}

LogHeight height(const mpq_class& q) {
  mpz_class big = std::max(mpz_class(abs(q.get_num())), mpz_class(q.get_den()));
  if (q == 0 || big == 1) return {Dyadic()};
  Ball b = log_ball(mpq_class(big), 40);
  return {b.upper().round_up(34)};
}

mpq_class pow(const mpq_class& base, const mpz_class& exponent) {
  if (exponent == 0) return 1;
  if (base == 0) {
    if (exponent < 0) throw DomainError("zero to a negative power");
    return 0;
  }
  mpz_class mag = abs(exponent);
  if (!mag.fits_ulong_p()) throw DomainError("exponent too large");
  unsigned long e = mag.get_ui();
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  mpq_class r = exponent > 0 ? mpq_class(num, den) : mpq_class(den, num);
  r.canonicalize();
  return r;
}

mpz_class content(std::span<const mpz_class> v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

std::vector<mpz_class> coprime_basis(std::span<const mpz_class> values) {
  std::vector<mpz_class> basis;
  for (const auto& raw : values) {
    mpz_class v = abs(raw);
    if (v <= 1) continue;
    // refine the basis against v until everything is pairwise coprime
    std::vector<mpz_class> pending{v};
    while (!pending.empty()) {
      mpz_class x = pending.back();
      pending.pop_back();
      if (x == 1) continue;
      bool merged = false;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), basis[i].get_mpz_t());
        if (g == 1) continue;
        mpz_class e = basis[i];
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
        pending.push_back(g);
        pending.push_back(e / g);
        pending.push_back(x / g);
        merged = true;
        break;
      }
      if (!merged) basis.push_back(x);
    }
  }
  std::sort(basis.begin(), basis.end());
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  return basis;
}

bool multiplicatively_trivial(std::span<const mpq_class> bases, std::span<const mpz_class> exponents) {
  if (bases.size() != exponents.size()) throw DomainError("multiplicatively_trivial: size mismatch");
  std::vector<mpz_class> parts;
  for (const auto& q : bases) {
    if (q == 0) throw DomainError("multiplicatively_trivial: zero base");
    parts.push_back(q.get_num());
    parts.push_back(q.get_den());
  }
  std::vector<mpz_class> basis = coprime_basis(parts);
  for (const auto& e : basis) {
    mpz_class total = 0;
    for (std::size_t i = 0; i < bases.size(); ++i) {
      if (exponents[i] == 0) continue;
      long val = 0;
      mpz_class x = abs(bases[i].get_num());
      while (mpz_divisible_p(x.get_mpz_t(), e.get_mpz_t())) {
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t());
        ++val;
      }
      x = bases[i].get_den();
      while (mpz_divisible_p(x.get_mpz_t(), e.get_mpz_t())) {
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t());
        --val;
      }
      total += exponents[i] * val;
    }
    if (total != 0) return false;
  }
  return true;
}

}  // namespace circount
