#include "fixtures.hpp"

#include <set>

#include "circount/errors.hpp"
#include "circount/gale.hpp"

namespace circount::testing {

PolySystem make_system(const std::vector<std::vector<long>>& points, const std::vector<std::vector<long>>& coeffs) {
  const std::size_t n = coeffs.size();
  const std::size_t t = points.size();
  PolySystem f{IntMatrix(n, t), IntMatrix(n, t)};
  for (std::size_t j = 0; j < t; ++j)
    for (std::size_t i = 0; i < n; ++i) f.exponents(i, j) = points[j][i];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < t; ++j) f.coeffs(i, j) = coeffs[i][j];
  return f;
}

PolySystem rigged_family(const mpq_class& c) {
  const std::vector<std::vector<long>> pts{{36, 194, 50, 82, 60}, {76, 240, 0, 41, 1}, {74, 179, 25, 0, 57},
                                           {25, 203, 44, 1, 0},   {20, 167, 64, 12, 68}, {58, 194, 24, 36, 25},
                                           {0, 0, 166, 68, 343}};
  const long k[5] = {37137, 24849, 21009, 20769, 20754};
  PolySystem f{IntMatrix(5, 7), IntMatrix(5, 7)};
  for (std::size_t j = 0; j < 7; ++j)
    for (std::size_t i = 0; i < 5; ++i) f.exponents(i, j) = pts[j][i];
  // rows scaled by 4 / c to clear denominators
  const mpz_class& p = c.get_num();
  const mpz_class& q = c.get_den();
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) f.coeffs(i, j) = (i == j ? 8 : 4) * q;
    f.coeffs(i, 5) = -4 * k[i] * p;
    f.coeffs(i, 6) = (i == 0 ? -18 : -21) * q;
  }
  return f;
}

PolySystem random_4x6() {
  return make_system({{8, 18, 0, 16}, {4, 1, 3, 8}, {11, 19, 1, 17}, {11, 9, 14, 0}, {0, 18, 13, 17}, {5, 0, 14, 16}},
                     {{-12, -5, 17, -4, 2, 3},
                      {-9, 14, -8, 3, 12, -1},
                      {5, 4, 11, -16, 18, -19},
                      {-1, 2, 11, -17, -14, -6}});
}

PolySystem misindexed_3x5() {
  return make_system({{0, 1, 0}, {1, 1, 0}, {2, 1, 0}, {0, 0, 1}, {0, 0, 0}},
                     {{1, 0, 0, 0, -1}, {0, 1, 0, -1, -1}, {0, 0, 1, -1, -1}});
}

PolySystem axes_3x4() {
  return make_system({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}}, {{1, 1, 1, -3}, {1, 2, 4, -7}, {1, 3, 9, -13}});
}

long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

PolySystem random_system(std::mt19937_64& rng, std::size_t n, std::size_t t, long max_degree, long max_coeff) {
  for (;;) {
    PolySystem f{IntMatrix(n, t), IntMatrix(n, t)};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < t; ++j) {
        f.exponents(i, j) = uniform(rng, 0, max_degree);
        f.coeffs(i, j) = uniform(rng, -max_coeff, max_coeff);
      }
    try {
      f.validate();
    } catch (const ValidationError&) {
      continue;
    }
    if (rank(lifted_support(f.exponents)) != n + 1) continue;
    return f;
  }
}

PolySystem random_circuit_system(std::mt19937_64& rng, std::size_t n, long max_degree, long max_coeff) {
  for (;;) {
    PolySystem f = random_system(rng, n, n + 2, max_degree, max_coeff);
    CircuitData cd = find_subcircuit(f.exponents);
    if (cd.sigma.size() == n + 2) return f;
  }
}

}  // namespace circount::testing
