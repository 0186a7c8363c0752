#include "doctest.h"

#include <random>

#include "circount/errors.hpp"
#include "circount/unipoly.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace circount;
using namespace circount::testing;

namespace {

IntPoly quartic_g() {
  return IntPoly(std::vector<mpz_class>{mpz_class("-837930167824219163155"), mpz_class("13833463598904597755876"),
                                        mpz_class("-78932164016242868100268"),
                                        mpz_class("160578806134338659719072"),
                                        mpz_class("-85015812446550320118784")});
}

IntPoly random_poly(std::mt19937_64& rng, int max_degree, long bound) {
  for (;;) {
    int d = static_cast<int>(uniform(rng, 0, max_degree));
    std::vector<mpz_class> c(d + 1);
    for (auto& x : c) x = uniform(rng, -bound, bound);
    IntPoly p(c);
    if (!p.is_zero()) return p;
  }
}

}  // namespace

TEST_CASE("arithmetic and derivative") {
  IntPoly a{1, 2};     // 1 + 2u
  IntPoly b{-1, 0, 1}; // u^2 - 1
  CHECK(a * b == IntPoly{-1, -2, 1, 2});
  CHECK(a + b == IntPoly{0, 2, 1});
  CHECK(b - b == IntPoly{});
  CHECK(derivative(b) == IntPoly{0, 2});
  CHECK(IntPoly{0, 0, 0}.is_zero());
  CHECK(IntPoly{3, 4}.degree() == 1);
  CHECK(content(IntPoly{4, -6, 10}) == 2);
  CHECK(primitive_part(IntPoly{4, -6, -10}) == IntPoly{-2, 3, 5});
}

TEST_CASE("gcd and exact quotient") {
  IntPoly p{-1, 1};  // u - 1
  IntPoly q{2, 1};   // u + 2
  IntPoly r{3, 0, 1};
  CHECK(gcd(p * q, q * r) == q);
  CHECK(gcd(IntPoly{6}, IntPoly{4}) == IntPoly{1});
  CHECK(exact_quotient(p * q * r, q) == p * r);
  CHECK_THROWS_AS(exact_quotient(p * r, q), DomainError);
}

TEST_CASE("square-free part examples") {
  CHECK(squarefree_part(IntPoly{0, 0, 1}) == IntPoly{0, 1});
  IntPoly p{-1, 1}, q{2, 1};
  CHECK(squarefree_part(p * p * q) == p * q);
  CHECK_THROWS_AS(squarefree_part(IntPoly{}), ZeroPolynomial);
}

TEST_CASE("square-free part of random products keeps the root set") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 100; ++k) {
    IntPoly f{1};
    for (int j = 0, parts = static_cast<int>(uniform(rng, 1, 4)); j < parts; ++j) {
      IntPoly factor = random_poly(rng, 3, 9);
      for (int e = 0, reps = static_cast<int>(uniform(rng, 1, 3)); e < reps; ++e) f = f * factor;
    }
    IntPoly s = squarefree_part(f);
    CHECK(gcd(s, derivative(s)).degree() == 0);
    CHECK(sturm_count(s) == sturm_count(f));
    // every root of f is a root of s and vice versa: s divides f and f divides s^deg
    CHECK(gcd(f, s) == s);
  }
}

TEST_CASE("isolation examples") {
  auto roots = isolate_real_roots(IntPoly{-2, 0, 1});
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].lo < mpq_class(-141421, 100000));
  CHECK(roots[0].hi > mpq_class(-70711, 50000));
  CHECK(roots[1].lo < mpq_class(141421, 100000));
  CHECK(roots[1].hi > mpq_class(70711, 50000));
  auto g = isolate_real_roots(quartic_g());
  CHECK(g.size() == 2);
  CHECK(isolate_real_roots(IntPoly{1, 0, 1}).empty());
  CHECK(isolate_real_roots(IntPoly{5}).empty());
  CHECK_THROWS_AS(isolate_real_roots(IntPoly{}), ZeroPolynomial);
}

TEST_CASE("isolation agrees with Sturm sequences") {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 500; ++k) {
    IntPoly f = random_poly(rng, 12, k % 2 ? 100 : 3);
    if (k % 7 == 0) f = f * f;
    auto roots = isolate_real_roots(f);
    CHECK(static_cast<long>(roots.size()) == sturm_count(f));
    IntPoly s = squarefree_part(f);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      CHECK(roots[i].lo < roots[i].hi);
      if (i + 1 < roots.size()) CHECK(roots[i].hi <= roots[i + 1].lo);
      long inside = sturm_count(s, roots[i].lo, roots[i].hi) + (sign_at(s, roots[i].lo) == 0 ? 1 : 0);
      CHECK(inside == 1);
    }
  }
}

TEST_CASE("refinement") {
  IntPoly f{-2, 0, 1};
  IsolatingInterval j = refine(f, {1, 2}, mpq_class(1, 1 << 30));
  CHECK(j.width() <= mpq_class(1, 1 << 30));
  CHECK(j.lo * j.lo < 2);
  CHECK(j.hi * j.hi > 2);
  IsolatingInterval k = refine(IntPoly{0, -1, 0, 1}, {mpq_class(-2), mpq_class(-1, 2)}, mpq_class(1, 1024));
  CHECK(k.lo <= -1);
  CHECK(k.hi >= -1);
  CHECK(k.width() <= mpq_class(1, 1024));
  IntPoly s = squarefree_part(quartic_g());
  mpq_class tiny = mpq_class(1) / (mpz_class(1) << 100);
  for (auto r : isolate_real_roots(s)) {
    IsolatingInterval t = refine(s, r, tiny);
    CHECK(t.width() <= tiny);
    CHECK(sign_at(s, t.lo) * sign_at(s, t.hi) < 0);
  }
  CHECK_THROWS_AS(refine(f, {3, 4}, mpq_class(1, 8)), NotIsolating);
}

TEST_CASE("descartes bound") {
  IntPoly f{2, -3, 1};  // roots 1 and 2
  CHECK(descartes_bound(f, 0, 3) == 2);
  CHECK(descartes_bound(f, mpq_class(3, 2), 3) == 1);
  CHECK(descartes_bound(f, 3, 5) == 0);
}

TEST_CASE("root bounds") {
  CHECK(cauchy_root_bound(IntPoly{-2, 0, 1}) == 3);
  Dyadic d = root_separation_bound(IntPoly{-2, 0, 1});
  CHECK(d.to_rational() > 0);
  CHECK(d.to_rational() <= mpq_class(1, 2));
  CHECK(root_separation_bound(IntPoly{2, -3, 1}).to_rational() <= 1);
  CHECK_THROWS_AS(root_separation_bound(IntPoly{1, 1}), DegreeTooSmall);
  std::mt19937_64 rng(23);
  for (int k = 0; k < 100; ++k) {
    IntPoly f = squarefree_part(random_poly(rng, 8, 30));
    if (f.degree() < 2) continue;
    mpq_class delta = root_separation_bound(f).to_rational();
    mpq_class fine = delta / 4;
    auto roots = isolate_real_roots(f);
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      IsolatingInterval a = refine(f, roots[i], fine), b = refine(f, roots[i + 1], fine);
      CHECK(b.lo - a.hi > delta / 2);  // gap exceeds delta up to the refinement width
    }
    mpq_class bound = cauchy_root_bound(f);
    for (const auto& r : roots) {
      IsolatingInterval t = refine(f, r, mpq_class(1, 64));
      CHECK(t.hi > -bound);
      CHECK(t.lo < bound);
    }
  }
}

TEST_CASE("exact evaluation") {
  IntPoly f{1, -3, 0, 2};
  CHECK(eval(f, mpq_class(1, 2)) == mpq_class(1) - mpq_class(3, 2) + mpq_class(1, 4));
  CHECK(sign_at(f, mpq_class(1, 2)) == -1);
  CHECK(sign_at(IntPoly{-1, 1}, 1) == 0);
}
