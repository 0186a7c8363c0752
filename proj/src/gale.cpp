#include "circount/gale.hpp"

#include <algorithm>

#include "circount/errors.hpp"

namespace circount {

IntVector CircuitData::sigma_relation() const {
  IntVector out;
  for (std::size_t j : sigma) out.push_back(relation[j]);
  return out;
}

CircuitData find_subcircuit(const IntMatrix& exponents) {
  const std::size_t n = exponents.rows();
  if (exponents.cols() != n + 2) throw DomainError("find_subcircuit needs n + 2 points");
  IntMatrix lifted = lifted_support(exponents);
  if (rank(lifted) != n + 1) {
    throw HyperplaneSupport("support lies in an affine hyperplane");
  }
  CircuitData cd;
  cd.relation = primitive_right_kernel(lifted);
  for (std::size_t j = 0; j < cd.relation.size(); ++j)
    if (cd.relation[j] != 0) cd.sigma.push_back(j);
  return cd;
}

Indexing make_indexing(const IntMatrix& exponents, const CircuitData& cd, std::size_t pole, std::size_t base) {
  const std::size_t n = exponents.rows();
  const std::size_t t = exponents.cols();
  if (pole == base || pole >= t || base >= t || cd.relation[pole] == 0 || cd.relation[base] == 0) {
    throw DomainError("make_indexing: pole and base must be distinct circuit points");
  }
  Indexing ix;
  for (std::size_t j : cd.sigma)
    if (j != pole && j != base) ix.order.push_back(j);
  ix.m = ix.order.size();
  for (std::size_t j = 0; j < t; ++j)
    if (cd.relation[j] == 0) ix.order.push_back(j);
  ix.order.push_back(pole);
  ix.order.push_back(base);

  ix.exponents = IntMatrix(n, t);
  for (std::size_t k = 0; k < t; ++k)
    for (std::size_t i = 0; i < n; ++i) ix.exponents(i, k) = exponents(i, ix.order[k]) - exponents(i, base);
  int flip = cd.relation[pole] < 0 ? -1 : 1;
  for (std::size_t k = 0; k < t; ++k) ix.relation.push_back(flip * cd.relation[ix.order[k]]);
  return ix;
}

std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(const CircuitData& cd, bool need_odd) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  auto ok = [&](std::size_t p) { return !need_odd || mpz_odd_p(cd.relation[p].get_mpz_t()); };
  const std::size_t t = cd.relation.size();
  if (t >= 2 && cd.relation[t - 2] != 0 && cd.relation[t - 1] != 0 && ok(t - 2)) out.emplace_back(t - 2, t - 1);
  for (std::size_t p : cd.sigma) {
    if (!ok(p)) continue;
    for (std::size_t q : cd.sigma) {
      if (q == p) continue;
      std::pair<std::size_t, std::size_t> pr{p, q};
      if (std::find(out.begin(), out.end(), pr) == out.end()) out.push_back(pr);
    }
  }
  return out;
}

Indexing reindex_for_torus(const IntMatrix& exponents, const CircuitData& cd) {
  auto pairs = candidate_pairs(cd, true);
  if (pairs.empty()) throw InternalError("circuit relation has no odd entry");
  return make_indexing(exponents, cd, pairs.front().first, pairs.front().second);
}

IntMatrix select_order(const IntMatrix& m, const std::vector<std::size_t>& order) {
  return m.select_columns(order);
}

GenericityReport check_genericity(const IntMatrix& c) {
  const std::size_t n = c.rows();
  if (c.cols() != n + 2) throw DomainError("check_genericity needs an n x (n+2) matrix");
  GenericityReport rep;
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(j);
  cols.push_back(n + 1);
  for (std::size_t drop = 0; drop < cols.size(); ++drop) {
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (k != drop) keep.push_back(cols[k]);
    if (determinant(c.select_columns(keep)) == 0) {
      std::string desc = "singular " + std::to_string(n) + "x" + std::to_string(n) + " minor on columns {";
      for (std::size_t k = 0; k < keep.size(); ++k) desc += (k ? "," : "") + std::to_string(keep[k] + 1);
      rep.passed = false;
      rep.failing_minor = desc + "}";
      return rep;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) {
      if (c(i, n) * c(k, n + 1) - c(i, n + 1) * c(k, n) == 0) {
        rep.passed = false;
        rep.failing_minor = "singular 2x2 minor on rows {" + std::to_string(i + 1) + "," + std::to_string(k + 1) +
                            "} of columns {" + std::to_string(n + 1) + "," + std::to_string(n + 2) + "}";
        return rep;
      }
    }
  return rep;
}

GaleSystem reduce_to_gale(const PolySystem& f, const Indexing& ix) {
  const std::size_t n = f.dim();
  if (f.terms() != n + 2) throw DomainError("reduce_to_gale needs n + 2 monomials");
  RrefResult rr = rref(to_rational(select_order(f.coeffs, ix.order)));
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= rr.pivots.size() || rr.pivots[i] != i) {
      throw RankError("leading n columns of the relabelled coefficient matrix are dependent");
    }
  }
  GaleSystem gs;
  gs.indexing = ix;
  for (std::size_t i = 0; i < n; ++i) gs.gammas.push_back({-rr.reduced(i, n), -rr.reduced(i, n + 1)});
  gs.gammas.push_back({1, 0});
  return gs;
}

GaleChoice choose_gale(const PolySystem& f, const CircuitData& cd, bool need_odd) {
  GaleChoice choice;
  for (const auto& [pole, base] : candidate_pairs(cd, need_odd)) {
    Indexing ix = make_indexing(f.exponents, cd, pole, base);
    GenericityReport rep = check_genericity(select_order(f.coeffs, ix.order));
    if (!rep.passed) {
      rep.failing_minor += " of the relabelled matrix (a_{n+1} = point " + std::to_string(pole + 1) +
                           ", a_{n+2} = point " + std::to_string(base + 1) + ")";
      choice.report = rep;
      continue;
    }
    choice.system = reduce_to_gale(f, ix);
    choice.report = rep;
    return choice;
  }
  if (choice.report.passed) {
    choice.report.passed = false;
    choice.report.failing_minor = "no admissible labelling of the circuit";
  }
  return choice;
}

GaleChoice gale_for_order(const PolySystem& f, const CircuitData& cd, const std::vector<std::size_t>& order,
                          bool need_odd) {
  const std::size_t n = f.dim();
  const std::size_t t = f.terms();
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    if (sorted.size() != t || sorted[k] != k) throw DomainError("ordering must be a permutation of the columns");
  GaleChoice choice;
  auto refuse = [&](std::string why) {
    choice.report.passed = false;
    choice.report.failing_minor = std::move(why);
    return choice;
  };
  const std::size_t m = cd.sigma.size() - 2;
  for (std::size_t k = 0; k < t; ++k) {
    bool in_sigma = cd.relation[order[k]] != 0;
    bool wanted = k < m || k >= n;
    if (in_sigma != wanted) return refuse("ordering places point " + std::to_string(order[k] + 1) +
                                          (in_sigma ? " of the circuit" : " outside the circuit") + " at position " +
                                          std::to_string(k + 1));
  }
  if (need_odd && !mpz_odd_p(cd.relation[order[n]].get_mpz_t()))
    return refuse("relation entry at position n+1 is even");
  GenericityReport rep = check_genericity(select_order(f.coeffs, order));
  if (!rep.passed) {
    choice.report = rep;
    return choice;
  }
  Indexing ix = make_indexing(f.exponents, cd, order[n], order[n + 1]);
  // keep the caller's order within sigma and outside it
  ix.order = order;
  ix.exponents = IntMatrix(n, t);
  for (std::size_t k = 0; k < t; ++k)
    for (std::size_t i = 0; i < n; ++i) ix.exponents(i, k) = f.exponents(i, order[k]) - f.exponents(i, order[n + 1]);
  int flip = cd.relation[order[n]] < 0 ? -1 : 1;
  ix.relation.clear();
  for (std::size_t k = 0; k < t; ++k) ix.relation.push_back(flip * cd.relation[order[k]]);
  choice.system = reduce_to_gale(f, ix);
  choice.report = rep;
  return choice;
}

bool has_positive_domain(const GaleSystem& gs) {
  return std::all_of(gs.gammas.begin(), gs.gammas.end(),
                     [](const LinearArg& g) { return g.slope > 0 || g.offset > 0; });
}

std::optional<std::pair<Endpoint, Endpoint>> interval_I(const GaleSystem& gs) {
  Endpoint lo = Endpoint::neg_inf();
  Endpoint hi = Endpoint::pos_inf();
  for (const auto& g : gs.gammas) {
    if (g.slope == 0) {
      if (g.offset <= 0) return std::nullopt;
      continue;
    }
    Endpoint p = Endpoint::at(g.pole());
    if (g.slope > 0) {
      if (lo < p) lo = p;
    } else if (p < hi) {
      hi = p;
    }
  }
  if (!(lo < hi)) return std::nullopt;
  return std::make_pair(lo, hi);
}

std::vector<mpq_class> breakpoints(const GaleSystem& gs) {
  std::vector<mpq_class> out;
  for (const auto& g : gs.gammas)
    if (g.has_pole()) out.push_back(g.pole());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LogLinForm log_form(const GaleSystem& gs) {
  LogLinForm l;
  const std::size_t n = gs.n();
  for (std::size_t i = 0; i < gs.m(); ++i) {
    l.coeffs.push_back(gs.indexing.relation[i]);
    l.args.push_back(gs.gammas[i]);
  }
  l.coeffs.push_back(gs.indexing.relation[n]);
  l.args.push_back(gs.gammas[n]);
  return l;
}

}  // namespace circount
