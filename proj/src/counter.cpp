#include "circount/counter.hpp"

#include <algorithm>

#include "circount/binomial.hpp"
#include "circount/errors.hpp"

namespace circount {

const char* to_string(CountResult::Kind k) {
  switch (k) {
    case CountResult::Kind::Finite:
      return "finite";
    case CountResult::Kind::Infinite:
      return "infinite";
    case CountResult::Kind::GenericityFailure:
      return "genericity_failure";
    case CountResult::Kind::UnverifiedGenericity:
      return "unverified_genericity";
  }
  return "?";
}

std::string to_string(const CountResult& r) {
  switch (r.kind) {
    case CountResult::Kind::Finite:
      return std::to_string(r.count);
    case CountResult::Kind::UnverifiedGenericity:
      return std::to_string(r.count) + " (unverified: " + r.detail + ")";
    default:
      break;
  }
  return std::string(to_string(r.kind)) + (r.detail.empty() ? "" : ": " + r.detail);
}

int OrthantSelector::lambda(const std::vector<int>& eps) const {
  int s = 1;
  for (std::size_t i = 0; i < b_parities.size(); ++i)
    if (b_parities[i] && eps[i] < 0) s = -s;
  return s;
}

bool OrthantSelector::gamma_ok(const std::vector<int>& eps) const {
  for (std::size_t j = r; j < v_mod2.cols(); ++j) {
    int s = 1;
    for (std::size_t i = 0; i < v_mod2.rows(); ++i)
      if (v_mod2(i, j) != 0 && eps[i] < 0) s = -s;
    if (s < 0) return false;
  }
  return true;
}

namespace {

IntMatrix leading_exponents(const GaleSystem& gs) {
  std::vector<std::size_t> cols(gs.n());
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  return gs.indexing.exponents.select_columns(cols);
}

void require_full_dimension(const PolySystem& f) {
  if (rank(lifted_support(f.exponents)) != f.dim() + 1) {
    throw HyperplaneSupport("support lies in an affine hyperplane");
  }
}

// t = n+1: row reduction to x^{a_i - a_base} = gamma_i.
struct SimplexForm {
  BinomialSystem binomial;
  bool zero_target = false;
};

std::optional<SimplexForm> simplex_form(const PolySystem& f) {
  const std::size_t n = f.dim();
  std::vector<std::size_t> bases{n};
  for (std::size_t j = 0; j < n; ++j) bases.push_back(j);
  for (std::size_t base : bases) {
    std::vector<std::size_t> order;
    for (std::size_t j = 0; j <= n; ++j)
      if (j != base) order.push_back(j);
    if (determinant(f.coeffs.select_columns(order)) == 0) continue;
    order.push_back(base);
    RrefResult rr = rref(to_rational(f.coeffs.select_columns(order)));
    SimplexForm sf;
    sf.binomial.exponents = IntMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i)
        sf.binomial.exponents(i, k) = f.exponents(i, order[k]) - f.exponents(i, base);
      mpq_class g = -rr.reduced(k, n);
      if (g == 0) sf.zero_target = true;
      sf.binomial.rhs.push_back(g);
    }
    return sf;
  }
  return std::nullopt;
}

long ceiling_for(const PrecisionBudget& b, const CountOptions& opts) { return b.ceiling_bits(opts.precision_cap_bits); }

// Rational point strictly inside (lo, hi).
mpq_class interior_point(const Endpoint& lo, const Endpoint& hi) {
  if (lo.finite() && hi.finite()) return (lo.value + hi.value) / 2;
  if (lo.finite()) return lo.value + 1;
  if (hi.finite()) return hi.value - 1;
  return 0;
}

struct Prepared {
  GaleSystem gale;
  LogLinForm form;
  CriticalSet critical;
  PrecisionBudget budget;
  long ceiling = 0;
};

Prepared prepare(const GaleSystem& gs, const CountOptions& opts) {
  Prepared p{gs, log_form(gs), {}, {}, 0};
  p.form.validate();
  p.critical = critical_set(p.form);
  p.budget = precision_budget(p.form);
  p.ceiling = ceiling_for(p.budget, opts);
  return p;
}

void record(Explanation* ex, const CircuitData& cd, const Prepared& p) {
  if (!ex) return;
  ex->circuit = cd;
  ex->gale = p.gale;
  ex->form = p.form;
  ex->critical = p.critical;
  ex->budget = p.budget;
  ex->ceiling_bits = p.ceiling;
}

}  // namespace

OrthantSelector orthant_selector(const GaleSystem& gs) {
  IntMatrix a = leading_exponents(gs);
  if (determinant(a) == 0) throw SingularExponents("exponent vectors a_1..a_n are dependent");
  SmithTriple st = smith(a);
  OrthantSelector sel;
  sel.r = rank_mod2(a);
  sel.v_mod2 = IntMatrix(st.V.rows(), st.V.cols());
  for (std::size_t i = 0; i < st.V.rows(); ++i)
    for (std::size_t j = 0; j < st.V.cols(); ++j) sel.v_mod2(i, j) = mpz_odd_p(st.V(i, j).get_mpz_t()) ? 1 : 0;
  for (std::size_t i = 0; i < gs.m(); ++i)
    sel.b_parities.push_back(mpz_odd_p(gs.indexing.relation[i].get_mpz_t()) ? 1 : 0);
  return sel;
}

CountResult count_positive(const PolySystem& f, const CountOptions& opts, Explanation* ex) {
  f.validate();
  require_full_dimension(f);
  const std::size_t n = f.dim();
  if (f.terms() == n + 1) {
    auto sf = simplex_form(f);
    if (!sf) return CountResult::genericity_failure("coefficient matrix has rank below n");
    if (sf->zero_target) return CountResult::finite(0);
    BinomialPositive c = count_positive_binomial(sf->binomial);
    if (ex) ex->notes.push_back("binomial reduction: positive count " + std::string(to_string(c)));
    return CountResult::finite(c == BinomialPositive::One ? 1 : 0);
  }

  CircuitData cd = find_subcircuit(f.exponents);
  GaleChoice choice = opts.ordering.empty() ? choose_gale(f, cd, false) : gale_for_order(f, cd, opts.ordering, false);
  if (!choice.system) {
    if (ex) ex->circuit = cd;
    return CountResult::genericity_failure(choice.report.failing_minor);
  }
  Prepared p = prepare(*choice.system, opts);
  record(ex, cd, p);
  if (!has_positive_domain(p.gale)) {
    if (ex) ex->notes.push_back("some gamma_i is nonpositive on all of R");
    return CountResult::finite(0);
  }
  auto range = interval_I(p.gale);
  if (!range) {
    if (ex) ex->notes.push_back("interval I is empty");
    return CountResult::finite(0);
  }
  CellReport cell;
  cell.lo = range->first;
  cell.hi = range->second;
  cell.tally = count_roots_in_interval(p.form, p.critical, cell.lo, cell.hi, p.ceiling);
  std::uint64_t total = static_cast<std::uint64_t>(cell.tally->total());
  if (ex) {
    if (cell.tally->degenerate > 0) ex->notes.push_back("degenerate roots of L counted");
    ex->cells.push_back(cell);
  }
  return CountResult::finite(total);
}

CountResult count_torus(const PolySystem& f, const CountOptions& opts, Explanation* ex) {
  f.validate();
  require_full_dimension(f);
  const std::size_t n = f.dim();
  if (n >= 63) throw DomainError("dimension too large for a 64-bit root count");
  if (f.terms() == n + 1) {
    auto sf = simplex_form(f);
    if (!sf) return CountResult::genericity_failure("coefficient matrix has rank below n");
    if (sf->zero_target) return CountResult::finite(0);
    return CountResult::finite(count_torus_binomial(sf->binomial));
  }

  CircuitData cd = find_subcircuit(f.exponents);
  GaleChoice choice = opts.ordering.empty() ? choose_gale(f, cd, true) : gale_for_order(f, cd, opts.ordering, true);
  if (!choice.system) {
    if (ex) ex->circuit = cd;
    return CountResult::genericity_failure(choice.report.failing_minor);
  }
  Prepared p = prepare(*choice.system, opts);
  record(ex, cd, p);
  OrthantSelector sel = orthant_selector(p.gale);
  const std::uint64_t mult = std::uint64_t{1} << (n - sel.r);

  std::vector<Endpoint> cuts{Endpoint::neg_inf()};
  for (const auto& b : breakpoints(p.gale)) cuts.push_back(Endpoint::at(b));
  cuts.push_back(Endpoint::pos_inf());

  std::uint64_t roots = 0;
  bool degenerate = false;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    CellReport cell;
    cell.lo = cuts[c];
    cell.hi = cuts[c + 1];
    mpq_class u = interior_point(cell.lo, cell.hi);
    for (std::size_t i = 0; i < n; ++i) cell.eps.push_back(sgn(p.gale.gammas[i].at(u)));
    cell.u_sign = sgn(u);
    cell.eligible = sel.lambda(cell.eps) == cell.u_sign && sel.gamma_ok(cell.eps);
    if (cell.eligible) {
      cell.tally = count_roots_in_interval(p.form, p.critical, cell.lo, cell.hi, p.ceiling);
      roots += static_cast<std::uint64_t>(cell.tally->total());
      degenerate = degenerate || cell.tally->degenerate > 0;
    }
    if (ex) ex->cells.push_back(std::move(cell));
  }
  if (ex) {
    ex->orthant_rank = sel.r;
    ex->multiplier = mult;
    if (degenerate) ex->notes.push_back("degenerate roots of L counted");
  }
  return CountResult::finite(roots * mult);
}

CountResult count_affine(const PolySystem& f, const CountOptions& opts, Explanation* ex) {
  f.validate();
  require_full_dimension(f);
  const std::size_t n = f.dim();
  const std::size_t t = f.terms();

  std::vector<std::size_t> zeroable;
  for (std::size_t i = 0; i < n; ++i) {
    bool nonneg = true;
    for (std::size_t j = 0; j < t && nonneg; ++j) nonneg = f.exponents(i, j) >= 0;
    if (nonneg) zeroable.push_back(i);
  }
  if (zeroable.size() > 24) throw DomainError("too many coordinate strata to enumerate");

  std::uint64_t extra = 0;
  std::vector<std::string> caveats;
  const std::uint64_t subsets = std::uint64_t{1} << zeroable.size();
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t k = 0; k < zeroable.size(); ++k)
      if (mask >> k & 1) s.push_back(zeroable[k]);
    std::vector<std::size_t> surviving;
    for (std::size_t j = 0; j < t; ++j) {
      bool zero = std::all_of(s.begin(), s.end(), [&](std::size_t i) { return f.exponents(i, j) == 0; });
      if (zero) surviving.push_back(j);
    }
    std::string name = "{";
    for (std::size_t k = 0; k < s.size(); ++k) name += (k ? "," : "") + std::to_string(s[k] + 1);
    name += "}";
    const bool origin = s.size() == n;
    if (surviving.empty()) {
      if (!origin) return CountResult::infinite("every equation vanishes where x_i = 0 for i in " + name);
      ++extra;
      if (ex) ex->notes.push_back("the origin is a root");
      continue;
    }
    std::size_t rk = rank(f.coeffs.select_columns(surviving));
    if (rk == surviving.size()) continue;
    caveats.push_back("stratum x_i = 0 for i in " + name + " not certified root-free");
  }

  CountResult torus = count_torus(f, opts, ex);
  if (torus.kind != CountResult::Kind::Finite) return torus;
  std::uint64_t total = torus.count + extra;
  if (!caveats.empty()) {
    std::string text;
    for (std::size_t k = 0; k < caveats.size(); ++k) text += (k ? "; " : "") + caveats[k];
    return CountResult::unverified(total, text);
  }
  return CountResult::finite(total);
}

}  // namespace circount
