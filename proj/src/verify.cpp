#include "circount/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "circount/errors.hpp"

namespace circount {

namespace {

constexpr double kEps = 0x1p-52;

struct DoubleTerm {
  double b, slope, offset;
};

std::vector<DoubleTerm> to_doubles(const LogLinForm& l) {
  std::vector<DoubleTerm> out;
  for (std::size_t i = 0; i < l.size(); ++i)
    out.push_back({l.coeffs[i].get_d(), l.args[i].slope.get_d(), l.args[i].offset.get_d()});
  return out;
}

// Floating-point L(u) with a generous error bound; nullopt when too close to call.
std::optional<int> fast_sign(const std::vector<DoubleTerm>& terms, double u) {
  double sum = 0;
  double mag = 0;
  double err = 0;
  for (const auto& t : terms) {
    double a = t.slope * u + t.offset;
    double aerr = (std::fabs(t.slope * u) + std::fabs(t.offset)) * 4 * kEps;
    if (!(std::fabs(a) > 2 * aerr) || !std::isfinite(a)) return std::nullopt;
    double lg = std::log(std::fabs(a));
    double lerr = aerr / (std::fabs(a) - aerr) + std::fabs(lg) * kEps + 0x1p-1000;
    sum += t.b * lg;
    mag += std::fabs(t.b * lg);
    err += std::fabs(t.b) * lerr;
  }
  err += mag * static_cast<double>(terms.size() + 2) * kEps;
  err *= 8;
  if (!std::isfinite(sum) || !(std::fabs(sum) > err)) return std::nullopt;
  return sum > 0 ? 1 : -1;
}

struct Segment {
  int left = 0;
  int right = 0;
  std::vector<int> seen;
};

}  // namespace

int sampled_sign(const LogLinForm& l, double u, bool* resolved) {
  if (resolved) *resolved = true;
  if (auto s = fast_sign(to_doubles(l), u)) return *s;
  mpq_class q(u);
  for (const auto& a : l.args)
    if (a.at(q) == 0) {
      if (resolved) *resolved = false;
      return 0;
    }
  for (long bits : {128L, 512L}) {
    switch (ball_sign(evaluate_ball(l, q, bits))) {
      case BallSign::Positive:
        return 1;
      case BallSign::Negative:
        return -1;
      case BallSign::Straddles:
        break;
    }
  }
  if (resolved) *resolved = false;
  return 0;
}

SamplingCheck check_sampling(const LogLinForm& l, const CriticalSet& cs, const std::vector<CellReport>& cells,
                             std::size_t samples_per_cell, std::uint64_t seed) {
  SamplingCheck out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<DoubleTerm> terms = to_doubles(l);
  const mpq_class tiny = mpq_class(1) / (mpz_class(1) << 60);

  for (const auto& cell : cells) {
    if (!cell.tally) continue;
    const IntervalCount& tally = *cell.tally;
    std::vector<IsolatingInterval> crit;
    for (const auto& j : tally.critical) crit.push_back(refine(cs.p, j, tiny));
    std::vector<Segment> segs(crit.size() + 1);
    for (std::size_t k = 0; k < segs.size(); ++k) {
      segs[k].left = tally.signs[k];
      segs[k].right = tally.signs[k + 1];
    }
    std::vector<std::pair<mpq_class, int>> points;
    // rejected draws (rounded onto an endpoint or inside a critical interval) are redrawn
    std::size_t taken = 0;
    for (std::size_t attempt = 0; taken < samples_per_cell && attempt < 20 * samples_per_cell; ++attempt) {
      double u = 0;
      double r = unit(rng);
      double expo = std::pow(10.0, -1 - 14 * unit(rng));
      double wide = std::pow(10.0, -12 + 24 * unit(rng));
      if (cell.lo.finite() && cell.hi.finite()) {
        double lo = cell.lo.value.get_d();
        double hi = cell.hi.value.get_d();
        double t = r < 0.5 ? unit(rng) : (r < 0.75 ? expo : 1 - expo);
        u = lo + (hi - lo) * t;
      } else if (cell.lo.finite()) {
        u = cell.lo.value.get_d() + wide;
      } else if (cell.hi.finite()) {
        u = cell.hi.value.get_d() - wide;
      } else {
        u = r < 0.5 ? -wide : wide;
      }
      if (!std::isfinite(u)) continue;
      mpq_class q(u);
      if (!(cell.lo < Endpoint::at(q) && Endpoint::at(q) < cell.hi)) continue;
      std::size_t seg = 0;
      bool inside_crit = false;
      for (const auto& j : crit) {
        if (q > j.hi) {
          ++seg;
        } else {
          inside_crit = q >= j.lo;
          break;
        }
      }
      if (inside_crit) continue;
      bool ok = true;
      int sign = sampled_sign(l, u, &ok);
      ++taken;
      ++out.samples;
      if (!ok) {
        ++out.unresolved;
        continue;
      }
      points.emplace_back(q, static_cast<int>(seg) * 4 + sign + 1);
    }
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [q, code] : points) segs[static_cast<std::size_t>(code / 4)].seen.push_back(code % 4 - 1);

    std::size_t cell_changes = 0;
    for (std::size_t k = 0; k < segs.size(); ++k) {
      const Segment& sg = segs[k];
      std::size_t changes = 0;
      for (std::size_t i = 1; i < sg.seen.size(); ++i)
        if (sg.seen[i] != sg.seen[i - 1]) ++changes;
      cell_changes += changes;
      const bool crossing = sg.left * sg.right < 0;
      const std::string where = "cell (" + to_string(cell.lo) + ", " + to_string(cell.hi) + ") segment " +
                                std::to_string(k);
      if (changes > (crossing ? 1u : 0u)) {
        out.consistent = false;
        out.problems.push_back(where + ": " + std::to_string(changes) + " sampled sign changes");
      }
      if (!crossing) {
        int expected = sg.left != 0 ? sg.left : sg.right;
        for (int s : sg.seen)
          if (expected != 0 && s != expected) {
            out.consistent = false;
            out.problems.push_back(where + ": sampled sign contradicts monotone end values");
            break;
          }
      }
    }
    out.sign_changes += cell_changes;
    if (static_cast<long>(cell_changes) > tally.total()) {
      out.consistent = false;
      out.problems.push_back("cell (" + to_string(cell.lo) + ", " + to_string(cell.hi) +
                             "): more sampled sign changes than reported roots");
    }
  }
  return out;
}

std::optional<DirectCounts> direct_univariate_counts(const PolySystem& f) {
  if (f.dim() != 1) return std::nullopt;
  mpz_class lowest = f.exponents(0, 0);
  for (std::size_t j = 0; j < f.terms(); ++j) lowest = std::min(lowest, f.exponents(0, j));
  std::vector<mpz_class> coeffs;
  for (std::size_t j = 0; j < f.terms(); ++j) {
    mpz_class shifted = f.exponents(0, j) - lowest;
    if (!shifted.fits_uint_p() || shifted > 1'000'000) throw DomainError("degree too large for direct isolation");
    std::size_t k = shifted.get_ui();
    if (coeffs.size() <= k) coeffs.resize(k + 1);
    coeffs[k] += f.coeffs(0, j);
  }
  IntPoly poly(std::move(coeffs));
  if (poly.is_zero()) throw DomainError("univariate polynomial is identically zero");
  IntPoly p = squarefree_part(poly);
  DirectCounts dc;
  for (IsolatingInterval j : isolate_real_roots(poly)) {
    if (j.lo < 0 && j.hi > 0 && !split_at(p, j, 0)) continue;  // root at the origin
    ++dc.torus;
    if (j.lo >= 0) ++dc.positive;
  }
  return dc;
}

}  // namespace circount
