#pragma once

// Root counts of circuit systems in the positive orthant, the real torus
// (R*)^n and affine space R^n.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circount/gale.hpp"
#include "circount/logsign.hpp"
#include "circount/system.hpp"

namespace circount {

struct CountResult {
  enum class Kind { Finite, Infinite, GenericityFailure, UnverifiedGenericity };

  Kind kind = Kind::Finite;
  std::uint64_t count = 0;
  std::string detail;

  static CountResult finite(std::uint64_t k) { return {Kind::Finite, k, {}}; }
  static CountResult infinite(std::string why) { return {Kind::Infinite, 0, std::move(why)}; }
  static CountResult genericity_failure(std::string why) { return {Kind::GenericityFailure, 0, std::move(why)}; }
  static CountResult unverified(std::uint64_t k, std::string caveat) {
    return {Kind::UnverifiedGenericity, k, std::move(caveat)};
  }

  friend bool operator==(const CountResult&, const CountResult&) = default;
};

const char* to_string(CountResult::Kind k);
std::string to_string(const CountResult& r);

/// Sign selectors deciding which cells of the u-line carry torus roots.
struct OrthantSelector {
  IntMatrix v_mod2;              // Smith right transform of [a_1..a_n], mod 2
  std::size_t r = 0;             // mod-2 rank of [a_1..a_n]
  std::vector<int> b_parities;   // b_1..b_m mod 2

  /// prod_{i<=m} eps_i^(b_i mod 2) for the sign vector eps of gamma_1..gamma_n.
  int lambda(const std::vector<int>& eps) const;
  /// Whether (eps)^(V mod 2) is positive in every coordinate j > r.
  bool gamma_ok(const std::vector<int>& eps) const;
};

/// Throws SingularExponents when [a_1..a_n] is singular.
OrthantSelector orthant_selector(const GaleSystem& gs);

struct CellReport {
  Endpoint lo;
  Endpoint hi;
  std::vector<int> eps;  // signs of gamma_1..gamma_n on the cell
  int u_sign = 0;
  bool eligible = true;
  std::optional<IntervalCount> tally;
};

/// Intermediate data of a count, filled on request.
struct Explanation {
  std::optional<CircuitData> circuit;
  std::optional<GaleSystem> gale;
  std::optional<LogLinForm> form;
  std::optional<CriticalSet> critical;
  std::optional<PrecisionBudget> budget;
  std::vector<CellReport> cells;
  std::size_t orthant_rank = 0;
  std::uint64_t multiplier = 1;
  long ceiling_bits = 0;
  std::vector<std::string> notes;
};

struct CountOptions {
  /// Lowers the precision ceiling when positive.
  long precision_cap_bits = 0;
  /// When nonempty, a fixed column order (0-based) for the Gale reduction of
  /// n+2 monomial systems; no other labelling is tried.
  std::vector<std::size_t> ordering;
};

/// Throws HyperplaneSupport, ValidationError; BudgetExceeded on precision exhaustion.
CountResult count_positive(const PolySystem& f, const CountOptions& opts = {}, Explanation* ex = nullptr);
CountResult count_torus(const PolySystem& f, const CountOptions& opts = {}, Explanation* ex = nullptr);
CountResult count_affine(const PolySystem& f, const CountOptions& opts = {}, Explanation* ex = nullptr);

}  // namespace circount
