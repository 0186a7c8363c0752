#pragma once

// Circuit supports and the reduction of an (n+2)-nomial system to Gale dual
// form x^{a_i} = gamma_{i,1} u + gamma_{i,0}, u = x^{a_{n+1}}.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "circount/exact_linalg.hpp"
#include "circount/logsign.hpp"
#include "circount/system.hpp"

namespace circount {

struct CircuitData {
  std::vector<std::size_t> sigma;  // columns with a nonzero relation entry
  IntVector relation;              // primitive kernel vector of the lifted support, length t

  std::size_t m() const { return sigma.size() - 2; }
  /// The relation restricted to sigma.
  IntVector sigma_relation() const;
};

/// Unique non-degenerate sub-circuit of an (n+2)-point support.
/// Throws HyperplaneSupport when the points lie in an affine hyperplane.
CircuitData find_subcircuit(const IntMatrix& exponents);

/// A relabelling of the support putting sigma at positions 1..m, n+1, n+2
/// (0-based: 0..m-1, n, n+1) and translating a_{n+2} to the origin.
struct Indexing {
  std::vector<std::size_t> order;  // order[k] = original column placed at position k
  IntMatrix exponents;             // relabelled and translated
  IntVector relation;              // relabelled, with relation[n] > 0
  std::size_t m = 0;
};

/// Relabelling with original column `pole` as a_{n+1} and `base` as a_{n+2}.
Indexing make_indexing(const IntMatrix& exponents, const CircuitData& cd, std::size_t pole, std::size_t base);

/// Admissible (pole, base) pairs from sigma in the order they are tried: the
/// identity labelling first when admissible, then by smallest index.
/// With `need_odd` the relation entry at the pole must be odd.
std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(const CircuitData& cd, bool need_odd);

/// First admissible relabelling with an odd relation entry at a_{n+1}.
Indexing reindex_for_torus(const IntMatrix& exponents, const CircuitData& cd);

struct GenericityReport {
  bool passed = true;
  std::string failing_minor;
};

/// For an n x (n+2) coefficient matrix: the n x n minors of columns
/// {1..n, n+2} and the 2 x 2 minors of the last two columns must all be nonzero.
GenericityReport check_genericity(const IntMatrix& c);

IntMatrix select_order(const IntMatrix& m, const std::vector<std::size_t>& order);

struct GaleSystem {
  Indexing indexing;
  std::vector<LinearArg> gammas;  // n + 1 entries, the last one is (1, 0)

  std::size_t n() const { return gammas.size() - 1; }
  std::size_t m() const { return indexing.m; }
};

/// Row reduction of the relabelled coefficient matrix. Requires the first n
/// relabelled columns to be independent (throws RankError otherwise).
GaleSystem reduce_to_gale(const PolySystem& f, const Indexing& ix);

/// Tries candidate relabellings until one passes the genericity check.
struct GaleChoice {
  std::optional<GaleSystem> system;
  GenericityReport report;  // the last failure when no candidate passes
};
GaleChoice choose_gale(const PolySystem& f, const CircuitData& cd, bool need_odd);

/// Uses a caller-fixed column order instead of searching. The order must put
/// sigma at positions 1..m, n+1, n+2; anything else is refused, as is a
/// failing genericity check.
GaleChoice gale_for_order(const PolySystem& f, const CircuitData& cd, const std::vector<std::size_t>& order,
                          bool need_odd);

/// False when some gamma_i has both entries <= 0, so no u makes it positive.
bool has_positive_domain(const GaleSystem& gs);

/// I = {u : gamma_{i,1} u + gamma_{i,0} > 0 for all i}, or nullopt when empty.
std::optional<std::pair<Endpoint, Endpoint>> interval_I(const GaleSystem& gs);

/// Sorted distinct finite zeros of the gamma_i.
std::vector<mpq_class> breakpoints(const GaleSystem& gs);

/// L(u) = sum_{i<=m} b_i log|gamma_i(u)| + b_{n+1} log|u|.
LogLinForm log_form(const GaleSystem& gs);

}  // namespace circount
