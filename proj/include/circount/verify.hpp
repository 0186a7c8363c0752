#pragma once

// Independent consistency checks run on demand after a count.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circount/counter.hpp"

namespace circount {

struct SamplingCheck {
  bool consistent = true;
  std::size_t samples = 0;
  std::size_t unresolved = 0;    // samples whose sign could not be certified
  std::size_t sign_changes = 0;  // observed along all sampled cells
  std::vector<std::string> problems;
};

/// Samples L at points of every tallied cell and checks the observed signs
/// against the reported sign sequence: L is monotone between consecutive
/// critical points, so each such segment may change sign at most once and only
/// when its end signs are opposite. Each cell gets samples_per_cell accepted
/// points; draws rounding onto an endpoint or critical interval are redrawn.
SamplingCheck check_sampling(const LogLinForm& l, const CriticalSet& cs, const std::vector<CellReport>& cells,
                             std::size_t samples_per_cell, std::uint64_t seed = 1);

/// Sign of L at a double, certified: a floating-point evaluation with an
/// error bound, then ball arithmetic at the exact binary value. Returns 0
/// when unresolved or at a pole.
int sampled_sign(const LogLinForm& l, double u, bool* resolved = nullptr);

struct DirectCounts {
  std::uint64_t positive = 0;
  std::uint64_t torus = 0;
};

/// Root counts of a single Laurent polynomial by direct isolation (n = 1 only).
std::optional<DirectCounts> direct_univariate_counts(const PolySystem& f);

}  // namespace circount
