#pragma once

// Reference systems and random instance generators shared by the tests.

#include <cstdint>
#include <random>
#include <vector>

#include "circount/system.hpp"

namespace circount::testing {

/// Five equations with seven monomials and a positive parameter c. Positive
/// root counts are 2, 6, 6, 2, 2, 0 at c = 1/20731, 1/20730, 1/14392,
/// 1/14391, 1/13059, 1/13058.
PolySystem rigged_family(const mpq_class& c);

/// Four equations with six monomials, two torus roots.
PolySystem random_4x6();

/// (x2 - 1, x1 x2 - x3 - 1, x1^2 x2 - x3 - 1) with columns ordered
/// x2, x1 x2, x1^2 x2, x3, 1 so the last two lie outside the circuit.
PolySystem misindexed_3x5();

/// Four monomials x1x2, x2x3, x3x1, x1x2x3 in three equations; the affine
/// zero set contains whole coordinate axes.
PolySystem axes_3x4();

PolySystem make_system(const std::vector<std::vector<long>>& points, const std::vector<std::vector<long>>& coeffs);

/// Random system with t terms and full-dimensional support that passes validation.
PolySystem random_system(std::mt19937_64& rng, std::size_t n, std::size_t t, long max_degree, long max_coeff);

/// Random n+2 monomial system with a non-degenerate circuit (all relation entries nonzero).
PolySystem random_circuit_system(std::mt19937_64& rng, std::size_t n, long max_degree, long max_coeff);

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound);

long uniform(std::mt19937_64& rng, long lo, long hi);

}  // namespace circount::testing
