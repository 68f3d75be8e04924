#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "zarex/bit_matrix.hpp"
#include "zarex/record.hpp"
#include "zarex/rational.hpp"

namespace zarex {

struct ExactOptions {
    int threads = 1;
    /// Slab-order symmetry breaking; accepted only when every slab of M along
    /// the first axis is identical.
    bool symmetry_breaking = false;
    bool guard = true;
};

/// Throws GuardError when n^d is beyond the exact default guard
/// (d = 2: n <= 7, d = 3: n <= 4, otherwise n^d <= 64).
void check_ex_guard(int n, int d);

/// ex(n, M, d) by branch and bound. The certificate is the lexicographically
/// smallest optimal matrix in row-major order.
ExtremalRecord ex_exact(int n, const BitMatrix& m, const ExactOptions& options = {});

/// Greedy fill in seeded order, then remove-and-refill local search.
/// `iterations` < 0 means 4 n^d.
ExtremalRecord ex_lower_heuristic(int n, const BitMatrix& m, std::uint64_t seed, int iterations = -1);

/// n^(-2/(r+1)) rounded down to a multiple of 2^-20, clamped to [0, 1].
Rat default_deletion_probability(int n, int r);

/// Seeded G(n, n, p) sample with one one deleted from each J_{r,r} copy.
ExtremalRecord ex_lower_random_deletion(int n, int r, const std::optional<Rat>& p, std::uint64_t seed);

/// ex(m + n) >= ex(m) + ex(n), one report per pair.
std::vector<CheckReport> check_superadditive(const BitMatrix& m, const std::vector<std::pair<int, int>>& pairs,
                                             const ExactOptions& options = {});

/// ex(n, S(M, k)) <= (k + 1)^2 ex(ceil(n / (k + 1)), M).
CheckReport check_tardos_blank(const BitMatrix& m, int k, int n, const ExactOptions& options = {});

}  // namespace zarex
