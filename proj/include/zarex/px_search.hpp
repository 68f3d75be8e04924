#pragma once

#include <cstdint>
#include <string>

#include "zarex/pattern.hpp"
#include "zarex/rational.hpp"
#include "zarex/record.hpp"

namespace zarex {

enum class PxMethod { exact, greedy, anneal };

std::string method_name(PxMethod m);
PxMethod parse_px_method(const std::string& s);

/// Geometric cooling from t_start to t_end over sweeps * r^d single-cell moves.
struct AnnealConfig {
    int sweeps = 200;
    double t_start = 2.0;
    double t_end = 0.05;
};

struct PxOptions {
    PxMethod method = PxMethod::exact;
    std::uint64_t seed = 0;
    int threads = 1;
    bool guard = true;
    AnnealConfig anneal;
};

/// Exact mode guard: d = 2: r <= 5, d = 3: r <= 3, otherwise r^d <= 64.
void check_px_guard(int d, int r);

/// Largest P-free union of open cells at resolution r in [0, n]^d. The exact
/// method returns the optimum with the lexicographically smallest certificate
/// in region_to_matrix row-major order. The record's bound is "lower": grid
/// regions only approximate px from below.
ExtremalRecord px_lower_search(const Rat& n, int r, const Pattern& p, const PxOptions& options = {});

}  // namespace zarex
