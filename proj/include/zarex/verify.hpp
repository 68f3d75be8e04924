#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "zarex/bit_matrix.hpp"
#include "zarex/pattern.hpp"
#include "zarex/rational.hpp"
#include "zarex/record.hpp"

namespace zarex {

/// Measure of the exact grid optimum: the largest P-free union of open cells
/// at resolution r.
Rat grid_px(const Rat& n, int r, const Pattern& p, int threads = 1);

/// Closed-form upper bound for P_{s,t,c}, radicals rounded up at denominator 2^30.
/// t = 2: c n + (n - c) sqrt(s n); t > 2: c t n + t (s n^(2t-1))^(1/t).
Rat analytic_upper_stack(const Rat& s, int t, const Rat& c, const Rat& n);

/// Volume of {n > y_1, y_i > y_{i+1} + c, y_t > 0}: (n - (t-1) c)^t / t!, or 0.
Rat simplex_volume(int t, const Rat& c, const Rat& n);

CheckReport check_main_equivalence(const FinitePattern& p, const Rat& n, int r, int threads = 1);
CheckReport check_addedseg(const FinitePattern& p, const Rat& c, const Rat& n, int r, int threads = 1);
CheckReport check_addedpt(const FinitePattern& p, const Rat& c, const Rat& n, int r, int threads = 1);
CheckReport check_ps_blank(const FinitePattern& p, const Rat& q, const Rat& n, int r, int threads = 1);
CheckReport check_kst_sandwich(const Rat& s, const Rat& c, const Rat& n, int r, int threads = 1);
CheckReport check_projection(const FinitePattern& p3, const Rat& n, int r, int threads = 1);
CheckReport check_simplex_volume(int t, const Rat& c, const Rat& n, std::uint64_t seed, std::int64_t samples = 1000000);
CheckReport check_horizseg(const Rat& c, const Rat& n, int r, int threads = 1);
CheckReport check_diagseg_construction(const Rat& a, const Rat& b, const Rat& n, int r);
/// Measure equality and P-freeness of the region built from an extremal
/// J_{2,2}-free matrix, for the unit 2 x 2 grid.
std::vector<CheckReport> check_lowerth(int n);
CheckReport check_random_deletion(int n, int r, int seeds, std::uint64_t seed, const Rat& slack = Rat(9, 10));

using Params = std::map<std::string, std::string>;

struct CheckContext {
    std::uint64_t seed = 42;
    int threads = 1;
};

struct CheckInfo {
    std::string id;
    std::string summary;
    Params defaults;
    std::function<std::vector<CheckReport>(const Params&, const CheckContext&)> run;
};

/// All registered checks, sorted by id.
const std::vector<CheckInfo>& check_registry();
const CheckInfo* find_check(std::string_view id);

/// Runs a check with `overrides` merged into its defaults. Unknown parameter
/// names are a PreconditionError.
std::vector<CheckReport> run_check(const CheckInfo& info, const Params& overrides, const CheckContext& ctx);

/// Named patterns accepted by the "pattern" parameter: point, pair, column_pair,
/// diagonal, grid2, grid3; anything ending in ".json" is read as a pattern file.
FinitePattern preset_pattern(const std::string& name);
/// "11/11" style row strings, or a named matrix: J22, J23, J33, I2.
BitMatrix preset_matrix(const std::string& text);

}  // namespace zarex
