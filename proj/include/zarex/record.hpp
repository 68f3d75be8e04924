#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zarex/bit_matrix.hpp"
#include "zarex/grid_region.hpp"
#include "zarex/rational.hpp"

namespace zarex {

enum class BoundKind { exact, lower, upper };

std::string bound_name(BoundKind b);

/// Result of an ex or px computation.
///
/// For ex, `value` counts ones and `certificate` is the matrix. For px,
/// `value` counts occupied cells, `measure` is value * g^d and `region` is
/// the certificate.
struct ExtremalRecord {
    std::string kind;  // "ex" or "px"
    std::string pattern_id;
    Rat n;
    int d = 2;
    std::optional<int> r;
    std::int64_t value = 0;
    std::optional<Rat> measure;
    BoundKind bound = BoundKind::exact;
    std::string method;
    std::optional<BitMatrix> certificate;
    std::optional<GridRegion> region;
    std::optional<std::uint64_t> seed;
    bool symmetry_breaking = false;
    std::int64_t elapsed_ms = 0;
};

enum class Relation { le, ge, eq };

std::string relation_symbol(Relation r);

/// One side-by-side comparison. With `mid` set the report is a sandwich:
/// lhs R mid R rhs.
struct CheckReport {
    std::string check_id;
    std::map<std::string, std::string> params;
    Rat lhs;
    Rat rhs;
    std::optional<Rat> mid;
    Relation relation = Relation::le;
    std::vector<std::string> artifacts;
    std::string note;

    bool pass() const;
};

}  // namespace zarex
