#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zarex {

/// Index tuple into a d-dimensional matrix, 0-based in the C++ API.
/// (The JSON matrix format is 1-based; see io.hpp.)
using Index = std::vector<int>;

inline constexpr int kMaxAxisLength = 64;

/// d-dimensional 0-1 matrix (d >= 2).
///
/// Entries are stored as "lines": for every prefix of the first d-1
/// coordinates there is one 64-bit mask over the last axis. For d = 2 a
/// line is a row and bit j is column j.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(std::vector<int> dims);

    static BitMatrix from_ones(std::vector<int> dims, std::span<const Index> ones);
    static BitMatrix all_ones(std::vector<int> dims);
    /// Convenience for 2-D literals: rows given as strings of '0'/'1'.
    static BitMatrix from_rows(std::span<const std::string> rows);

    int dim() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    int rows() const { return dims_.at(0); }
    int cols() const { return dims_.back(); }

    bool get(std::span<const int> idx) const;
    void set(std::span<const int> idx, bool value);
    bool get(int i, int j) const { return (lines_[static_cast<std::size_t>(i)] >> j) & 1U; }
    void set(int i, int j, bool value);

    std::size_t count() const;
    std::size_t entries() const;
    /// All ones in lexicographic order.
    std::vector<Index> ones() const;

    std::size_t line_count() const { return lines_.size(); }
    std::uint64_t line(std::size_t prefix) const { return lines_[prefix]; }
    /// Flattened position of the first d-1 coordinates of idx.
    std::size_t prefix_of(std::span<const int> idx) const;

    /// Row-major bitstring, '1'/'0' per entry (last axis fastest).
    std::string bitstring() const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    void check_index(std::span<const int> idx) const;

    std::vector<int> dims_;
    std::vector<std::uint64_t> lines_;
};

/// Per-axis strictly increasing index maps witnessing that B is contained in A.
struct MatrixEmbedding {
    std::vector<std::vector<int>> maps;
};

/// A forced assignment: B's entry `pattern_entry` must land on A's entry `host_entry`.
struct ForcedEntry {
    Index pattern_entry;
    Index host_entry;
};

/// True iff some submatrix of A turns into B by changing ones to zeroes.
bool matrix_contains(const BitMatrix& a, const BitMatrix& b);

/// Returns the witness maps, searching axes in order with ascending candidates.
std::optional<MatrixEmbedding> find_embedding(const BitMatrix& a, const BitMatrix& b,
                                              const std::optional<ForcedEntry>& forced = std::nullopt);

/// True iff A contains a copy of B that uses A's entry `host_entry`.
bool contains_through(const BitMatrix& a, const BitMatrix& b, std::span<const int> host_entry);

/// Number of index-map witnesses (tuples of strictly increasing per-axis maps).
std::uint64_t count_copies(const BitMatrix& a, const BitMatrix& b);

/// Independently re-checks a witness.
bool verify_embedding(const BitMatrix& a, const BitMatrix& b, const MatrixEmbedding& e);

/// S(M, k): k zero hyperplanes inserted between consecutive indices on every axis.
BitMatrix blowup(const BitMatrix& m, int k);

// 2-D symmetries.
BitMatrix reflect_columns(const BitMatrix& m);
BitMatrix reflect_rows(const BitMatrix& m);
BitMatrix transpose(const BitMatrix& m);
/// Quarter turn clockwise.
BitMatrix rotate90(const BitMatrix& m);

/// Zero rows/columns appended at the end of each axis up to `dims`.
BitMatrix pad_to(const BitMatrix& m, std::vector<int> dims);
/// Sub-box with the given start offset and extents.
BitMatrix sub_box(const BitMatrix& m, std::span<const int> start, std::vector<int> extents);

}  // namespace zarex
