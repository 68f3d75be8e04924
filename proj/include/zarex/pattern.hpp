#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "zarex/bit_matrix.hpp"
#include "zarex/rational.hpp"

namespace zarex {

using Point = std::vector<Rat>;

/// Finite point set in R^d (d >= 2) with exact coordinates.
/// Points are kept sorted and duplicate-free.
class FinitePattern {
public:
    FinitePattern(int dim, std::vector<Point> points);

    int dim() const { return dim_; }
    const std::vector<Point>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

    /// Distinct values of coordinate `axis`, ascending.
    std::vector<Rat> axis_values(int axis) const;
    /// Position of `value` in axis_values(axis).
    int class_of(int axis, const Rat& value) const;

    friend bool operator==(const FinitePattern&, const FinitePattern&) = default;

private:
    int dim_;
    std::vector<Point> points_;
};

/// Closed horizontal segment {(x, y) : x_lo <= x <= x_hi}.
struct Segment {
    Rat y;
    Rat x_lo;
    Rat x_hi;
    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Disjoint union of horizontal segments: distinct y, pairwise disjoint
/// x-projections, stored by increasing x_lo.
class SegmentPattern {
public:
    explicit SegmentPattern(std::vector<Segment> segments);
    const std::vector<Segment>& segments() const { return segments_; }
    friend bool operator==(const SegmentPattern&, const SegmentPattern&) = default;

private:
    std::vector<Segment> segments_;
};

/// t closed segments [0, s] x {c, 2c, ..., tc}.
struct StackPattern {
    Rat s;
    int t;
    Rat c;
    StackPattern(Rat s, int t, Rat c);
    friend bool operator==(const StackPattern&, const StackPattern&) = default;
};

/// A single closed horizontal segment of length c.
struct HSegment {
    Rat c;
    explicit HSegment(Rat c);
    friend bool operator==(const HSegment&, const HSegment&) = default;
};

/// A 2-D finite pattern with a closed horizontal segment of `length`
/// whose left endpoint is the point `anchor` of the rightmost column.
struct TailedPattern {
    FinitePattern base;
    std::size_t anchor;
    Rat length;
    TailedPattern(FinitePattern base, std::size_t anchor, Rat length);
    friend bool operator==(const TailedPattern&, const TailedPattern&) = default;
};

using Pattern = std::variant<FinitePattern, SegmentPattern, StackPattern, HSegment, TailedPattern>;

std::string kind_name(const Pattern& p);
int pattern_dim(const Pattern& p);

// Row classes share the last coordinate, column classes share the first.
// Classes are returned in ascending coordinate order.
std::vector<std::vector<Point>> row_classes(const FinitePattern& p);
std::vector<std::vector<Point>> column_classes(const FinitePattern& p);

/// M_P. For d = 2 matrix row 0 is the topmost row class (largest y) and
/// column 0 the leftmost column class. For d >= 3 axis k indexes the
/// values of coordinate k in ascending order.
BitMatrix pattern_to_matrix(const FinitePattern& p);

/// Unit-spaced point set whose M_P is `m` (2-D: row 0 of m is the top row).
FinitePattern matrix_to_pattern(const BitMatrix& m);

struct Rotate90 {};  // counter-clockwise quarter turn in the first two coordinates
struct ReflectH {};  // mirror left-right (x -> -x)
struct ReflectV {};  // mirror top-bottom (y -> -y)
struct Translate {
    std::vector<Rat> by;
};
struct Dilate {
    Rat q;
};
using Transform = std::variant<Rotate90, ReflectH, ReflectV, Translate, Dilate>;

FinitePattern transform(const FinitePattern& p, const Transform& t);
/// Rotate90 is rejected for segment patterns (segments must stay horizontal).
SegmentPattern transform(const SegmentPattern& p, const Transform& t);

/// Index of the bottommost point of the rightmost column.
std::size_t rightmost_anchor(const FinitePattern& p);

/// Adds the point c to the right of the anchor point (c >= 0; c = 0 is a no-op).
FinitePattern append_point(const FinitePattern& p, const Rat& c);
/// Attaches a closed segment of length c >= 0 to the anchor point.
TailedPattern append_segment(const FinitePattern& p, const Rat& c);

/// Smallest and largest gap between consecutive distinct values over all axes.
/// Empty when every axis has a single value.
std::optional<std::pair<Rat, Rat>> gap_range(const FinitePattern& p);

/// Appends a constant last coordinate.
FinitePattern lift(const FinitePattern& p, const Rat& last = Rat(0));
/// Drops the last coordinate (duplicates merge).
FinitePattern project(const FinitePattern& p);

/// True iff (f(x0) - f(x1)) / (x0 - x1) >= 1 for every pair of distinct x.
/// Pairs are (x, f(x)); the x values must be distinct.
bool is_expanding(std::span<const std::pair<Rat, Rat>> map);

}  // namespace zarex
