#include "zarex/pattern.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "zarex/errors.hpp"

namespace zarex {

FinitePattern::FinitePattern(int dim, std::vector<Point> points) : dim_(dim), points_(std::move(points))
{
    if (dim_ < 2) throw PreconditionError("pattern dimension must be at least 2");
    if (points_.empty()) throw PreconditionError("finite pattern must contain at least one point");
    for (const auto& p : points_)
        if (static_cast<int>(p.size()) != dim_) throw PreconditionError("point arity does not match pattern dimension");
    std::sort(points_.begin(), points_.end());
    if (std::adjacent_find(points_.begin(), points_.end()) != points_.end())
        throw PreconditionError("finite pattern contains a duplicate point");
}

std::vector<Rat> FinitePattern::axis_values(int axis) const
{
    std::vector<Rat> values;
    for (const auto& p : points_) values.push_back(p.at(static_cast<std::size_t>(axis)));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

int FinitePattern::class_of(int axis, const Rat& value) const
{
    auto values = axis_values(axis);
    auto it = std::lower_bound(values.begin(), values.end(), value);
    if (it == values.end() || *it != value) throw std::out_of_range("value is not a coordinate of the pattern");
    return static_cast<int>(it - values.begin());
}

SegmentPattern::SegmentPattern(std::vector<Segment> segments) : segments_(std::move(segments))
{
    if (segments_.empty()) throw PreconditionError("segment pattern must contain at least one segment");
    for (const auto& s : segments_)
        if (!(s.x_lo < s.x_hi)) throw PreconditionError("segment needs x_lo < x_hi");
    std::sort(segments_.begin(), segments_.end(), [](const Segment& a, const Segment& b) { return a.x_lo < b.x_lo; });
    std::set<Rat> ys;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        if (!ys.insert(segments_[i].y).second) throw PreconditionError("two segments share a y-coordinate");
        if (i > 0 && !(segments_[i - 1].x_hi < segments_[i].x_lo))
            throw PreconditionError("segment x-projections must be pairwise disjoint");
    }
}

StackPattern::StackPattern(Rat s_, int t_, Rat c_) : s(s_), t(t_), c(c_)
{
    if (s.sign() <= 0) throw PreconditionError("stack segment length s must be positive");
    if (t < 2) throw PreconditionError("stack needs t >= 2 segments");
    if (c.sign() <= 0) throw PreconditionError("stack gap c must be positive");
}

HSegment::HSegment(Rat c_) : c(c_)
{
    if (c.sign() <= 0) throw PreconditionError("segment length must be positive");
}

TailedPattern::TailedPattern(FinitePattern base_, std::size_t anchor_, Rat length_)
    : base(std::move(base_)), anchor(anchor_), length(length_)
{
    if (base.dim() != 2) throw PreconditionError("a tail can only be attached to a 2-D pattern");
    if (anchor >= base.size()) throw PreconditionError("anchor index out of range");
    if (length.sign() < 0) throw PreconditionError("tail length must be non-negative");
    if (base.points()[anchor][0] != base.axis_values(0).back())
        throw PreconditionError("anchor must lie in the rightmost column");
}

std::string kind_name(const Pattern& p)
{
    struct V {
        std::string operator()(const FinitePattern&) const { return "finite"; }
        std::string operator()(const SegmentPattern&) const { return "segments"; }
        std::string operator()(const StackPattern&) const { return "stack"; }
        std::string operator()(const HSegment&) const { return "hsegment"; }
        std::string operator()(const TailedPattern&) const { return "tailed"; }
    };
    return std::visit(V{}, p);
}

int pattern_dim(const Pattern& p)
{
    if (const auto* f = std::get_if<FinitePattern>(&p)) return f->dim();
    return 2;
}

namespace {

std::vector<std::vector<Point>> classes_along(const FinitePattern& p, int axis)
{
    std::map<Rat, std::vector<Point>> by_value;
    for (const auto& pt : p.points()) by_value[pt[static_cast<std::size_t>(axis)]].push_back(pt);
    std::vector<std::vector<Point>> out;
    for (auto& [value, pts] : by_value) out.push_back(std::move(pts));
    return out;
}

}  // namespace

std::vector<std::vector<Point>> row_classes(const FinitePattern& p) { return classes_along(p, p.dim() - 1); }

std::vector<std::vector<Point>> column_classes(const FinitePattern& p) { return classes_along(p, 0); }

BitMatrix pattern_to_matrix(const FinitePattern& p)
{
    const int d = p.dim();
    std::vector<std::vector<Rat>> values;
    std::vector<int> dims;
    for (int k = 0; k < d; ++k) {
        values.push_back(p.axis_values(k));
        dims.push_back(static_cast<int>(values.back().size()));
    }
    auto position = [&](int axis, const Rat& v) {
        const auto& vals = values[static_cast<std::size_t>(axis)];
        return static_cast<int>(std::lower_bound(vals.begin(), vals.end(), v) - vals.begin());
    };
    if (d == 2) {
        BitMatrix m({dims[1], dims[0]});
        for (const auto& pt : p.points()) m.set(dims[1] - 1 - position(1, pt[1]), position(0, pt[0]), true);
        return m;
    }
    BitMatrix m(dims);
    for (const auto& pt : p.points()) {
        Index idx;
        for (int k = 0; k < d; ++k) idx.push_back(position(k, pt[static_cast<std::size_t>(k)]));
        m.set(idx, true);
    }
    return m;
}

FinitePattern matrix_to_pattern(const BitMatrix& m)
{
    std::vector<Point> pts;
    for (const auto& one : m.ones()) {
        if (m.dim() == 2) {
            pts.push_back({Rat(one[1]), Rat(m.rows() - 1 - one[0])});
        } else {
            Point pt;
            for (int c : one) pt.push_back(Rat(c));
            pts.push_back(std::move(pt));
        }
    }
    return FinitePattern(m.dim(), std::move(pts));
}

namespace {

Point apply(const Point& p, const Transform& t)
{
    Point out = p;
    if (std::holds_alternative<Rotate90>(t)) {
        out[0] = -p[1];
        out[1] = p[0];
    } else if (std::holds_alternative<ReflectH>(t)) {
        out[0] = -p[0];
    } else if (std::holds_alternative<ReflectV>(t)) {
        out[p.size() - 1] = -p.back();
    } else if (const auto* tr = std::get_if<Translate>(&t)) {
        if (tr->by.size() != p.size()) throw PreconditionError("translation vector arity mismatch");
        for (std::size_t k = 0; k < p.size(); ++k) out[k] += tr->by[k];
    } else if (const auto* dl = std::get_if<Dilate>(&t)) {
        if (!(dl->q > Rat(1))) throw PreconditionError("dilation factor q must exceed 1");
        for (auto& c : out) c *= dl->q;
    }
    return out;
}

}  // namespace

FinitePattern transform(const FinitePattern& p, const Transform& t)
{
    std::vector<Point> pts;
    for (const auto& pt : p.points()) pts.push_back(apply(pt, t));
    return FinitePattern(p.dim(), std::move(pts));
}

SegmentPattern transform(const SegmentPattern& p, const Transform& t)
{
    if (std::holds_alternative<Rotate90>(t)) throw PreconditionError("rotating a segment pattern makes it vertical");
    std::vector<Segment> out;
    for (const auto& s : p.segments()) {
        Point lo = apply({s.x_lo, s.y}, t);
        Point hi = apply({s.x_hi, s.y}, t);
        out.push_back({lo[1], min(lo[0], hi[0]), max(lo[0], hi[0])});
    }
    return SegmentPattern(std::move(out));
}

std::size_t rightmost_anchor(const FinitePattern& p)
{
    if (p.dim() != 2) throw PreconditionError("rightmost column is only defined for 2-D patterns");
    const Rat right = p.axis_values(0).back();
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& pt = p.points()[i];
        if (pt[0] != right) continue;
        if (!best || pt[1] < p.points()[*best][1]) best = i;
    }
    return *best;
}

FinitePattern append_point(const FinitePattern& p, const Rat& c)
{
    if (c.sign() < 0) throw PreconditionError("appended point offset must be non-negative");
    const auto& anchor = p.points()[rightmost_anchor(p)];
    if (c.sign() == 0) return p;
    auto pts = p.points();
    pts.push_back({anchor[0] + c, anchor[1]});
    return FinitePattern(2, std::move(pts));
}

TailedPattern append_segment(const FinitePattern& p, const Rat& c) { return TailedPattern(p, rightmost_anchor(p), c); }

std::optional<std::pair<Rat, Rat>> gap_range(const FinitePattern& p)
{
    std::optional<std::pair<Rat, Rat>> range;
    for (int k = 0; k < p.dim(); ++k) {
        auto vals = p.axis_values(k);
        for (std::size_t i = 1; i < vals.size(); ++i) {
            Rat gap = vals[i] - vals[i - 1];
            if (!range)
                range = std::pair{gap, gap};
            else
                range = std::pair{min(range->first, gap), max(range->second, gap)};
        }
    }
    return range;
}

FinitePattern lift(const FinitePattern& p, const Rat& last)
{
    std::vector<Point> pts;
    for (auto pt : p.points()) {
        pt.push_back(last);
        pts.push_back(std::move(pt));
    }
    return FinitePattern(p.dim() + 1, std::move(pts));
}

FinitePattern project(const FinitePattern& p)
{
    if (p.dim() < 3) throw PreconditionError("projection needs a pattern of dimension >= 3");
    std::set<Point> pts;
    for (auto pt : p.points()) {
        pt.pop_back();
        pts.insert(std::move(pt));
    }
    return FinitePattern(p.dim() - 1, std::vector<Point>(pts.begin(), pts.end()));
}

bool is_expanding(std::span<const std::pair<Rat, Rat>> map)
{
    for (const auto& [x0, f0] : map)
        for (const auto& [x1, f1] : map) {
            if (!(x0 > x1)) continue;
            if ((f0 - f1) / (x0 - x1) < Rat(1)) return false;
        }
    return true;
}

}  // namespace zarex
