#include "zarex/grid_region.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "zarex/errors.hpp"

namespace zarex {
namespace {

std::uint64_t low_bits(int n) { return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1); }

std::uint64_t bits_from(int lo)
{
    if (lo >= 64) return 0;
    if (lo <= 0) return ~std::uint64_t{0};
    return ~std::uint64_t{0} << lo;
}

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

}  // namespace

GridRegion::GridRegion(int d, Rat n, int r) : d_(d), n_(n), r_(r)
{
    if (d < 2) throw PreconditionError("region dimension must be at least 2");
    if (n.sign() <= 0) throw PreconditionError("region side n must be positive");
    if (r < 1) throw PreconditionError("resolution r must be positive");
    if (r > kMaxAxisLength) throw GuardError("resolution exceeds " + std::to_string(kMaxAxisLength));
    occ_ = BitMatrix(std::vector<int>(sz(d), r));
}

GridRegion GridRegion::from_cells(int d, Rat n, int r, std::span<const Cell> cells)
{
    GridRegion s(d, n, r);
    for (const auto& c : cells) s.set(c, true);
    return s;
}

GridRegion GridRegion::full(int d, Rat n, int r)
{
    GridRegion s(d, n, r);
    s.occ_ = BitMatrix::all_ones(std::vector<int>(sz(d), r));
    return s;
}

Index GridRegion::storage_index(std::span<const int> cell) const
{
    if (static_cast<int>(cell.size()) != d_) throw std::out_of_range("cell arity does not match region dimension");
    for (int c : cell)
        if (c < 0 || c >= r_) throw std::out_of_range("cell index out of range");
    return Index(cell.rbegin(), cell.rend());
}

bool GridRegion::occupied(std::span<const int> cell) const { return occ_.get(storage_index(cell)); }

void GridRegion::set(std::span<const int> cell, bool value) { occ_.set(storage_index(cell), value); }

std::vector<Cell> GridRegion::cells() const
{
    std::vector<Cell> out;
    for (const auto& idx : occ_.ones()) out.emplace_back(idx.rbegin(), idx.rend());
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t GridRegion::row_mask(std::span<const int> cell) const
{
    Index probe(cell.begin(), cell.end());
    probe[0] = 0;
    return occ_.line(occ_.prefix_of(storage_index(probe)));
}

std::uint64_t GridRegion::row_mask(int y) const
{
    if (d_ != 2) throw PreconditionError("row_mask(y) is the 2-D shorthand");
    if (y < 0 || y >= r_) throw std::out_of_range("cell-row out of range");
    return occ_.line(sz(y));
}

Rat region_measure(const GridRegion& s) { return Rat(static_cast<std::int64_t>(s.count())) * pow(s.g(), s.d()); }

Rat EmbeddingWitness::apply(int axis, const Rat& u) const
{
    const auto& ps = pieces.at(sz(axis));
    auto it = std::upper_bound(ps.begin(), ps.end(), u, [](const Rat& v, const auto& piece) { return v < piece.first; });
    if (it == ps.begin()) throw std::out_of_range("witness map undefined below its first piece");
    --it;
    return it->second + (u - it->first);
}

namespace {

// A piece of pattern: closed x-interval [x_lo, x_hi] times one point on the other axes.
struct Element {
    Rat x_lo;
    Rat x_hi;
    std::vector<Rat> rest;
};

std::vector<Element> elements_of(const Pattern& p)
{
    std::vector<Element> out;
    struct V {
        std::vector<Element>& out;
        void operator()(const FinitePattern& f)
        {
            for (const auto& pt : f.points()) out.push_back({pt[0], pt[0], std::vector<Rat>(pt.begin() + 1, pt.end())});
        }
        void operator()(const SegmentPattern& sp)
        {
            for (const auto& s : sp.segments()) out.push_back({s.x_lo, s.x_hi, {s.y}});
        }
        void operator()(const StackPattern& st)
        {
            for (int i = 1; i <= st.t; ++i) out.push_back({Rat(0), st.s, {st.c * Rat(i)}});
        }
        void operator()(const HSegment& h) { out.push_back({Rat(0), h.c, {Rat(0)}}); }
        void operator()(const TailedPattern& tp)
        {
            (*this)(tp.base);
            const auto& a = tp.base.points()[tp.anchor];
            out.push_back({a[0], a[0] + tp.length, {a[1]}});
        }
    };
    std::visit(V{out}, p);
    return out;
}

// Cell index of a coordinate strictly inside an open cell, or -1 on a grid line / outside.
int open_cell_of(const Rat& v, const Rat& g, int r)
{
    Rat q = v / g;
    if (q.is_integer()) return -1;
    std::int64_t a = q.floor();
    if (a < 0 || a >= r) return -1;
    return static_cast<int>(a);
}

bool expanding_pieces(const std::vector<std::pair<Rat, Rat>>& ps)
{
    if (ps.empty()) return false;
    for (std::size_t j = 1; j < ps.size(); ++j) {
        if (!(ps[j - 1].first < ps[j].first)) return false;
        if (ps[j].second - ps[j - 1].second < ps[j].first - ps[j - 1].first) return false;
    }
    return true;
}

}  // namespace

bool validate_witness(const GridRegion& s, const Pattern& p, const EmbeddingWitness& w)
{
    if (pattern_dim(p) != s.d() || static_cast<int>(w.pieces.size()) != s.d()) return false;
    for (const auto& ps : w.pieces)
        if (!expanding_pieces(ps)) return false;
    const Rat g = s.g();
    const int r = s.r();
    const auto& xs = w.pieces[0];
    for (const auto& e : elements_of(p)) {
        Cell cell(sz(s.d()), 0);
        for (std::size_t k = 0; k < e.rest.size(); ++k) {
            if (e.rest[k] < w.pieces[k + 1].front().first) return false;
            int a = open_cell_of(w.apply(static_cast<int>(k + 1), e.rest[k]), g, r);
            if (a < 0) return false;
            cell[k + 1] = a;
        }
        const std::uint64_t row = s.row_mask(cell);
        if (e.x_lo < xs.front().first) return false;
        auto j = static_cast<std::size_t>(
            std::upper_bound(xs.begin(), xs.end(), e.x_lo, [](const Rat& v, const auto& pc) { return v < pc.first; }) -
            xs.begin() - 1);
        for (; j < xs.size() && xs[j].first <= e.x_hi; ++j) {
            Rat lo = max(xs[j].first, e.x_lo);
            bool has_next = j + 1 < xs.size();
            bool closed = !has_next || e.x_hi < xs[j + 1].first;
            Rat hi = closed ? e.x_hi : xs[j + 1].first;
            Rat img_lo = xs[j].second + (lo - xs[j].first);
            Rat img_hi = xs[j].second + (hi - xs[j].first);
            int a = open_cell_of(img_lo, g, r);
            if (a < 0 || !((row >> a) & 1U)) return false;
            Rat wall = g * Rat(a + 1);
            if (closed ? !(img_hi < wall) : !(img_hi <= wall)) return false;
            if (closed) break;
        }
    }
    return true;
}

namespace detail {
namespace {

std::optional<EpsRat> chain_step(const std::optional<EpsRat>& prev, const Rat& gap, int a, const Rat& g)
{
    EpsRat lo{g * Rat(a), 1};
    if (prev) lo = max(lo, *prev + gap);
    if (!(lo < EpsRat{g * Rat(a + 1), 0})) return std::nullopt;
    return lo;
}

// Smallest cell whose open window reaches above `lower`.
int min_cell(const EpsRat& lower, const Rat& g)
{
    std::int64_t a = (lower.base / g).floor() - 1;
    while (!(EpsRat{g * Rat(a + 1), 0} > lower)) ++a;
    return static_cast<int>(std::max<std::int64_t>(a, 0));
}

std::vector<Rat> chain_coords(const std::vector<int>& cells, const std::vector<Rat>& gaps, const Rat& g,
                              const Rat& delta)
{
    std::vector<Rat> out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        Rat v = g * Rat(cells[i]) + delta;
        if (i > 0) v = max(v, out.back() + gaps[i]);
        out.push_back(v);
    }
    return out;
}

std::vector<std::pair<Rat, Rat>> class_pieces(const std::vector<Rat>& values, const std::vector<Rat>& coords)
{
    std::vector<std::pair<Rat, Rat>> out;
    for (std::size_t i = 0; i < values.size(); ++i) out.emplace_back(values[i], coords[i]);
    return out;
}

// Infimum of the image end of a closed segment of length `len` swept left to
// right through the occupied cells of `mask`, starting at or after `lower`.
std::optional<EpsRat> sweep(std::uint64_t mask, const Rat& g, int r, const std::optional<EpsRat>& lower, Rat len)
{
    mask &= low_bits(r);
    for (; mask != 0; mask &= mask - 1) {
        int a = std::countr_zero(mask);
        EpsRat hi{g * Rat(a + 1), 0};
        if (lower && !(*lower < hi)) continue;
        EpsRat start{g * Rat(a), 1};
        if (lower) start = max(start, *lower);
        if (start + len < hi) return start + len;
        len -= hi.base - start.base;
    }
    return std::nullopt;
}

// Concrete counterpart of sweep with margin delta; appends translation pieces
// (u, image) and returns the image of the right endpoint.
std::optional<Rat> fit_concrete(std::uint64_t mask, const Rat& g, int r, std::optional<Rat> lower, Rat u, Rat len,
                                const Rat& delta, bool anchored, std::vector<std::pair<Rat, Rat>>& out)
{
    mask &= low_bits(r);
    bool first = true;
    for (; mask != 0; mask &= mask - 1) {
        int a = std::countr_zero(mask);
        Rat lo = g * Rat(a);
        Rat hi = g * Rat(a + 1);
        if (lower && !(*lower < hi)) continue;
        Rat start = lo + delta;
        if (lower) start = max(start, *lower);
        if (first && anchored && start != *lower) return std::nullopt;
        Rat avail = hi - delta - start;
        if (!(avail < len)) {
            out.emplace_back(u, start);
            return start + len;
        }
        if (avail.sign() > 0) {
            out.emplace_back(u, start);
            u += avail;
            len -= avail;
        } else if (first && anchored) {
            return std::nullopt;
        }
        first = false;
        lower = hi;
    }
    return std::nullopt;
}

// Points of a finite pattern grouped into per-axis classes, with the order in
// which the non-x classes are assigned by the search.
struct FiniteShape {
    int d = 2;
    std::vector<std::vector<Rat>> values;
    std::vector<std::vector<Rat>> gaps;
    std::vector<std::vector<int>> point_class;
    std::vector<std::pair<int, int>> steps;
    std::vector<int> ready;
    std::vector<int> order;

    explicit FiniteShape(const FinitePattern& p) : d(p.dim())
    {
        for (int k = 0; k < d; ++k) {
            values.push_back(p.axis_values(k));
            std::vector<Rat> gk{Rat(0)};
            for (std::size_t i = 1; i < values.back().size(); ++i) gk.push_back(values.back()[i] - values.back()[i - 1]);
            gaps.push_back(std::move(gk));
        }
        std::vector<int> first_step(sz(d), 0);
        for (int k = d - 1; k >= 1; --k) {
            first_step[sz(k)] = static_cast<int>(steps.size());
            for (int i = 0; i < static_cast<int>(values[sz(k)].size()); ++i) steps.emplace_back(k, i);
        }
        for (const auto& pt : p.points()) {
            std::vector<int> cls;
            int rdy = 0;
            for (int k = 0; k < d; ++k) {
                const auto& vals = values[sz(k)];
                int c = static_cast<int>(std::lower_bound(vals.begin(), vals.end(), pt[sz(k)]) - vals.begin());
                cls.push_back(c);
                if (k >= 1) rdy = std::max(rdy, first_step[sz(k)] + c + 1);
            }
            point_class.push_back(std::move(cls));
            ready.push_back(rdy);
        }
        order.resize(point_class.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return ready[sz(a)] < ready[sz(b)]; });
    }
};

// Cell choices per axis and class.
using Plan = std::vector<std::vector<int>>;

class FiniteSearch {
public:
    // Extra feasibility test on a complete assignment (x cells, x infima).
    using LeafCheck = std::function<bool(const Plan&, const std::vector<EpsRat>&)>;

    FiniteSearch(const FiniteShape& shape, const GridRegion& s, LeafCheck leaf = {})
        : shape_(shape), s_(s), g_(s.g()), leaf_(std::move(leaf))
    {
        plan_.resize(sz(shape.d));
        inf_.resize(sz(shape.d));
        for (int k = 0; k < shape.d; ++k) {
            plan_[sz(k)].assign(shape.values[sz(k)].size(), -1);
            inf_[sz(k)].assign(shape.values[sz(k)].size(), EpsRat{});
        }
    }

    std::optional<Plan> run()
    {
        if (dfs(0)) return plan_;
        return std::nullopt;
    }

private:
    bool x_greedy(int steps_done)
    {
        const auto& xv = shape_.values[0];
        std::vector<std::uint64_t> masks(xv.size(), low_bits(s_.r()));
        Cell cell(sz(shape_.d), 0);
        for (int p : shape_.order) {
            if (shape_.ready[sz(p)] > steps_done) break;
            const auto& cls = shape_.point_class[sz(p)];
            for (int k = 1; k < shape_.d; ++k) cell[sz(k)] = plan_[sz(k)][sz(cls[sz(k)])];
            masks[sz(cls[0])] &= s_.row_mask(cell);
        }
        std::optional<EpsRat> prev;
        for (std::size_t i = 0; i < xv.size(); ++i) {
            int a_min = prev ? min_cell(*prev + shape_.gaps[0][i], g_) : 0;
            std::uint64_t cand = masks[i] & bits_from(a_min);
            if (cand == 0) return false;
            int a = std::countr_zero(cand);
            prev = chain_step(prev, shape_.gaps[0][i], a, g_);
            if (!prev) return false;
            plan_[0][i] = a;
            inf_[0][i] = *prev;
        }
        return true;
    }

    bool dfs(std::size_t step)
    {
        if (!x_greedy(static_cast<int>(step))) return false;
        if (step == shape_.steps.size()) return !leaf_ || leaf_(plan_, inf_[0]);
        auto [k, i] = shape_.steps[step];
        std::optional<EpsRat> prev;
        if (i > 0) prev = inf_[sz(k)][sz(i - 1)];
        const Rat& gap = shape_.gaps[sz(k)][sz(i)];
        int a_min = prev ? min_cell(*prev + gap, g_) : 0;
        for (int a = a_min; a < s_.r(); ++a) {
            auto lo = chain_step(prev, gap, a, g_);
            if (!lo) continue;
            plan_[sz(k)][sz(i)] = a;
            inf_[sz(k)][sz(i)] = *lo;
            if (dfs(step + 1)) return true;
        }
        plan_[sz(k)][sz(i)] = -1;
        return false;
    }

    const FiniteShape& shape_;
    const GridRegion& s_;
    Rat g_;
    LeafCheck leaf_;
    Plan plan_;
    std::vector<std::vector<EpsRat>> inf_;
};

// Realizes a discrete plan with shrinking margins until the concrete witness validates.
template <class Build>
EmbeddingWitness realize(const GridRegion& s, const Pattern& p, Build build)
{
    Rat delta = s.g() / Rat(4);
    for (int attempt = 0; attempt < 48; ++attempt) {
        if (auto w = build(delta); w && validate_witness(s, p, *w)) return *w;
        delta /= Rat(2);
    }
    throw std::logic_error("could not realize a feasible embedding plan as a concrete witness");
}

void require_dim(const GridRegion& s, int d)
{
    if (s.d() != d)
        throw PreconditionError("region dimension " + std::to_string(s.d()) + " does not match pattern dimension " +
                                std::to_string(d));
}

// y-chain enumeration shared by the segment-style deciders: class i of the
// y-values gets cell plan[i]; `visit` is called on every feasible full chain
// and on partial chains through `prune` (returning false cuts the branch).
class ChainEnum {
public:
    ChainEnum(std::vector<Rat> gaps, const Rat& g, int r) : gaps_(std::move(gaps)), g_(g), r_(r)
    {
        cells_.assign(gaps_.size(), -1);
        inf_.assign(gaps_.size(), EpsRat{});
    }

    template <class Prune, class Leaf>
    bool run(Prune prune, Leaf leaf)
    {
        return dfs(0, prune, leaf);
    }

    const std::vector<int>& cells() const { return cells_; }

private:
    template <class Prune, class Leaf>
    bool dfs(std::size_t i, Prune& prune, Leaf& leaf)
    {
        if (i == gaps_.size()) return leaf(cells_);
        std::optional<EpsRat> prev;
        if (i > 0) prev = inf_[i - 1];
        int a_min = prev ? min_cell(*prev + gaps_[i], g_) : 0;
        for (int a = a_min; a < r_; ++a) {
            auto lo = chain_step(prev, gaps_[i], a, g_);
            if (!lo) continue;
            cells_[i] = a;
            inf_[i] = *lo;
            if (prune(cells_, i + 1) && dfs(i + 1, prune, leaf)) return true;
        }
        cells_[i] = -1;
        return false;
    }

    std::vector<Rat> gaps_;
    Rat g_;
    int r_;
    std::vector<int> cells_;
    std::vector<EpsRat> inf_;
};

class StackDecider {
public:
    explicit StackDecider(const StackPattern& p) : p_(p) {}

    std::optional<std::vector<int>> plan(const GridRegion& s) const
    {
        require_dim(s, 2);
        const Rat g = s.g();
        std::vector<Rat> gaps(sz(p_.t), p_.c);
        gaps[0] = Rat(0);
        ChainEnum chain(gaps, g, s.r());
        auto wide_enough = [&](const std::vector<int>& cells, std::size_t filled) {
            std::uint64_t m = low_bits(s.r());
            for (std::size_t i = 0; i < filled; ++i) m &= s.row_mask(cells[i]);
            return g * Rat(std::popcount(m)) > p_.s;
        };
        if (!chain.run(wide_enough, [&](const std::vector<int>& cells) { return wide_enough(cells, cells.size()); }))
            return std::nullopt;
        return chain.cells();
    }

    std::optional<EmbeddingWitness> find(const GridRegion& s) const
    {
        auto cells = plan(s);
        if (!cells) return std::nullopt;
        std::vector<Rat> gaps(sz(p_.t), p_.c);
        std::vector<Rat> ys;
        for (int i = 1; i <= p_.t; ++i) ys.push_back(p_.c * Rat(i));
        std::uint64_t m = low_bits(s.r());
        for (int y : *cells) m &= s.row_mask(y);
        return realize(s, p_, [&](const Rat& delta) -> std::optional<EmbeddingWitness> {
            EmbeddingWitness w;
            w.pieces.resize(2);
            if (!fit_concrete(m, s.g(), s.r(), std::nullopt, Rat(0), p_.s, delta, false, w.pieces[0]))
                return std::nullopt;
            w.pieces[1] = class_pieces(ys, chain_coords(*cells, gaps, s.g(), delta));
            return w;
        });
    }

private:
    StackPattern p_;
};

class SegmentsDecider {
public:
    explicit SegmentsDecider(const SegmentPattern& p) : p_(p)
    {
        const auto& segs = p_.segments();
        by_y_.resize(segs.size());
        std::iota(by_y_.begin(), by_y_.end(), 0);
        std::sort(by_y_.begin(), by_y_.end(), [&](int a, int b) { return segs[sz(a)].y < segs[sz(b)].y; });
        ys_.push_back(segs[sz(by_y_[0])].y);
        gaps_.push_back(Rat(0));
        for (std::size_t i = 1; i < by_y_.size(); ++i) {
            ys_.push_back(segs[sz(by_y_[i])].y);
            gaps_.push_back(ys_[i] - ys_[i - 1]);
        }
        rank_of_.resize(segs.size());
        for (std::size_t i = 0; i < by_y_.size(); ++i) rank_of_[sz(by_y_[i])] = static_cast<int>(i);
    }

    // Greedy x-sweep over the segments whose row is already chosen.
    bool sweep_ok(const GridRegion& s, const std::vector<int>& ycells, std::size_t filled) const
    {
        const auto& segs = p_.segments();
        std::optional<EpsRat> end;
        std::optional<Rat> last_hi;
        for (std::size_t j = 0; j < segs.size(); ++j) {
            int rank = rank_of_[j];
            if (static_cast<std::size_t>(rank) >= filled) continue;
            std::optional<EpsRat> lower;
            if (end) lower = *end + (segs[j].x_lo - *last_hi);
            end = sweep(s.row_mask(ycells[sz(rank)]), s.g(), s.r(), lower, segs[j].x_hi - segs[j].x_lo);
            if (!end) return false;
            last_hi = segs[j].x_hi;
        }
        return true;
    }

    std::optional<std::vector<int>> plan(const GridRegion& s) const
    {
        require_dim(s, 2);
        ChainEnum chain(gaps_, s.g(), s.r());
        auto prune = [&](const std::vector<int>& cells, std::size_t filled) { return sweep_ok(s, cells, filled); };
        if (!chain.run(prune, [&](const std::vector<int>& cells) { return sweep_ok(s, cells, cells.size()); }))
            return std::nullopt;
        return chain.cells();
    }

    std::optional<EmbeddingWitness> find(const GridRegion& s) const
    {
        auto cells = plan(s);
        if (!cells) return std::nullopt;
        const auto& segs = p_.segments();
        return realize(s, p_, [&](const Rat& delta) -> std::optional<EmbeddingWitness> {
            EmbeddingWitness w;
            w.pieces.resize(2);
            std::optional<Rat> end;
            std::optional<Rat> last_hi;
            for (std::size_t j = 0; j < segs.size(); ++j) {
                std::optional<Rat> lower;
                if (end) lower = *end + (segs[j].x_lo - *last_hi);
                int y = (*cells)[sz(rank_of_[j])];
                end = fit_concrete(s.row_mask(y), s.g(), s.r(), lower, segs[j].x_lo, segs[j].x_hi - segs[j].x_lo, delta,
                                   false, w.pieces[0]);
                if (!end) return std::nullopt;
                last_hi = segs[j].x_hi;
            }
            w.pieces[1] = class_pieces(ys_, chain_coords(*cells, gaps_, s.g(), delta));
            return w;
        });
    }

private:
    SegmentPattern p_;
    std::vector<int> by_y_;
    std::vector<int> rank_of_;
    std::vector<Rat> ys_;
    std::vector<Rat> gaps_;
};

class FiniteDecider {
public:
    explicit FiniteDecider(const FinitePattern& p) : p_(p), shape_(p) {}

    std::optional<EmbeddingWitness> find(const GridRegion& s) const
    {
        require_dim(s, p_.dim());
        FiniteSearch search(shape_, s);
        auto plan = search.run();
        if (!plan) return std::nullopt;
        return realize(s, p_, [&](const Rat& delta) -> std::optional<EmbeddingWitness> {
            EmbeddingWitness w;
            for (int k = 0; k < shape_.d; ++k)
                w.pieces.push_back(class_pieces(shape_.values[sz(k)],
                                                chain_coords((*plan)[sz(k)], shape_.gaps[sz(k)], s.g(), delta)));
            return w;
        });
    }

    bool contains(const GridRegion& s) const
    {
        require_dim(s, p_.dim());
        FiniteSearch search(shape_, s);
        return search.run().has_value();
    }

private:
    FinitePattern p_;
    FiniteShape shape_;
};

class TailedDecider {
public:
    explicit TailedDecider(const TailedPattern& p) : p_(p), shape_(p.base)
    {
        anchor_y_class_ = shape_.point_class[p_.anchor][1];
    }

    std::optional<Plan> plan(const GridRegion& s) const
    {
        require_dim(s, 2);
        const Rat g = s.g();
        auto leaf = [&](const Plan& plan, const std::vector<EpsRat>& xinf) {
            int a = plan[0].back();
            std::uint64_t row = s.row_mask(plan[1][sz(anchor_y_class_)]);
            Rat avail = g * Rat(a + 1) - xinf.back().base +
                        g * Rat(std::popcount(row & bits_from(a + 1) & low_bits(s.r())));
            return avail > p_.length;
        };
        FiniteSearch search(shape_, s, leaf);
        return search.run();
    }

    std::optional<EmbeddingWitness> find(const GridRegion& s) const
    {
        auto plan = this->plan(s);
        if (!plan) return std::nullopt;
        return realize(s, p_, [&](const Rat& delta) -> std::optional<EmbeddingWitness> {
            EmbeddingWitness w;
            auto xs = chain_coords((*plan)[0], shape_.gaps[0], s.g(), delta);
            auto x_pieces = class_pieces(shape_.values[0], xs);
            x_pieces.pop_back();
            int y = (*plan)[1][sz(anchor_y_class_)];
            if (!fit_concrete(s.row_mask(y), s.g(), s.r(), xs.back(), shape_.values[0].back(), p_.length, delta, true,
                              x_pieces))
                return std::nullopt;
            w.pieces.push_back(std::move(x_pieces));
            w.pieces.push_back(class_pieces(shape_.values[1], chain_coords((*plan)[1], shape_.gaps[1], s.g(), delta)));
            return w;
        });
    }

private:
    TailedPattern p_;
    FiniteShape shape_;
    int anchor_y_class_ = 0;
};

class HSegmentDecider {
public:
    explicit HSegmentDecider(const HSegment& p) : p_(p) {}

    std::optional<int> row(const GridRegion& s) const
    {
        require_dim(s, 2);
        for (int y = 0; y < s.r(); ++y)
            if (s.g() * Rat(std::popcount(s.row_mask(y))) > p_.c) return y;
        return std::nullopt;
    }

    std::optional<EmbeddingWitness> find(const GridRegion& s) const
    {
        auto y = row(s);
        if (!y) return std::nullopt;
        return realize(s, p_, [&](const Rat& delta) -> std::optional<EmbeddingWitness> {
            EmbeddingWitness w;
            w.pieces.resize(2);
            if (!fit_concrete(s.row_mask(*y), s.g(), s.r(), std::nullopt, Rat(0), p_.c, delta, false, w.pieces[0]))
                return std::nullopt;
            w.pieces[1] = {{Rat(0), s.g() * Rat(*y) + delta}};
            return w;
        });
    }

private:
    HSegment p_;
};

}  // namespace

class DeciderImpl {
public:
    explicit DeciderImpl(const Pattern& p)
    {
        struct V {
            DeciderImpl& self;
            void operator()(const FinitePattern& f) { self.impl_.emplace<FiniteDecider>(f); }
            void operator()(const SegmentPattern& f) { self.impl_.emplace<SegmentsDecider>(f); }
            void operator()(const StackPattern& f) { self.impl_.emplace<StackDecider>(f); }
            void operator()(const HSegment& f) { self.impl_.emplace<HSegmentDecider>(f); }
            void operator()(const TailedPattern& f) { self.impl_.emplace<TailedDecider>(f); }
        };
        std::visit(V{*this}, p);
    }

    bool contains(const GridRegion& s) const
    {
        return std::visit(
            [&](const auto& d) -> bool {
                using T = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<T, std::monostate>)
                    return false;
                else if constexpr (std::is_same_v<T, FiniteDecider>)
                    return d.contains(s);
                else if constexpr (std::is_same_v<T, HSegmentDecider>)
                    return d.row(s).has_value();
                else
                    return d.plan(s).has_value();
            },
            impl_);
    }

    std::optional<EmbeddingWitness> find(const GridRegion& s) const
    {
        return std::visit(
            [&](const auto& d) -> std::optional<EmbeddingWitness> {
                using T = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<T, std::monostate>)
                    return std::nullopt;
                else
                    return d.find(s);
            },
            impl_);
    }

private:
    std::variant<std::monostate, FiniteDecider, SegmentsDecider, StackDecider, HSegmentDecider, TailedDecider> impl_;
};

}  // namespace detail

RegionDecider::RegionDecider(Pattern p) : pattern_(std::move(p)), impl_(std::make_shared<detail::DeciderImpl>(pattern_))
{
}

bool RegionDecider::contains(const GridRegion& s) const { return impl_->contains(s); }

std::optional<EmbeddingWitness> RegionDecider::find(const GridRegion& s) const { return impl_->find(s); }

std::optional<EmbeddingWitness> find_finite(const GridRegion& s, const FinitePattern& p) { return RegionDecider(p).find(s); }
std::optional<EmbeddingWitness> find_hsegment(const GridRegion& s, const HSegment& p) { return RegionDecider(p).find(s); }
std::optional<EmbeddingWitness> find_stack(const GridRegion& s, const StackPattern& p) { return RegionDecider(p).find(s); }
std::optional<EmbeddingWitness> find_segments(const GridRegion& s, const SegmentPattern& p)
{
    return RegionDecider(p).find(s);
}
std::optional<EmbeddingWitness> find_tailed(const GridRegion& s, const TailedPattern& p) { return RegionDecider(p).find(s); }
std::optional<EmbeddingWitness> find_embedding(const GridRegion& s, const Pattern& p) { return RegionDecider(p).find(s); }

bool region_contains_finite(const GridRegion& s, const FinitePattern& p) { return RegionDecider(p).contains(s); }
bool region_contains_hsegment(const GridRegion& s, const Rat& c) { return RegionDecider(HSegment(c)).contains(s); }
bool region_contains_stack(const GridRegion& s, const StackPattern& p) { return RegionDecider(p).contains(s); }
bool region_contains_segments(const GridRegion& s, const SegmentPattern& p) { return RegionDecider(p).contains(s); }
bool region_contains_tailed(const GridRegion& s, const TailedPattern& p) { return RegionDecider(p).contains(s); }
bool region_contains(const GridRegion& s, const Pattern& p) { return RegionDecider(p).contains(s); }

GridRegion discretize(const std::function<bool(const Cell&)>& keep, int d, const Rat& n, int r)
{
    GridRegion s(d, n, r);
    Cell cell(sz(d), 0);
    while (true) {
        if (keep(cell)) s.set(cell, true);
        int k = 0;
        while (k < d && ++cell[sz(k)] == r) cell[sz(k++)] = 0;
        if (k == d) break;
    }
    return s;
}

Cell matrix_index_to_cell(std::span<const int> idx, int r)
{
    if (idx.size() == 2) return {idx[1], r - 1 - idx[0]};
    return Cell(idx.begin(), idx.end());
}

BitMatrix region_to_matrix(const GridRegion& s)
{
    BitMatrix m(std::vector<int>(sz(s.d()), s.r()));
    for (const auto& c : s.cells()) {
        if (s.d() == 2)
            m.set(s.r() - 1 - c[1], c[0], true);
        else
            m.set(c, true);
    }
    return m;
}

GridRegion matrix_to_region(const BitMatrix& m, const Rat& n)
{
    const int r = m.dims().front();
    for (int len : m.dims())
        if (len != r) throw PreconditionError("only square matrices correspond to grid regions");
    GridRegion s(m.dim(), n, r);
    for (const auto& one : m.ones()) s.set(matrix_index_to_cell(one, r), true);
    return s;
}

}  // namespace zarex
