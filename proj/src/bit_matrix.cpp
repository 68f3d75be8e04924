#include "zarex/bit_matrix.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>

#include "zarex/errors.hpp"

namespace zarex {
namespace {

std::uint64_t low_bits(int n) { return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1); }

std::uint64_t bits_from(int lo)
{
    if (lo >= 64) return 0;
    return ~std::uint64_t{0} << lo;
}

}  // namespace

BitMatrix::BitMatrix(std::vector<int> dims) : dims_(std::move(dims))
{
    if (dims_.size() < 2) throw PreconditionError("matrices need at least two axes");
    std::size_t lines = 1;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        int len = dims_[k];
        if (len < 1) throw PreconditionError("matrix axis lengths must be positive");
        if (len > kMaxAxisLength)
            throw GuardError("matrix axis length " + std::to_string(len) + " exceeds " +
                             std::to_string(kMaxAxisLength));
        if (k + 1 < dims_.size()) lines *= static_cast<std::size_t>(len);
    }
    lines_.assign(lines, 0);
}

BitMatrix BitMatrix::from_ones(std::vector<int> dims, std::span<const Index> ones)
{
    BitMatrix m(std::move(dims));
    for (const auto& idx : ones) m.set(idx, true);
    return m;
}

BitMatrix BitMatrix::all_ones(std::vector<int> dims)
{
    BitMatrix m(std::move(dims));
    std::fill(m.lines_.begin(), m.lines_.end(), low_bits(m.dims_.back()));
    return m;
}

BitMatrix BitMatrix::from_rows(std::span<const std::string> rows)
{
    if (rows.empty()) throw PreconditionError("empty row list");
    BitMatrix m({static_cast<int>(rows.size()), static_cast<int>(rows.front().size())});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.front().size()) throw PreconditionError("ragged row list");
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            if (rows[i][j] == '1') m.set(static_cast<int>(i), static_cast<int>(j), true);
    }
    return m;
}

void BitMatrix::check_index(std::span<const int> idx) const
{
    if (idx.size() != dims_.size()) throw std::out_of_range("index arity does not match matrix dimension");
    for (std::size_t k = 0; k < idx.size(); ++k)
        if (idx[k] < 0 || idx[k] >= dims_[k]) throw std::out_of_range("matrix index out of range");
}

std::size_t BitMatrix::prefix_of(std::span<const int> idx) const
{
    std::size_t p = 0;
    for (std::size_t k = 0; k + 1 < dims_.size(); ++k) p = p * static_cast<std::size_t>(dims_[k]) + static_cast<std::size_t>(idx[k]);
    return p;
}

bool BitMatrix::get(std::span<const int> idx) const
{
    check_index(idx);
    return (lines_[prefix_of(idx)] >> idx.back()) & 1U;
}

void BitMatrix::set(std::span<const int> idx, bool value)
{
    check_index(idx);
    auto& line = lines_[prefix_of(idx)];
    std::uint64_t bit = std::uint64_t{1} << idx.back();
    line = value ? (line | bit) : (line & ~bit);
}

void BitMatrix::set(int i, int j, bool value)
{
    const int idx[2] = {i, j};
    set(std::span<const int>(idx, 2), value);
}

std::size_t BitMatrix::count() const
{
    std::size_t c = 0;
    for (auto line : lines_) c += static_cast<std::size_t>(std::popcount(line));
    return c;
}

std::size_t BitMatrix::entries() const { return lines_.size() * static_cast<std::size_t>(dims_.back()); }

std::vector<Index> BitMatrix::ones() const
{
    std::vector<Index> out;
    Index idx(dims_.size(), 0);
    for (std::size_t p = 0; p < lines_.size(); ++p) {
        std::size_t rest = p;
        for (int k = dim() - 2; k >= 0; --k) {
            idx[static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<std::size_t>(dims_[static_cast<std::size_t>(k)]));
            rest /= static_cast<std::size_t>(dims_[static_cast<std::size_t>(k)]);
        }
        for (std::uint64_t line = lines_[p]; line != 0; line &= line - 1) {
            idx.back() = std::countr_zero(line);
            out.push_back(idx);
        }
    }
    return out;
}

std::string BitMatrix::bitstring() const
{
    std::string s;
    s.reserve(entries());
    for (auto line : lines_)
        for (int j = 0; j < dims_.back(); ++j) s.push_back(((line >> j) & 1U) ? '1' : '0');
    return s;
}

namespace {

// Depth-first search over per-axis index maps. Axes 0..d-2 are assigned
// position by position with ascending candidates; the last axis is placed
// greedily (leftmost feasible index), which is exact for existence and is
// replaced by a counting DP when enumerating copies.
class EmbeddingSearch {
public:
    EmbeddingSearch(const BitMatrix& a, const BitMatrix& b, const std::optional<ForcedEntry>& forced)
        : a_(a), b_(b), d_(a.dim()), forced_(forced)
    {
        if (a.dim() != b.dim()) throw PreconditionError("matrix dimension mismatch");
        if (forced_) {
            if (static_cast<int>(forced_->pattern_entry.size()) != d_ || static_cast<int>(forced_->host_entry.size()) != d_)
                throw PreconditionError("forced entry arity mismatch");
        }
        maps_.resize(static_cast<std::size_t>(d_));
        for (int k = 0; k < d_; ++k) maps_[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(b.dims()[static_cast<std::size_t>(k)]), -1);
        for (int k = 0; k + 1 < d_; ++k)
            for (int i = 0; i < b.dims()[static_cast<std::size_t>(k)]; ++i) steps_.emplace_back(k, i);

        // Step index after which every prefix coordinate of a one is mapped.
        std::vector<int> step_of_first(static_cast<std::size_t>(d_), 0);
        for (int k = 1; k < d_; ++k)
            step_of_first[static_cast<std::size_t>(k)] = step_of_first[static_cast<std::size_t>(k - 1)] + b.dims()[static_cast<std::size_t>(k - 1)];
        for (const auto& one : b.ones()) {
            int ready = 0;
            for (int k = 0; k + 1 < d_; ++k)
                ready = std::max(ready, step_of_first[static_cast<std::size_t>(k)] + one[static_cast<std::size_t>(k)] + 1);
            pattern_ones_.push_back({one, ready});
        }
        std::sort(pattern_ones_.begin(), pattern_ones_.end(),
                  [](const auto& x, const auto& y) { return x.ready < y.ready; });
    }

    bool find(MatrixEmbedding* out)
    {
        found_ = false;
        out_ = out;
        counting_ = false;
        recurse(0);
        return found_;
    }

    std::uint64_t count()
    {
        counting_ = true;
        total_ = 0;
        recurse(0);
        return total_;
    }

private:
    struct PatternOne {
        Index idx;
        int ready;
    };

    std::uint64_t host_line_for(const Index& one) const
    {
        std::size_t p = 0;
        for (int k = 0; k + 1 < d_; ++k)
            p = p * static_cast<std::size_t>(a_.dims()[static_cast<std::size_t>(k)]) +
                static_cast<std::size_t>(maps_[static_cast<std::size_t>(k)][static_cast<std::size_t>(one[static_cast<std::size_t>(k)])]);
        return a_.line(p);
    }

    // Allowed host indices on the last axis for each pattern index, using
    // only ones whose prefix coordinates are already mapped.
    void last_axis_masks(int steps_done, std::vector<std::uint64_t>& masks) const
    {
        const int bl = b_.dims().back();
        masks.assign(static_cast<std::size_t>(bl), low_bits(a_.dims().back()));
        for (const auto& one : pattern_ones_) {
            if (one.ready > steps_done) break;
            masks[static_cast<std::size_t>(one.idx.back())] &= host_line_for(one.idx);
        }
    }

    bool greedy_last(const std::vector<std::uint64_t>& masks, std::vector<int>* placed) const
    {
        const int bl = b_.dims().back();
        const int al = a_.dims().back();
        int forced_j = forced_ ? forced_->pattern_entry.back() : -1;
        int forced_v = forced_ ? forced_->host_entry.back() : -1;
        int prev = -1;
        for (int j = 0; j < bl; ++j) {
            std::uint64_t cand = masks[static_cast<std::size_t>(j)] & bits_from(prev + 1) & low_bits(al);
            int v;
            if (j == forced_j) {
                if (!((cand >> forced_v) & 1U)) return false;
                v = forced_v;
            } else {
                if (cand == 0) return false;
                v = std::countr_zero(cand);
                if (forced_ && j < forced_j && v > forced_v - (forced_j - j)) return false;
            }
            if (placed) (*placed)[static_cast<std::size_t>(j)] = v;
            prev = v;
        }
        return true;
    }

    std::uint64_t count_last(const std::vector<std::uint64_t>& masks) const
    {
        const int al = a_.dims().back();
        std::vector<std::uint64_t> ways(static_cast<std::size_t>(al), 0);
        std::vector<std::uint64_t> next(static_cast<std::size_t>(al), 0);
        for (int c = 0; c < al; ++c) ways[static_cast<std::size_t>(c)] = (masks[0] >> c) & 1U;
        for (std::size_t j = 1; j < masks.size(); ++j) {
            std::uint64_t running = 0;
            for (int c = 0; c < al; ++c) {
                next[static_cast<std::size_t>(c)] = ((masks[j] >> c) & 1U) ? running : 0;
                running += ways[static_cast<std::size_t>(c)];
            }
            ways.swap(next);
        }
        std::uint64_t total = 0;
        for (auto w : ways) total += w;
        return total;
    }

    void recurse(std::size_t step)
    {
        if (found_) return;
        std::vector<std::uint64_t> masks;
        last_axis_masks(static_cast<int>(step), masks);
        if (step == steps_.size()) {
            if (counting_) {
                total_ += count_last(masks);
                return;
            }
            std::vector<int> placed(static_cast<std::size_t>(b_.dims().back()), -1);
            if (greedy_last(masks, &placed)) {
                found_ = true;
                if (out_) {
                    out_->maps = maps_;
                    out_->maps.back() = placed;
                }
            }
            return;
        }
        // Partial relaxation: the last axis must already be placeable.
        if (!greedy_last(masks, nullptr)) return;

        auto [k, i] = steps_[step];
        const int host_len = a_.dims()[static_cast<std::size_t>(k)];
        const int pat_len = b_.dims()[static_cast<std::size_t>(k)];
        auto& map = maps_[static_cast<std::size_t>(k)];
        int lo = i == 0 ? 0 : map[static_cast<std::size_t>(i - 1)] + 1;
        int hi = host_len - (pat_len - i);
        if (forced_) {
            int fi = forced_->pattern_entry[static_cast<std::size_t>(k)];
            int fv = forced_->host_entry[static_cast<std::size_t>(k)];
            if (i == fi) {
                lo = std::max(lo, fv);
                hi = std::min(hi, fv);
            } else if (i < fi) {
                hi = std::min(hi, fv - (fi - i));
            }
        }
        for (int v = lo; v <= hi && !found_; ++v) {
            map[static_cast<std::size_t>(i)] = v;
            recurse(step + 1);
        }
        map[static_cast<std::size_t>(i)] = -1;
    }

    const BitMatrix& a_;
    const BitMatrix& b_;
    int d_;
    std::optional<ForcedEntry> forced_;
    std::vector<std::vector<int>> maps_;
    std::vector<std::pair<int, int>> steps_;
    std::vector<PatternOne> pattern_ones_;
    bool counting_ = false;
    bool found_ = false;
    std::uint64_t total_ = 0;
    MatrixEmbedding* out_ = nullptr;
};

}  // namespace

std::optional<MatrixEmbedding> find_embedding(const BitMatrix& a, const BitMatrix& b,
                                              const std::optional<ForcedEntry>& forced)
{
    EmbeddingSearch search(a, b, forced);
    MatrixEmbedding e;
    if (!search.find(&e)) return std::nullopt;
    return e;
}

bool matrix_contains(const BitMatrix& a, const BitMatrix& b)
{
    EmbeddingSearch search(a, b, std::nullopt);
    return search.find(nullptr);
}

bool contains_through(const BitMatrix& a, const BitMatrix& b, std::span<const int> host_entry)
{
    if (!a.get(host_entry)) return false;
    Index host(host_entry.begin(), host_entry.end());
    for (const auto& one : b.ones()) {
        EmbeddingSearch search(a, b, ForcedEntry{one, host});
        if (search.find(nullptr)) return true;
    }
    return false;
}

std::uint64_t count_copies(const BitMatrix& a, const BitMatrix& b)
{
    EmbeddingSearch search(a, b, std::nullopt);
    return search.count();
}

bool verify_embedding(const BitMatrix& a, const BitMatrix& b, const MatrixEmbedding& e)
{
    if (a.dim() != b.dim() || static_cast<int>(e.maps.size()) != a.dim()) return false;
    for (int k = 0; k < a.dim(); ++k) {
        const auto& map = e.maps[static_cast<std::size_t>(k)];
        if (static_cast<int>(map.size()) != b.dims()[static_cast<std::size_t>(k)]) return false;
        for (std::size_t i = 0; i < map.size(); ++i) {
            if (map[i] < 0 || map[i] >= a.dims()[static_cast<std::size_t>(k)]) return false;
            if (i > 0 && map[i] <= map[i - 1]) return false;
        }
    }
    for (const auto& one : b.ones()) {
        Index host(one.size());
        for (std::size_t k = 0; k < one.size(); ++k) host[k] = e.maps[k][static_cast<std::size_t>(one[k])];
        if (!a.get(host)) return false;
    }
    return true;
}

BitMatrix blowup(const BitMatrix& m, int k)
{
    if (k < 0) throw PreconditionError("blowup factor k must be non-negative");
    std::vector<int> dims;
    for (int len : m.dims()) dims.push_back(len + k * (len - 1));
    BitMatrix out(dims);
    for (auto one : m.ones()) {
        for (auto& c : one) c *= (k + 1);
        out.set(one, true);
    }
    return out;
}

namespace {

BitMatrix map_2d(const BitMatrix& m, std::vector<int> dims, const std::function<std::pair<int, int>(int, int)>& f)
{
    if (m.dim() != 2) throw PreconditionError("2-D operation applied to a matrix of dimension " + std::to_string(m.dim()));
    BitMatrix out(std::move(dims));
    for (const auto& one : m.ones()) {
        auto [i, j] = f(one[0], one[1]);
        out.set(i, j, true);
    }
    return out;
}

}  // namespace

BitMatrix reflect_columns(const BitMatrix& m)
{
    return map_2d(m, m.dims(), [&](int i, int j) { return std::pair{i, m.cols() - 1 - j}; });
}

BitMatrix reflect_rows(const BitMatrix& m)
{
    return map_2d(m, m.dims(), [&](int i, int j) { return std::pair{m.rows() - 1 - i, j}; });
}

BitMatrix transpose(const BitMatrix& m)
{
    return map_2d(m, {m.cols(), m.rows()}, [](int i, int j) { return std::pair{j, i}; });
}

BitMatrix rotate90(const BitMatrix& m)
{
    return map_2d(m, {m.cols(), m.rows()}, [&](int i, int j) { return std::pair{j, m.rows() - 1 - i}; });
}

BitMatrix pad_to(const BitMatrix& m, std::vector<int> dims)
{
    if (dims.size() != m.dims().size()) throw PreconditionError("pad_to arity mismatch");
    for (std::size_t k = 0; k < dims.size(); ++k)
        if (dims[k] < m.dims()[k]) throw PreconditionError("pad_to cannot shrink a matrix");
    auto ones = m.ones();
    return BitMatrix::from_ones(std::move(dims), ones);
}

BitMatrix sub_box(const BitMatrix& m, std::span<const int> start, std::vector<int> extents)
{
    if (start.size() != m.dims().size() || extents.size() != m.dims().size())
        throw PreconditionError("sub_box arity mismatch");
    BitMatrix out(extents);
    for (auto one : m.ones()) {
        bool inside = true;
        for (std::size_t k = 0; k < one.size(); ++k) {
            one[k] -= start[k];
            if (one[k] < 0 || one[k] >= extents[k]) inside = false;
        }
        if (inside) out.set(one, true);
    }
    return out;
}

}  // namespace zarex
