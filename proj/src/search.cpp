#include "zarex/search.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace zarex::detail {
namespace {

// Depth-first search over the first k slabs. Phase one (ones first) finds the
// optimum; phase two (zeros first, target value) returns the first optimal
// leaf, which is the lexicographically smallest.
class Walker {
public:
    Walker(SlabProblem& p, bool ordered, const std::vector<int>& tail, int k)
        : p_(p), ordered_(ordered), tail_(tail), k_(k), w_(p.width()), end_(k * p.width())
    {
        bits_.assign(static_cast<std::size_t>(p.slabs() * w_), 0);
        slab_ones_.assign(static_cast<std::size_t>(p.slabs()), 0);
    }

    void replay(const std::vector<char>& prefix)
    {
        for (std::size_t i = 0; i < prefix.size(); ++i)
            if (prefix[i]) set(static_cast<int>(i), true);
    }

    void maximize_from(int pos, std::atomic<int>& best)
    {
        best_ = &best;
        phase1(pos);
    }

    bool certificate_from(int pos, int target)
    {
        target_ = target;
        return phase2(pos);
    }

    // Feasible prefixes of the given length, in phase-one order.
    void prefixes(int pos, int depth, std::vector<std::vector<char>>& out)
    {
        if (pos == depth) {
            out.emplace_back(bits_.begin(), bits_.begin() + depth);
            return;
        }
        for (int v : {1, 0}) {
            if (!allowed(pos, v)) continue;
            if (v) {
                set(pos, true);
                if (!p_.violates(pos)) prefixes(pos + 1, depth, out);
                set(pos, false);
            } else {
                prefixes(pos + 1, depth, out);
            }
        }
    }

    const std::vector<char>& bits() const { return bits_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    void set(int pos, bool v)
    {
        if (bits_[static_cast<std::size_t>(pos)] == v) return;
        bits_[static_cast<std::size_t>(pos)] = v;
        int d = v ? 1 : -1;
        cur_ += d;
        slab_ones_[static_cast<std::size_t>(pos / w_)] += d;
        p_.assign(pos, v);
    }

    int bound(int pos) const
    {
        const int s = pos / w_;
        const int o = pos % w_;
        int b = cur_ + (end_ - pos);
        b = std::min(b, cur_ + (w_ - o) + tail_[static_cast<std::size_t>(k_ - s - 1)]);
        // Slabs s-j .. k-1 form a box of k-s+j slabs.
        int prefix = 0;
        for (int t = 0; t < s; ++t) {
            prefix += slab_ones_[static_cast<std::size_t>(t)];
            const int j = s - 1 - t;
            b = std::min(b, prefix + tail_[static_cast<std::size_t>(k_ - s + j)]);
        }
        return b;
    }

    bool allowed(int pos, int v) const
    {
        if (!ordered_ || pos < w_) return true;
        const int start = pos - pos % w_;
        for (int q = start; q < pos; ++q)
            if (bits_[static_cast<std::size_t>(q)] != bits_[static_cast<std::size_t>(q - w_)]) return true;
        return v <= bits_[static_cast<std::size_t>(pos - w_)];
    }

    void phase1(int pos)
    {
        ++nodes_;
        if (pos == end_) {
            int seen = best_->load();
            while (cur_ > seen && !best_->compare_exchange_weak(seen, cur_)) {
            }
            return;
        }
        if (bound(pos) <= best_->load()) return;
        if (allowed(pos, 1)) {
            set(pos, true);
            if (!p_.violates(pos)) phase1(pos + 1);
            set(pos, false);
        }
        if (allowed(pos, 0)) phase1(pos + 1);
    }

    bool phase2(int pos)
    {
        ++nodes_;
        if (pos == end_) return cur_ == target_;
        if (bound(pos) < target_) return false;
        if (allowed(pos, 0) && phase2(pos + 1)) return true;
        if (allowed(pos, 1)) {
            set(pos, true);
            if (!p_.violates(pos) && phase2(pos + 1)) return true;
            set(pos, false);
        }
        return false;
    }

    SlabProblem& p_;
    bool ordered_;
    const std::vector<int>& tail_;
    int k_;
    int w_;
    int end_;
    std::vector<char> bits_;
    std::vector<int> slab_ones_;
    int cur_ = 0;
    int target_ = 0;
    std::atomic<int>* best_ = nullptr;
    std::uint64_t nodes_ = 0;
};

int solve_value(SlabProblem& p, const SlabOptions& o, const std::vector<int>& tail, int k, std::uint64_t& nodes)
{
    const bool ordered = o.slabs_nonincreasing || o.value_symmetry;
    std::atomic<int> best{tail[static_cast<std::size_t>(k - 1)]};
    const int positions = k * p.width();
    if (o.threads <= 1 || positions < 8) {
        Walker w(p, ordered, tail, k);
        w.maximize_from(0, best);
        nodes += w.nodes();
        return best.load();
    }
    std::vector<std::vector<char>> work;
    {
        Walker w(p, ordered, tail, k);
        w.prefixes(0, std::min(positions, 8 + o.threads), work);
    }
    std::atomic<std::size_t> next{0};
    std::atomic<std::uint64_t> total_nodes{0};
    const int depth = std::min(positions, 8 + o.threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < o.threads; ++t) {
        pool.emplace_back([&] {
            auto local = p.clone();
            std::uint64_t local_nodes = 0;
            for (std::size_t i = next++; i < work.size(); i = next++) {
                auto fresh = local->clone();
                Walker w(*fresh, ordered, tail, k);
                w.replay(work[i]);
                w.maximize_from(depth, best);
                local_nodes += w.nodes();
            }
            total_nodes += local_nodes;
        });
    }
    for (auto& th : pool) th.join();
    nodes += total_nodes.load();
    return best.load();
}

}  // namespace

SlabResult maximize(SlabProblem& problem, const SlabOptions& options)
{
    SlabResult res;
    const int slabs = problem.slabs();
    res.tail.assign(static_cast<std::size_t>(slabs + 1), 0);
    for (int k = 1; k <= slabs; ++k) res.tail[static_cast<std::size_t>(k)] = solve_value(problem, options, res.tail, k, res.nodes);
    res.value = res.tail.back();

    Walker w(problem, options.slabs_nonincreasing, res.tail, slabs);
    w.certificate_from(0, res.value);
    res.bits = w.bits();
    res.nodes += w.nodes();
    // Leave the caller's problem state clean.
    for (std::size_t i = 0; i < res.bits.size(); ++i)
        if (res.bits[i]) problem.assign(static_cast<int>(i), false);
    return res;
}

}  // namespace zarex::detail
