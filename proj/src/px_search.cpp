#include "zarex/px_search.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "zarex/errors.hpp"
#include "zarex/grid_region.hpp"
#include "zarex/io.hpp"
#include "zarex/rng.hpp"
#include "zarex/search.hpp"

namespace zarex {
namespace {

using Clock = std::chrono::steady_clock;

// Cells in region_to_matrix row-major order.
std::vector<Cell> cell_order(int d, int r)
{
    std::vector<Cell> out;
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    while (true) {
        out.push_back(matrix_index_to_cell(idx, r));
        int k = d - 1;
        while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == r) idx[static_cast<std::size_t>(k--)] = 0;
        if (k < 0) return out;
    }
}

class AvoidPattern : public detail::SlabProblem {
public:
    AvoidPattern(const Rat& n, int r, const RegionDecider& decider)
        : r_(r), decider_(decider), s_(pattern_dim(decider.pattern()), n, r), cells_(cell_order(s_.d(), r))
    {
    }

    int slabs() const override { return r_; }
    int width() const override { return static_cast<int>(cells_.size()) / r_; }
    void assign(int pos, bool value) override { s_.set(cells_[static_cast<std::size_t>(pos)], value); }
    bool violates(int) override { return decider_.contains(s_); }
    std::unique_ptr<detail::SlabProblem> clone() const override { return std::make_unique<AvoidPattern>(*this); }

    const std::vector<Cell>& cells() const { return cells_; }
    const GridRegion& region() const { return s_; }

private:
    int r_;
    RegionDecider decider_;
    GridRegion s_;
    std::vector<Cell> cells_;
};

}  // namespace

std::string method_name(PxMethod m)
{
    switch (m) {
    case PxMethod::exact: return "exact";
    case PxMethod::greedy: return "greedy";
    case PxMethod::anneal: return "anneal";
    }
    return "exact";
}

PxMethod parse_px_method(const std::string& s)
{
    if (s == "exact") return PxMethod::exact;
    if (s == "greedy") return PxMethod::greedy;
    if (s == "anneal") return PxMethod::anneal;
    throw PreconditionError("unknown px method \"" + s + "\"");
}

void check_px_guard(int d, int r)
{
    bool ok;
    if (d == 2)
        ok = r <= 5;
    else if (d == 3)
        ok = r <= 3;
    else {
        std::int64_t cells = 1;
        for (int k = 0; k < d && cells <= 64; ++k) cells *= r;
        ok = cells <= 64;
    }
    if (!ok)
        throw GuardError("exact px search at r = " + std::to_string(r) + ", d = " + std::to_string(d) +
                         " exceeds the size guard; use greedy or anneal");
}

ExtremalRecord px_lower_search(const Rat& n, int r, const Pattern& p, const PxOptions& options)
{
    if (n.sign() <= 0) throw PreconditionError("n must be positive");
    if (r < 1 || r > kMaxAxisLength) throw PreconditionError("r must be in [1, 64]");
    const int d = pattern_dim(p);
    if (options.method == PxMethod::exact && options.guard) check_px_guard(d, r);
    std::int64_t total = 1;
    for (int k = 0; k < d; ++k) {
        total *= r;
        if (total > 4096) throw GuardError("r^d above 4096 cells is not supported");
    }
    const auto t0 = Clock::now();

    RegionDecider decider(p);
    AvoidPattern problem(n, r, decider);
    const auto& cells = problem.cells();
    GridRegion best(d, n, r);

    ExtremalRecord rec;
    rec.kind = "px";
    rec.pattern_id = pattern_id(p);
    rec.n = n;
    rec.d = d;
    rec.r = r;
    rec.bound = BoundKind::lower;
    rec.method = method_name(options.method);

    if (options.method == PxMethod::exact) {
        detail::SlabOptions so;
        so.threads = std::max(1, options.threads);
        auto res = detail::maximize(problem, so);
        for (std::size_t i = 0; i < res.bits.size(); ++i)
            if (res.bits[i]) best.set(cells[i], true);
    } else {
        rec.seed = options.seed;
        Rng rng(options.seed);
        GridRegion s(d, n, r);
        std::vector<std::size_t> order(cells.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        rng.shuffle(order);
        for (std::size_t i : order) {
            s.set(cells[i], true);
            if (decider.contains(s)) s.set(cells[i], false);
        }
        best = s;
        if (options.method == PxMethod::anneal) {
            const AnnealConfig& a = options.anneal;
            const std::int64_t steps = static_cast<std::int64_t>(a.sweeps) * static_cast<std::int64_t>(cells.size());
            const double ratio = steps > 1 ? std::pow(a.t_end / a.t_start, 1.0 / static_cast<double>(steps - 1)) : 1.0;
            double temp = a.t_start;
            for (std::int64_t step = 0; step < steps; ++step, temp *= ratio) {
                const Cell& c = cells[rng.below(cells.size())];
                const double u = rng.unit();
                if (s.occupied(c)) {
                    if (u < std::exp(-1.0 / temp)) s.set(c, false);
                } else {
                    s.set(c, true);
                    if (decider.contains(s))
                        s.set(c, false);
                    else if (s.count() > best.count())
                        best = s;
                }
            }
        }
    }
    if (decider.contains(best)) throw std::logic_error("px certificate failed re-verification");
    rec.value = static_cast<std::int64_t>(best.count());
    rec.measure = region_measure(best);
    rec.region = best;
    rec.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    return rec;
}

}  // namespace zarex
