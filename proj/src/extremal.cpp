#include "zarex/extremal.hpp"

#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <map>
#include <stdexcept>
#include <string>

#include "zarex/errors.hpp"
#include "zarex/io.hpp"
#include "zarex/rng.hpp"
#include "zarex/search.hpp"

namespace zarex {
namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0)
{
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::vector<Index> row_major_indices(const std::vector<int>& dims)
{
    std::vector<Index> out;
    Index idx(dims.size(), 0);
    while (true) {
        out.push_back(idx);
        int k = static_cast<int>(dims.size()) - 1;
        while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == dims[static_cast<std::size_t>(k)])
            idx[static_cast<std::size_t>(k--)] = 0;
        if (k < 0) return out;
    }
}

bool slabs_identical(const BitMatrix& m)
{
    const std::size_t per_slab = m.line_count() / static_cast<std::size_t>(m.rows());
    for (std::size_t s = 1; s < static_cast<std::size_t>(m.rows()); ++s)
        for (std::size_t q = 0; q < per_slab; ++q)
            if (m.line(s * per_slab + q) != m.line(q)) return false;
    return true;
}

class AvoidMatrix : public detail::SlabProblem {
public:
    AvoidMatrix(int n, const BitMatrix& m)
        : n_(n), m_(m), a_(std::vector<int>(static_cast<std::size_t>(m.dim()), n)), idx_(row_major_indices(a_.dims())),
          block_(m.dim() == 2 && m.count() == m.entries())
    {
    }

    int slabs() const override { return n_; }
    int width() const override { return static_cast<int>(idx_.size()) / n_; }
    void assign(int pos, bool value) override { a_.set(idx_[static_cast<std::size_t>(pos)], value); }
    bool violates(int pos) override
    {
        const Index& e = idx_[static_cast<std::size_t>(pos)];
        if (block_) return block_through(e[0], e[1]);
        return contains_through(a_, m_, e);
    }
    std::unique_ptr<detail::SlabProblem> clone() const override { return std::make_unique<AvoidMatrix>(*this); }

    BitMatrix matrix_of(const std::vector<char>& bits) const
    {
        BitMatrix out(a_.dims());
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) out.set(idx_[i], true);
        return out;
    }

private:
    // All-ones M of size p x q: is there a set of p rows through row i whose
    // common columns include j and number at least q?
    bool block_through(int i, int j) const
    {
        const int p = m_.rows(), q = m_.cols();
        const std::uint64_t bit = std::uint64_t{1} << j;
        std::vector<int> others;
        for (int t = 0; t < n_; ++t)
            if (t != i && (a_.line(static_cast<std::size_t>(t)) & bit)) others.push_back(t);
        auto rec = [&](auto&& self, std::size_t from, int need, std::uint64_t common) -> bool {
            if (std::popcount(common) < q) return false;
            if (need == 0) return true;
            for (std::size_t t = from; t + static_cast<std::size_t>(need) <= others.size(); ++t)
                if (self(self, t + 1, need - 1, common & a_.line(static_cast<std::size_t>(others[t])))) return true;
            return false;
        };
        return rec(rec, 0, p - 1, a_.line(static_cast<std::size_t>(i)));
    }

    int n_;
    BitMatrix m_;
    BitMatrix a_;
    std::vector<Index> idx_;
    bool block_;
};

void require_pattern(const BitMatrix& m)
{
    if (m.dim() < 2) throw PreconditionError("forbidden matrix must have dimension >= 2");
    if (m.count() == 0) throw PreconditionError("forbidden matrix has no ones");
}

void certify(const BitMatrix& cert, const BitMatrix& m, std::int64_t value)
{
    if (static_cast<std::int64_t>(cert.count()) != value || matrix_contains(cert, m))
        throw std::logic_error("certificate failed re-verification");
}

ExtremalRecord base_record(int n, const BitMatrix& m)
{
    ExtremalRecord rec;
    rec.kind = "ex";
    rec.pattern_id = pattern_id(m);
    rec.n = Rat(n);
    rec.d = m.dim();
    return rec;
}

}  // namespace

void check_ex_guard(int n, int d)
{
    bool ok;
    if (d == 2)
        ok = n <= 7;
    else if (d == 3)
        ok = n <= 4;
    else {
        std::int64_t cells = 1;
        for (int k = 0; k < d && cells <= 64; ++k) cells *= n;
        ok = cells <= 64;
    }
    if (!ok)
        throw GuardError("exact ex search at n = " + std::to_string(n) + ", d = " + std::to_string(d) +
                         " exceeds the size guard; use heuristic mode");
}

ExtremalRecord ex_exact(int n, const BitMatrix& m, const ExactOptions& options)
{
    require_pattern(m);
    if (n < 1) throw PreconditionError("n must be >= 1");
    if (options.guard) check_ex_guard(n, m.dim());
    if (options.symmetry_breaking && !slabs_identical(m))
        throw PreconditionError("symmetry breaking requires identical slabs of the forbidden matrix");
    const auto t0 = Clock::now();
    ExtremalRecord rec = base_record(n, m);
    rec.bound = BoundKind::exact;
    rec.method = "branch-and-bound";
    rec.symmetry_breaking = options.symmetry_breaking;

    AvoidMatrix problem(n, m);
    if (m.entries() == 1) {
        rec.value = 0;
        rec.certificate = problem.matrix_of({});
    } else {
        detail::SlabOptions so;
        so.threads = std::max(1, options.threads);
        so.slabs_nonincreasing = options.symmetry_breaking;
        so.value_symmetry = slabs_identical(m);
        auto res = detail::maximize(problem, so);
        rec.value = res.value;
        rec.certificate = problem.matrix_of(res.bits);
    }
    certify(*rec.certificate, m, rec.value);
    rec.elapsed_ms = ms_since(t0);
    return rec;
}

ExtremalRecord ex_lower_heuristic(int n, const BitMatrix& m, std::uint64_t seed, int iterations)
{
    require_pattern(m);
    if (n < 1 || n > kMaxAxisLength) throw PreconditionError("n must be in [1, 64]");
    const auto t0 = Clock::now();
    ExtremalRecord rec = base_record(n, m);
    rec.bound = BoundKind::lower;
    rec.method = "greedy-local-search";
    rec.seed = seed;

    BitMatrix a(std::vector<int>(static_cast<std::size_t>(m.dim()), n));
    const auto idx = row_major_indices(a.dims());
    if (iterations < 0) iterations = static_cast<int>(std::min<std::size_t>(4 * idx.size(), 4096));
    Rng rng(seed);

    auto fill = [&](std::vector<std::size_t>& order) {
        rng.shuffle(order);
        int added = 0;
        for (std::size_t p : order) {
            if (a.get(idx[p])) continue;
            a.set(idx[p], true);
            if (contains_through(a, m, idx[p]))
                a.set(idx[p], false);
            else
                ++added;
        }
        return added;
    };

    std::vector<std::size_t> order(idx.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (m.entries() > 1) fill(order);

    for (int it = 0; it < iterations && m.entries() > 1; ++it) {
        std::vector<std::size_t> ones;
        for (std::size_t p = 0; p < idx.size(); ++p)
            if (a.get(idx[p])) ones.push_back(p);
        if (ones.empty()) break;
        const BitMatrix before = a;
        a.set(idx[ones[rng.below(ones.size())]], false);
        fill(order);
        if (a.count() < before.count()) a = before;
    }
    rec.value = static_cast<std::int64_t>(a.count());
    rec.certificate = a;
    certify(a, m, rec.value);
    rec.elapsed_ms = ms_since(t0);
    return rec;
}

Rat default_deletion_probability(int n, int r)
{
    using boost::multiprecision::cpp_int;
    if (n < 1 || r < 1) throw PreconditionError("n and r must be positive");
    // Largest k with (k / 2^20)^(r+1) <= n^-2.
    const std::int64_t scale = std::int64_t{1} << 20;
    cpp_int limit = cpp_int(1) << (20 * (r + 1));
    auto fits = [&](std::int64_t k) { return cpp_int(pow(cpp_int(k), static_cast<unsigned>(r + 1))) * n * n <= limit; };
    std::int64_t lo = 0, hi = scale;
    while (lo < hi) {
        std::int64_t mid = (lo + hi + 1) / 2;
        if (fits(mid))
            lo = mid;
        else
            hi = mid - 1;
    }
    return Rat(lo, scale);
}

ExtremalRecord ex_lower_random_deletion(int n, int r, const std::optional<Rat>& p_in, std::uint64_t seed)
{
    if (r < 2) throw PreconditionError("r must be >= 2");
    if (n < 1 || n > kMaxAxisLength) throw PreconditionError("n must be in [1, 64]");
    const auto t0 = Clock::now();
    const BitMatrix jrr = BitMatrix::all_ones({r, r});
    ExtremalRecord rec = base_record(n, jrr);
    rec.bound = BoundKind::lower;
    rec.method = "random-deletion";
    rec.seed = seed;

    Rat p = p_in ? *p_in : default_deletion_probability(n, r);
    p = max(Rat(0), min(Rat(1), p));
    // Discretize to denominator 2^20 (rounding down).
    const std::int64_t scale = std::int64_t{1} << 20;
    const std::int64_t k = (p * Rat(scale)).floor();

    Rng rng(seed);
    BitMatrix a({n, n});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(scale))) < k) a.set(i, j, true);
    while (auto e = find_embedding(a, jrr)) a.set(e->maps[0].back(), e->maps[1].back(), false);
    rec.value = static_cast<std::int64_t>(a.count());
    rec.certificate = a;
    certify(a, jrr, rec.value);
    rec.elapsed_ms = ms_since(t0);
    return rec;
}

std::vector<CheckReport> check_superadditive(const BitMatrix& m, const std::vector<std::pair<int, int>>& pairs,
                                             const ExactOptions& options)
{
    std::map<int, std::int64_t> memo;
    auto ex = [&](int n) {
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
        return memo[n] = ex_exact(n, m, options).value;
    };
    std::vector<CheckReport> out;
    for (auto [a, b] : pairs) {
        CheckReport rep;
        rep.check_id = "superadditive";
        rep.params = {{"m", std::to_string(a)}, {"n", std::to_string(b)}, {"pattern_id", pattern_id(m)}};
        rep.lhs = Rat(ex(a + b));
        rep.rhs = Rat(ex(a) + ex(b));
        rep.relation = Relation::ge;
        rep.note = "ex(m+n) >= ex(m) + ex(n); margin " + (rep.lhs - rep.rhs).str();
        out.push_back(std::move(rep));
    }
    return out;
}

CheckReport check_tardos_blank(const BitMatrix& m, int k, int n, const ExactOptions& options)
{
    if (k < 0) throw PreconditionError("k must be >= 0");
    if (n < 1) throw PreconditionError("n must be >= 1");
    CheckReport rep;
    rep.check_id = "tardos_blank";
    rep.params = {{"k", std::to_string(k)}, {"n", std::to_string(n)}, {"pattern_id", pattern_id(m)}};
    const int reduced = (n + k) / (k + 1);
    rep.lhs = Rat(ex_exact(n, blowup(m, k), options).value);
    rep.rhs = Rat((k + 1) * (k + 1)) * Rat(ex_exact(reduced, m, options).value);
    rep.relation = Relation::le;
    rep.note = "ex(n, S(M,k)) <= (k+1)^2 ex(ceil(n/(k+1)), M)";
    return rep;
}

}  // namespace zarex
