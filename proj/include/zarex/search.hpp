#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace zarex::detail {

/// A 0-1 maximization over `slabs * width` positions taken in order, slab by
/// slab. Implementations keep their own configuration in sync with assign().
/// The forbidden structure must be translation invariant along the slab
/// axis: any run of k consecutive slabs behaves like the first k slabs.
class SlabProblem {
public:
    virtual ~SlabProblem() = default;
    virtual int slabs() const = 0;
    virtual int width() const = 0;
    virtual void assign(int pos, bool value) = 0;
    /// Called right after assign(pos, true): does the configuration now
    /// contain the forbidden structure?
    virtual bool violates(int pos) = 0;
    virtual std::unique_ptr<SlabProblem> clone() const = 0;
};

struct SlabOptions {
    int threads = 1;
    /// Require consecutive slabs in non-increasing lexicographic order.
    bool slabs_nonincreasing = false;
    /// Same restriction, but only while computing optimum values; the
    /// certificate is still the smallest over all configurations. Sound when
    /// permuting slabs maps feasible configurations to feasible ones.
    bool value_symmetry = false;
};

struct SlabResult {
    int value = 0;
    /// Lexicographically smallest optimal configuration (position order).
    std::vector<char> bits;
    /// Optimum for the first k slabs, k = 0..slabs.
    std::vector<int> tail;
    std::uint64_t nodes = 0;
};

SlabResult maximize(SlabProblem& problem, const SlabOptions& options);

}  // namespace zarex::detail
