#pragma once

#include <cstdint>
#include <future>
#include <thread>
#include <type_traits>

namespace wmorph {

inline int resolve_worker_count(int requested) {
    if (requested > 0) return requested;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

inline int spawn_depth_for(int workers) {
    if (workers <= 1) return 0;
    int depth = 0;
    while ((1 << depth) < workers && depth < 8) ++depth;
    return depth + 1;  // a little oversubscription smooths uneven leaves
}

// Deterministic pairwise-tree reduction over the index range [lo, hi).
// The tree splits at fixed midpoints down to `grain`, so the floating-point
// reduction order -- and therefore the result, bit for bit -- is independent
// of how many workers execute the subtrees.
template <class Leaf, class Combine>
auto pairwise_reduce(uint64_t lo, uint64_t hi, uint64_t grain, int spawn_depth,
                     const Leaf& leaf, const Combine& combine)
    -> std::invoke_result_t<Leaf, uint64_t, uint64_t> {
    using Acc = std::invoke_result_t<Leaf, uint64_t, uint64_t>;
    if (hi - lo <= grain) return leaf(lo, hi);
    const uint64_t mid = lo + (hi - lo) / 2;
    if (spawn_depth > 0) {
        auto right = std::async(std::launch::async, [&]() -> Acc {
            return pairwise_reduce(mid, hi, grain, spawn_depth - 1, leaf, combine);
        });
        Acc left = pairwise_reduce(lo, mid, grain, spawn_depth - 1, leaf, combine);
        return combine(left, right.get());
    }
    Acc left = pairwise_reduce(lo, mid, grain, 0, leaf, combine);
    Acc right = pairwise_reduce(mid, hi, grain, 0, leaf, combine);
    return combine(left, right);
}

}  // namespace wmorph
