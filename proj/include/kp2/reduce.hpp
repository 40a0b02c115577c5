#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace kp2 {

// Fixed-order pairwise-tree sum. The reduction order depends only on the
// element order, never on the thread count, so accumulating per-index partial
// results into an array and summing with this keeps outputs bit-stable.
template <typename T>
T pairwise_sum(std::span<const T> v) {
    if (v.empty()) return T{};
    if (v.size() <= 8) {
        T s = v[0];
        for (std::size_t i = 1; i < v.size(); ++i) s += v[i];
        return s;
    }
    std::size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline double pairwise_sum(std::span<const double> v) { return pairwise_sum<double>(v); }

}  // namespace kp2
