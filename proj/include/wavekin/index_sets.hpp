#pragma once

#include <utility>
#include <vector>

#include "wavekin/grid.hpp"

namespace wavekin {

// Canonical composite frequencies. Every membership test and every kernel
// argument built from the same pivot combination must go through these, so
// that the table-driven operator and the exhaustive reference operator see
// bit-identical doubles.
inline double sum_value(const Grid& g, int j, int k) { return g.pivot(j) + g.pivot(k); }
inline double diff_value(const Grid& g, int j, int k) { return g.pivot(j) - g.pivot(k); }
// omega_l + omega_a - omega_b  (theta-bar style shift)
inline double bar_value(const Grid& g, int l, int a, int b) {
    return (g.pivot(l) + g.pivot(a)) - g.pivot(b);
}
// omega_a + omega_b - omega_l  (theta-hat style shift)
inline double hat_value(const Grid& g, int a, int b, int l) {
    return (g.pivot(a) + g.pivot(b)) - g.pivot(l);
}

// Contiguous run of pivot indices [lo, hi).
struct IndexRange {
    int lo = 0;
    int hi = 0;
    bool empty() const { return lo >= hi; }
    int size() const { return hi - lo; }
};

namespace detail {

// Membership of a monotone sequence v(l) in a cell is a contiguous run of l.
// Two binary searches over Grid::classify pin it down exactly.
template <class ValueFn>
IndexRange window_increasing(const Grid& g, int cell, ValueFn v) {
    const int n = g.size();
    int lo = 0, hi = n;  // first l with classify >= 0
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (g.classify(v(mid), cell) < 0) lo = mid + 1;
        else hi = mid;
    }
    const int start = lo;
    hi = n;  // first l with classify > 0
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (g.classify(v(mid), cell) <= 0) lo = mid + 1;
        else hi = mid;
    }
    return {start, lo};
}

template <class ValueFn>
IndexRange window_decreasing(const Grid& g, int cell, ValueFn v) {
    const int n = g.size();
    int lo = 0, hi = n;  // first l with classify <= 0
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (g.classify(v(mid), cell) > 0) lo = mid + 1;
        else hi = mid;
    }
    const int start = lo;
    hi = n;  // first l with classify < 0
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (g.classify(v(mid), cell) >= 0) lo = mid + 1;
        else hi = mid;
    }
    return {start, lo};
}

}  // namespace detail

// theta_tilde(i, j) = { k : omega_j + omega_k in cell i }
inline IndexRange theta_tilde(const Grid& g, int i, int j) {
    return detail::window_increasing(g, i, [&](int k) { return sum_value(g, j, k); });
}

// theta_bar(i, j, k) = { l : omega_l + omega_j - omega_k in cell i }
inline IndexRange theta_bar(const Grid& g, int i, int j, int k) {
    return detail::window_increasing(g, i, [&](int l) { return bar_value(g, l, j, k); });
}

// theta_hat(i, j, k) = { l : omega_j + omega_k - omega_l in cell i }
inline IndexRange theta_hat(const Grid& g, int i, int j, int k) {
    return detail::window_decreasing(g, i, [&](int l) { return hat_value(g, j, k, l); });
}

// Per-cell resonance pair lists, precomputed once per grid. Pairs are stored
// in ascending (j, k) order; the theta families stay on-demand (full tables
// would need O(I^3) storage).
class IndexTables {
  public:
    explicit IndexTables(const Grid& g) {
        const int n = g.size();
        sum_pairs_.resize(static_cast<std::size_t>(n));
        diff_pairs_.resize(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                if (auto c = g.locate(sum_value(g, j, k)))
                    sum_pairs_[static_cast<std::size_t>(*c)].push_back({j, k});
            }
        }
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < j; ++k) {
                if (auto c = g.locate(diff_value(g, j, k)))
                    diff_pairs_[static_cast<std::size_t>(*c)].push_back({j, k});
            }
        }
    }

    // Ordered pairs (j, k) with omega_j + omega_k in cell i.
    const std::vector<std::pair<int, int>>& sum_pairs(int i) const {
        return sum_pairs_[static_cast<std::size_t>(i)];
    }
    // Ordered pairs (j, k), j > k, with omega_j - omega_k in cell i.
    const std::vector<std::pair<int, int>>& diff_pairs(int i) const {
        return diff_pairs_[static_cast<std::size_t>(i)];
    }

  private:
    std::vector<std::vector<std::pair<int, int>>> sum_pairs_;
    std::vector<std::vector<std::pair<int, int>>> diff_pairs_;
};

}  // namespace wavekin
