#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace wavekin {

// Truncated frequency mesh on [omega_min, R]. Cells are half-open
// [edge_i, edge_{i+1}), except the last cell which also contains R so
// that values exactly at the truncation boundary are not dropped.
//
// Binning rule (the single tie-break rule for the whole artifact):
// a value lying within a small one-sided tolerance *below* an edge is
// treated as sitting exactly on that edge and therefore belongs to the
// cell on the right. The tolerance is relative to the adjacent cell
// widths (SNAP_REL), so pivot sums/differences that miss an edge only
// through the omega_min offset of the mesh bin the way exact arithmetic
// on the unshifted mesh would. Nothing snaps downward: values strictly
// above R stay outside.
class Grid {
  public:
    static constexpr double SNAP_REL = 1e-7;

    // Uniform mesh: edge_m = omega_min + m * (R - omega_min) / cells.
    static Grid uniform(double omega_min, double R, int cells) {
        if (!(omega_min > 0.0) || !(omega_min < R))
            throw std::invalid_argument("grid: need 0 < omega_min < R");
        if (cells < 2) throw std::invalid_argument("grid: need at least 2 cells");
        std::vector<double> e(static_cast<std::size_t>(cells) + 1);
        const double width = (R - omega_min) / cells;
        for (int m = 0; m <= cells; ++m) e[static_cast<std::size_t>(m)] = omega_min + m * width;
        e.back() = R;  // guard against accumulation drift at the top edge
        return Grid(std::move(e));
    }

    // Custom mesh from strictly increasing edges, edges.front() > 0.
    explicit Grid(std::vector<double> edges) : edges_(std::move(edges)) {
        if (edges_.size() < 2) throw std::invalid_argument("grid: need at least 1 cell");
        if (!(edges_.front() > 0.0)) throw std::invalid_argument("grid: omega_min must be > 0");
        for (std::size_t m = 0; m + 1 < edges_.size(); ++m)
            if (!(edges_[m] < edges_[m + 1]))
                throw std::invalid_argument("grid: edges must be strictly increasing");
        const std::size_t n = edges_.size() - 1;
        pivots_.resize(n);
        widths_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            pivots_[i] = 0.5 * (edges_[i] + edges_[i + 1]);
            widths_[i] = edges_[i + 1] - edges_[i];
        }
    }

    int size() const { return static_cast<int>(pivots_.size()); }
    double omega_min() const { return edges_.front(); }
    double R() const { return edges_.back(); }
    const std::vector<double>& edges() const { return edges_; }
    const std::vector<double>& pivots() const { return pivots_; }
    const std::vector<double>& widths() const { return widths_; }
    double pivot(int i) const { return pivots_[static_cast<std::size_t>(i)]; }
    double width(int i) const { return widths_[static_cast<std::size_t>(i)]; }
    double edge(int m) const { return edges_[static_cast<std::size_t>(m)]; }

    // Snap tolerance for edge m: relative to the smaller adjacent cell.
    double edge_tol(int m) const {
        const int n = size();
        double w;
        if (m <= 0) w = widths_.front();
        else if (m >= n) w = widths_.back();
        else w = std::min(widths_[static_cast<std::size_t>(m - 1)],
                          widths_[static_cast<std::size_t>(m)]);
        return SNAP_REL * w;
    }

    // Cell index (0-based) containing x, or nullopt when x <= 0, x > R,
    // or x below the bottom edge beyond tolerance.
    std::optional<int> locate(double x) const {
        if (!(x > 0.0)) return std::nullopt;
        if (x > edges_.back()) return std::nullopt;
        const int n = size();
        if (x < edges_.front()) {
            if (edges_.front() - x <= edge_tol(0)) return 0;
            return std::nullopt;
        }
        // largest m with edge_m <= x
        auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
        int m = static_cast<int>(it - edges_.begin()) - 1;
        if (m >= n) return n - 1;  // x == R
        if (m + 1 < n && edges_[static_cast<std::size_t>(m + 1)] - x <= edge_tol(m + 1))
            return m + 1;
        return m;
    }

    // Same membership decision as locate(x) == i, as a direct predicate.
    bool cell_contains(int i, double x) const {
        if (!(x > 0.0)) return false;
        const int n = size();
        const double lo = edges_[static_cast<std::size_t>(i)];
        const double hi = edges_[static_cast<std::size_t>(i + 1)];
        if (!(x >= lo) && !(lo - x <= edge_tol(i))) return false;
        if (i == n - 1) return x <= hi;
        return x < hi && !(hi - x <= edge_tol(i + 1));
    }

    // -1 when x binned below cell i, 0 when in it, +1 when above.
    // Non-positive values bin below everything, values beyond R above.
    int classify(double x, int i) const {
        if (!(x > 0.0)) return -1;
        auto c = locate(x);
        if (!c) return x > edges_.back() ? +1 : -1;
        return (*c < i) ? -1 : (*c > i ? +1 : 0);
    }

  private:
    std::vector<double> edges_;
    std::vector<double> pivots_;
    std::vector<double> widths_;
};

inline Grid build_uniform_grid(double omega_min, double R, int cells) {
    return Grid::uniform(omega_min, R, cells);
}

}  // namespace wavekin
