#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wavekin/dispersion.hpp"
#include "wavekin/grid.hpp"
#include "wavekin/index_sets.hpp"
#include "wavekin/kernels.hpp"

namespace wavekin {

// Cell masses N_i, one per grid cell.
using StateVector = std::vector<double>;

struct RhsDiagnostics {
    std::uint64_t nonpositive_skips = 0;    // composite frequency <= 0, term dropped
    std::uint64_t nonfinite_components = 0; // overflowed rate components
};

// Block toggles for term-group accounting in tests. Blocks: the three
// triple-sum kernel blocks (terms 1-4, 5-8, 9-12) and the three-wave
// block (terms 13-17).
struct TermMask {
    bool k1_block = true;
    bool k2_block = true;
    bool k3_block = true;
    bool three_wave = true;
};

// Immutable evaluation context: grid, precomputed pair tables, kernel
// parameters. Safe to share across threads.
struct OperatorContext {
    Grid grid;
    IndexTables tables;
    KernelParams params;
    DispersionRelation disp;
    int threads = 1;
    double debug_k1_scale = 1.0;  // test-only hook, perturbs the fast path

    OperatorContext(Grid g, KernelParams p, DispersionRelation dr)
        : grid(std::move(g)), tables(grid), params(p), disp(dr) {
        params.validate();
    }
};

// The 17 signed terms making up the i-th rate component, fast (window/table)
// and exhaustive-reference variants. Both enumerate contributing tuples in
// ascending index order, so matching terms are bit-identical.
std::array<double, 17> q_terms(int i, const StateVector& n, const OperatorContext& ctx,
                               RhsDiagnostics* diag = nullptr);
std::array<double, 17> q_terms_brute(int i, const StateVector& n, const OperatorContext& ctx,
                                     RhsDiagnostics* diag = nullptr);

double rhs_component(int i, const StateVector& n, const OperatorContext& ctx,
                     RhsDiagnostics* diag = nullptr, const TermMask& mask = {});

// dN/dt for every cell. Throws on dimension mismatch. Non-finite components
// are counted in diag and surfaced to the caller there.
StateVector rhs(const StateVector& n, const OperatorContext& ctx, RhsDiagnostics* diag = nullptr,
                const TermMask& mask = {});

// Reference operator: exhaustive loops over all index tuples, membership by
// direct per-tuple predicate, no binary search and no precomputed tables.
// Intended for small grids (O(I^5) work).
StateVector brute_force_rhs(const StateVector& n, const OperatorContext& ctx,
                            RhsDiagnostics* diag = nullptr, const TermMask& mask = {});

// Rate component for a zeroed cell of a non-negative state; the proof of
// non-negativity asserts this is a pure gain. Throws std::invalid_argument
// if the preconditions (n >= 0, n[i] == 0) are violated.
double positivity_flux_check(const StateVector& n, int i, const OperatorContext& ctx);

// Empirical Lipschitz quotient: max over random non-negative pairs inside
// the L1 ball of ||J(a) - J(b)||_1 / ||a - b||_1.
double lipschitz_estimate(const OperatorContext& ctx, double ball_radius, int trials,
                          std::uint64_t seed);

double l1_norm(const StateVector& v);

}  // namespace wavekin
