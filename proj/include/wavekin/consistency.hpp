#pragma once

#include <functional>
#include <vector>

#include "wavekin/collision.hpp"
#include "wavekin/simulation.hpp"

namespace wavekin {

struct ConsistencyLevel {
    int cells = 0;
    double delta_omega = 0.0;
    double eps_l1 = 0.0;
};

// Exact collision flux per cell: the eight truncated-domain integrals
// evaluated on the continuous density f by composite Simpson quadrature
// (each cell subdivided 32x in the outer variable). Reference side of the
// consistency check; independent of the discrete sum machinery.
std::vector<double> exact_flux(const Grid& g, const KernelParams& p, const DispersionRelation& d,
                               const std::function<double(double)>& f, int threads = 1);

// Discretization residual ||F(f) - J(N)||_1 per refinement level, where N is
// the cell-average projection of f onto that level's grid.
std::vector<ConsistencyLevel> consistency_study(const SimConfig& cfg,
                                                const std::vector<int>& levels);

}  // namespace wavekin
