#pragma once

#include <vector>

#include "meander/increments.hpp"

namespace meander {

// Ladder structure of the walk. chi+ is the first strict ascending ladder
// height (the height, not the epoch), S_tau the weak descending one.
struct LadderData {
    std::vector<double> ladder_pmf; // P(chi+ = h), index h-1, h = 1..max_support
    double mean_height = 0.0;       // E chi+

    // H[x] = expected number of strict ascending ladder points with height <= x,
    // counting the one at the origin; H[0] = 1.
    std::vector<double> H; // x = 0..x_max

    // V[x] = renewal function of the strict descending ladder heights evaluated
    // at x-1 (V[0] = 0). Harmonic for the walk killed on leaving (0, inf):
    // V(x) = E[V(x + X); x + X > 0] for x >= 1; the defect is measured on the
    // interior of the grid and stored below.
    std::vector<double> V; // x = 0..x_max

    double horizon_tail = 0.0; // ladder mass unaccounted by the truncated solves

    // Weak descending ladder height law, i.e. the law of -S_tau.
    std::vector<double> stau_pmf; // P(-S_tau = d), index d = 0..D
    double es_tau_abs = 0.0;      // E|S_tau|
    double es_tau_sq = 0.0;       // E S_tau^2

    std::vector<double> strict_desc_pmf; // P(chi- = d), index d-1, d = 1..D
    double harmonic_defect = 0.0;
    int x_max = 0;
};

// Solves the stationary first-passage (Green function) equations on a
// truncated half-line of spatial extent `horizon`. The truncation error is
// geometric in the horizon; the realized residual is reported in horizon_tail
// and must come out below 1e-9.
LadderData ladder_data(const IncrementLaw& law, int x_max, int horizon = 384);

} // namespace meander
