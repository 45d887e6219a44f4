#pragma once

#include "purepoint/overlap.hpp"

#include <optional>

namespace purepoint {

struct DensitySeries {
    int alpha_index = 0;
    std::vector<int> n_values;
    std::vector<double> densities;
    int depth = 0;
    bool heuristic = false;  // lattice point counting on non-cube tiles
    bool exact_intervals = false;
};

// Agreement density of the tiling with its translate by Q^n alpha, measured
// inside a boundary-corrected central window of the depth-`depth` patch.
// Supported: d = 1 (exact interval tilings) and integer lattice models
// (rational field, integer digits, expansion q*I). Errors: UnsupportedModel.
double density_estimate(const SubstitutionModel& model, const FieldVector& alpha, int n, int depth,
                        long long max_points = 5'000'000);

DensitySeries density_series(const SubstitutionModel& model, const FieldVector& alpha, int alpha_index,
                             int n_max, int depth, long long max_points = 5'000'000);

// Exhaustive pair scan over Phi^depth(xi): every class (colour_y, y-alpha-z,
// colour_z) with realized norm <= R + delta. Independent of the grid-based
// seed_overlaps path. Errors: CapExceeded.
std::vector<OverlapClass> brute_force_seed_classes(const SubstitutionModel& model, const ColouredPoint& xi,
                                                   const FieldVector& alpha, int depth, double radius,
                                                   long long max_points = 5'000'000);

struct Window {
    std::vector<double> lo;
    std::vector<double> hi;
    bool contains(const double* x, int d) const {
        for (int t = 0; t < d; ++t)
            if (x[t] < lo[static_cast<std::size_t>(t)] || x[t] > hi[static_cast<std::size_t>(t)]) return false;
        return true;
    }
};

// Phi^k(xi) restricted to a realized-coordinate box (no box: everything).
ColouredPointSet grow_patch(const SubstitutionModel& model, const ColouredPoint& xi, int k,
                            const std::optional<Window>& window,
                            long long max_points = 5'000'000);

} // namespace purepoint
