#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace delpack {

/// Objective over a box. Infeasible points return +infinity.
using BoxObjective = std::function<double(const std::vector<double>&)>;

struct GridOptions
{
    // Grid points per dimension on the coarse pass, before the budget cap.
    int points = 64;
    // Upper bound on coarse grid evaluations; points per dimension shrink to fit.
    std::size_t budget = std::size_t{1} << 18;
    // Points per dimension of each refinement grid.
    int refine_points = 17;
    int rounds = 2;
    // Shrink factor of the refinement box per round. The next box spans one spacing of the
    // previous grid on each side of the incumbent, so zoom must not exceed (refine_points - 1) / 2.
    double zoom = 8.0;
    // Re-centrings allowed per round while the best point sits on a face of the box.
    int max_moves = 16;
    // Number of separated coarse incumbents refined independently.
    int top_k = 4;
};

struct MinResult
{
    double value = std::numeric_limits<double>::infinity();
    std::vector<double> x;
    // Value before the last refinement round; the gap to value estimates the remaining error.
    double previous = std::numeric_limits<double>::infinity();
    std::size_t evaluations = 0;
    std::size_t feasible = 0;
    int coarse_points = 0;

    bool found() const { return value < std::numeric_limits<double>::infinity(); }
};

/// Coarse grid over [lo, hi] followed by zoomed grids around the best separated
/// incumbents. Deterministic: ties keep the lexicographically first grid point.
MinResult grid_minimize(const BoxObjective& f, const std::vector<double>& lo, const std::vector<double>& hi,
                        const GridOptions& options = {});

}  // namespace delpack
