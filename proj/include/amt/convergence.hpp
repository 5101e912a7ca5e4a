#pragma once

#include <optional>
#include <vector>

#include "amt/crossover.hpp"
#include "amt/dynamics.hpp"
#include "amt/errors.hpp"

namespace amt {

// Measured integrator convergence order, or the statement that the sampled
// errors sit at rounding level (constant generators, zero Hamiltonians).
struct TimestepOrder {
    bool exact = false;   // true: error indistinguishable from zero at all steps
    double slope = 0.0;   // log-log fit of error against step when !exact
};

// Outcome of a truncation-independence study on one xi grid.
struct ConvergenceReport {
    std::vector<std::size_t> n_values;  // Fock cutoffs, increasing
    std::vector<std::size_t> even_dims; // matching even-subspace dimensions
    std::vector<double> xi_grid;

    struct PairDeviation {
        std::size_t n_a = 0;
        std::size_t n_b = 0;
        double max_abs_deviation = 0.0;  // over the grid, normalized activation
    };
    std::vector<PairDeviation> deviations;

    // Per cutoff: worst-case (over the grid) maximum population in the top
    // 10% of the even-subspace states at any sampled time.
    std::vector<double> tail_population_max;

    std::optional<TimestepOrder> timestep_order;  // filled on request
};

// Runs the identical normalized activation sweep at every cutoff in
// n_values (each >= 20, at least two values, strictly increasing) and
// records all pairwise pointwise deviations plus per-cutoff tail
// populations. The model's family must be FockEven.
ConvergenceReport truncation_study(const ModelSpec& model,
                                   const std::vector<std::size_t>& n_values,
                                   const std::vector<double>& xi_grid,
                                   const AveragingWindow& window = {});

// Maximum over time of the total population in the top
// ceil(top_fraction * dim) basis states of a Fock-type trajectory.
double tail_population(const Trajectory& traj, double top_fraction);

// Step-refinement order measurement at fixed xi. steps must be a geometric
// progression of >= 3 entries (largest first or smallest first, both fine).
// Families map to the integrator they exercise:
//  - TwoLevel/ThreeLevel: constant generator, exact exponential stepping;
//    reported exact.
//  - FockEven: wall-clock drive via a constant-eta frequency protocol, so the
//    midpoint-exponential stepper shows its second-order step dependence.
//  - SpectralFlow: two driven modes with nonlinearity; fourth-order scheme.
TimestepOrder timestep_refinement(const ModelSpec& model, double xi,
                                  const std::vector<double>& steps);

}  // namespace amt
