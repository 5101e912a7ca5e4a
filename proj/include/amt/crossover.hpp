#pragma once

#include <string>
#include <vector>

#include "amt/dynamics.hpp"
#include "amt/errors.hpp"

namespace amt {

// Model family entering the crossover analysis.
enum class ModelFamily { TwoLevel, ThreeLevel, FockEven, SpectralFlow };

std::string to_string(ModelFamily f);

// Which system to run plus the parameters all sweeps derive from.
// The sweep control variable is xi = eta/u: eta stays fixed and u = eta/xi.
struct ModelSpec {
    ModelFamily family = ModelFamily::TwoLevel;
    double eta = 0.5;            // coupling / non-adiabaticity [dimensionless]
    double omega0 = 1.0;         // reference spectral scale [1/time]
    std::size_t n_levels = 100;  // Fock cutoff (FockEven) or mode count
    Regulator regulator = Regulator::KerrNN1;
};

// Averaging window in dimensionless local time. sample_step controls the
// trapezoid resolution; the window always holds at least min_samples points.
struct AveragingWindow {
    double tau_min = 0.5;
    double tau_max = 5.0;
    double sample_step = 0.0025;
    std::size_t min_samples = 200;
};

struct CrossoverPoint {
    double xi = 0.0;         // eta / u
    double p_bar = 0.0;      // activation with the curve's normalization applied
    double p_bar_raw = 0.0;  // time-averaged activation before normalization
    double eta_used = 0.0;
    double u_used = 0.0;
};

enum class Normalization { Raw, ByMaxXiPoint };

std::string to_string(Normalization n);

// One activation curve: points sorted by xi plus how p_bar was scaled.
struct CrossoverCurve {
    std::vector<CrossoverPoint> points;
    Normalization normalization = Normalization::Raw;
    ModelFamily family = ModelFamily::TwoLevel;
    ModelSpec model;
    AveragingWindow window;
    // Raw p_bar at the largest xi (the ByMaxXiPoint divisor; 1 for Raw).
    double normalization_divisor = 1.0;
};

// Local-time generator of the family at crossover parameter xi: the
// few-level matrices directly, or the even-subspace pair-driven oscillator
// with the regulator strength expressed in units of the instantaneous
// spectral scale (which removes every explicit time dependence).
HermitianOperator crossover_hamiltonian(const ModelSpec& model, double xi);

// Window-averaged activation P_bar(xi): the model is propagated from its
// lowest state over tau in [0, tau_max] and the activation observable
// (excited-state probability P1 for TwoLevel, top-level probability P2 for
// ThreeLevel, mean occupation for FockEven) is trapezoid-averaged over
// [tau_min, tau_max].
double time_averaged_activation(const ModelSpec& model, double xi,
                                const AveragingWindow& window = {});

// Full sweep over a positive increasing xi grid; points are computed
// independently (parallelizable) and reported in grid order.
CrossoverCurve sweep_crossover(const ModelSpec& model, const std::vector<double>& xi_grid,
                               Normalization normalization,
                               const AveragingWindow& window = {});

// Effective non-adiabaticity after occupation feedback:
// eta / (1 + u*mean_n/omega0)^2.
double eta_effective(double eta, double u, double mean_n, double omega0);

// Analytic scaling estimate of the stationary occupation where parametric
// gain balances nonlinear detuning: sqrt(eta*omega0/u). Order-of-magnitude
// only; see measured_saturation_occupation for the simulated value.
double saturation_occupation(double eta, double omega0, double u);

// Long-time mean occupation of the (constant) pair-driven even-subspace
// model, time-averaged over the trailing window_fraction of [0, t_final].
double measured_saturation_occupation(double eta, double omega0, double u,
                                      std::size_t n_levels, double t_final = 400.0,
                                      double window_fraction = 0.5,
                                      Regulator regulator = Regulator::KerrNN1);

// Saturated squared local-time evolution speed, as the closed form is
// printed: (eta^2/8) * (1 - 2*sqrt(xi))^2. Zero at xi = 1/4.
double fs_speed_saturated(double eta, double xi);

// Same quantity by direct substitution of the saturation occupation into
// the effective non-adiabaticity: (eta^2/8) / (1 + sqrt(eta*u/omega0))^4.
// The two variants coincide only under a normalization convention; both are
// reported so the difference stays visible.
double fs_speed_saturated_substitution(double eta, double u, double omega0);

enum class Stability { Bounded, Critical, Unstable };

std::string to_string(Stability s);

// Classification against the approximate threshold xi ~ 1/4 with a
// +/- band (default 10%): Bounded below 0.25*(1-band), Unstable above
// 0.25*(1+band), Critical inside.
Stability stability_classification(double xi, double band = 0.1);

// Normalized suppression of the squared local-time speed, (eta_eff/eta)^2.
double normalized_fs_suppression(double eta_eff, double eta);

// Least-squares slope of log(y) against log(x); shared by the saturation
// scaling check and the integrator order fits.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace amt
