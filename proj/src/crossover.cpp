#include "amt/crossover.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "amt/parallel.hpp"

namespace amt {

std::string to_string(ModelFamily f) {
    switch (f) {
        case ModelFamily::TwoLevel: return "two-level";
        case ModelFamily::ThreeLevel: return "three-level";
        case ModelFamily::FockEven: return "fock-even";
        case ModelFamily::SpectralFlow: return "spectral-flow";
    }
    return "?";
}

std::string to_string(Normalization n) {
    return n == Normalization::Raw ? "raw" : "by-max-xi-point";
}

std::string to_string(Stability s) {
    switch (s) {
        case Stability::Bounded: return "bounded";
        case Stability::Critical: return "critical";
        case Stability::Unstable: return "unstable";
    }
    return "?";
}

HermitianOperator crossover_hamiltonian(const ModelSpec& model, double xi) {
    if (!(xi > 0.0)) throw domain_error("crossover: xi must be > 0");
    const double u = model.eta / xi;
    switch (model.family) {
        case ModelFamily::TwoLevel:
            return build_two_level(model.eta, u);
        case ModelFamily::ThreeLevel:
            return build_three_level(model.eta, u);
        case ModelFamily::FockEven: {
            // In local time the pair-driven oscillator reads
            //   n + u*r(n) + (eta/4)(a^+2 + a^2)
            // once u is measured in units of the instantaneous spectral
            // scale; all coefficients are then constants of the sweep.
            const HermitianOperator full = build_fock_hamiltonian(
                model.n_levels, 1.0, u, model.eta / 4.0, model.regulator);
            return project_even_subspace(full);
        }
        case ModelFamily::SpectralFlow:
            throw argument_error(
                "crossover: the spectral-flow family has no closed sweep Hamiltonian; "
                "use propagate_spectral_flow directly");
    }
    throw argument_error("crossover: unknown model family");
}

namespace {

BasisLabel crossover_basis(const ModelSpec& model) {
    switch (model.family) {
        case ModelFamily::TwoLevel: return {BasisKind::TwoLevel, 2};
        case ModelFamily::ThreeLevel: return {BasisKind::ThreeLevel, 3};
        case ModelFamily::FockEven: return {BasisKind::EvenFock, model.n_levels};
        default: break;
    }
    throw argument_error("crossover: unsupported model family");
}

// Activation observable at one sample: transition probability for the
// few-level models (the regulated/top channel), mean occupation for Fock.
double activation_at(const Trajectory& traj, const ModelSpec& model, std::size_t i) {
    switch (model.family) {
        case ModelFamily::TwoLevel: return traj.population_at(i, 1);
        case ModelFamily::ThreeLevel: return traj.population_at(i, 2);
        case ModelFamily::FockEven: return traj.mean_occupation_at(i);
        default: break;
    }
    throw argument_error("crossover: unsupported model family");
}

std::vector<double> window_grid(const AveragingWindow& w) {
    if (!(w.tau_max > w.tau_min) || !(w.tau_min >= 0.0))
        throw argument_error("crossover: averaging window must satisfy 0 <= tau_min < tau_max");
    if (!(w.sample_step > 0.0))
        throw argument_error("crossover: averaging sample step must be > 0");
    double step = w.sample_step;
    const double span = w.tau_max - w.tau_min;
    const auto need = static_cast<double>(std::max<std::size_t>(w.min_samples, 2) - 1);
    if (span / step < need) step = span / need;  // enforce the minimum sample count
    // One shared grid from tau = 0 so the window endpoints are exact samples.
    const auto n_win = static_cast<std::size_t>(std::llround(span / step));
    step = span / static_cast<double>(n_win);
    const auto n_pre = static_cast<std::size_t>(std::ceil(w.tau_min / step - 1e-9));
    std::vector<double> grid;
    grid.reserve(n_pre + n_win + 1);
    for (std::size_t i = 0; i < n_pre; ++i)
        grid.push_back(w.tau_min * static_cast<double>(i) / static_cast<double>(n_pre));
    for (std::size_t i = 0; i <= n_win; ++i)
        grid.push_back(w.tau_min + step * static_cast<double>(i));
    return grid;
}

double trapezoid_average(const std::vector<double>& t, const std::vector<double>& y,
                         std::size_t first) {
    double acc = 0.0;
    for (std::size_t i = first + 1; i < t.size(); ++i)
        acc += 0.5 * (y[i] + y[i - 1]) * (t[i] - t[i - 1]);
    return acc / (t.back() - t[first]);
}

}  // namespace

double time_averaged_activation(const ModelSpec& model, double xi,
                                const AveragingWindow& window) {
    const HermitianOperator h = crossover_hamiltonian(model, xi);
    const std::vector<double> grid = window_grid(window);
    const QuantumState psi0 = QuantumState::ground(crossover_basis(model));
    const Trajectory traj = propagate_constant(h, psi0, grid);

    // First sample inside the averaging window (grid contains tau_min exactly).
    std::size_t first = 0;
    while (first < grid.size() && grid[first] < window.tau_min - 1e-12) ++first;
    std::vector<double> act(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) act[i] = activation_at(traj, model, i);
    return trapezoid_average(grid, act, first);
}

CrossoverCurve sweep_crossover(const ModelSpec& model, const std::vector<double>& xi_grid,
                               Normalization normalization, const AveragingWindow& window) {
    if (xi_grid.empty()) throw argument_error("sweep_crossover: empty xi grid");
    for (std::size_t i = 0; i < xi_grid.size(); ++i) {
        if (!(xi_grid[i] > 0.0)) throw domain_error("sweep_crossover: xi values must be > 0");
        if (i > 0 && !(xi_grid[i] > xi_grid[i - 1]))
            throw argument_error("sweep_crossover: xi grid must be strictly increasing");
    }

    CrossoverCurve curve;
    curve.normalization = normalization;
    curve.family = model.family;
    curve.model = model;
    curve.window = window;
    curve.points.resize(xi_grid.size());

    // Independent, deterministic per-point computation in grid order.
    parallel_map(xi_grid.size(), [&](std::size_t i) {
        CrossoverPoint pt;
        pt.xi = xi_grid[i];
        pt.eta_used = model.eta;
        pt.u_used = model.eta / xi_grid[i];
        pt.p_bar_raw = time_averaged_activation(model, xi_grid[i], window);
        pt.p_bar = pt.p_bar_raw;
        curve.points[i] = pt;
    });

    if (normalization == Normalization::ByMaxXiPoint) {
        const double divisor = curve.points.back().p_bar_raw;
        if (!(divisor > 0.0))
            throw integration_error(
                "sweep_crossover: activation at the largest xi vanishes; cannot normalize");
        curve.normalization_divisor = divisor;
        for (auto& pt : curve.points) pt.p_bar = pt.p_bar_raw / divisor;
    }
    return curve;
}

double eta_effective(double eta, double u, double mean_n, double omega0) {
    if (!(eta >= 0.0) || !(u >= 0.0) || !(mean_n >= 0.0))
        throw domain_error("eta_effective: eta, u and mean_n must be >= 0");
    if (!(omega0 > 0.0)) throw domain_error("eta_effective: omega0 must be > 0");
    const double f = 1.0 + u * mean_n / omega0;
    return eta / (f * f);
}

double saturation_occupation(double eta, double omega0, double u) {
    if (!(eta >= 0.0)) throw domain_error("saturation_occupation: eta must be >= 0");
    if (!(omega0 > 0.0)) throw domain_error("saturation_occupation: omega0 must be > 0");
    if (!(u > 0.0))
        throw domain_error("saturation_occupation: u must be > 0 (no saturation without "
                           "a regulator)");
    return std::sqrt(eta * omega0 / u);
}

double measured_saturation_occupation(double eta, double omega0, double u,
                                      std::size_t n_levels, double t_final,
                                      double window_fraction, Regulator regulator) {
    if (!(t_final > 0.0))
        throw domain_error("measured_saturation_occupation: t_final must be > 0");
    if (!(window_fraction > 0.0) || !(window_fraction < 1.0))
        throw domain_error("measured_saturation_occupation: window_fraction in (0,1) required");
    if (!(u > 0.0)) throw domain_error("measured_saturation_occupation: u must be > 0");

    const HermitianOperator h = project_even_subspace(
        build_fock_hamiltonian(n_levels, omega0, u, eta * omega0 / 4.0, regulator));
    const BasisLabel basis{BasisKind::EvenFock, n_levels};

    // Samples resolving the fastest diagonal scale are unnecessary for a
    // window average; 4000 samples across the run is plenty for the
    // occupation envelope.
    const std::size_t n_samples = 4000;
    std::vector<double> grid(n_samples + 1);
    for (std::size_t i = 0; i <= n_samples; ++i)
        grid[i] = t_final * static_cast<double>(i) / static_cast<double>(n_samples);

    const Trajectory traj = propagate_constant(h, QuantumState::ground(basis), grid);

    const double t_start = (1.0 - window_fraction) * t_final;
    std::size_t first = 0;
    while (first < grid.size() && grid[first] < t_start - 1e-12) ++first;
    std::vector<double> occ(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) occ[i] = traj.mean_occupation_at(i);
    return trapezoid_average(grid, occ, first);
}

double fs_speed_saturated(double eta, double xi) {
    if (!(eta >= 0.0)) throw domain_error("fs_speed_saturated: eta must be >= 0");
    if (!(xi >= 0.0)) throw domain_error("fs_speed_saturated: xi must be >= 0");
    const double f = 1.0 - 2.0 * std::sqrt(xi);
    return 0.125 * eta * eta * f * f;
}

double fs_speed_saturated_substitution(double eta, double u, double omega0) {
    if (!(eta >= 0.0)) throw domain_error("fs_speed_saturated_substitution: eta must be >= 0");
    if (!(u >= 0.0)) throw domain_error("fs_speed_saturated_substitution: u must be >= 0");
    if (!(omega0 > 0.0))
        throw domain_error("fs_speed_saturated_substitution: omega0 must be > 0");
    const double f = 1.0 + std::sqrt(eta * u / omega0);
    const double f2 = f * f;
    return 0.125 * eta * eta / (f2 * f2);
}

Stability stability_classification(double xi, double band) {
    if (!(xi >= 0.0)) throw domain_error("stability_classification: xi must be >= 0");
    if (!(band >= 0.0) || !(band < 1.0))
        throw domain_error("stability_classification: band must be in [0, 1)");
    const double lo = 0.25 * (1.0 - band);
    const double hi = 0.25 * (1.0 + band);
    if (xi < lo) return Stability::Bounded;
    if (xi > hi) return Stability::Unstable;
    return Stability::Critical;
}

double normalized_fs_suppression(double eta_eff, double eta) {
    if (!(eta > 0.0)) throw domain_error("normalized_fs_suppression: eta must be > 0");
    if (!(eta_eff >= 0.0) || eta_eff > eta * (1.0 + 1e-12))
        throw domain_error("normalized_fs_suppression: need 0 <= eta_eff <= eta");
    const double r = eta_eff / eta;
    return r * r;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw argument_error("log_log_slope: need two same-length series of >= 2 points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw domain_error("log_log_slope: all values must be > 0");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) throw argument_error("log_log_slope: degenerate abscissa");
    return (n * sxy - sx * sy) / den;
}

}  // namespace amt
