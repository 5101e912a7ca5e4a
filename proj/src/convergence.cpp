#include "amt/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace amt {

ConvergenceReport truncation_study(const ModelSpec& model,
                                   const std::vector<std::size_t>& n_values,
                                   const std::vector<double>& xi_grid,
                                   const AveragingWindow& window) {
    if (model.family != ModelFamily::FockEven)
        throw argument_error("truncation_study: model family must be fock-even");
    if (n_values.size() < 2)
        throw argument_error("truncation_study: need at least two truncation sizes");
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 20)
            throw argument_error("truncation_study: every truncation size must be >= 20");
        // Equal entries are allowed: a repeated cutoff is the determinism
        // smoke test (its pair deviation must come out exactly zero).
        if (i > 0 && n_values[i] < n_values[i - 1])
            throw argument_error("truncation_study: truncation sizes must be non-decreasing");
    }

    ConvergenceReport report;
    report.n_values = n_values;
    report.xi_grid = xi_grid;

    // Identical sweep at every cutoff; same xi grid, same averaging window.
    std::vector<std::vector<double>> curves;
    curves.reserve(n_values.size());
    for (std::size_t n : n_values) {
        ModelSpec m = model;
        m.n_levels = n;
        report.even_dims.push_back(BasisLabel{BasisKind::EvenFock, n}.dimension());

        const CrossoverCurve c =
            sweep_crossover(m, xi_grid, Normalization::ByMaxXiPoint, window);
        std::vector<double> p;
        p.reserve(c.points.size());
        for (const auto& pt : c.points) p.push_back(pt.p_bar);
        curves.push_back(std::move(p));

        // Worst tail occupation across the grid for this cutoff.
        double tail_max = 0.0;
        const BasisLabel basis{BasisKind::EvenFock, n};
        for (double xi : xi_grid) {
            const HermitianOperator h = crossover_hamiltonian(m, xi);
            // Coarser sampling than the average: tails move slowly and only
            // the maximum matters.
            std::vector<double> grid(201);
            for (std::size_t i = 0; i < grid.size(); ++i)
                grid[i] = window.tau_max * static_cast<double>(i) /
                          static_cast<double>(grid.size() - 1);
            const Trajectory traj = propagate_constant(h, QuantumState::ground(basis), grid);
            tail_max = std::max(tail_max, tail_population(traj, 0.1));
        }
        report.tail_population_max.push_back(tail_max);
    }

    for (std::size_t a = 0; a < curves.size(); ++a)
        for (std::size_t b = a + 1; b < curves.size(); ++b) {
            double dev = 0.0;
            for (std::size_t i = 0; i < xi_grid.size(); ++i)
                dev = std::max(dev, std::abs(curves[a][i] - curves[b][i]));
            report.deviations.push_back({n_values[a], n_values[b], dev});
        }
    return report;
}

double tail_population(const Trajectory& traj, double top_fraction) {
    if (!(top_fraction > 0.0) || !(top_fraction < 1.0))
        throw domain_error("tail_population: top_fraction must lie in (0, 1)");
    const BasisKind kind = traj.basis().kind;
    if (kind != BasisKind::Fock && kind != BasisKind::EvenFock)
        throw argument_error("tail_population: trajectory is not over a Fock-type basis");
    const std::size_t dim = traj.basis().dimension();
    const auto top = static_cast<std::size_t>(
        std::ceil(top_fraction * static_cast<double>(dim) - 1e-12));
    const std::size_t first = dim - std::max<std::size_t>(top, 1);

    double worst = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const Eigen::VectorXd pop = traj.populations_at(i);
        double acc = 0.0;
        for (std::size_t l = first; l < dim; ++l) acc += pop(static_cast<Eigen::Index>(l));
        worst = std::max(worst, acc);
    }
    return worst;
}

namespace {

void require_geometric(const std::vector<double>& steps) {
    if (steps.size() < 3)
        throw argument_error("timestep_refinement: need at least 3 step sizes");
    for (double s : steps)
        if (!(s > 0.0)) throw argument_error("timestep_refinement: steps must be > 0");
    const double r0 = steps[1] / steps[0];
    for (std::size_t i = 2; i < steps.size(); ++i) {
        const double r = steps[i] / steps[i - 1];
        if (std::abs(r - r0) > 1e-9 * std::abs(r0))
            throw argument_error(
                "timestep_refinement: steps must form a geometric progression");
    }
    if (std::abs(r0 - 1.0) < 1e-12)
        throw argument_error("timestep_refinement: steps must not be all equal");
}

// Final-population error between a run at the given step and a reference.
double final_pop_error(const Eigen::VectorXd& pop, const Eigen::VectorXd& ref) {
    return (pop - ref).cwiseAbs().maxCoeff();
}

}  // namespace

TimestepOrder timestep_refinement(const ModelSpec& model, double xi,
                                  const std::vector<double>& steps) {
    require_geometric(steps);
    if (!(xi > 0.0)) throw domain_error("timestep_refinement: xi must be > 0");

    // Sort descending so "error versus finest" reads naturally.
    std::vector<double> hs = steps;
    std::sort(hs.begin(), hs.end(), std::greater<double>());
    const double u = model.eta / xi;

    const auto run_final_pop = [&](double h) -> Eigen::VectorXd {
        switch (model.family) {
            case ModelFamily::TwoLevel:
            case ModelFamily::ThreeLevel: {
                const HermitianOperator ham = model.family == ModelFamily::TwoLevel
                                                  ? build_two_level(model.eta, u)
                                                  : build_three_level(model.eta, u);
                const BasisLabel basis = model.family == ModelFamily::TwoLevel
                                             ? BasisLabel{BasisKind::TwoLevel, 2}
                                             : BasisLabel{BasisKind::ThreeLevel, 3};
                PropagationOptions opts;
                opts.dt = h;
                const std::vector<double> grid{0.0, 2.0};
                const auto builder = [&](double) { return ham; };
                return propagate_linear(builder, QuantumState::ground(basis), grid, opts)
                    .populations_at(1);
            }
            case ModelFamily::FockEven: {
                // Wall-clock drive: Omega(t) from a constant-eta protocol,
                // pair amplitude eta*Omega(t)/4, fixed regulator strength.
                // The generator then changes along the run and the midpoint
                // rule's step dependence becomes measurable.
                const std::size_t n = std::min<std::size_t>(model.n_levels, 16);
                // Domain must stop short of the protocol's finite-time
                // singularity at 1/(eta*omega0).
                const DriveProtocol prot = DriveProtocol::constant_eta(
                    model.omega0, model.eta, {0.0, 0.9 / (model.eta * model.omega0)});
                const BasisLabel basis{BasisKind::EvenFock, n};
                const auto builder = [&](double t) {
                    const double w = prot.omega(t);
                    return project_even_subspace(build_fock_hamiltonian(
                        n, w, u, model.eta * w / 4.0, model.regulator));
                };
                PropagationOptions opts;
                opts.dt = h;
                const std::vector<double> grid{0.0, 0.75 / (model.eta * model.omega0)};
                return propagate_linear(builder, QuantumState::ground(basis), grid, opts)
                    .populations_at(1);
            }
            case ModelFamily::SpectralFlow: {
                SpectralFlowSystem sys;
                sys.n_modes = 2;
                sys.eta = model.eta;
                sys.u = u;
                sys.omega_n = [](std::size_t i, double t) {
                    return i == 0 ? 1.0 : 1.0 + 0.3 * std::sin(t);
                };
                sys.v_nm = [](std::size_t i, std::size_t j, double) {
                    return i == j ? cplx(0.0) : cplx(1.0);
                };
                PropagationOptions opts;
                opts.dt = h;
                const BasisLabel basis{BasisKind::Modes, 2};
                const std::vector<double> grid{0.0, 2.0};
                return propagate_spectral_flow(sys, QuantumState::ground(basis), grid, opts)
                    .populations_at(1);
            }
        }
        throw argument_error("timestep_refinement: unknown model family");
    };

    // Reference: one extra halving below the finest requested step.
    const Eigen::VectorXd ref = run_final_pop(hs.back() * 0.5);

    std::vector<double> xs, ys;
    constexpr double noise = 1e3 * std::numeric_limits<double>::epsilon();
    bool all_noise = true;
    for (double h : hs) {
        const double err = final_pop_error(run_final_pop(h), ref);
        if (err > noise) {
            all_noise = false;
            xs.push_back(h);
            ys.push_back(err);
        }
    }
    TimestepOrder out;
    if (all_noise || xs.size() < 2) {
        out.exact = true;
        return out;
    }
    out.slope = log_log_slope(xs, ys);
    return out;
}

}  // namespace amt
