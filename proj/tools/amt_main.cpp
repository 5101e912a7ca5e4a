// amt: drive-geometry diagnostics and regulated-oscillator sweeps.
//
// Subcommands: geometry, evolve, fig1, converge, stability. Every flag can
// also come from an INI config file (--config) with one [section] per
// subcommand; command-line values win over the file, the file wins over the
// built-in defaults.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "amt/cli_runs.hpp"

namespace {

using namespace amt::cli;

// kind_flag: the flag selecting the protocol kind; pre: prefix for the
// numeric parameter flags ("--" or "--protocol-").
void add_protocol_options(CLI::App& sub, ProtocolConfig& p, const std::string& kind_flag,
                          const std::string& pre) {
    sub.add_option(kind_flag, p.kind,
                   "frequency protocol: constant, linear-ramp, exponential-chirp, "
                   "tanh-sweep, constant-eta")
        ->capture_default_str();
    sub.add_option(pre + "omega0", p.omega0, "initial frequency Omega(t0) [1/time]")
        ->capture_default_str();
    sub.add_option(pre + "slope", p.slope, "linear-ramp rate [1/time^2]")
        ->capture_default_str();
    sub.add_option(pre + "lambda", p.lambda, "exponential-chirp exponent [1/time]")
        ->capture_default_str();
    sub.add_option(pre + "amplitude", p.amplitude, "tanh-sweep amplitude [1/time]")
        ->capture_default_str();
    sub.add_option(pre + "width", p.width, "tanh-sweep width [time]")
        ->capture_default_str();
    sub.add_option(pre + "eta", p.eta, "constant-eta target [dimensionless]")
        ->capture_default_str();
    sub.add_option(pre + "t0", p.t0, "domain start [time]")->capture_default_str();
    sub.add_option(pre + "t1", p.t1, "domain end [time]")->capture_default_str();
}

void add_xi_grid_options(CLI::App& sub, XiGridConfig& g) {
    sub.add_option("--xi-min", g.min, "smallest xi = eta/u [dimensionless]")
        ->capture_default_str();
    sub.add_option("--xi-max", g.max, "largest xi [dimensionless]")->capture_default_str();
    sub.add_option("--xi-count", g.count, "number of xi grid points [count]")
        ->capture_default_str();
    sub.add_option("--xi-spacing", g.spacing, "xi grid spacing: log or linear")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "amt: quantum-geometric drive diagnostics and regulated parametric-oscillator "
        "sweeps"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "INI config file; sections [geometry], [evolve], [fig1], [converge], "
                   "[stability] mirror the flags");

    GeometryConfig geo;
    CLI::App* geometry = app.add_subcommand(
        "geometry", "sample Omega, eta and the drive-path metric along a protocol");
    geometry->configurable();
    geometry->fallthrough();
    add_protocol_options(*geometry, geo.protocol, "--protocol", "--");
    geometry->add_option("--points", geo.points, "samples over [t0, t1] [count]")
        ->capture_default_str();
    geometry->add_option("--out", geo.out, "output CSV path")->capture_default_str();

    EvolveConfig evo;
    CLI::App* evolve = app.add_subcommand(
        "evolve", "propagate one model from its ground state and record the trajectory");
    evolve->configurable();
    evolve->fallthrough();
    evolve->add_option("--family", evo.family,
                       "model family: two-level, three-level, fock, fock-even")
        ->capture_default_str();
    evolve->add_option("--eta", evo.eta, "coupling strength [dimensionless]")
        ->capture_default_str();
    evolve->add_option("--u", evo.u, "regulator strength [dimensionless]")
        ->capture_default_str();
    evolve->add_option("--omega0", evo.omega0, "oscillator frequency [1/time]")
        ->capture_default_str();
    evolve->add_option("--n-levels", evo.n_levels, "Fock cutoff [count]")
        ->capture_default_str();
    evolve->add_option("--regulator", evo.regulator,
                       "nonlinearity form: kerr-nn1 (n(n-1)) or quartic-n2 (n^2)")
        ->capture_default_str();
    evolve->add_option("--t-final", evo.t_final, "run length [time]")->capture_default_str();
    evolve->add_option("--samples", evo.samples, "output rows [count]")
        ->capture_default_str();
    evolve->add_option("--pop-columns", evo.max_pop_columns,
                       "highest population column index [count]")
        ->capture_default_str();
    evolve->add_flag("--drive", evo.use_protocol,
                     "fock families: drive Omega(t) by the protocol-* options instead of "
                     "holding it at omega0");
    add_protocol_options(*evolve, evo.protocol, "--protocol-kind", "--protocol-");
    evolve->add_option("--out", evo.out, "output CSV path")->capture_default_str();

    Fig1Config fig;
    CLI::App* fig1 = app.add_subcommand(
        "fig1",
        "normalized activation crossover for the two-level, three-level and even-Fock "
        "models on one xi grid");
    fig1->configurable();
    fig1->fallthrough();
    add_xi_grid_options(*fig1, fig.grid);
    fig1->add_option("--eta", fig.eta, "fixed coupling; u = eta/xi [dimensionless]")
        ->capture_default_str();
    fig1->add_option("--n-levels", fig.n_levels, "Fock cutoff [count]")
        ->capture_default_str();
    fig1->add_option("--regulator", fig.regulator,
                     "nonlinearity form: kerr-nn1 or quartic-n2")
        ->capture_default_str();
    fig1->add_option("--tau-min", fig.tau_min, "averaging window start [local time]")
        ->capture_default_str();
    fig1->add_option("--tau-max", fig.tau_max, "averaging window end [local time]")
        ->capture_default_str();
    fig1->add_option("--check-n", fig.check_n,
                     "re-run the Fock curve at this cutoff and report the max deviation "
                     "(0 = skip) [count]")
        ->capture_default_str();
    fig1->add_option("--out-dir", fig.out_dir, "directory for the CSVs and the SVG plot")
        ->capture_default_str();

    ConvergeConfig cnv;
    CLI::App* converge = app.add_subcommand(
        "converge", "truncation-independence study of the even-Fock activation sweep");
    converge->configurable();
    converge->fallthrough();
    add_xi_grid_options(*converge, cnv.grid);
    converge->add_option("--n-values", cnv.n_values,
                         "Fock cutoffs to compare, non-decreasing, each >= 20 [count]")
        ->capture_default_str();
    converge->add_option("--eta", cnv.eta, "fixed coupling [dimensionless]")
        ->capture_default_str();
    converge->add_option("--regulator", cnv.regulator,
                         "nonlinearity form: kerr-nn1 or quartic-n2")
        ->capture_default_str();
    converge->add_option("--tau-min", cnv.tau_min, "averaging window start [local time]")
        ->capture_default_str();
    converge->add_option("--tau-max", cnv.tau_max, "averaging window end [local time]")
        ->capture_default_str();
    converge->add_flag("--timestep-order", cnv.measure_timestep_order,
                       "also measure the wall-clock stepper's refinement order");
    converge->add_option("--out-dir", cnv.out_dir, "directory for the report files")
        ->capture_default_str();

    StabilityConfig stab;
    CLI::App* stability = app.add_subcommand(
        "stability", "analytic saturation/stability chain over a xi grid");
    stability->configurable();
    stability->fallthrough();
    add_xi_grid_options(*stability, stab.grid);
    stability->add_option("--eta", stab.eta, "bare coupling [dimensionless]")
        ->capture_default_str();
    stability->add_option("--omega0", stab.omega0, "spectral scale [1/time]")
        ->capture_default_str();
    stability->add_option("--band", stab.band,
                          "half-width of the critical band around xi = 1/4 [fraction]")
        ->capture_default_str();
    stability->add_option("--out", stab.out, "output CSV path")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exits 0
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    if (*geometry)
        return guarded_run([&] { run_geometry(geo, std::cout); }, std::cerr);
    if (*evolve) return guarded_run([&] { run_evolve(evo, std::cout); }, std::cerr);
    if (*fig1) return guarded_run([&] { run_fig1(fig, std::cout); }, std::cerr);
    if (*converge) return guarded_run([&] { run_converge(cnv, std::cout); }, std::cerr);
    if (*stability) return guarded_run([&] { run_stability(stab, std::cout); }, std::cerr);
    std::cerr << "no subcommand selected\n";
    return kExitValidation;
}
