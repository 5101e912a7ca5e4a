#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "amt/convergence.hpp"
#include "amt/crossover.hpp"
#include "amt/csv.hpp"
#include "amt/drive_protocol.hpp"
#include "amt/dynamics.hpp"

// Command implementations behind the CLI executable. Everything here is a
// plain function over a validated config so tests can drive the exact code
// paths the binary runs, without spawning processes.
namespace amt::cli {

// Process exit codes asserted by the test suite.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitComputation = 2;
inline constexpr int kExitIo = 3;

// Frequency protocol selection shared by several commands.
struct ProtocolConfig {
    std::string kind = "constant-eta";
    double omega0 = 1.0;     // [1/time]
    double slope = 0.1;      // linear-ramp rate [1/time^2]
    double lambda = 0.5;     // exponential-chirp exponent [1/time]
    double amplitude = 1.0;  // tanh-sweep amplitude [1/time]
    double width = 1.0;      // tanh-sweep width [time]
    double eta = 0.5;        // constant-eta target [dimensionless]
    double t0 = 0.0;         // domain start [time]
    double t1 = 1.0;         // domain end [time]

    void validate(std::vector<std::string>& problems) const;
    DriveProtocol build() const;
    void echo(CsvWriter& w) const;
};

struct GeometryConfig {
    ProtocolConfig protocol;
    std::size_t points = 200;  // sample count over [t0, t1]
    std::string out = "geometry.csv";
};

struct EvolveConfig {
    std::string family = "two-level";  // two-level|three-level|fock|fock-even
    double eta = 1.0;                  // coupling [dimensionless]
    double u = 0.0;                    // regulator strength [dimensionless]
    double omega0 = 1.0;               // spectral scale [1/time]
    std::size_t n_levels = 100;        // Fock cutoff [count]
    std::string regulator = "kerr-nn1";
    double t_final = 1.0;              // run length [time]
    std::size_t samples = 201;         // output samples [count]
    std::size_t max_pop_columns = 8;   // highest population column index
    bool use_protocol = false;         // fock only: drive Omega(t) by protocol
    ProtocolConfig protocol;
    std::string out = "trajectory.csv";
};

struct XiGridConfig {
    double min = 0.05;
    double max = 2.0;
    std::size_t count = 20;
    std::string spacing = "log";  // log | linear

    bool log_spaced() const { return spacing == "log"; }
    void validate(std::vector<std::string>& problems) const;
    std::vector<double> build() const;
    void echo(CsvWriter& w) const;
};

struct Fig1Config {
    XiGridConfig grid;
    double eta = 0.5;            // fixed coupling; u = eta/xi [dimensionless]
    std::size_t n_levels = 100;  // Fock cutoff [count]
    std::string regulator = "kerr-nn1";
    double tau_min = 0.5;        // averaging window start [local time]
    double tau_max = 5.0;        // averaging window end [local time]
    std::size_t check_n = 0;     // optional convergence recheck cutoff [count]
    std::string out_dir = ".";
};

struct ConvergeConfig {
    XiGridConfig grid;
    std::vector<std::size_t> n_values = {100, 200, 400};
    double eta = 0.5;
    std::string regulator = "kerr-nn1";
    double tau_min = 0.5;
    double tau_max = 5.0;
    bool measure_timestep_order = false;
    std::string out_dir = ".";
};

struct StabilityConfig {
    XiGridConfig grid;
    double eta = 0.5;     // [dimensionless]
    double omega0 = 1.0;  // [1/time]
    double band = 0.1;    // critical band around 1/4 [fraction]
    std::string out = "stability.csv";
};

// Runners: validate, compute, write outputs, print a short summary to `log`.
// Throw validation_error / io_error / computation errors; see guarded_run.
void run_geometry(const GeometryConfig& cfg, std::ostream& log);
void run_evolve(const EvolveConfig& cfg, std::ostream& log);
void run_fig1(const Fig1Config& cfg, std::ostream& log);
void run_converge(const ConvergeConfig& cfg, std::ostream& log);
void run_stability(const StabilityConfig& cfg, std::ostream& log);

// Maps exceptions from a runner onto the exit-code contract.
int guarded_run(const std::function<void()>& fn, std::ostream& err);

}  // namespace amt::cli
