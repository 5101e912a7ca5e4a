#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "amt/drive_protocol.hpp"
#include "amt/errors.hpp"

namespace amt {

using cplx = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

// Which basis a state vector is expressed in. For Fock the indices are the
// occupation numbers 0..n_levels-1; for EvenFock index k labels |2k> inside
// a full cutoff of n_levels; Modes is a flat mode index (spectral flow).
enum class BasisKind { TwoLevel, ThreeLevel, Fock, EvenFock, Modes };

struct BasisLabel {
    BasisKind kind = BasisKind::TwoLevel;
    std::size_t n_levels = 2;  // full Fock cutoff (Fock/EvenFock) or mode count

    std::size_t dimension() const;
    // Physical occupation number of basis index i (EvenFock: i -> 2i).
    std::size_t fock_index(std::size_t i) const;
    std::string name() const;
};

// Normalized complex amplitude vector over a labeled basis.
class QuantumState {
public:
    QuantumState(VectorXc amplitudes, BasisLabel basis);

    // Lowest basis state |0> of the given basis.
    static QuantumState ground(BasisLabel basis);

    const VectorXc& amplitudes() const { return amps_; }
    const BasisLabel& basis() const { return basis_; }
    std::size_t dimension() const { return static_cast<std::size_t>(amps_.size()); }
    double norm() const { return amps_.norm(); }

private:
    VectorXc amps_;
    BasisLabel basis_;
};

// Dense Hermitian matrix; construction verifies Hermiticity to
// 1e-12 * max|entry|.
class HermitianOperator {
public:
    explicit HermitianOperator(MatrixXc m);

    const MatrixXc& matrix() const { return mat_; }
    std::size_t dimension() const { return static_cast<std::size_t>(mat_.rows()); }
    double max_abs_entry() const;

private:
    MatrixXc mat_;
};

// Sampled unitary evolution record: times, the state at each time, and
// accessors for the derived observables (norm, populations, occupations).
class Trajectory {
public:
    // states: one column per time. norm_tolerance bounds |norm - 1| at every
    // sample; violation throws integration_error.
    Trajectory(std::vector<double> times, MatrixXc states, BasisLabel basis,
               double norm_tolerance = 1e-9);

    std::size_t size() const { return times_.size(); }
    const std::vector<double>& times() const { return times_; }
    const BasisLabel& basis() const { return basis_; }

    double time_at(std::size_t i) const { return times_.at(i); }
    QuantumState state_at(std::size_t i) const;
    double norm_at(std::size_t i) const;
    // |amplitude|^2 of basis index `level` at sample i.
    double population_at(std::size_t i, std::size_t level) const;
    Eigen::VectorXd populations_at(std::size_t i) const;
    // Mean physical occupation: sum_n n |a_n|^2 with the EvenFock index map
    // applied; for few-level bases this is the mean level index.
    double mean_occupation_at(std::size_t i) const;

private:
    std::vector<double> times_;
    MatrixXc states_;  // dimension x n_times
    BasisLabel basis_;
};

// Classical oscillator record; energy E = (v^2 + Omega^2 x^2)/2 and
// adiabatic invariant J = E/Omega at every sample.
struct ClassicalTrajectory {
    std::vector<double> times;
    std::vector<double> x;
    std::vector<double> v;
    std::vector<double> energy;
    std::vector<double> adiabatic_invariant;
};

// --- Hamiltonian builders ---------------------------------------------------

// Minimal regulated two-level model [[0, eta], [eta, u]].
HermitianOperator build_two_level(double eta, double u);

// Regulated three-level model [[0, eta, 0], [eta, 0, eta/sqrt(2)],
// [0, eta/sqrt(2), u]]; only the top level carries the detuning u.
HermitianOperator build_three_level(double eta, double u);

// Occupation-dependent diagonal of the nonlinear bosonic Hamiltonian.
enum class Regulator {
    KerrNN1,   // u * n(n-1)
    QuarticN2  // u * n^2
};

std::string to_string(Regulator r);

// Pair-driven oscillator with nonlinear regulator on a Fock cutoff of
// n_levels states: diagonal omega*n + u*r(n), pair drive
// <n+2|H|n> = g*sqrt((n+1)(n+2)). Couples only equal-parity states.
HermitianOperator build_fock_hamiltonian(std::size_t n_levels, double omega, double u,
                                         double g, Regulator regulator);

// Restriction of a parity-preserving Fock operator to the even-occupation
// subspace {|0>, |2>, ...}. Rejects operators with even<->odd coupling
// above 1e-14 * max|entry|.
HermitianOperator project_even_subspace(const HermitianOperator& h);

// --- Propagators -------------------------------------------------------------

struct PropagationOptions {
    // Fixed integrator substep; 0 selects the default rule
    // dt = 0.05 / max|H| (and dt <= 0.01/omega_scale when omega_scale > 0).
    double dt = 0.0;
    double omega_scale = 0.0;
    // Bound on |norm - 1| at every sample; 0 selects the per-propagator
    // default (1e-9 for unitary propagation, 1e-8 for the nonlinear flow).
    double norm_tolerance = 0.0;
};

// Unitary propagation of i d psi/dt = H(t) psi with one exact Hermitian
// exponential per substep, H evaluated at the substep midpoint. Sampled at
// the given grid times; the first grid time carries psi0.
Trajectory propagate_linear(const std::function<HermitianOperator(double)>& h_of_t,
                            const QuantumState& psi0, const std::vector<double>& t_grid,
                            const PropagationOptions& opts = {});

// Constant-generator special case: one spectral decomposition, every sample
// evaluated exactly (the midpoint rule is exact when H does not depend on t).
Trajectory propagate_constant(const HermitianOperator& h, const QuantumState& psi0,
                              const std::vector<double>& t_grid,
                              const PropagationOptions& opts = {});

// --- Nonlinear spectral flow --------------------------------------------------

// i da_n/dt = omega_n(t) a_n + eta * sum_m V_nm(t) a_m - u |a_n|^2 a_n.
// V must be Hermitian at all times; eta is an independent coupling strength
// here (identifying it with a protocol's |dOmega/dt|/Omega^2 is the
// caller's choice).
struct SpectralFlowSystem {
    std::size_t n_modes = 2;
    std::function<double(std::size_t, double)> omega_n;
    std::function<cplx(std::size_t, std::size_t, double)> v_nm;
    double eta = 0.0;
    double u = 0.0;
};

// Classic fixed-step fourth-order Runge-Kutta integration of the flow; the
// flow is norm-preserving (Hermitian V, real nonlinear phase), so norm drift
// beyond the tolerance aborts with a suggestion to reduce the step.
Trajectory propagate_spectral_flow(const SpectralFlowSystem& sys, const QuantumState& a0,
                                   const std::vector<double>& t_grid,
                                   const PropagationOptions& opts = {});

// --- Classical oscillator ------------------------------------------------------

struct ClassicalOptions {
    double dt = 0.0;  // 0: auto, fastest period / steps_per_period
    double steps_per_period = 1024.0;
};

// Fourth-order symplectic integration of x'' + Omega^2(t) x = 0.
ClassicalTrajectory evolve_classical_oscillator(const DriveProtocol& p, double x0, double v0,
                                                const std::vector<double>& t_grid,
                                                const ClassicalOptions& opts = {});

// --- Observables ---------------------------------------------------------------

// Mean occupation sum_n n |a_n|^2 over the physical Fock index
// (EvenFock index k counts as n = 2k). Fock-type bases only.
double mean_occupation(const QuantumState& s);

// P2 / (P1 + P2) for a three-level trajectory at a sampled time t;
// undefined when P1 + P2 vanishes (below 1e-15).
double leakage_fraction(const Trajectory& traj, double t);

}  // namespace amt
