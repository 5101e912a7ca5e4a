#pragma once

#include <vector>

#include "amt/drive_protocol.hpp"
#include "amt/errors.hpp"

namespace amt {

// Per-time record of the quantum-geometric diagnostics of a drive protocol.
struct GeometrySample {
    double t = 0.0;                 // time
    double omega = 0.0;             // Omega(t)            [1/time]
    double eta = 0.0;               // |dOmega/dt|/Omega^2 [dimensionless]
    double g_tt = 0.0;              // Fubini-Study metric [1/time^2]
    double q_tt = 0.0;              // geometric tensor tt component, equals g_tt here
    double berry_connection = 0.0;  // exactly 0 in the real Gaussian gauge
    double fs_speed_dt = 0.0;       // ds/dt = Omega*eta/(2*sqrt(2)) [1/time]
    double fs_speed_dtau_sq = 0.0;  // (ds/dtau)^2 = eta^2/8 [dimensionless]
};

// Overlap <psi_w1|psi_w2> of two oscillator ground states (Gaussian vacua):
// (w1*w2)^(1/4) * sqrt(2/(w1+w2)). Symmetric, in (0,1], equal to 1 iff w1==w2.
double gaussian_vacuum_overlap(double omega1, double omega2);

// Infidelity 1 - overlap^2 in a cancellation-free form,
// (sqrt(w1)-sqrt(w2))^2/(w1+w2); exact 0 when w1 == w2.
double gaussian_vacuum_infidelity(double omega1, double omega2);

// Closed-form metric component g_tt = (1/8) (omega_dot/omega)^2.
double fs_metric_tt_analytic(double omega, double omega_dot);

// Finite-difference metric from ground-state overlaps:
//   D(d) = (1 - |<psi(t)|psi(t+d)>|^2) / d^2,
// refined by one Richardson step, 2*D(d/2) - D(d), which cancels the
// leading O(d) error and leaves O(d^2). Requires t +/- delta inside the
// protocol domain. delta <= 0 selects the default step 1e-4/Omega(t).
// Throws step_size_error when delta is so small the infidelity is pure
// rounding noise (the caller should enlarge delta).
double fs_metric_tt_numeric(const DriveProtocol& p, double t, double delta = 0.0);

// Central-difference estimate of the Berry connection i<psi|d_t psi> in the
// real Gaussian gauge. Analytically zero; the returned magnitude is the
// numerical residue and stays below 1e-8 * Omega(t) for smooth protocols.
double berry_connection_numeric(const DriveProtocol& p, double t, double delta = 0.0);

// Geometric tensor tt component Q_tt = eta^2 * omega^2 / 8 (= g_tt).
double qgt_tt(double omega, double eta);

// Inverse map eta = sqrt(8 * q_tt) / omega; round-trips with qgt_tt.
double eta_from_qgt(double q_tt, double omega);

struct FsSpeed {
    double ds_dt = 0.0;        // [1/time]
    double ds_dtau_sq = 0.0;   // [dimensionless]
};

// Fubini-Study evolution speed in wall-clock time and squared speed in
// local time: ds/dt = omega*eta/(2*sqrt(2)), (ds/dtau)^2 = eta^2/8.
FsSpeed fs_speed(double omega, double eta);

// Batched evaluation over a strictly increasing grid inside the domain.
std::vector<GeometrySample> geometry_trace(const DriveProtocol& p,
                                           const std::vector<double>& grid);

}  // namespace amt
