#pragma once

#include <cstddef>
#include <string>

#include "amt/errors.hpp"

namespace amt {

// Frequency protocol families. Every protocol is an analytic curve
// Omega(t) > 0 with an exact derivative; nothing is sampled.
enum class ProtocolKind { Constant, LinearRamp, ExponentialChirp, TanhSweep, ConstantEta };

std::string to_string(ProtocolKind k);

// Closed time interval on which a protocol is defined.
struct TimeInterval {
    double t0 = 0.0;
    double t1 = 1.0;
    double length() const { return t1 - t0; }
    bool contains(double t) const;
};

// A parameterized frequency trajectory Omega(t) with analytic derivative.
// Immutable after construction; construction rejects any parameter set whose
// Omega would touch zero inside the domain, so evaluation never divides by 0.
//
// Units: natural units (hbar = m = 1); omega carries 1/time, the
// non-adiabaticity parameter eta = |dOmega/dt| / Omega^2 is dimensionless.
class DriveProtocol {
public:
    // Omega(t) = omega0
    static DriveProtocol constant(double omega0, TimeInterval dom);
    // Omega(t) = omega0 + slope * (t - t0)
    static DriveProtocol linear_ramp(double omega0, double slope, TimeInterval dom);
    // Omega(t) = omega0 * exp(lambda * (t - t0))
    static DriveProtocol exponential_chirp(double omega0, double lambda, TimeInterval dom);
    // Omega(t) = omega0 + amplitude * tanh((t - t0)/width), width > 0
    static DriveProtocol tanh_sweep(double omega0, double amplitude, double width,
                                    TimeInterval dom);
    // Omega(t) = omega0 / (1 - eta * omega0 * (t - t0)); constant
    // non-adiabaticity eta >= 0; domain must end before the singularity.
    static DriveProtocol constant_eta(double omega0, double eta, TimeInterval dom);

    double omega(double t) const;      // Omega(t)  [1/time]
    double omega_dot(double t) const;  // dOmega/dt [1/time^2], analytic
    double eta(double t) const;        // |omega_dot| / omega^2, dimensionless

    // Dimensionless local time tau = integral of Omega(t) dt over [a, b].
    // Closed form for every kind.
    double local_time(double a, double b) const;

    ProtocolKind kind() const { return kind_; }
    TimeInterval domain() const { return dom_; }
    double omega0() const { return omega0_; }

    // Human-readable parameter summary for output metadata.
    std::string describe() const;

private:
    DriveProtocol(ProtocolKind k, double omega0, double p1, double p2, TimeInterval dom);
    void require_in_domain(double t) const;

    ProtocolKind kind_;
    double omega0_;
    double p1_ = 0.0;  // slope / lambda / amplitude / eta
    double p2_ = 0.0;  // width (TanhSweep only)
    TimeInterval dom_;
};

}  // namespace amt
