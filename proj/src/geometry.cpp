#include "amt/geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace amt {

namespace {

void require_positive_omega(double w, const char* who) {
    if (!(w > 0.0)) {
        std::ostringstream os;
        os << who << ": frequency must be > 0 (got " << w << ")";
        throw domain_error(os.str());
    }
}

}  // namespace

double gaussian_vacuum_overlap(double omega1, double omega2) {
    require_positive_omega(omega1, "gaussian_vacuum_overlap");
    require_positive_omega(omega2, "gaussian_vacuum_overlap");
    return std::pow(omega1 * omega2, 0.25) * std::sqrt(2.0 / (omega1 + omega2));
}

double gaussian_vacuum_infidelity(double omega1, double omega2) {
    require_positive_omega(omega1, "gaussian_vacuum_infidelity");
    require_positive_omega(omega2, "gaussian_vacuum_infidelity");
    // 1 - overlap^2 = (sqrt(w1)-sqrt(w2))^2 / (w1+w2), no subtraction of
    // nearly equal O(1) quantities.
    const double d = std::sqrt(omega1) - std::sqrt(omega2);
    return d * d / (omega1 + omega2);
}

double fs_metric_tt_analytic(double omega, double omega_dot) {
    require_positive_omega(omega, "fs_metric_tt_analytic");
    if (omega_dot == 0.0) return 0.0;  // static state, exact zero
    const double r = omega_dot / omega;
    return 0.125 * r * r;
}

namespace {

// Single forward-stencil estimate (1 - |overlap|^2)/d^2 at step d.
double metric_stencil(const DriveProtocol& p, double t, double d) {
    const double w0 = p.omega(t);
    const double w1 = p.omega(t + d);
    return gaussian_vacuum_infidelity(w0, w1) / (d * d);
}

double default_delta(const DriveProtocol& p, double t) { return 1e-4 / p.omega(t); }

void require_stencil_in_domain(const DriveProtocol& p, double t, double delta,
                               const char* who) {
    const TimeInterval dom = p.domain();
    if (!dom.contains(t) || !dom.contains(t + delta) || !dom.contains(t - delta)) {
        std::ostringstream os;
        os << who << ": stencil t +/- " << delta << " around t = " << t
           << " leaves the protocol domain [" << dom.t0 << ", " << dom.t1 << "]";
        throw domain_error(os.str());
    }
}

}  // namespace

double fs_metric_tt_numeric(const DriveProtocol& p, double t, double delta) {
    if (delta <= 0.0) delta = default_delta(p, t);
    require_stencil_in_domain(p, t, delta, "fs_metric_tt_numeric");

    const double w0 = p.omega(t);
    const double inf_full = gaussian_vacuum_infidelity(w0, p.omega(t + delta));
    const double inf_half = gaussian_vacuum_infidelity(w0, p.omega(t + 0.5 * delta));

    // A nonzero infidelity below ~100 eps is dominated by rounding in the
    // frequency evaluations themselves; the quotient would be noise.
    constexpr double floor = 100.0 * std::numeric_limits<double>::epsilon();
    if ((inf_full != 0.0 && inf_full < floor) || (inf_half != 0.0 && inf_half < floor)) {
        std::ostringstream os;
        os << "fs_metric_tt_numeric: delta = " << delta
           << " is too small, the overlap infidelity (" << inf_full
           << ") is at rounding level; increase delta";
        throw step_size_error(os.str());
    }

    const double d_full = inf_full / (delta * delta);
    const double d_half = inf_half / (0.25 * delta * delta);
    // Leading error of the forward stencil is O(delta); one Richardson step
    // cancels it and leaves O(delta^2).
    return 2.0 * d_half - d_full;
}

double berry_connection_numeric(const DriveProtocol& p, double t, double delta) {
    if (delta <= 0.0) delta = default_delta(p, t);
    require_stencil_in_domain(p, t, delta, "berry_connection_numeric");

    const double w0 = p.omega(t);
    // i<psi(t)| (psi(t+d) - psi(t-d)) / (2d).  The overlaps are real, so the
    // estimate reduces to the difference of infidelities; analytically zero.
    const double of = gaussian_vacuum_infidelity(w0, p.omega(t + delta));
    const double ob = gaussian_vacuum_infidelity(w0, p.omega(t - delta));
    return (ob - of) / (2.0 * delta);
}

double qgt_tt(double omega, double eta) {
    require_positive_omega(omega, "qgt_tt");
    if (!(eta >= 0.0)) throw domain_error("qgt_tt: eta must be >= 0");
    return 0.125 * eta * eta * omega * omega;
}

double eta_from_qgt(double q_tt, double omega) {
    require_positive_omega(omega, "eta_from_qgt");
    if (!(q_tt >= 0.0)) throw domain_error("eta_from_qgt: q_tt must be >= 0");
    return std::sqrt(8.0 * q_tt) / omega;
}

FsSpeed fs_speed(double omega, double eta) {
    require_positive_omega(omega, "fs_speed");
    if (!(eta >= 0.0)) throw domain_error("fs_speed: eta must be >= 0");
    FsSpeed s;
    s.ds_dt = omega * eta / (2.0 * std::sqrt(2.0));
    s.ds_dtau_sq = 0.125 * eta * eta;
    return s;
}

std::vector<GeometrySample> geometry_trace(const DriveProtocol& p,
                                           const std::vector<double>& grid) {
    if (grid.empty()) throw argument_error("geometry_trace: empty time grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw argument_error("geometry_trace: time grid must be strictly increasing");

    std::vector<GeometrySample> out;
    out.reserve(grid.size());
    for (double t : grid) {
        GeometrySample s;
        s.t = t;
        s.omega = p.omega(t);
        s.eta = p.eta(t);
        s.g_tt = fs_metric_tt_analytic(s.omega, p.omega_dot(t));
        s.q_tt = qgt_tt(s.omega, s.eta);
        s.berry_connection = 0.0;  // exact in the real Gaussian gauge
        const FsSpeed v = fs_speed(s.omega, s.eta);
        s.fs_speed_dt = v.ds_dt;
        s.fs_speed_dtau_sq = v.ds_dtau_sq;
        out.push_back(s);
    }
    return out;
}

}  // namespace amt
