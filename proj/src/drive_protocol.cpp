#include "amt/drive_protocol.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace amt {

namespace {

// log(cosh(x)) without overflow for large |x|.
double log_cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

}  // namespace

std::string to_string(ProtocolKind k) {
    switch (k) {
        case ProtocolKind::Constant: return "constant";
        case ProtocolKind::LinearRamp: return "linear-ramp";
        case ProtocolKind::ExponentialChirp: return "exponential-chirp";
        case ProtocolKind::TanhSweep: return "tanh-sweep";
        case ProtocolKind::ConstantEta: return "constant-eta";
    }
    return "?";
}

bool TimeInterval::contains(double t) const {
    // Tiny slack so an endpoint computed through floating arithmetic
    // (t0 + n*dt) is not rejected for a 1-ulp overshoot.
    const double slack = 1e-12 * std::max({1.0, std::abs(t0), std::abs(t1)});
    return t >= t0 - slack && t <= t1 + slack;
}

DriveProtocol::DriveProtocol(ProtocolKind k, double omega0, double p1, double p2,
                             TimeInterval dom)
    : kind_(k), omega0_(omega0), p1_(p1), p2_(p2), dom_(dom) {}

DriveProtocol DriveProtocol::constant(double omega0, TimeInterval dom) {
    if (!(omega0 > 0.0)) throw domain_error("constant protocol: omega0 must be > 0");
    if (!(dom.t1 > dom.t0)) throw domain_error("constant protocol: empty time domain");
    return DriveProtocol(ProtocolKind::Constant, omega0, 0.0, 0.0, dom);
}

DriveProtocol DriveProtocol::linear_ramp(double omega0, double slope, TimeInterval dom) {
    if (!(omega0 > 0.0)) throw domain_error("linear ramp: omega0 must be > 0");
    if (!(dom.t1 > dom.t0)) throw domain_error("linear ramp: empty time domain");
    // Omega is linear, so positivity on the closed interval reduces to the endpoints.
    const double end = omega0 + slope * dom.length();
    if (!(end > 0.0))
        throw domain_error("linear ramp: Omega(t) crosses zero inside the time domain");
    return DriveProtocol(ProtocolKind::LinearRamp, omega0, slope, 0.0, dom);
}

DriveProtocol DriveProtocol::exponential_chirp(double omega0, double lambda, TimeInterval dom) {
    if (!(omega0 > 0.0)) throw domain_error("exponential chirp: omega0 must be > 0");
    if (!(dom.t1 > dom.t0)) throw domain_error("exponential chirp: empty time domain");
    if (!std::isfinite(lambda)) throw domain_error("exponential chirp: lambda must be finite");
    if (!(omega0 * std::exp(lambda * dom.length()) > 0.0))
        throw domain_error("exponential chirp: Omega underflows to zero inside the domain");
    return DriveProtocol(ProtocolKind::ExponentialChirp, omega0, lambda, 0.0, dom);
}

DriveProtocol DriveProtocol::tanh_sweep(double omega0, double amplitude, double width,
                                        TimeInterval dom) {
    if (!(omega0 > 0.0)) throw domain_error("tanh sweep: omega0 must be > 0");
    if (!(width > 0.0)) throw domain_error("tanh sweep: width must be > 0");
    if (!(dom.t1 > dom.t0)) throw domain_error("tanh sweep: empty time domain");
    // tanh is monotone, so the extreme values sit at the interval ends.
    const double lo = omega0 + amplitude * std::tanh(0.0);
    const double hi = omega0 + amplitude * std::tanh(dom.length() / width);
    if (!(lo > 0.0) || !(hi > 0.0))
        throw domain_error("tanh sweep: Omega(t) crosses zero inside the time domain");
    return DriveProtocol(ProtocolKind::TanhSweep, omega0, amplitude, width, dom);
}

DriveProtocol DriveProtocol::constant_eta(double omega0, double eta, TimeInterval dom) {
    if (!(omega0 > 0.0)) throw domain_error("constant-eta protocol: omega0 must be > 0");
    if (!(eta >= 0.0)) throw domain_error("constant-eta protocol: eta must be >= 0");
    if (!(dom.t1 > dom.t0)) throw domain_error("constant-eta protocol: empty time domain");
    if (eta > 0.0) {
        // Omega = omega0 / (1 - eta*omega0*(t-t0)) blows up at t-t0 = 1/(eta*omega0).
        const double t_sing = 1.0 / (eta * omega0);
        if (!(dom.length() < t_sing))
            throw domain_error(
                "constant-eta protocol: time domain reaches the finite-time singularity at "
                "t0 + 1/(eta*omega0)");
    }
    return DriveProtocol(ProtocolKind::ConstantEta, omega0, eta, 0.0, dom);
}

void DriveProtocol::require_in_domain(double t) const {
    if (!dom_.contains(t)) {
        std::ostringstream os;
        os << to_string(kind_) << " protocol: t = " << t << " outside time domain ["
           << dom_.t0 << ", " << dom_.t1 << "]";
        throw domain_error(os.str());
    }
}

double DriveProtocol::omega(double t) const {
    require_in_domain(t);
    const double s = t - dom_.t0;
    switch (kind_) {
        case ProtocolKind::Constant: return omega0_;
        case ProtocolKind::LinearRamp: return omega0_ + p1_ * s;
        case ProtocolKind::ExponentialChirp: return omega0_ * std::exp(p1_ * s);
        case ProtocolKind::TanhSweep: return omega0_ + p1_ * std::tanh(s / p2_);
        case ProtocolKind::ConstantEta: {
            const double den = 1.0 - p1_ * omega0_ * s;
            if (!(den > 0.0))
                throw domain_error("constant-eta protocol: evaluation past the singularity");
            return omega0_ / den;
        }
    }
    return 0.0;  // unreachable
}

double DriveProtocol::omega_dot(double t) const {
    require_in_domain(t);
    const double s = t - dom_.t0;
    switch (kind_) {
        case ProtocolKind::Constant: return 0.0;
        case ProtocolKind::LinearRamp: return p1_;
        case ProtocolKind::ExponentialChirp: return p1_ * omega0_ * std::exp(p1_ * s);
        case ProtocolKind::TanhSweep: {
            const double c = std::cosh(s / p2_);
            return p1_ / (p2_ * c * c);
        }
        case ProtocolKind::ConstantEta: {
            // dOmega/dt = eta * Omega^2 by construction.
            const double w = omega(t);
            return p1_ * w * w;
        }
    }
    return 0.0;  // unreachable
}

double DriveProtocol::eta(double t) const {
    if (kind_ == ProtocolKind::Constant) {
        require_in_domain(t);
        return 0.0;  // exact, not a rounded quotient
    }
    if (kind_ == ProtocolKind::ConstantEta) {
        require_in_domain(t);
        return p1_;  // constant by construction
    }
    const double w = omega(t);
    return std::abs(omega_dot(t)) / (w * w);
}

double DriveProtocol::local_time(double a, double b) const {
    if (!dom_.contains(a) || !dom_.contains(b)) {
        std::ostringstream os;
        os << to_string(kind_) << " protocol: local-time interval [" << a << ", " << b
           << "] leaves time domain [" << dom_.t0 << ", " << dom_.t1 << "]";
        throw domain_error(os.str());
    }
    const double sa = a - dom_.t0, sb = b - dom_.t0;
    switch (kind_) {
        case ProtocolKind::Constant:
            return omega0_ * (sb - sa);
        case ProtocolKind::LinearRamp:
            return omega0_ * (sb - sa) + 0.5 * p1_ * (sb * sb - sa * sa);
        case ProtocolKind::ExponentialChirp:
            if (p1_ == 0.0) return omega0_ * (sb - sa);
            return omega0_ / p1_ * (std::exp(p1_ * sb) - std::exp(p1_ * sa));
        case ProtocolKind::TanhSweep:
            return omega0_ * (sb - sa) + p1_ * p2_ * (log_cosh(sb / p2_) - log_cosh(sa / p2_));
        case ProtocolKind::ConstantEta: {
            if (p1_ == 0.0) return omega0_ * (sb - sa);
            const double da = 1.0 - p1_ * omega0_ * sa;
            const double db = 1.0 - p1_ * omega0_ * sb;
            if (!(da > 0.0) || !(db > 0.0))
                throw domain_error("constant-eta protocol: local time past the singularity");
            return std::log(da / db) / p1_;
        }
    }
    return 0.0;  // unreachable
}

std::string DriveProtocol::describe() const {
    std::ostringstream os;
    os << to_string(kind_) << " omega0=" << omega0_;
    switch (kind_) {
        case ProtocolKind::Constant: break;
        case ProtocolKind::LinearRamp: os << " slope=" << p1_; break;
        case ProtocolKind::ExponentialChirp: os << " lambda=" << p1_; break;
        case ProtocolKind::TanhSweep: os << " amplitude=" << p1_ << " width=" << p2_; break;
        case ProtocolKind::ConstantEta: os << " eta=" << p1_; break;
    }
    os << " t in [" << dom_.t0 << ", " << dom_.t1 << "]";
    return os.str();
}

}  // namespace amt
