#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "amt/drive_protocol.hpp"
#include "doctest.h"

using namespace amt;

namespace {

// Adaptive Simpson quadrature, used as an oracle for the closed-form
// local_time integrals. Independent of the implementation under test.
double simpson(const std::function<double(double)>& f, double a, double b) {
    const double m = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = simpson(f, a, m);
    const double right = simpson(f, m, b);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, right, 0.5 * tol, depth - 1);
}

double quad(const std::function<double(double)>& f, double a, double b) {
    return adaptive_simpson(f, a, b, simpson(f, a, b), 1e-12 * std::max(1.0, b - a), 48);
}

// One random protocol of each kind with kind-valid parameters.
DriveProtocol random_protocol(ProtocolKind k, std::mt19937& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double omega0 = 0.3 + 5.0 * u01(rng);
    const double T = 0.5 + 3.0 * u01(rng);
    const TimeInterval dom{0.0, T};
    switch (k) {
        case ProtocolKind::Constant:
            return DriveProtocol::constant(omega0, dom);
        case ProtocolKind::LinearRamp: {
            // Keep Omega positive on [0, T]: slope > -omega0/T with margin.
            const double slope = -0.8 * omega0 / T + 3.0 * u01(rng);
            return DriveProtocol::linear_ramp(omega0, slope, dom);
        }
        case ProtocolKind::ExponentialChirp:
            return DriveProtocol::exponential_chirp(omega0, -1.5 + 3.0 * u01(rng), dom);
        case ProtocolKind::TanhSweep: {
            const double amplitude = -0.8 * omega0 + 2.0 * u01(rng);
            return DriveProtocol::tanh_sweep(omega0, amplitude, 0.2 + 2.0 * u01(rng), dom);
        }
        case ProtocolKind::ConstantEta: {
            const double eta = u01(rng);
            // Stay clear of the singularity at 1/(eta*omega0).
            const double t_max = 0.8 / (std::max(eta, 0.2) * omega0);
            return DriveProtocol::constant_eta(omega0, eta, {0.0, std::min(T, t_max)});
        }
    }
    throw std::logic_error("unreachable");
}

const ProtocolKind kAllKinds[] = {ProtocolKind::Constant, ProtocolKind::LinearRamp,
                                  ProtocolKind::ExponentialChirp, ProtocolKind::TanhSweep,
                                  ProtocolKind::ConstantEta};

}  // namespace

TEST_SUITE("drive_protocol") {

TEST_CASE("omega evaluation matches the closed forms") {
    CHECK(DriveProtocol::constant(2.0, {0.0, 10.0}).omega(5.0) == doctest::Approx(2.0));
    CHECK(DriveProtocol::linear_ramp(1.0, 0.1, {0.0, 10.0}).omega(10.0) ==
          doctest::Approx(2.0));
    // Omega0/(1 - eta*Omega0*t): 1/(1 - 0.5) = 2
    CHECK(DriveProtocol::constant_eta(1.0, 0.5, {0.0, 1.5}).omega(1.0) ==
          doctest::Approx(2.0));
    CHECK(DriveProtocol::exponential_chirp(1.0, 1.0, {0.0, 1.0}).omega(1.0) ==
          doctest::Approx(std::exp(1.0)));
    CHECK(DriveProtocol::tanh_sweep(2.0, 1.0, 0.5, {0.0, 3.0}).omega(3.0) ==
          doctest::Approx(2.0 + std::tanh(6.0)));
}

TEST_CASE("eta: constant protocol is exactly zero, constant-eta exactly eta") {
    const auto c = DriveProtocol::constant(3.0, {0.0, 4.0});
    for (double t : {0.0, 1.3, 4.0}) CHECK(c.eta(t) == 0.0);

    const auto ce = DriveProtocol::constant_eta(2.0, 0.3, {0.0, 1.0});
    for (double t : {0.0, 0.31, 0.77, 1.0})
        CHECK(ce.eta(t) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("eta is |omega_dot|/omega^2 on a sample point") {
    // Chirp with lambda=2, omega0=2: at t=0, omega=2, omega_dot=4 -> eta=1.
    const auto p = DriveProtocol::exponential_chirp(2.0, 2.0, {0.0, 1.0});
    CHECK(p.omega_dot(0.0) == doctest::Approx(4.0));
    CHECK(p.eta(0.0) == doctest::Approx(1.0));
}

TEST_CASE("analytic derivative agrees with central differences") {
    std::mt19937 rng(12345);
    for (ProtocolKind k : kAllKinds) {
        for (int draw = 0; draw < 100; ++draw) {
            const DriveProtocol p = random_protocol(k, rng);
            const TimeInterval dom = p.domain();
            const double span = dom.length();
            const double h = 1e-6 * span;
            for (int i = 1; i <= 20; ++i) {
                const double t = dom.t0 + span * i / 21.0;
                const double fd = (p.omega(t + h) - p.omega(t - h)) / (2.0 * h);
                const double exact = p.omega_dot(t);
                // Below Omega/span the stencil is dominated by rounding in
                // omega itself, so an absolute floor at that scale is the
                // honest comparison; above it the check is fully relative.
                const double scale = std::max(std::abs(exact), p.omega(t) / span);
                CHECK(std::abs(fd - exact) / scale < 1e-6);
            }
        }
    }
}

TEST_CASE("local_time closed forms: spot values") {
    CHECK(DriveProtocol::constant(2.0, {0.0, 5.0}).local_time(0.0, 3.0) ==
          doctest::Approx(6.0));
    CHECK(DriveProtocol::linear_ramp(1.0, 1.0, {0.0, 2.0}).local_time(0.0, 2.0) ==
          doctest::Approx(4.0));
    CHECK(DriveProtocol::exponential_chirp(1.0, 1.0, {0.0, 1.0}).local_time(0.0, 1.0) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("local_time matches adaptive quadrature of omega") {
    std::mt19937 rng(777);
    for (ProtocolKind k : kAllKinds) {
        for (int draw = 0; draw < 10; ++draw) {
            const DriveProtocol p = random_protocol(k, rng);
            const TimeInterval dom = p.domain();
            const double a = dom.t0 + 0.1 * dom.length();
            const double b = dom.t1 - 0.05 * dom.length();
            const double oracle = quad([&](double t) { return p.omega(t); }, a, b);
            CHECK(p.local_time(a, b) == doctest::Approx(oracle).epsilon(1e-10));
        }
    }
}

TEST_CASE("local_time is additive over subintervals") {
    std::mt19937 rng(31);
    for (ProtocolKind k : kAllKinds) {
        const DriveProtocol p = random_protocol(k, rng);
        const TimeInterval dom = p.domain();
        const double t0 = dom.t0, t2 = dom.t1;
        const double t1 = t0 + 0.37 * (t2 - t0);
        const double whole = p.local_time(t0, t2);
        const double split = p.local_time(t0, t1) + p.local_time(t1, t2);
        CHECK(std::abs(whole - split) <= 1e-12 * std::max(1.0, std::abs(whole)));
    }
}

TEST_CASE("construction rejects non-positive frequencies") {
    CHECK_THROWS_AS(DriveProtocol::constant(0.0, {0.0, 1.0}), domain_error);
    CHECK_THROWS_AS(DriveProtocol::constant(-2.0, {0.0, 1.0}), domain_error);
    // Ramp crossing zero inside the domain.
    CHECK_THROWS_AS(DriveProtocol::linear_ramp(1.0, -1.0, {0.0, 2.0}), domain_error);
    // Tanh sweep dipping below zero.
    CHECK_THROWS_AS(DriveProtocol::tanh_sweep(1.0, -2.0, 0.3, {0.0, 5.0}), domain_error);
    CHECK_THROWS_AS(DriveProtocol::tanh_sweep(1.0, 0.5, 0.0, {0.0, 1.0}), domain_error);
    // Empty/inverted domain.
    CHECK_THROWS_AS(DriveProtocol::constant(1.0, {1.0, 1.0}), domain_error);
}

TEST_CASE("constant-eta domain must stop before the singularity") {
    // Singularity at t = 1/(0.5*1) = 2.
    CHECK_THROWS_AS(DriveProtocol::constant_eta(1.0, 0.5, {0.0, 2.0}), domain_error);
    CHECK_THROWS_AS(DriveProtocol::constant_eta(1.0, 0.5, {0.0, 3.0}), domain_error);
    CHECK_NOTHROW(DriveProtocol::constant_eta(1.0, 0.5, {0.0, 1.9}));
    CHECK_THROWS_AS(DriveProtocol::constant_eta(1.0, -0.1, {0.0, 1.0}), domain_error);
    // eta = 0 degenerates to a constant protocol, any domain.
    CHECK_NOTHROW(DriveProtocol::constant_eta(1.0, 0.0, {0.0, 100.0}));
}

TEST_CASE("evaluation outside the domain throws") {
    const auto p = DriveProtocol::linear_ramp(1.0, 0.5, {0.0, 2.0});
    CHECK_THROWS_AS(p.omega(-0.1), domain_error);
    CHECK_THROWS_AS(p.omega(2.1), domain_error);
    CHECK_THROWS_AS(p.eta(3.0), domain_error);
    CHECK_THROWS_AS(p.local_time(0.0, 2.5), domain_error);
    CHECK_THROWS_AS(p.local_time(-1.0, 1.0), domain_error);
}

TEST_CASE("describe names the kind") {
    const auto p = DriveProtocol::tanh_sweep(2.0, 0.5, 1.0, {0.0, 1.0});
    CHECK(p.describe().find("tanh-sweep") != std::string::npos);
    CHECK(to_string(p.kind()) == "tanh-sweep");
}

}  // TEST_SUITE
