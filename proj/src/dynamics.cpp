#include "amt/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#if defined(AMT_HAVE_LAPACKE)
#include <lapacke.h>
#endif

namespace amt {

// --- basis / state / operator -------------------------------------------------

std::size_t BasisLabel::dimension() const {
    switch (kind) {
        case BasisKind::TwoLevel: return 2;
        case BasisKind::ThreeLevel: return 3;
        case BasisKind::Fock: return n_levels;
        case BasisKind::EvenFock: return (n_levels + 1) / 2;
        case BasisKind::Modes: return n_levels;
    }
    return 0;  // unreachable
}

std::size_t BasisLabel::fock_index(std::size_t i) const {
    return kind == BasisKind::EvenFock ? 2 * i : i;
}

std::string BasisLabel::name() const {
    switch (kind) {
        case BasisKind::TwoLevel: return "two-level";
        case BasisKind::ThreeLevel: return "three-level";
        case BasisKind::Fock: return "fock";
        case BasisKind::EvenFock: return "even-fock";
        case BasisKind::Modes: return "modes";
    }
    return "?";
}

QuantumState::QuantumState(VectorXc amplitudes, BasisLabel basis)
    : amps_(std::move(amplitudes)), basis_(basis) {
    if (static_cast<std::size_t>(amps_.size()) != basis_.dimension())
        throw argument_error("QuantumState: amplitude count " + std::to_string(amps_.size()) +
                             " does not match basis dimension " +
                             std::to_string(basis_.dimension()));
    // Looser than the propagators' norm monitors (1e-9 on the norm), so a
    // state read back from an accepted trajectory can never fail here.
    if (std::abs(amps_.squaredNorm() - 1.0) > 1e-8)
        throw argument_error("QuantumState: vector not normalized (sum |a|^2 = " +
                             std::to_string(amps_.squaredNorm()) + ")");
}

QuantumState QuantumState::ground(BasisLabel basis) {
    VectorXc v = VectorXc::Zero(static_cast<Eigen::Index>(basis.dimension()));
    v(0) = 1.0;
    return QuantumState(std::move(v), basis);
}

HermitianOperator::HermitianOperator(MatrixXc m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() == 0)
        throw argument_error("HermitianOperator: matrix must be square and non-empty");
    const double scale = mat_.cwiseAbs().maxCoeff();
    if (scale > 0.0) {
        const double dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
        if (dev >= 1e-12 * scale)
            throw structure_error("HermitianOperator: matrix is not Hermitian (max deviation " +
                                  std::to_string(dev) + ")");
    }
}

double HermitianOperator::max_abs_entry() const { return mat_.cwiseAbs().maxCoeff(); }

Trajectory::Trajectory(std::vector<double> times, MatrixXc states, BasisLabel basis,
                       double norm_tolerance)
    : times_(std::move(times)), states_(std::move(states)), basis_(basis) {
    if (times_.empty()) throw argument_error("Trajectory: empty time grid");
    if (static_cast<std::size_t>(states_.cols()) != times_.size())
        throw argument_error("Trajectory: one state column per time required");
    if (static_cast<std::size_t>(states_.rows()) != basis_.dimension())
        throw argument_error("Trajectory: state dimension does not match basis");
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1]))
            throw argument_error("Trajectory: times must be strictly increasing");
    for (std::size_t i = 0; i < times_.size(); ++i) {
        const double drift = std::abs(states_.col(static_cast<Eigen::Index>(i)).norm() - 1.0);
        if (drift > norm_tolerance) {
            std::ostringstream os;
            os << "Trajectory: norm drift " << drift << " at t = " << times_[i]
               << " exceeds tolerance " << norm_tolerance
               << "; integrate with a smaller step";
            throw integration_error(os.str());
        }
    }
}

QuantumState Trajectory::state_at(std::size_t i) const {
    if (i >= size()) throw argument_error("Trajectory: sample index out of range");
    return QuantumState(states_.col(static_cast<Eigen::Index>(i)), basis_);
}

double Trajectory::norm_at(std::size_t i) const {
    if (i >= size()) throw argument_error("Trajectory: sample index out of range");
    return states_.col(static_cast<Eigen::Index>(i)).norm();
}

double Trajectory::population_at(std::size_t i, std::size_t level) const {
    if (i >= size()) throw argument_error("Trajectory: sample index out of range");
    if (level >= basis_.dimension())
        throw argument_error("Trajectory: basis level out of range");
    return std::norm(states_(static_cast<Eigen::Index>(level), static_cast<Eigen::Index>(i)));
}

Eigen::VectorXd Trajectory::populations_at(std::size_t i) const {
    if (i >= size()) throw argument_error("Trajectory: sample index out of range");
    return states_.col(static_cast<Eigen::Index>(i)).cwiseAbs2();
}

double Trajectory::mean_occupation_at(std::size_t i) const {
    const Eigen::VectorXd pop = populations_at(i);
    double acc = 0.0;
    for (Eigen::Index k = 0; k < pop.size(); ++k)
        acc += static_cast<double>(basis_.fock_index(static_cast<std::size_t>(k))) * pop(k);
    return acc;
}

// --- builders -------------------------------------------------------------------

HermitianOperator build_two_level(double eta, double u) {
    if (!(eta >= 0.0)) throw domain_error("build_two_level: eta must be >= 0");
    if (!(u >= 0.0)) throw domain_error("build_two_level: u must be >= 0");
    MatrixXc h(2, 2);
    h << 0.0, eta,
         eta, u;
    return HermitianOperator(std::move(h));
}

HermitianOperator build_three_level(double eta, double u) {
    if (!(eta >= 0.0)) throw domain_error("build_three_level: eta must be >= 0");
    if (!(u >= 0.0)) throw domain_error("build_three_level: u must be >= 0");
    const double c = eta / std::sqrt(2.0);
    MatrixXc h(3, 3);
    h << 0.0, eta, 0.0,
         eta, 0.0, c,
         0.0, c,   u;
    return HermitianOperator(std::move(h));
}

std::string to_string(Regulator r) {
    return r == Regulator::KerrNN1 ? "kerr-nn1" : "quartic-n2";
}

HermitianOperator build_fock_hamiltonian(std::size_t n_levels, double omega, double u,
                                         double g, Regulator regulator) {
    if (n_levels < 4)
        throw argument_error("build_fock_hamiltonian: need at least 4 levels, got " +
                             std::to_string(n_levels));
    if (!(omega > 0.0)) throw domain_error("build_fock_hamiltonian: omega must be > 0");
    const Eigen::Index dim = static_cast<Eigen::Index>(n_levels);
    MatrixXc h = MatrixXc::Zero(dim, dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        const double nn = static_cast<double>(n);
        const double reg = regulator == Regulator::KerrNN1 ? nn * (nn - 1.0) : nn * nn;
        h(n, n) = omega * nn + u * reg;
    }
    for (Eigen::Index n = 0; n + 2 < dim; ++n) {
        const double nn = static_cast<double>(n);
        const double el = g * std::sqrt((nn + 1.0) * (nn + 2.0));
        h(n + 2, n) = el;
        h(n, n + 2) = el;
    }
    return HermitianOperator(std::move(h));
}

HermitianOperator project_even_subspace(const HermitianOperator& h) {
    const MatrixXc& m = h.matrix();
    const Eigen::Index dim = m.rows();
    const double scale = h.max_abs_entry();
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            if ((i + j) % 2 == 1 && std::abs(m(i, j)) > 1e-14 * scale)
                throw structure_error(
                    "project_even_subspace: operator couples even and odd occupation "
                    "numbers; restriction would change the dynamics");
    const Eigen::Index de = (dim + 1) / 2;
    MatrixXc out(de, de);
    for (Eigen::Index a = 0; a < de; ++a)
        for (Eigen::Index b = 0; b < de; ++b) out(a, b) = m(2 * a, 2 * b);
    return HermitianOperator(std::move(out));
}

// --- spectral stepper ------------------------------------------------------------

namespace {

// Eigendecomposition of one Hermitian matrix with a fast path for real
// tridiagonal input (the even-subspace pair-drive family), used to apply
// exact propagator exponentials.
class SpectralStepper {
public:
    void factor(const MatrixXc& h) {
        const Eigen::Index n = h.rows();
        const bool real = h.imag().cwiseAbs().maxCoeff() == 0.0;
        if (real && is_tridiagonal(h)) {
            factor_real_tridiagonal(h);
            return;
        }
        if (real) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.real());
            if (es.info() != Eigen::Success)
                throw integration_error("spectral step: real eigendecomposition failed");
            evals_ = es.eigenvalues();
            evecs_ = es.eigenvectors().cast<cplx>();
            return;
        }
        Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
        if (es.info() != Eigen::Success)
            throw integration_error("spectral step: eigendecomposition failed");
        evals_ = es.eigenvalues();
        evecs_ = es.eigenvectors();
        (void)n;
    }

    // psi <- V exp(-i E dt) V^H psi
    void apply_exp(VectorXc& psi, double dt) const {
        VectorXc c = evecs_.adjoint() * psi;
        c.array() *= (cplx(0.0, -dt) * evals_.array().cast<cplx>()).exp();
        psi.noalias() = evecs_ * c;
    }

    const Eigen::VectorXd& eigenvalues() const { return evals_; }
    const MatrixXc& eigenvectors() const { return evecs_; }

private:
    static bool is_tridiagonal(const MatrixXc& h) {
        const Eigen::Index n = h.rows();
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 2; j < n; ++j)
                if (h(i, j) != cplx(0.0, 0.0) || h(j, i) != cplx(0.0, 0.0)) return false;
        return true;
    }

    void factor_real_tridiagonal(const MatrixXc& h) {
        const Eigen::Index n = h.rows();
#if defined(AMT_HAVE_LAPACKE)
        std::vector<double> d(static_cast<std::size_t>(n));
        std::vector<double> e(static_cast<std::size_t>(n > 1 ? n - 1 : 1), 0.0);
        for (Eigen::Index i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = h(i, i).real();
        for (Eigen::Index i = 0; i + 1 < n; ++i)
            e[static_cast<std::size_t>(i)] = h(i + 1, i).real();
        Eigen::MatrixXd z(n, n);
        const lapack_int info = LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V',
                                               static_cast<lapack_int>(n), d.data(), e.data(),
                                               z.data(), static_cast<lapack_int>(n));
        if (info != 0)
            throw integration_error("spectral step: tridiagonal eigendecomposition failed (info=" +
                                    std::to_string(info) + ")");
        evals_ = Eigen::Map<Eigen::VectorXd>(d.data(), n);
        evecs_ = z.cast<cplx>();
#else
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        Eigen::VectorXd diag(n), off(n > 1 ? n - 1 : 0);
        for (Eigen::Index i = 0; i < n; ++i) diag(i) = h(i, i).real();
        for (Eigen::Index i = 0; i + 1 < n; ++i) off(i) = h(i + 1, i).real();
        es.computeFromTridiagonal(diag, off);
        if (es.info() != Eigen::Success)
            throw integration_error("spectral step: tridiagonal eigendecomposition failed");
        evals_ = es.eigenvalues();
        evecs_ = es.eigenvectors().cast<cplx>();
#endif
    }

    Eigen::VectorXd evals_;
    MatrixXc evecs_;
};

void require_grid(const std::vector<double>& t_grid, const char* who) {
    if (t_grid.empty()) throw argument_error(std::string(who) + ": empty time grid");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw argument_error(std::string(who) + ": time grid must be strictly increasing");
}

double resolve_norm_tolerance(const PropagationOptions& opts, double fallback) {
    return opts.norm_tolerance > 0.0 ? opts.norm_tolerance : fallback;
}

}  // namespace

// --- propagators -------------------------------------------------------------------

Trajectory propagate_linear(const std::function<HermitianOperator(double)>& h_of_t,
                            const QuantumState& psi0, const std::vector<double>& t_grid,
                            const PropagationOptions& opts) {
    require_grid(t_grid, "propagate_linear");
    if (!h_of_t) throw argument_error("propagate_linear: missing Hamiltonian builder");

    double dt = opts.dt;
    if (dt <= 0.0) {
        // Default step rule: max|H| * dt <= 0.05, plus omega_scale * dt <= 0.01
        // when the caller supplies a frequency scale. max|H| is probed on a
        // coarse sample of the run, which is adequate for smooth drives.
        double max_h = 0.0;
        const double t0 = t_grid.front(), t1 = t_grid.back();
        const int probes = 33;
        for (int i = 0; i < probes; ++i) {
            const double t = t1 > t0 ? t0 + (t1 - t0) * i / (probes - 1) : t0;
            max_h = std::max(max_h, h_of_t(t).max_abs_entry());
        }
        dt = max_h > 0.0 ? 0.05 / max_h : (t1 > t0 ? t1 - t0 : 1.0);
        if (opts.omega_scale > 0.0) dt = std::min(dt, 0.01 / opts.omega_scale);
    }

    const std::size_t dim = psi0.dimension();
    {
        const HermitianOperator probe = h_of_t(t_grid.front());
        if (probe.dimension() != dim)
            throw argument_error("propagate_linear: state dimension " + std::to_string(dim) +
                                 " does not match Hamiltonian dimension " +
                                 std::to_string(probe.dimension()));
    }

    MatrixXc states(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(t_grid.size()));
    VectorXc psi = psi0.amplitudes();
    states.col(0) = psi;
    SpectralStepper stepper;
    for (std::size_t s = 1; s < t_grid.size(); ++s) {
        const double a = t_grid[s - 1], b = t_grid[s];
        const auto n_sub = static_cast<std::size_t>(std::ceil((b - a) / dt - 1e-12));
        const std::size_t steps = std::max<std::size_t>(1, n_sub);
        const double h = (b - a) / static_cast<double>(steps);
        for (std::size_t k = 0; k < steps; ++k) {
            const double t_mid = a + (static_cast<double>(k) + 0.5) * h;
            stepper.factor(h_of_t(t_mid).matrix());
            stepper.apply_exp(psi, h);
        }
        states.col(static_cast<Eigen::Index>(s)) = psi;
    }
    return Trajectory(t_grid, std::move(states), psi0.basis(),
                      resolve_norm_tolerance(opts, 1e-9));
}

Trajectory propagate_constant(const HermitianOperator& h, const QuantumState& psi0,
                              const std::vector<double>& t_grid,
                              const PropagationOptions& opts) {
    require_grid(t_grid, "propagate_constant");
    if (h.dimension() != psi0.dimension())
        throw argument_error("propagate_constant: state dimension " +
                             std::to_string(psi0.dimension()) +
                             " does not match Hamiltonian dimension " +
                             std::to_string(h.dimension()));

    SpectralStepper stepper;
    stepper.factor(h.matrix());
    const VectorXc c0 = stepper.eigenvectors().adjoint() * psi0.amplitudes();

    MatrixXc states(static_cast<Eigen::Index>(h.dimension()),
                    static_cast<Eigen::Index>(t_grid.size()));
    const double t0 = t_grid.front();
    for (std::size_t s = 0; s < t_grid.size(); ++s) {
        VectorXc c = c0;
        c.array() *=
            (cplx(0.0, -(t_grid[s] - t0)) * stepper.eigenvalues().array().cast<cplx>()).exp();
        states.col(static_cast<Eigen::Index>(s)).noalias() = stepper.eigenvectors() * c;
    }
    return Trajectory(t_grid, std::move(states), psi0.basis(),
                      resolve_norm_tolerance(opts, 1e-9));
}

// --- nonlinear spectral flow ----------------------------------------------------------

namespace {

MatrixXc build_coupling(const SpectralFlowSystem& sys, double t) {
    const Eigen::Index n = static_cast<Eigen::Index>(sys.n_modes);
    MatrixXc v(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            v(i, j) = sys.v_nm(static_cast<std::size_t>(i), static_cast<std::size_t>(j), t);
    const double scale = v.cwiseAbs().maxCoeff();
    if (scale > 0.0) {
        const double dev = (v - v.adjoint()).cwiseAbs().maxCoeff();
        if (dev >= 1e-12 * scale)
            throw structure_error("propagate_spectral_flow: coupling matrix V(t) is not "
                                  "Hermitian at t = " + std::to_string(t));
    }
    return v;
}

}  // namespace

Trajectory propagate_spectral_flow(const SpectralFlowSystem& sys, const QuantumState& a0,
                                   const std::vector<double>& t_grid,
                                   const PropagationOptions& opts) {
    require_grid(t_grid, "propagate_spectral_flow");
    if (!sys.omega_n || !sys.v_nm)
        throw argument_error("propagate_spectral_flow: missing omega_n or v_nm");
    if (a0.dimension() != sys.n_modes)
        throw argument_error("propagate_spectral_flow: state dimension does not match n_modes");

    const Eigen::Index n = static_cast<Eigen::Index>(sys.n_modes);
    const double norm_tol = resolve_norm_tolerance(opts, 1e-8);

    // da/dt = -i (omega_n a_n + eta (V a)_n - u |a_n|^2 a_n)
    const auto rhs = [&](double t, const VectorXc& a) -> VectorXc {
        const MatrixXc v = build_coupling(sys, t);
        VectorXc f(n);
        const VectorXc va = v * a;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double w = sys.omega_n(static_cast<std::size_t>(i), t);
            f(i) = cplx(0.0, -1.0) * (w * a(i) + sys.eta * va(i) - sys.u * std::norm(a(i)) * a(i));
        }
        return f;
    };

    double dt = opts.dt;
    if (dt <= 0.0) {
        // Scale-based default: the flow's stiffness is set by the largest
        // frequency plus coupling row plus nonlinearity.
        double scale = sys.u;
        const MatrixXc v0 = build_coupling(sys, t_grid.front());
        for (Eigen::Index i = 0; i < n; ++i) {
            const double w = std::abs(sys.omega_n(static_cast<std::size_t>(i), t_grid.front()));
            scale = std::max(scale, w + sys.eta * v0.cwiseAbs().row(i).sum() + sys.u);
        }
        dt = scale > 0.0 ? 0.05 / scale : (t_grid.back() - t_grid.front());
    }

    MatrixXc states(n, static_cast<Eigen::Index>(t_grid.size()));
    VectorXc a = a0.amplitudes();
    states.col(0) = a;
    for (std::size_t s = 1; s < t_grid.size(); ++s) {
        const double lo = t_grid[s - 1], hi = t_grid[s];
        const auto n_sub = static_cast<std::size_t>(std::ceil((hi - lo) / dt - 1e-12));
        const std::size_t steps = std::max<std::size_t>(1, n_sub);
        const double h = (hi - lo) / static_cast<double>(steps);
        for (std::size_t k = 0; k < steps; ++k) {
            const double t = lo + static_cast<double>(k) * h;
            const VectorXc k1 = rhs(t, a);
            const VectorXc k2 = rhs(t + 0.5 * h, a + 0.5 * h * k1);
            const VectorXc k3 = rhs(t + 0.5 * h, a + 0.5 * h * k2);
            const VectorXc k4 = rhs(t + h, a + h * k3);
            a += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        const double drift = std::abs(a.norm() - 1.0);
        if (drift > norm_tol) {
            std::ostringstream os;
            os << "propagate_spectral_flow: norm drift " << drift << " at t = " << hi
               << " exceeds " << norm_tol << "; retry with a smaller step (current dt = " << dt
               << ")";
            throw integration_error(os.str());
        }
        states.col(static_cast<Eigen::Index>(s)) = a;
    }
    return Trajectory(t_grid, std::move(states), a0.basis(), norm_tol);
}

// --- classical oscillator ---------------------------------------------------------------

ClassicalTrajectory evolve_classical_oscillator(const DriveProtocol& p, double x0, double v0,
                                                const std::vector<double>& t_grid,
                                                const ClassicalOptions& opts) {
    require_grid(t_grid, "evolve_classical_oscillator");
    if (!p.domain().contains(t_grid.front()) || !p.domain().contains(t_grid.back()))
        throw domain_error("evolve_classical_oscillator: time grid leaves the protocol domain");

    // Fourth-order symplectic coefficients (two-map composition scheme).
    const double cbrt2 = std::cbrt(2.0);
    const double den = 2.0 - cbrt2;
    const double cd[4] = {0.5 / den, (0.5 - 1.0 / (cbrt2 * cbrt2)) / den,
                          (0.5 - 1.0 / (cbrt2 * cbrt2)) / den, 0.5 / den};
    const double dd[4] = {1.0 / den, -cbrt2 / den, 1.0 / den, 0.0};

    double dt = opts.dt;
    if (dt <= 0.0) {
        double w_max = 0.0;
        const double t0 = t_grid.front(), t1 = t_grid.back();
        const int probes = 257;
        for (int i = 0; i < probes; ++i) {
            const double t = t1 > t0 ? t0 + (t1 - t0) * i / (probes - 1) : t0;
            w_max = std::max(w_max, p.omega(t));
        }
        dt = 2.0 * M_PI / (w_max * opts.steps_per_period);
    }

    ClassicalTrajectory out;
    out.times = t_grid;
    out.x.reserve(t_grid.size());
    out.v.reserve(t_grid.size());
    out.energy.reserve(t_grid.size());
    out.adiabatic_invariant.reserve(t_grid.size());

    const auto record = [&](double t, double x, double v) {
        const double w = p.omega(t);
        const double e = 0.5 * (v * v + w * w * x * x);
        out.x.push_back(x);
        out.v.push_back(v);
        out.energy.push_back(e);
        out.adiabatic_invariant.push_back(e / w);
    };

    double x = x0, v = v0;
    record(t_grid.front(), x, v);
    for (std::size_t s = 1; s < t_grid.size(); ++s) {
        const double lo = t_grid[s - 1], hi = t_grid[s];
        const auto n_sub = static_cast<std::size_t>(std::ceil((hi - lo) / dt - 1e-12));
        const std::size_t steps = std::max<std::size_t>(1, n_sub);
        const double h = (hi - lo) / static_cast<double>(steps);
        double t = lo;
        for (std::size_t k = 0; k < steps; ++k) {
            // Drift-kick sweep; the kick uses Omega at the drift-advanced time.
            for (int stage = 0; stage < 4; ++stage) {
                x += cd[stage] * h * v;
                t += cd[stage] * h;
                if (dd[stage] != 0.0) {
                    const double w = p.omega(t);
                    v -= dd[stage] * h * w * w * x;
                }
            }
        }
        record(hi, x, v);
    }
    return out;
}

// --- observables ------------------------------------------------------------------------

double mean_occupation(const QuantumState& s) {
    const BasisKind k = s.basis().kind;
    if (k != BasisKind::Fock && k != BasisKind::EvenFock)
        throw argument_error("mean_occupation: state is not in a Fock-type basis");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i)
        acc += static_cast<double>(s.basis().fock_index(static_cast<std::size_t>(i))) *
               std::norm(s.amplitudes()(i));
    return acc;
}

double leakage_fraction(const Trajectory& traj, double t) {
    if (traj.basis().kind != BasisKind::ThreeLevel)
        throw argument_error("leakage_fraction: trajectory is not over the three-level basis");
    const auto& times = traj.times();
    std::size_t idx = times.size();
    const double slack = 1e-9 * std::max(1.0, std::abs(t));
    for (std::size_t i = 0; i < times.size(); ++i)
        if (std::abs(times[i] - t) <= slack) {
            idx = i;
            break;
        }
    if (idx == times.size())
        throw argument_error("leakage_fraction: t = " + std::to_string(t) +
                             " is not a sampled time of the trajectory");
    const double p1 = traj.population_at(idx, 1);
    const double p2 = traj.population_at(idx, 2);
    if (p1 + p2 < 1e-15)
        throw undefined_ratio_error(
            "leakage_fraction: no excited population (P1 + P2 < 1e-15) at t = " +
            std::to_string(t));
    return p2 / (p1 + p2);
}

}  // namespace amt
