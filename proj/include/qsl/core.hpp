// core.hpp — model-agnostic quantum-speed-limit machinery: qubit state
// types, Bures angle, 2x2 operator norm, and the generic bound engines
// that integrate a supplied state trajectory.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qsl/numerics.hpp"

namespace qsl {

/// Pure qubit state  amp * e^{i phase} |1> + sqrt(1 - amp^2) |0>.
/// The ground amplitude is non-negative by construction, so the state is
/// normalized for any amp in [-1, 1].
struct PureQubit {
    double excited_amp = 0.0;
    double phase = 0.0;  // radians, wrapped into [0, 2*pi)

    PureQubit(double amp, double theta = 0.0) : excited_amp(amp) {
        if (!(std::abs(amp) <= 1.0 + 1e-12))
            throw std::domain_error("PureQubit: |excited_amp| > 1");
        excited_amp = std::clamp(amp, -1.0, 1.0);
        phase = std::fmod(theta, 2.0 * std::numbers::pi);
        if (phase < 0.0) phase += 2.0 * std::numbers::pi;
    }

    double ground_amp() const {
        return std::sqrt(std::max(0.0, 1.0 - excited_amp * excited_amp));
    }
};

/// 2x2 density matrix with unit trace built in: ground population is
/// 1 - excited_pop and `coherence` is the |1><0| element.
struct QubitDensity {
    double excited_pop = 0.0;
    std::complex<double> coherence{0.0, 0.0};

    QubitDensity(double pop, std::complex<double> coh)
        : excited_pop(pop), coherence(coh) {
        if (!(pop >= -1e-12 && pop <= 1.0 + 1e-12))
            throw std::domain_error("QubitDensity: population outside [0, 1]");
        excited_pop = std::clamp(pop, 0.0, 1.0);
        const double slack =
            excited_pop * (1.0 - excited_pop) - std::norm(coherence);
        if (slack < -1e-9)
            throw std::domain_error("QubitDensity: positivity violated");
    }

    double ground_pop() const { return 1.0 - excited_pop; }
};

/// 2x2 Hermitian traceless matrix [[a, b], [conj(b), -a]]; carries the
/// generator output L_t(rho_t) = d rho / dt.
struct HermitianTraceless {
    double diag = 0.0;                     // the |1><1| entry
    std::complex<double> offdiag{0.0, 0.0};  // the |1><0| entry
};

/// A state trajectory with its time derivative and optional analytic kink
/// locations for the |.|-shaped integrands of the bound denominators.
struct Trajectory {
    std::function<QubitDensity(double)> state_at;
    std::function<HermitianTraceless(double)> derivative_at;
    std::vector<double> kinks_hint;
};

enum class BoundKind { ml, ni, xu };
enum class Method { closed_form, generic };

inline const char* to_string(BoundKind k) {
    switch (k) {
        case BoundKind::ml: return "ml";
        case BoundKind::ni: return "ni";
        default: return "xu";
    }
}

/// One computed speed-limit bound together with the evolution it refers to.
/// `accelerated` flags a bound strictly below the actual evolution time; it
/// stays false when the state never moved (bound and distance both zero).
struct QslResult {
    double bound = 0.0;
    BoundKind kind = BoundKind::ml;
    Method method = Method::closed_form;
    double actual_time = 0.0;
    bool accelerated = false;
};

/// Fidelity <psi0| rho |psi0> of a pure state against a density matrix.
inline double state_fidelity(const PureQubit& psi0, const QubitDensity& rho) {
    const double a = psi0.excited_amp, g = psi0.ground_amp();
    const std::complex<double> ph(std::cos(psi0.phase), -std::sin(psi0.phase));
    double fid = a * a * rho.excited_pop + g * g * rho.ground_pop() +
                 2.0 * a * g * (ph * rho.coherence).real();
    if (fid < -1e-12 || fid > 1.0 + 1e-12)
        throw std::domain_error("state_fidelity: value outside [0, 1] beyond "
                                "the rounding clamp");
    return std::clamp(fid, 0.0, 1.0);
}

/// Bures angle arccos(sqrt(<psi0| rho |psi0>)) in [0, pi/2].
inline double bures_angle(const PureQubit& psi0, const QubitDensity& rho) {
    return std::acos(std::sqrt(state_fidelity(psi0, rho)));
}

/// Largest singular value of [[a, b], [conj(b), -a]]: sqrt(a^2 + |b|^2).
inline double op_norm(const HermitianTraceless& m) {
    return std::sqrt(m.diag * m.diag + std::norm(m.offdiag));
}

/// <psi0| M |psi0> for Hermitian traceless M; may be negative.
inline double state_expectation(const PureQubit& psi0,
                                const HermitianTraceless& m) {
    const double a = psi0.excited_amp, g = psi0.ground_amp();
    const std::complex<double> ph(std::cos(psi0.phase), -std::sin(psi0.phase));
    return (2.0 * a * a - 1.0) * m.diag + 2.0 * a * g * (ph * m.offdiag).real();
}

namespace detail {

inline QslResult finish_bound(double numerator, double denominator, double t,
                              BoundKind kind, Method method) {
    QslResult r;
    r.kind = kind;
    r.method = method;
    r.actual_time = t;
    if (numerator < 1e-14 && denominator < 1e-14) {
        r.bound = 0.0;  // state never left rho0; zero distance in zero time
        r.accelerated = false;
        return r;
    }
    if (denominator < 1e-14)
        throw std::runtime_error(
            "qsl: degenerate dynamics (zero integrated speed with nonzero "
            "distance) — inconsistent trajectory");
    r.bound = t * numerator / denominator;
    r.accelerated = r.bound < t - 1e-9;
    return r;
}

inline Breakpoints engine_kinks(const Trajectory& traj,
                                const std::function<double(double)>& signed_f,
                                double t) {
    Breakpoints hints = Breakpoints::inside(traj.kinks_hint, 0.0, t);
    Breakpoints found = find_sign_changes(signed_f, 0.0, t);
    return hints.merged_with(found, 0.0, t);
}

}  // namespace detail

/// Margolus–Levitin-type bound from the trajectory alone: the denominator is
/// the integrated operator norm of the generator.
inline QslResult ml_qsl_generic(const PureQubit& psi0, const Trajectory& traj,
                                double t, double tol = 1e-10) {
    if (!(t > 0.0)) throw std::invalid_argument("ml_qsl_generic: t <= 0");
    const double num = 1.0 - state_fidelity(psi0, traj.state_at(t));
    const std::function<double(double)> speed = [&traj](double tau) {
        return op_norm(traj.derivative_at(tau));
    };
    const Breakpoints kinks = detail::engine_kinks(traj, speed, t);
    const double den = integrate_abs(speed, 0.0, t, kinks, tol);
    return detail::finish_bound(num, den, t, BoundKind::ml, Method::generic);
}

/// Tighter bound that skips the trace inequality: the denominator integrates
/// |<psi0| d rho / dt |psi0>| instead of the operator norm.
inline QslResult ni_qsl_generic(const PureQubit& psi0, const Trajectory& traj,
                                double t, double tol = 1e-10) {
    if (!(t > 0.0)) throw std::invalid_argument("ni_qsl_generic: t <= 0");
    const double num = 1.0 - state_fidelity(psi0, traj.state_at(t));
    const std::function<double(double)> proj = [&psi0, &traj](double tau) {
        return state_expectation(psi0, traj.derivative_at(tau));
    };
    const Breakpoints kinks = detail::engine_kinks(traj, proj, t);
    const double den = integrate_abs(proj, 0.0, t, kinks, tol);
    return detail::finish_bound(num, den, t, BoundKind::ni, Method::generic);
}

}  // namespace qsl
