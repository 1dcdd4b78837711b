// dephasing.hpp — pure dephasing of a qubit coupled to an Ohmic-family
// reservoir (soft exponential cutoff, unit cutoff frequency, zero
// temperature): dephasing factor and rate in closed form, the rate-sign
// classification, closed-form ML/NI bounds, and the channel-capacity
// non-Markovianity measure.

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qsl/core.hpp"
#include "qsl/numerics.hpp"

namespace qsl {

/// Ohmicity exponent s (sub-Ohmic s < 1, Ohmic s = 1, super-Ohmic s > 1)
/// and dimensionless coupling eta. Cutoff frequency and temperature are
/// fixed at omega_c = 1 and T = 0.
struct DephasingParams {
    double s;
    double eta;

    DephasingParams(double s_, double eta_) : s(s_), eta(eta_) {
        if (!(s > 0.0)) throw std::domain_error("DephasingParams: s <= 0");
        if (!(eta > 0.0)) throw std::domain_error("DephasingParams: eta <= 0");
    }
};

/// Dephasing factor gamma(t) >= 0 with gamma(0) = 0.
///
/// For |s - 1| >= 1e-4:  eta * Gamma(s-1) * [1 - cos((s-1) arctan t)
/// * (1 + t^2)^{-(s-1)/2}], the closed form of the T = 0 spectral integral.
/// Gamma(s-1) has a pole at s = 1 while gamma(t) stays finite, so inside
/// |s - 1| < 1e-4 the first-order expansion around the exact Ohmic value
/// (eta/2) ln(1 + t^2) is used instead.
inline double dephasing_gamma(double t, const DephasingParams& p) {
    if (!(t >= 0.0)) throw std::invalid_argument("dephasing_gamma: t < 0");
    if (t == 0.0) return 0.0;
    const double eps = p.s - 1.0;
    if (std::abs(eps) < 1e-4) {
        const double a = std::atan(t);
        const double L = std::log1p(t * t);
        return p.eta * (0.5 * L +
                        eps * (0.5 * a * a - 0.125 * L * L -
                               0.5 * euler_mascheroni * L));
    }
    const double bracket =
        1.0 - std::cos(eps * std::atan(t)) *
                  std::exp(-0.5 * eps * std::log1p(t * t));
    return p.eta * gamma_real(eps) * bracket;
}

/// Dephasing rate gamma'(t) = eta (1+t^2)^{-s/2} Gamma(s) sin(s arctan t).
inline double dephasing_rate(double t, const DephasingParams& p) {
    if (!(t >= 0.0)) throw std::invalid_argument("dephasing_rate: t < 0");
    return p.eta * std::exp(-0.5 * p.s * std::log1p(t * t)) *
           gamma_real(p.s) * std::sin(p.s * std::atan(t));
}

enum class RateSign { negative, zero, positive };

inline const char* to_string(RateSign sg) {
    switch (sg) {
        case RateSign::negative: return "negative";
        case RateSign::zero: return "zero";
        default: return "positive";
    }
}

/// Sign of the dephasing rate at (s, t), decided by sin(s arctan t) directly.
inline RateSign rate_sign(double s, double t) {
    if (!(s > 0.0) || !(t > 0.0))
        throw std::invalid_argument("rate_sign: require s > 0 and t > 0");
    const double v = std::sin(s * std::atan(t));
    if (std::abs(v) < 1e-12) return RateSign::zero;
    return v > 0.0 ? RateSign::positive : RateSign::negative;
}

/// Reduced state: populations frozen, coherence damped by exp(-gamma(t)).
inline QubitDensity dephasing_state(double t, const PureQubit& psi0,
                                    const DephasingParams& p) {
    const double b = psi0.excited_amp, g = psi0.ground_amp();
    const std::complex<double> ph(std::cos(psi0.phase), std::sin(psi0.phase));
    return QubitDensity(b * b,
                        b * g * ph * std::exp(-dephasing_gamma(t, p)));
}

/// d rho / dt: purely off-diagonal, -gamma'(t) e^{-gamma(t)} on the coherence.
inline HermitianTraceless dephasing_derivative(double t, const PureQubit& psi0,
                                               const DephasingParams& p) {
    const double b = psi0.excited_amp, g = psi0.ground_amp();
    const std::complex<double> ph(std::cos(psi0.phase), std::sin(psi0.phase));
    const double factor =
        -dephasing_rate(t, p) * std::exp(-dephasing_gamma(t, p));
    return HermitianTraceless{0.0, factor * b * g * ph};
}

namespace detail {

// Zeros of gamma': t_k = tan(k pi / s) for integer k with k pi / s < pi / 2.
inline std::vector<double> dephasing_rate_zeros(const DephasingParams& p,
                                                double horizon) {
    std::vector<double> out;
    for (int k = 1; k < 0.5 * p.s; ++k) {
        const double tk = std::tan(k * std::numbers::pi / p.s);
        if (tk < horizon) out.push_back(tk);
    }
    return out;
}

}  // namespace detail

/// Closed-form ML bound 2 b sqrt(1-b^2) (1 - e^{-gamma(t)}) t / integral of
/// |e^{-gamma} gamma'|, split at the analytic rate zeros.
inline QslResult ml_qsl_dephasing(double t, const PureQubit& psi0,
                                  const DephasingParams& p,
                                  double tol = 1e-10) {
    if (!(t > 0.0)) throw std::invalid_argument("ml_qsl_dephasing: t <= 0");
    const double b = psi0.excited_amp, g = psi0.ground_amp();
    const double num =
        2.0 * std::abs(b) * g * (1.0 - std::exp(-dephasing_gamma(t, p)));
    const std::function<double(double)> integrand = [&p](double tau) {
        return std::exp(-dephasing_gamma(tau, p)) * dephasing_rate(tau, p);
    };
    const Breakpoints kinks =
        Breakpoints::inside(detail::dephasing_rate_zeros(p, t), 0.0, t);
    const double den = integrate_abs(integrand, 0.0, t, kinks, tol);
    return detail::finish_bound(num, den, t, BoundKind::ml,
                                Method::closed_form);
}

/// Closed-form NI bound (1 - e^{-gamma(t)}) t / integral of
/// |e^{-gamma} gamma'|; independent of the initial state in this model.
inline QslResult ni_qsl_dephasing(double t, const DephasingParams& p,
                                  double tol = 1e-10) {
    if (!(t > 0.0)) throw std::invalid_argument("ni_qsl_dephasing: t <= 0");
    const double num = 1.0 - std::exp(-dephasing_gamma(t, p));
    const std::function<double(double)> integrand = [&p](double tau) {
        return std::exp(-dephasing_gamma(tau, p)) * dephasing_rate(tau, p);
    };
    const Breakpoints kinks =
        Breakpoints::inside(detail::dephasing_rate_zeros(p, t), 0.0, t);
    const double den = integrate_abs(integrand, 0.0, t, kinks, tol);
    return detail::finish_bound(num, den, t, BoundKind::ni,
                                Method::closed_form);
}

/// Quantum channel capacity Q(t) = 1 - H2((1 + e^{-gamma(t)}) / 2).
inline double channel_capacity(double t, const DephasingParams& p) {
    const double x = 0.5 * (1.0 + std::exp(-dephasing_gamma(t, p)));
    return 1.0 - binary_entropy(x);
}

/// Capacity-based non-Markovianity: summed increase of Q over the maximal
/// subintervals of [0, horizon] where gamma' < 0, with interval endpoints
/// taken from the analytic rate zeros.
inline double capacity_nonmarkovianity(const DephasingParams& p,
                                       double horizon) {
    if (!(horizon > 0.0))
        throw std::invalid_argument("capacity_nonmarkovianity: horizon <= 0");
    std::vector<double> pts = detail::dephasing_rate_zeros(p, horizon);
    pts.push_back(horizon);
    double total = 0.0;
    double prev = 0.0;
    for (double tk : pts) {
        if (rate_sign(p.s, 0.5 * (prev + tk)) == RateSign::negative)
            total += channel_capacity(tk, p) - channel_capacity(prev, p);
        prev = tk;
    }
    return total;
}

/// Adapts the model to the generic engines; the rate-zero kink set is finite
/// and complete for every horizon.
inline Trajectory dephasing_trajectory(const PureQubit& psi0,
                                       const DephasingParams& p) {
    Trajectory traj;
    traj.state_at = [psi0, p](double tau) {
        return dephasing_state(tau, psi0, p);
    };
    traj.derivative_at = [psi0, p](double tau) {
        return dephasing_derivative(tau, psi0, p);
    };
    traj.kinks_hint =
        detail::dephasing_rate_zeros(p, std::numeric_limits<double>::infinity());
    return traj;
}

}  // namespace qsl
