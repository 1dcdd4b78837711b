// numerics.hpp — special functions, adaptive quadrature of |f| with
// breakpoint handling, and sign-change bracketing shared by all models.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsl {

inline constexpr double euler_mascheroni = 0.57721566490153286061;

/// Sorted, strictly increasing interior subdivision points of an interval.
/// Duplicates closer than 1e-12 are merged; points outside (a, b) are dropped.
class Breakpoints {
public:
    Breakpoints() = default;

    static Breakpoints inside(std::vector<double> pts, double a, double b) {
        Breakpoints bp;
        std::sort(pts.begin(), pts.end());
        for (double p : pts) {
            if (!(p > a && p < b)) continue;
            if (!bp.pts_.empty() && p - bp.pts_.back() < 1e-12) continue;
            bp.pts_.push_back(p);
        }
        return bp;
    }

    Breakpoints merged_with(const Breakpoints& other, double a, double b) const {
        std::vector<double> all = pts_;
        all.insert(all.end(), other.pts_.begin(), other.pts_.end());
        return inside(std::move(all), a, b);
    }

    const std::vector<double>& points() const { return pts_; }
    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }

private:
    std::vector<double> pts_;
};

namespace detail {

// Lanczos rational approximation, N=13, g=13.144565 (Godfrey coefficients).
// Relative error of the underlying approximation < 1e-19; in double
// arithmetic the result is accurate to a few ulp on [1, 2] and loses at
// most ~1 digit out to x ~ 50 through pow/exp rounding.
inline double lanczos13_sum(double z) {
    static constexpr double num[13] = {
        44012138428004.60895436261759919070125699,
        41590453358593.20051581730723108131357995,
        18013842787117.99677796276038389462742949,
        4728736263475.388896889723995205703970787,
        837910083628.4046470415724300225777912264,
        105583707273.4299344907359855510105321192,
        9701363618.494999493386608345339104922694,
        654914397.5482052641016767125048538245644,
        32238322.94213356530668889463945849409184,
        1128514.219497091438040721811544858643121,
        26665.79378459858944762533958798805525125,
        381.8801248632926870394389468349331394196,
        2.506628274631000502415763426076722427007};
    static constexpr double den[13] = {
        0.0,          39916800.0, 120543840.0, 150917976.0, 105258076.0,
        45995730.0,   13339535.0, 2637558.0,   357423.0,    32670.0,
        1925.0,       66.0,       1.0};
    if (z <= 1.0) {
        double n = 0.0, d = 0.0;
        for (int i = 12; i >= 0; --i) {
            n = n * z + num[i];
            d = d * z + den[i];
        }
        return n / d;
    }
    // evaluate in 1/z to keep intermediate magnitudes bounded
    double s = 1.0 / z;
    double n = 0.0, d = 0.0;
    for (int i = 0; i < 13; ++i) {
        n = n * s + num[i];
        d = d * s + den[i];
    }
    return n / d;
}

}  // namespace detail

/// Real Gamma function for non-pole arguments, x > -1 guaranteed accurate
/// to >= 12 significant digits on [-1 + 1e-6, 50]. Arguments below 1 are
/// lifted by the recurrence Gamma(x) = Gamma(x+1)/x.
inline double gamma_real(double x) {
    const double nearest = std::round(x);
    if (nearest <= 0.0 && std::abs(x - nearest) < 1e-9)
        throw std::domain_error("gamma_real: argument " + std::to_string(x) +
                                " within 1e-9 of a pole");
    double scale = 1.0;
    double z = x;
    while (z < 1.0) {
        scale *= z;
        z += 1.0;
    }
    const double g = 13.1445650000000000545696821063756942749;
    const double b = z + g - 0.5;
    const double value =
        detail::lanczos13_sum(z) * std::pow(b, z - 0.5) * std::exp(-b);
    return value / scale;
}

/// Binary Shannon entropy H2(p) = -p log2 p - (1-p) log2 (1-p), in bits.
inline double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("binary_entropy: p = " + std::to_string(p) +
                                " outside [0, 1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

namespace detail {

struct SimpsonState {
    const std::function<double(double)>& f;
    int max_depth;
};

inline double adaptive_simpson(const SimpsonState& st, double a, double m,
                               double b, double fa, double fm, double fb,
                               double whole, double eps, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = st.f(lm), frm = st.f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    if (depth >= st.max_depth)
        throw std::runtime_error(
            "integrate_abs: refinement depth limit exceeded on [" +
            std::to_string(a) + ", " + std::to_string(b) + "]");
    return adaptive_simpson(st, a, lm, m, fa, flm, fm, left, 0.5 * eps,
                            depth + 1) +
           adaptive_simpson(st, m, rm, b, fm, frm, fb, right, 0.5 * eps,
                            depth + 1);
}

inline double simpson_segment(const SimpsonState& st, double a, double b,
                              double eps) {
    const double m = 0.5 * (a + b);
    const double fa = st.f(a), fm = st.f(m), fb = st.f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(st, a, m, b, fa, fm, fb, whole, eps, 0);
}

}  // namespace detail

/// Integral of |f| over [a, b]. Integration runs independently on each
/// subinterval delimited by `kinks`, so f only needs to be smooth between
/// breakpoints. Adaptive Simpson with Richardson acceptance; the error
/// budget is tol * max(1, |estimate|) distributed over the subintervals
/// proportionally to their length.
inline double integrate_abs(const std::function<double(double)>& f, double a,
                            double b, const Breakpoints& kinks,
                            double tol = 1e-10, int max_depth = 60) {
    if (!(a <= b))
        throw std::invalid_argument("integrate_abs: a > b");
    if (a == b) return 0.0;

    std::vector<double> edges;
    edges.reserve(kinks.size() + 2);
    edges.push_back(a);
    for (double p : kinks.points())
        if (p > a && p < b) edges.push_back(p);
    edges.push_back(b);

    const std::function<double(double)> absf = [&f](double x) {
        return std::abs(f(x));
    };
    detail::SimpsonState st{absf, max_depth};

    // coarse pass fixes the error scale
    double coarse = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i], hi = edges[i + 1], m = 0.5 * (lo + hi);
        coarse += (hi - lo) / 6.0 * (absf(lo) + 4.0 * absf(m) + absf(hi));
    }
    const double scale = std::max(1.0, std::abs(coarse));

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i], hi = edges[i + 1];
        const double eps = tol * scale * (hi - lo) / (b - a);
        total += detail::simpson_segment(st, lo, hi, eps);
    }
    return total;
}

/// Brackets sign changes of f on a uniform scan of scan_count+1 samples and
/// refines each bracket by bisection to |dt| < 1e-12 * (b - a). Samples that
/// hit a zero exactly are returned as-is. Empty result when no change is
/// detected; the caller owns the choice of an adequate scan_count.
inline Breakpoints find_sign_changes(const std::function<double(double)>& f,
                                     double a, double b, int scan_count = 4096) {
    if (scan_count < 2)
        throw std::invalid_argument("find_sign_changes: scan_count < 2");
    const double span = b - a;
    const double tol = 1e-12 * span;
    std::vector<double> roots;
    double x0 = a, f0 = f(a);
    for (int i = 1; i <= scan_count; ++i) {
        const double x1 = a + span * i / scan_count;
        const double f1 = f(x1);
        if (f0 == 0.0) {
            roots.push_back(x0);
        } else if (f1 != 0.0 && std::signbit(f0) != std::signbit(f1)) {
            double lo = x0, hi = x1, flo = f0;
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                const double fmid = f(mid);
                if (fmid == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (std::signbit(flo) != std::signbit(fmid)) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fmid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    if (f0 == 0.0) roots.push_back(x0);
    return Breakpoints::inside(std::move(roots), a, b);
}

}  // namespace qsl
