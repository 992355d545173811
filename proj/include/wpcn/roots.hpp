#ifndef WPCN_ROOTS_HPP
#define WPCN_ROOTS_HPP

// Root-finders for the two transcendental equations behind the optimal
// allocations:
//
//   f(z) = z ln z - z + 1 = A,   A > 0, root z* > 1
//   t(x) = ln(1 + x) - x/(1 + x) = c,   c > 0, root x* > 0
//
// Both functions are evaluated in a shifted variable with a short series near
// the origin so that tiny right-hand sides keep full relative accuracy.

#include <wpcn/controls.hpp>
#include <wpcn/errors.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace wpcn {

namespace detail {

// f(1 + w)
inline double f_shifted(double w) {
    if (std::abs(w) < 0.02) {
        // sum_{n>=2} (-1)^n w^n / (n (n-1))
        double term = w * w;
        double s = 0.0;
        for (int n = 2; n < 14; ++n) {
            s += term / double(n * (n - 1));
            term *= -w;
        }
        return s;
    }
    return (1.0 + w) * std::log1p(w) - w;
}

// t(x) with x = e^u - 1, i.e. u - 1 + e^{-u}.  Convex and increasing for u > 0.
inline double t_of_log(double u) {
    if (u < 0.1) {
        // sum_{n>=2} (-u)^n / n!
        double term = u * u / 2.0;
        double s = 0.0;
        for (int n = 2; n < 20; ++n) {
            s += term;
            term *= -u / double(n + 1);
        }
        return s;
    }
    return u + std::expm1(-u);
}

inline bool within(double residual, double target, const SolverControls& c) {
    return std::abs(residual) <= std::max(c.abs_tol, c.rel_tol * std::abs(target));
}

// Right-hand sides of both equations are strictly positive and can be tiny, so
// the scalar root-finders use a purely relative residual test.
inline bool within_relative(double residual, double target, const SolverControls& c) {
    return std::abs(residual) <= c.rel_tol * std::abs(target);
}

} // namespace detail

/// f(z) = z ln z - z + 1, accurate near z = 1.
inline double f_of_z(double z) { return detail::f_shifted(z - 1.0); }

/// t(x) = ln(1 + x) - x / (1 + x), accurate near x = 0.
inline double t_kkt(double x) {
    if (x == std::numeric_limits<double>::infinity())
        return x;
    return detail::t_of_log(std::log1p(x));
}

namespace detail {

// Root w* = z* - 1 > 0 of f(1 + w) = A.
inline double solve_f_shifted(double A, const SolverControls& controls) {
    if (!(A > 0.0) || !std::isfinite(A))
        throw invalid_input("solve_f_eq_A: A must be finite and > 0");

    // bracket in w = z - 1
    double lo = 0.0;
    double hi = 1.0;
    while (f_shifted(hi) < A) {
        lo = hi;
        hi = 2.0 * hi + 1.0; // z_hi doubles
        if (!std::isfinite(hi))
            throw iteration_limit("solve_f_eq_A: upper bracket overflowed", lo + 1.0, hi);
    }

    // f is convex and increasing on the bracket, so Newton started from the
    // right end approaches the root monotonically.  Bisection covers the rest.
    double w = hi;
    for (int it = 0; it < controls.max_iters; ++it) {
        const double r = f_shifted(w) - A;
        if (within_relative(r, A, controls))
            return w;
        if (r > 0.0)
            hi = w;
        else
            lo = w;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi)
            return w;
        const double slope = std::log1p(w);
        double next = slope > 0.0 ? w - r / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        w = next;
    }
    std::ostringstream os;
    os << "solve_f_eq_A: no convergence for A = " << A << " within " << controls.max_iters
       << " iterations";
    throw iteration_limit(os.str(), 1.0 + lo, 1.0 + hi);
}

} // namespace detail

/// Unique root z* > 1 of z ln z - z + 1 = A.  The root below 1 that exists for
/// A <= 1 is never returned: the search is confined to [1, z_hi].
inline double solve_f_eq_A(double A, const SolverControls& controls = {}) {
    return 1.0 + detail::solve_f_shifted(A, controls);
}

namespace detail {

// Root u* of t_of_log(u) = c, u > 0.
inline double solve_t_log(double c, const SolverControls& controls) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw invalid_input("solve_t_eq_c: c must be finite and > 0");
    // t_of_log(u) >= u - 1, so u = c + 1 is an upper bracket
    double lo = 0.0;
    double hi = c + 1.0;
    double u = hi;
    for (int it = 0; it < controls.max_iters; ++it) {
        const double r = t_of_log(u) - c;
        if (within_relative(r, c, controls))
            return u;
        if (r > 0.0)
            hi = u;
        else
            lo = u;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi)
            return u;
        const double slope = -std::expm1(-u); // 1 - e^{-u}
        double next = slope > 0.0 ? u - r / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        u = next;
    }
    std::ostringstream os;
    os << "solve_t_eq_c: no convergence for c = " << c << " within " << controls.max_iters
       << " iterations";
    throw iteration_limit(os.str(), std::expm1(lo), std::expm1(hi));
}

} // namespace detail

/// Unique root x* > 0 of ln(1 + x) - x/(1 + x) = c.  Returns +inf when the
/// root exceeds the double range (c above roughly 708).
inline double solve_t_eq_c(double c, const SolverControls& controls = {}) {
    return std::expm1(detail::solve_t_log(c, controls));
}

} // namespace wpcn

#endif
