#pragma once

#include <cmath>
#include <utility>

#include "erasure/math.hpp"

namespace erasure {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

namespace detail {

template <class F>
QuadratureResult simpson_step(F& f, double a, double fa, double b, double fb, double m, double fm,
                              double whole, double tol, int depth, long& evals) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    evals += 2;
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // Standard Richardson termination: Simpson error shrinks ~16x per halving.
    if (depth <= 0) throw convergence_error("adaptive_simpson: interval bisection exceeded maximum depth");
    if (std::abs(delta) <= 15.0 * tol) {
        return {left + right + delta / 15.0, std::abs(delta) / 15.0, 0};
    }
    const QuadratureResult l = simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, evals);
    const QuadratureResult r = simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, evals);
    return {l.value + r.value, l.error_estimate + r.error_estimate, 0};
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a,b] to absolute tolerance tol.
/// Throws convergence_error if the recursion cannot reach tol.
template <class F>
QuadratureResult adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 60) {
    QuadratureResult result;
    if (a == b) return result;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    long evals = 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    result = detail::simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth, evals);
    result.evaluations = evals;
    return result;
}

}  // namespace erasure
