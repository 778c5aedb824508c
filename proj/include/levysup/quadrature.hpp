#pragma once

#include <functional>

#include "levysup/errors.hpp"

namespace levysup::quad {

using Integrand = std::function<double(double)>;

// Tolerance contract for the adaptive integrators. A result is converged
// when its error estimate is below max(abs_tol, rel_tol*|value|).
struct QuadSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;

    void validate() const;
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

// Adaptive Gauss-Kronrod (G7/K15) bisection on [a,b]. The rule is open:
// f is never evaluated exactly at a or b, so integrable endpoint
// singularities are tolerated. NaN from f raises NumericalError naming
// the abscissa; non-convergence is reported through the flag.
IntegralResult integrate_finite(const Integrand& f, double a, double b,
                                const QuadSpec& spec = {});

// Integral over (a, inf) via the rational map x = a + t/(1-t). Suitable
// for absolutely convergent integrands whose decay the map can track
// (exponential decay, power-law decay, or oscillation crushed by a
// decaying envelope).
IntegralResult integrate_semi_infinite(const Integrand& f, double a,
                                       const QuadSpec& spec = {});

// Integral over (a, inf) for envelope-dominated oscillatory integrands:
// successive unit-length segments are integrated until envelope_bound
// (a nonincreasing pointwise bound on |f|) falls below abs_tol/10; the
// caller-supplied tail_bound(t*) >= int_{t*}^inf |f| is then added to
// the error estimate. This realizes the envelope-truncation strategy
// for integrands with no closed oscillation pattern.
IntegralResult integrate_oscillatory_envelope(
    const Integrand& f, double a, const Integrand& envelope_bound,
    const Integrand& tail_bound, const QuadSpec& spec = {},
    double segment_length = 1.0);

// Integral of (x-a)^p_left * (b-x)^p_right * f_smooth(x) over [a,b] with
// p_left, p_right > -1. The singular factors are removed by the power
// substitutions s = a + w^{1/(1+p_left)} (mirrored on the right), so the
// error estimate remains valid despite them. p <= -1 is rejected.
IntegralResult integrate_power_endpoint(const Integrand& f_smooth, double a,
                                        double b, double p_left,
                                        double p_right,
                                        const QuadSpec& spec = {});

} // namespace levysup::quad
