#pragma once

#include <cmath>
#include <stdexcept>

#include "levysup/quadrature.hpp"
#include "levysup/special.hpp"

namespace levysup::stable {

// Stable law parameters in the Samorodnitsky-Taqqu parametrization:
// alpha in (1,2], beta in {-1,+1} for alpha < 2 (spectrally one-sided;
// any beta in [-1,1] is accepted at alpha=2 where it is immaterial),
// sigma > 0 scale, mu shift. At alpha=2 the variance is 2*sigma^2.
struct StableParams {
    double alpha;
    double beta;
    double sigma = 1.0;
    double mu = 0.0;

    void validate() const;
};

// Density at x. Computed for the standardized beta=+1 law from the
// oscillatory integral (1/pi) int_0^inf e^{-t^alpha}
// cos(t y - t^alpha tan(pi alpha/2)) dt; beta=-1 by spatial reflection
// (density at x equals the beta=+1 density at -x), scale and shift by
// f_{sigma,mu}(x) = f_{1,0}((x-mu)/sigma)/sigma. alpha=2 is the normal
// branch with variance 2*sigma^2.
double stable_pdf(double x, const StableParams& p);

// Upper tail P(Z > u), in [0,1], non-increasing in u.
double stable_tail(double u, const StableParams& p);

// E(Z - c)^- = E max(c - Z, 0) for the spectrally positive (beta=+1,
// mu=0) law; non-negative. The left tail is the light one, truncated at
// -200*sigma.
double neg_part_mean_unit(const StableParams& p, double c);

// One exact draw via the Chambers-Mallows-Stuck construction in the
// Samorodnitsky-Taqqu parametrization (Weron's formulas). rng must
// expose uniform01() returning doubles in [0,1).
template <class Rng>
double stable_sample(const StableParams& p, Rng& rng) {
    p.validate();
    const double half_pi = 0.5 * special::kPi;
    const double tb = p.beta * std::tan(half_pi * p.alpha);
    const double b0 = std::atan(tb) / p.alpha;
    const double s0 = std::pow(1.0 + tb * tb, 0.5 / p.alpha);

    const double v = special::kPi * (rng.uniform01() - 0.5);
    double w = -std::log(1.0 - rng.uniform01());
    if (w < 1e-300) w = 1e-300;

    const double av_b = p.alpha * (v + b0);
    const double x = s0 * std::sin(av_b) /
                     std::pow(std::cos(v), 1.0 / p.alpha) *
                     std::pow(std::cos(v - av_b) / w, (1.0 - p.alpha) / p.alpha);
    return p.mu + p.sigma * x;
}

// Internals shared with the models/formulas layers: standardized
// beta=+1 density and upper tail (sigma=1, mu=0).
double unit_pdf_pos(double x, double alpha);
double unit_tail(double u, double alpha, double beta);

// E(Z_1 - theta)^- for the standardized beta=+1 law, served from a
// per-alpha Chebyshev table (built on demand, thread-safe). The direct
// evaluation costs a full quadrature over the density; integral kernels
// query this thousands of times per call.
double neg_part_mean_unit_cached(double alpha, double theta);

} // namespace levysup::stable
