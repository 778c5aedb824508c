#pragma once

#include <stdexcept>
#include <variant>

#include "levysup/rng.hpp"
#include "levysup/stable.hpp"

namespace levysup::models {

// X(t) = Z_alpha(t) - c t, Z spectrally positive stable (beta=+1, mu=0).
struct StableDrift {
    double alpha;
    double sigma = 1.0;
    double c = 0.0;
};

// X(t) = Z_alpha(t), spectrally negative stable (beta=-1, mu=0), no drift.
struct SpectrallyNegativeStable {
    double alpha;
    double sigma = 1.0;
};

// X(t) = vol W(t) - c t.
struct BrownianDrift {
    double vol = 1.0;
    double c = 0.0;
};

// X(t) = sum of Exp(mu_rate) jumps arriving at rate lambda, minus c t.
// Finite variation; the law of X(t) has an atom at -c t.
struct CompoundPoissonDrift {
    double lambda;
    double mu_rate;
    double c;
};

// CompoundPoissonDrift perturbed by an independent spectrally positive
// stable process (beta=+1, mu=0).
struct PerturbedCompoundPoisson {
    double lambda;
    double mu_rate;
    double c;
    double alpha;
    double sigma = 1.0;
};

using LevyModel =
    std::variant<StableDrift, SpectrallyNegativeStable, BrownianDrift,
                 CompoundPoissonDrift, PerturbedCompoundPoisson>;

struct DensityQuery {
    double v;
    double t; // > 0
};

// Raised by density() for CompoundPoissonDrift, whose law has an atom;
// callers needing the absolutely continuous part use cp_jumpsum_density.
struct AtomicLawError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void validate(const LevyModel& m);
bool has_infinite_variation(const LevyModel& m);

// E X(1).
double mean_rate(const LevyModel& m);

// One-dimensional marginal density of X(t) at v (absolutely continuous
// families only).
double density(const LevyModel& m, const DensityQuery& q);

// Density of the jump-sum part of the CompoundPoissonDrift law at the
// shifted point x + c t (> 0 required), i.e. the space derivative of
// P(X(t) <= x) away from the atom:
//   sum_{n>=1} e^{-lt}(lt)^n/n! mu^n (x+ct)^{n-1} e^{-mu(x+ct)}/(n-1)!.
double cp_jumpsum_density(const CompoundPoissonDrift& m, double x, double t);

// E(X(t))^- / t.
double neg_part_mean_ratio(const LevyModel& m, double t);

// P(X(t) > u).
double marginal_tail(const LevyModel& m, double u, double t);

// Density at z of the spectrally negative companion Y: the reflected
// process -X for StableDrift / BrownianDrift / CompoundPoissonDrift
// (absolutely continuous part only for the latter), the process itself
// for SpectrallyNegativeStable.
double spectrally_negative_density(const LevyModel& m, double z, double t);

// Whether increments must be negated to simulate the Y companion.
bool negate_for_negative_view(const LevyModel& m);

namespace detail {
// AC density of a compound Poisson sum with exponential jumps:
// sum_{n>=1} e^{-L} L^n/n! * mu^n y^{n-1} e^{-mu y}/(n-1)!  at y > 0.
double jumpsum_density_core(double big_lambda, double mu, double y);
// Upper tail P(sum > y) including the n=0 atom at zero.
double jumpsum_tail_core(double big_lambda, double mu, double y);
// y beyond which the jump-sum law carries mass below ~1e-14.
double jumpsum_ymax(double big_lambda, double mu);
} // namespace detail

// One exact draw of X(dt).
template <class Rng>
double sample_increment(const LevyModel& m, double dt, Rng& rng) {
    if (!(dt > 0)) throw std::invalid_argument("sample_increment: dt <= 0");
    struct Visitor {
        double dt;
        Rng& rng;
        double operator()(const StableDrift& s) {
            stable::StableParams p{s.alpha, +1.0,
                                   s.sigma * std::pow(dt, 1.0 / s.alpha), 0.0};
            return stable::stable_sample(p, rng) - s.c * dt;
        }
        double operator()(const SpectrallyNegativeStable& s) {
            stable::StableParams p{s.alpha, -1.0,
                                   s.sigma * std::pow(dt, 1.0 / s.alpha), 0.0};
            return stable::stable_sample(p, rng);
        }
        double operator()(const BrownianDrift& b) {
            const double u1 = 1.0 - rng.uniform01();
            const double u2 = rng.uniform01();
            const double n = std::sqrt(-2.0 * std::log(u1)) *
                             std::cos(2.0 * special::kPi * u2);
            return b.vol * std::sqrt(dt) * n - b.c * dt;
        }
        double operator()(const CompoundPoissonDrift& cp) {
            return jumps(cp.lambda, cp.mu_rate) - cp.c * dt;
        }
        double operator()(const PerturbedCompoundPoisson& pc) {
            stable::StableParams p{pc.alpha, +1.0,
                                   pc.sigma * std::pow(dt, 1.0 / pc.alpha), 0.0};
            return jumps(pc.lambda, pc.mu_rate) + stable::stable_sample(p, rng) -
                   pc.c * dt;
        }
        double jumps(double lambda, double mu) {
            double total = 0.0;
            const auto n = poisson_draw(lambda * dt);
            for (std::uint64_t i = 0; i < n; ++i)
                total += -std::log1p(-rng.uniform01()) / mu;
            return total;
        }
        std::uint64_t poisson_draw(double mean) {
            if (mean <= 0.0) return 0;
            if (mean > 64.0)
                return poisson_draw(0.5 * mean) + poisson_draw(0.5 * mean);
            const double limit = std::exp(-mean);
            std::uint64_t n = 0;
            double prod = rng.uniform01();
            while (prod > limit) {
                ++n;
                prod *= rng.uniform01();
            }
            return n;
        }
    };
    Visitor vis{dt, rng};
    return std::visit(vis, m);
}

} // namespace levysup::models
