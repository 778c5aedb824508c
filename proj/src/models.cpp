#include "levysup/models.hpp"

#include <algorithm>
#include <cmath>

namespace levysup::models {

using special::kPi;
using special::lgamma_fn;

namespace {

void check_positive(double v, const char* what) {
    if (!(v > 0)) throw std::invalid_argument(std::string(what) + " must be > 0");
}

stable::StableParams unit_pos(double alpha) { return {alpha, +1.0, 1.0, 0.0}; }

// density of Z_alpha(t) - c t at v, spectrally positive stable part
double stable_drift_density(double alpha, double sigma, double c, double v,
                            double t) {
    const double sinv = std::pow(t, -1.0 / alpha);
    stable::StableParams p{alpha, +1.0, sigma, 0.0};
    return sinv * stable::stable_pdf(sinv * (v + c * t), p);
}

quad::QuadSpec conv_spec() {
    quad::QuadSpec s;
    s.abs_tol = 1e-11;
    s.rel_tol = 1e-8;
    s.max_subdivisions = 600;
    return s;
}

// Perturbed marginal: e^{-lt} f_Z(w) + int_0^ymax g(y) f_Z(w - y) dy
// with w = v + c t and g the jump-sum AC density.
double perturbed_density(const PerturbedCompoundPoisson& m, double v,
                         double t) {
    const double w = v + m.c * t;
    const double big_lambda = m.lambda * t;
    const double scale = m.sigma * std::pow(t, 1.0 / m.alpha);
    auto fz = [&](double z) {
        return stable::unit_pdf_pos(z / scale, m.alpha) / scale;
    };
    const double atom_part = std::exp(-big_lambda) * fz(w);
    const double ymax = detail::jumpsum_ymax(big_lambda, m.mu_rate);
    auto integrand = [&](double y) {
        return detail::jumpsum_density_core(big_lambda, m.mu_rate, y) *
               fz(w - y);
    };
    auto r = quad::integrate_finite(integrand, 0.0, ymax, conv_spec());
    return atom_part + std::max(r.value, 0.0);
}

double perturbed_tail(const PerturbedCompoundPoisson& m, double u, double t) {
    const double w = u + m.c * t;
    const double big_lambda = m.lambda * t;
    const double scale = m.sigma * std::pow(t, 1.0 / m.alpha);
    auto tz = [&](double z) {
        return stable::unit_tail(z / scale, m.alpha, +1.0);
    };
    const double atom_part = std::exp(-big_lambda) * tz(w);
    const double ymax = detail::jumpsum_ymax(big_lambda, m.mu_rate);
    auto integrand = [&](double y) {
        return detail::jumpsum_density_core(big_lambda, m.mu_rate, y) *
               tz(w - y);
    };
    auto r = quad::integrate_finite(integrand, 0.0, ymax, conv_spec());
    return std::clamp(atom_part + r.value, 0.0, 1.0);
}

// Takacs kernel for the exponential-jump family:
// E(J(t)/t - c)^- = sum_n pois_n(lt) [ c P(G_n <= ct) - n/(mu t) P(G_{n+1} <= ct) ]
double cp_neg_part_ratio(const CompoundPoissonDrift& m, double t) {
    const double big_lambda = m.lambda * t;
    const double z = m.mu_rate * m.c * t;
    const double log_bl = std::log(big_lambda);

    double sum = m.c * std::exp(-big_lambda); // n = 0 term
    const double sd = std::sqrt(big_lambda);
    const long n_lo = std::max(1L, static_cast<long>(big_lambda - 40 * sd - 40));
    const long n_hi = static_cast<long>(big_lambda + 40 * sd + 40) + 1;
    for (long n = n_lo; n <= n_hi; ++n) {
        const double log_pois = -big_lambda + n * log_bl - lgamma_fn(n + 1.0);
        if (log_pois < -45.0 && n > big_lambda) break;
        const double pois = std::exp(log_pois);
        if (pois == 0.0) continue;
        const double bracket = m.c * special::gammp(double(n), z) -
                               (n / (m.mu_rate * t)) *
                                   special::gammp(double(n + 1), z);
        sum += pois * std::max(bracket, 0.0);
    }
    return sum;
}

double perturbed_neg_part_ratio(const PerturbedCompoundPoisson& m, double t) {
    const double big_lambda = m.lambda * t;
    const double scale = m.sigma * std::pow(t, 1.0 / m.alpha);
    auto h = [&](double w) {
        // E(Z(t) - w)^- = scale * E(Z_1 - w/scale)^-
        return scale * stable::neg_part_mean_unit_cached(m.alpha, w / scale);
    };
    const double atom_part = std::exp(-big_lambda) * h(m.c * t);
    const double ymax = detail::jumpsum_ymax(big_lambda, m.mu_rate);
    auto integrand = [&](double y) {
        return detail::jumpsum_density_core(big_lambda, m.mu_rate, y) *
               h(m.c * t - y);
    };
    auto r = quad::integrate_finite(integrand, 0.0, ymax, conv_spec());
    return (atom_part + std::max(r.value, 0.0)) / t;
}

} // namespace

namespace detail {

double jumpsum_density_core(double big_lambda, double mu, double y) {
    if (y <= 0.0 || big_lambda <= 0.0) return 0.0;
    const double base = -big_lambda - mu * y;
    const double log_lm = std::log(big_lambda * mu);
    const double log_y = std::log(y);
    auto log_term = [&](long n) {
        return base + n * log_lm + (n - 1) * log_y - lgamma_fn(n + 1.0) -
               lgamma_fn(double(n));
    };
    long peak = static_cast<long>(std::sqrt(big_lambda * mu * y));
    if (peak < 1) peak = 1;
    double sum = 0.0;
    for (long n = peak;; ++n) {
        const double term = std::exp(log_term(n));
        sum += term;
        if (term < 1e-18 * (sum + 1e-300) || n > peak + 200000) break;
    }
    for (long n = peak - 1; n >= 1; --n) {
        const double term = std::exp(log_term(n));
        sum += term;
        if (term < 1e-18 * (sum + 1e-300)) break;
    }
    return sum;
}

double jumpsum_tail_core(double big_lambda, double mu, double y) {
    if (big_lambda <= 0.0) return 0.0;
    if (y <= 0.0) return 1.0 - std::exp(-big_lambda) * (y >= 0.0 ? 1.0 : 0.0);
    // P(J > y) = sum_{n>=1} pois_n Q(n, mu y)
    const double sd = std::sqrt(big_lambda);
    const long n_hi = static_cast<long>(big_lambda + 40 * sd + 40) + 1;
    double sum = 0.0;
    for (long n = 1; n <= n_hi; ++n) {
        const double log_pois =
            -big_lambda + n * std::log(big_lambda) - lgamma_fn(n + 1.0);
        const double pois = std::exp(log_pois);
        if (pois < 1e-19 && n > big_lambda) break;
        sum += pois * special::gammq(double(n), mu * y);
    }
    return std::min(sum, 1.0);
}

double jumpsum_ymax(double big_lambda, double mu) {
    return (big_lambda + 40.0 * std::sqrt(2.0 * big_lambda) + 40.0) / mu;
}

} // namespace detail

void validate(const LevyModel& m) {
    std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, StableDrift>) {
                stable::StableParams{v.alpha, +1.0, v.sigma, 0.0}.validate();
                if (!std::isfinite(v.c))
                    throw std::invalid_argument("StableDrift: c must be finite");
            } else if constexpr (std::is_same_v<T, SpectrallyNegativeStable>) {
                stable::StableParams{v.alpha, -1.0, v.sigma, 0.0}.validate();
            } else if constexpr (std::is_same_v<T, BrownianDrift>) {
                check_positive(v.vol, "BrownianDrift: vol");
                if (!std::isfinite(v.c))
                    throw std::invalid_argument("BrownianDrift: c must be finite");
            } else if constexpr (std::is_same_v<T, CompoundPoissonDrift>) {
                check_positive(v.lambda, "CompoundPoissonDrift: lambda");
                check_positive(v.mu_rate, "CompoundPoissonDrift: mu_rate");
                check_positive(v.c, "CompoundPoissonDrift: c");
            } else {
                check_positive(v.lambda, "PerturbedCompoundPoisson: lambda");
                check_positive(v.mu_rate, "PerturbedCompoundPoisson: mu_rate");
                check_positive(v.c, "PerturbedCompoundPoisson: c");
                stable::StableParams{v.alpha, +1.0, v.sigma, 0.0}.validate();
            }
        },
        m);
}

bool has_infinite_variation(const LevyModel& m) {
    return !std::holds_alternative<CompoundPoissonDrift>(m);
}

double mean_rate(const LevyModel& m) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, StableDrift>)
                return -v.c;
            else if constexpr (std::is_same_v<T, SpectrallyNegativeStable>)
                return 0.0;
            else if constexpr (std::is_same_v<T, BrownianDrift>)
                return -v.c;
            else if constexpr (std::is_same_v<T, CompoundPoissonDrift>)
                return v.lambda / v.mu_rate - v.c;
            else
                return v.lambda / v.mu_rate - v.c;
        },
        m);
}

double density(const LevyModel& m, const DensityQuery& q) {
    validate(m);
    if (!(q.t > 0)) throw std::invalid_argument("density: t must be > 0");
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, StableDrift>) {
                return stable_drift_density(v.alpha, v.sigma, v.c, q.v, q.t);
            } else if constexpr (std::is_same_v<T, SpectrallyNegativeStable>) {
                const double sinv = std::pow(q.t, -1.0 / v.alpha);
                stable::StableParams p{v.alpha, -1.0, v.sigma, 0.0};
                return sinv * stable::stable_pdf(sinv * q.v, p);
            } else if constexpr (std::is_same_v<T, BrownianDrift>) {
                const double sd = v.vol * std::sqrt(q.t);
                return special::norm_pdf((q.v + v.c * q.t) / sd) / sd;
            } else if constexpr (std::is_same_v<T, CompoundPoissonDrift>) {
                throw AtomicLawError(
                    "density: CompoundPoissonDrift law has an atom at -c t; "
                    "use cp_jumpsum_density for the absolutely continuous part");
            } else {
                return perturbed_density(v, q.v, q.t);
            }
        },
        m);
}

double cp_jumpsum_density(const CompoundPoissonDrift& m, double x, double t) {
    validate(LevyModel{m});
    if (!(t > 0)) throw std::invalid_argument("cp_jumpsum_density: t <= 0");
    const double w = x + m.c * t;
    if (!(w > 0))
        throw std::invalid_argument("cp_jumpsum_density: requires x + c t > 0");
    return detail::jumpsum_density_core(m.lambda * t, m.mu_rate, w);
}

double neg_part_mean_ratio(const LevyModel& m, double t) {
    validate(m);
    if (!(t > 0)) throw std::invalid_argument("neg_part_mean_ratio: t <= 0");
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, StableDrift>) {
                // E(sigma t^{1/alpha-1} Z_1 - c)^-
                stable::StableParams p{
                    v.alpha, +1.0, v.sigma * std::pow(t, 1.0 / v.alpha - 1.0),
                    0.0};
                return stable::neg_part_mean_unit(p, v.c);
            } else if constexpr (std::is_same_v<T, SpectrallyNegativeStable>) {
                // E(Z_{-1}(t))^- = E(Z_{+1}(t))^+ = E(Z_{+1}(t))^-
                stable::StableParams p{
                    v.alpha, +1.0, v.sigma * std::pow(t, 1.0 / v.alpha - 1.0),
                    0.0};
                return stable::neg_part_mean_unit(p, 0.0);
            } else if constexpr (std::is_same_v<T, BrownianDrift>) {
                const double a = v.vol / std::sqrt(t);
                return v.c * special::norm_cdf(v.c / a) +
                       a * special::norm_pdf(v.c / a);
            } else if constexpr (std::is_same_v<T, CompoundPoissonDrift>) {
                return cp_neg_part_ratio(v, t);
            } else {
                return perturbed_neg_part_ratio(v, t);
            }
        },
        m);
}

double marginal_tail(const LevyModel& m, double u, double t) {
    validate(m);
    if (!(t > 0)) throw std::invalid_argument("marginal_tail: t <= 0");
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, StableDrift>) {
                const double scale = v.sigma * std::pow(t, 1.0 / v.alpha);
                return stable::unit_tail((u + v.c * t) / scale, v.alpha, +1.0);
            } else if constexpr (std::is_same_v<T, SpectrallyNegativeStable>) {
                const double scale = v.sigma * std::pow(t, 1.0 / v.alpha);
                return stable::unit_tail(u / scale, v.alpha, -1.0);
            } else if constexpr (std::is_same_v<T, BrownianDrift>) {
                return special::norm_cdf_bar((u + v.c * t) /
                                             (v.vol * std::sqrt(t)));
            } else if constexpr (std::is_same_v<T, CompoundPoissonDrift>) {
                return detail::jumpsum_tail_core(v.lambda * t, v.mu_rate,
                                                 u + v.c * t);
            } else {
                return perturbed_tail(v, u, t);
            }
        },
        m);
}

double spectrally_negative_density(const LevyModel& m, double z, double t) {
    validate(m);
    if (!(t > 0))
        throw std::invalid_argument("spectrally_negative_density: t <= 0");
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, StableDrift>) {
                // Y = -X = Z_{-1}(t) + c t
                const double scale = v.sigma * std::pow(t, 1.0 / v.alpha);
                stable::StableParams p{v.alpha, -1.0, 1.0, 0.0};
                return stable::stable_pdf((z - v.c * t) / scale, p) / scale;
            } else if constexpr (std::is_same_v<T, SpectrallyNegativeStable>) {
                const double scale = v.sigma * std::pow(t, 1.0 / v.alpha);
                stable::StableParams p{v.alpha, -1.0, 1.0, 0.0};
                return stable::stable_pdf(z / scale, p) / scale;
            } else if constexpr (std::is_same_v<T, BrownianDrift>) {
                // Y = vol W + c t
                const double sd = v.vol * std::sqrt(t);
                return special::norm_pdf((z - v.c * t) / sd) / sd;
            } else if constexpr (std::is_same_v<T, CompoundPoissonDrift>) {
                // Y = c t - J; AC part is the jump-sum density at c t - z
                if (v.c * t - z <= 0) return 0.0;
                return detail::jumpsum_density_core(v.lambda * t, v.mu_rate,
                                                    v.c * t - z);
            } else {
                throw std::invalid_argument(
                    "spectrally_negative_density: PerturbedCompoundPoisson is "
                    "not supported as a spectrally negative companion");
            }
        },
        m);
}

bool negate_for_negative_view(const LevyModel& m) {
    return !std::holds_alternative<SpectrallyNegativeStable>(m);
}

} // namespace levysup::models
