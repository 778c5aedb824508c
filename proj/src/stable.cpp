#include "levysup/stable.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace levysup::stable {

using special::kPi;

void StableParams::validate() const {
    if (!(alpha > 1.0) || !(alpha <= 2.0))
        throw std::invalid_argument("StableParams: alpha must be in (1,2]");
    if (alpha < 2.0 && beta != 1.0 && beta != -1.0)
        throw std::invalid_argument(
            "StableParams: beta must be +1 or -1 for alpha < 2");
    if (alpha == 2.0 && (beta < -1.0 || beta > 1.0))
        throw std::invalid_argument("StableParams: beta must be in [-1,1]");
    if (!(sigma > 0.0))
        throw std::invalid_argument("StableParams: sigma must be > 0");
    if (!std::isfinite(mu))
        throw std::invalid_argument("StableParams: mu must be finite");
}

namespace {

// Left tail of the standardized beta=+1 law decays like
// exp(-K |x|^{alpha/(alpha-1)}); below -35 it is under 1e-100 for every
// alpha in (1,2].
constexpr double kLightTailCut = -35.0;

quad::QuadSpec oscillatory_spec() {
    quad::QuadSpec s;
    s.abs_tol = 1e-13;
    s.rel_tol = 1e-10;
    s.max_subdivisions = 2000;
    return s;
}

quad::IntegralResult oscillatory_integral(const quad::Integrand& f,
                                          double alpha, double scale) {
    // envelope scale/t is only consulted at segment ends t >= 1
    auto envelope = [alpha, scale](double t) {
        return scale * std::exp(-std::pow(t, alpha));
    };
    auto tail = [alpha, scale](double t) {
        return scale * std::exp(-std::pow(t, alpha)) /
               (alpha * std::pow(t, alpha - 1.0));
    };
    return quad::integrate_oscillatory_envelope(f, 0.0, envelope, tail,
                                                oscillatory_spec());
}

} // namespace

double unit_pdf_pos(double x, double alpha) {
    if (alpha == 2.0) {
        // N(0, 2)
        return special::norm_pdf(x / special::kSqrt2) / special::kSqrt2;
    }
    if (x <= kLightTailCut) return 0.0;
    const double tau = std::tan(0.5 * kPi * alpha);
    auto f = [x, tau, alpha](double t) {
        const double ta = std::pow(t, alpha);
        return std::exp(-ta) * std::cos(t * x - ta * tau) / kPi;
    };
    const double v = oscillatory_integral(f, alpha, 1.0 / kPi).value;
    return std::max(v, 0.0);
}

double unit_tail(double u, double alpha, double beta) {
    if (alpha == 2.0) return special::norm_cdf_bar(u / special::kSqrt2);
    if (beta == -1.0) {
        // P(Z_{-1} > u) = P(Z_{+1} < -u)
        return 1.0 - unit_tail(-u, alpha, 1.0);
    }
    if (u <= kLightTailCut) return 1.0;
    // Gil-Pelaez inversion: P(Z > u) = 1/2 +
    // (1/pi) int_0^inf e^{-t^alpha} sin(tau t^alpha - t u) / t dt.
    const double tau = std::tan(0.5 * kPi * alpha);
    auto f = [u, tau, alpha](double t) {
        const double ta = std::pow(t, alpha);
        return std::exp(-ta) * std::sin(ta * tau - t * u) / (t * kPi);
    };
    const double v = 0.5 + oscillatory_integral(f, alpha, 1.0 / kPi).value;
    return std::clamp(v, 0.0, 1.0);
}

double stable_pdf(double x, const StableParams& p) {
    p.validate();
    const double y = (x - p.mu) / p.sigma;
    if (p.alpha == 2.0)
        return special::norm_pdf(y / special::kSqrt2) /
               (special::kSqrt2 * p.sigma);
    const double arg = (p.beta == -1.0) ? -y : y;
    return unit_pdf_pos(arg, p.alpha) / p.sigma;
}

double stable_tail(double u, const StableParams& p) {
    p.validate();
    return unit_tail((u - p.mu) / p.sigma, p.alpha, p.alpha == 2.0 ? 1.0 : p.beta);
}

double neg_part_mean_unit(const StableParams& p, double c) {
    p.validate();
    if (p.mu != 0.0)
        throw std::invalid_argument("neg_part_mean_unit: requires mu = 0");
    if (p.alpha < 2.0 && p.beta != 1.0)
        throw std::invalid_argument("neg_part_mean_unit: requires beta = +1");

    // E(Z_sigma - c)^- = sigma E(Z_1 - c/sigma)^-
    const double theta = c / p.sigma;
    const double alpha = p.alpha;

    if (alpha == 2.0) {
        // Z_1 ~ N(0,2): E(Z - theta)^- = theta Phi(theta/sqrt2) +
        // sqrt2 phi(theta/sqrt2)
        const double a = special::kSqrt2;
        return p.sigma * (theta * special::norm_cdf(theta / a) +
                          a * special::norm_pdf(theta / a));
    }

    const double lo = -200.0;
    if (theta <= lo) return 0.0;
    auto integrand = [theta, alpha](double x) {
        return (theta - x) * unit_pdf_pos(x, alpha);
    };
    quad::QuadSpec spec;
    spec.abs_tol = 1e-10;
    spec.rel_tol = 1e-9;
    auto r = quad::integrate_finite(integrand, lo, theta, spec);
    if (!r.converged)
        throw NumericalError("neg_part_mean_unit: quadrature did not converge");
    return p.sigma * std::max(r.value, 0.0);
}

namespace {

// Chebyshev-Lobatto table of theta -> E(Z_1 - theta)^- on [lo, hi].
struct NegPartTable {
    double lo, hi;
    std::vector<double> nodes;
    std::vector<double> values;
    std::vector<double> weights;

    double eval(double theta) const {
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const double d = theta - nodes[j];
            if (d == 0.0) return values[j];
            const double q = weights[j] / d;
            num += q * values[j];
            den += q;
        }
        return num / den;
    }
};

std::shared_ptr<NegPartTable> build_neg_part_table(double alpha, double lo,
                                                   double hi) {
    constexpr int kN = 96; // 97 Lobatto nodes
    auto table = std::make_shared<NegPartTable>();
    table->lo = lo;
    table->hi = hi;
    table->nodes.resize(kN + 1);
    table->values.resize(kN + 1);
    table->weights.resize(kN + 1);
    const StableParams unit{alpha, +1.0, 1.0, 0.0};
    for (int j = 0; j <= kN; ++j) {
        const double x = std::cos(kPi * j / kN); // 1 .. -1
        const double theta = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x;
        table->nodes[j] = theta;
        table->values[j] = neg_part_mean_unit(unit, theta);
        double w = (j % 2 == 0) ? 1.0 : -1.0;
        if (j == 0 || j == kN) w *= 0.5;
        table->weights[j] = w;
    }
    return table;
}

std::mutex g_neg_part_mutex;
std::map<double, std::shared_ptr<NegPartTable>> g_neg_part_tables;

} // namespace

double neg_part_mean_unit_cached(double alpha, double theta) {
    if (alpha == 2.0) {
        const double a = special::kSqrt2;
        return theta * special::norm_cdf(theta / a) +
               a * special::norm_pdf(theta / a);
    }
    if (theta <= kLightTailCut) return 0.0;

    std::shared_ptr<NegPartTable> table;
    {
        std::lock_guard<std::mutex> lock(g_neg_part_mutex);
        auto it = g_neg_part_tables.find(alpha);
        if (it != g_neg_part_tables.end() && it->second->hi >= theta)
            table = it->second;
    }
    if (!table) {
        const double hi = std::max(2.0, 1.5 * theta + 1.0);
        table = build_neg_part_table(alpha, kLightTailCut - 1.0, hi);
        std::lock_guard<std::mutex> lock(g_neg_part_mutex);
        auto& slot = g_neg_part_tables[alpha];
        if (!slot || slot->hi < table->hi) slot = table;
        table = g_neg_part_tables[alpha];
    }
    return std::max(table->eval(theta), 0.0);
}

} // namespace levysup::stable
