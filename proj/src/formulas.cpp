#include "levysup/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace levysup::formulas {

using models::BrownianDrift;
using models::CompoundPoissonDrift;
using models::LevyModel;
using models::PerturbedCompoundPoisson;
using models::SpectrallyNegativeStable;
using models::StableDrift;
using special::kPi;

namespace {

constexpr double kTailErrorAllowance = 1e-11;

const char* kMethodNames[] = {"exact-closed-form", "quadrature", "series"};

ProbabilityEstimate clamped(double raw, double err, Method method,
                            std::string detail) {
    ProbabilityEstimate e;
    e.value = std::clamp(raw, 0.0, 1.0);
    e.error_estimate = err + std::abs(raw - e.value);
    e.method = method;
    e.detail = std::move(detail);
    return e;
}

[[noreturn]] void fail_integral(const char* where,
                                const quad::IntegralResult& r) {
    std::ostringstream os;
    os << where << ": quadrature did not converge (error estimate "
       << r.error_estimate << " after " << r.evaluations << " evaluations)";
    throw NumericalError(os.str());
}

quad::QuadSpec default_spec() { return quad::QuadSpec{1e-10, 1e-8, 2000}; }

quad::QuadSpec perturbed_spec() { return quad::QuadSpec{1e-7, 1e-6, 120}; }

quad::QuadSpec pick(const std::optional<quad::QuadSpec>& user,
                    quad::QuadSpec fallback) {
    return user ? *user : fallback;
}

// ---- sup_finite kernels -------------------------------------------------

quad::IntegralResult stable_kernel(const StableDrift& m, double u, double T,
                                   const quad::QuadSpec& spec) {
    const double alpha = m.alpha;
    const double inv_a = 1.0 / alpha;
    double h0 = 0.0;
    if (m.c == 0.0) {
        h0 = stable::neg_part_mean_unit({alpha, +1.0, 1.0, 0.0}, 0.0);
    } else {
        // warm the cache up to the largest kernel argument
        stable::neg_part_mean_unit_cached(alpha,
                                          (m.c / m.sigma) *
                                              std::pow(T, 1.0 - inv_a));
    }
    auto f_smooth = [&](double s) {
        const double arg = std::pow(s, -inv_a) * (u + m.c * s) / m.sigma;
        const double dens = stable::unit_pdf_pos(arg, alpha) / m.sigma;
        double h;
        if (m.c == 0.0) {
            h = h0;
        } else {
            const double theta =
                (m.c / m.sigma) * std::pow(T - s, 1.0 - inv_a);
            h = stable::neg_part_mean_unit_cached(alpha, theta);
        }
        return dens * m.sigma * h;
    };
    return quad::integrate_power_endpoint(f_smooth, 0.0, T, -inv_a,
                                          inv_a - 1.0, spec);
}

quad::IntegralResult brownian_kernel(const BrownianDrift& m, double u,
                                     double T, const quad::QuadSpec& spec) {
    auto f_smooth = [&](double s) {
        const double dens_part =
            special::norm_pdf((u + m.c * s) / (m.vol * std::sqrt(s))) / m.vol;
        const double rt = std::sqrt(T - s);
        const double kappa_part =
            m.c * rt * special::norm_cdf(m.c * rt / m.vol) +
            m.vol * special::norm_pdf(m.c * rt / m.vol);
        return dens_part * kappa_part;
    };
    return quad::integrate_power_endpoint(f_smooth, 0.0, T, -0.5, -0.5, spec);
}

quad::IntegralResult perturbed_kernel(const PerturbedCompoundPoisson& m,
                                      double u, double T,
                                      const quad::QuadSpec& spec) {
    const double inv_a = 1.0 / m.alpha;
    const LevyModel as_model{m};
    auto f_smooth = [&](double s) {
        const double dens = models::density(as_model, {u, s});
        const double kappa = models::neg_part_mean_ratio(as_model, T - s);
        return std::pow(s, inv_a) * dens * std::pow(T - s, 1.0 - inv_a) *
               kappa;
    };
    return quad::integrate_power_endpoint(f_smooth, 0.0, T, -inv_a,
                                          inv_a - 1.0, spec);
}

// ---- sup_infinite integrand (rational map s = t/(1-t)) ------------------

quad::IntegralResult infinite_density_integral(const LevyModel& m, double u,
                                               double p_right,
                                               const quad::QuadSpec& spec) {
    auto f_smooth = [&](double t) {
        const double omt = 1.0 - t;
        const double s = t / omt;
        if (s <= 0.0) return 0.0;
        const double dens = models::density(m, {u, s});
        // mapped integrand dens/omt^2 with the declared (1-t)^{p_right}
        // factor divided out
        return dens / (omt * omt) * std::pow(omt, -p_right);
    };
    return quad::integrate_power_endpoint(f_smooth, 0.0, 1.0, 0.0, p_right,
                                          spec);
}

} // namespace

const char* method_name(Method m) { return kMethodNames[static_cast<int>(m)]; }

ProbabilityEstimate sup_finite(const LevyModel& m, double u, double T,
                               std::optional<quad::QuadSpec> spec_in) {
    models::validate(m);
    if (!(u > 0)) throw std::invalid_argument("sup_finite: u must be > 0");
    if (!(T > 0)) throw std::invalid_argument("sup_finite: T must be > 0");
    if (std::holds_alternative<CompoundPoissonDrift>(m))
        throw std::invalid_argument(
            "sup_finite: finite-variation model; use takacs_finite");
    if (std::holds_alternative<SpectrallyNegativeStable>(m))
        throw std::invalid_argument(
            "sup_finite: spectrally negative model; use "
            "spectrally_negative_sup");

    const double tail = models::marginal_tail(m, u, T);
    quad::IntegralResult kernel;
    double tail_err = kTailErrorAllowance;
    if (const auto* s = std::get_if<StableDrift>(&m)) {
        kernel = stable_kernel(*s, u, T, pick(spec_in, default_spec()));
    } else if (const auto* b = std::get_if<BrownianDrift>(&m)) {
        kernel = brownian_kernel(*b, u, T, pick(spec_in, default_spec()));
    } else {
        kernel = perturbed_kernel(std::get<PerturbedCompoundPoisson>(m), u, T,
                                  pick(spec_in, perturbed_spec()));
        tail_err = 1e-7; // inner convolution quadratures
    }
    if (!kernel.converged) fail_integral("sup_finite", kernel);

    std::ostringstream detail;
    detail << "tail=" << tail << " kernel=" << kernel.value
           << " kernel_err=" << kernel.error_estimate;
    return clamped(tail + kernel.value, tail_err + kernel.error_estimate,
                   Method::Quadrature, detail.str());
}

ProbabilityEstimate sup_infinite(const LevyModel& m, double u,
                                 std::optional<quad::QuadSpec> spec_in) {
    models::validate(m);
    if (!(u > 0)) throw std::invalid_argument("sup_infinite: u must be > 0");
    if (std::holds_alternative<CompoundPoissonDrift>(m))
        throw std::invalid_argument(
            "sup_infinite: finite-variation model; use takacs_infinite");

    const double rate = models::mean_rate(m);
    if (rate >= 0.0)
        return {1.0, 0.0, Method::ExactClosedForm,
                "E X(1) >= 0: supremum exceeds any level a.s."};

    double p_right = 0.0;
    double extra_err = 0.0;
    if (const auto* s = std::get_if<StableDrift>(&m)) {
        p_right = s->alpha - 2.0;
    } else if (const auto* p = std::get_if<PerturbedCompoundPoisson>(&m)) {
        p_right = p->alpha - 2.0;
        extra_err = 1e-7;
    }
    auto spec = pick(spec_in,
                     std::holds_alternative<PerturbedCompoundPoisson>(m)
                         ? perturbed_spec()
                         : default_spec());
    auto r = infinite_density_integral(m, u, p_right, spec);
    if (!r.converged) fail_integral("sup_infinite", r);

    std::ostringstream detail;
    detail << "|EX(1)|=" << -rate << " integral=" << r.value
           << " err=" << r.error_estimate;
    return clamped(-rate * r.value, -rate * r.error_estimate + extra_err,
                   Method::Quadrature, detail.str());
}

ProbabilityEstimate sup_infinite_stable_ml(double alpha, double c, double u) {
    stable::StableParams{alpha, +1.0, 1.0, 0.0}.validate();
    if (!(c > 0))
        throw std::invalid_argument("sup_infinite_stable_ml: c must be > 0");
    if (u < 0)
        throw std::invalid_argument("sup_infinite_stable_ml: u must be >= 0");
    const double a = c * std::cos(0.5 * kPi * (alpha - 2.0));
    const double x = -a * std::pow(u, alpha - 1.0);
    const double v = special::mittag_leffler(alpha - 1.0, x);
    std::ostringstream detail;
    detail << "E_rho(x), rho=" << alpha - 1.0 << ", x=" << x;
    return clamped(v, 1e-12, Method::Series, detail.str());
}

ProbabilityEstimate takacs_finite(const CompoundPoissonDrift& m, double u,
                                  double T,
                                  std::optional<quad::QuadSpec> spec_in) {
    models::validate(LevyModel{m});
    if (!(u > 0)) throw std::invalid_argument("takacs_finite: u must be > 0");
    if (!(T > 0)) throw std::invalid_argument("takacs_finite: T must be > 0");

    const LevyModel as_model{m};
    const double tail = models::marginal_tail(as_model, u, T);
    auto integrand = [&](double s) {
        return models::neg_part_mean_ratio(as_model, T - s) *
               models::cp_jumpsum_density(m, u, s);
    };
    auto spec = pick(spec_in, quad::QuadSpec{1e-9, 1e-7, 800});
    auto r = quad::integrate_finite(integrand, 0.0, T, spec);
    if (!r.converged) fail_integral("takacs_finite", r);

    std::ostringstream detail;
    detail << "tail=" << tail << " kernel=" << r.value
           << " kernel_err=" << r.error_estimate;
    return clamped(tail + r.value, 1e-12 + r.error_estimate,
                   Method::Quadrature, detail.str());
}

ProbabilityEstimate takacs_infinite(const CompoundPoissonDrift& m, double u,
                                    std::optional<quad::QuadSpec> spec_in) {
    models::validate(LevyModel{m});
    if (!(u > 0)) throw std::invalid_argument("takacs_infinite: u must be > 0");

    const double rate = m.lambda / m.mu_rate;
    if (rate >= m.c)
        return {1.0, 0.0, Method::ExactClosedForm,
                "E X(1) >= c: ruin is certain"};

    auto integrand = [&](double s) {
        return models::cp_jumpsum_density(m, u, s);
    };
    auto spec = pick(spec_in, default_spec());
    auto r = quad::integrate_semi_infinite(integrand, 0.0, spec);
    if (!r.converged) fail_integral("takacs_infinite", r);

    std::ostringstream detail;
    detail << "(c - EX(1)) * integral, integral=" << r.value
           << " err=" << r.error_estimate;
    return clamped((m.c - rate) * r.value, (m.c - rate) * r.error_estimate,
                   Method::Quadrature, detail.str());
}

ProbabilityEstimate kendall_first_passage_cdf(
    const LevyModel& m, double z, double T,
    std::optional<quad::QuadSpec> spec_in) {
    models::validate(m);
    if (!(z > 0))
        throw std::invalid_argument("kendall_first_passage_cdf: z must be > 0");
    if (!(T > 0))
        throw std::invalid_argument("kendall_first_passage_cdf: T must be > 0");
    if (std::holds_alternative<PerturbedCompoundPoisson>(m))
        throw std::invalid_argument(
            "kendall_first_passage_cdf: unsupported family");

    auto spec = pick(spec_in, default_spec());
    double atom = 0.0;
    double lo = 0.0;
    std::string note = "int_0^T (z/t) f_Y(z,t) dt";
    if (const auto* cp = std::get_if<CompoundPoissonDrift>(&m)) {
        // creeping by drift: S(z) = z/c exactly when no jump intervenes
        const double t_star = z / cp->c;
        if (t_star > T)
            return {0.0, 0.0, Method::ExactClosedForm,
                    "level unreachable before T (pure drift needs z/c)"};
        atom = std::exp(-cp->lambda * t_star);
        lo = t_star;
        note = "atom e^{-lambda z/c} + int_{z/c}^T (z/t) f_Y(z,t) dt";
    }
    auto integrand = [&](double t) {
        return (z / t) * models::spectrally_negative_density(m, z, t);
    };
    auto r = quad::integrate_finite(integrand, lo, T, spec);
    if (!r.converged) fail_integral("kendall_first_passage_cdf", r);
    return clamped(atom + r.value, kTailErrorAllowance + r.error_estimate,
                   Method::Quadrature, note);
}

double joint_inf_terminal_density(const LevyModel& m, double x, double z,
                                  double T,
                                  std::optional<quad::QuadSpec> spec_in) {
    models::validate(m);
    if (!(x > 0) || !(z > 0) || !(T > 0))
        throw std::invalid_argument(
            "joint_inf_terminal_density: x, z, T must be > 0");
    if (std::holds_alternative<CompoundPoissonDrift>(m) ||
        std::holds_alternative<PerturbedCompoundPoisson>(m))
        throw std::invalid_argument(
            "joint_inf_terminal_density: requires absolutely continuous "
            "spectrally negative companion");

    double p_left = -0.5;
    if (const auto* s = std::get_if<StableDrift>(&m)) p_left = -1.0 / s->alpha;
    if (const auto* s = std::get_if<SpectrallyNegativeStable>(&m))
        p_left = -1.0 / s->alpha;

    auto f_smooth = [&](double s) {
        const double first =
            (z / (T - s)) * models::spectrally_negative_density(m, z, T - s);
        const double second = models::spectrally_negative_density(m, -x, s);
        return std::pow(s, -p_left) * first * second;
    };
    auto spec = pick(spec_in, default_spec());
    auto r = quad::integrate_power_endpoint(f_smooth, 0.0, T, p_left, 0.0,
                                            spec);
    if (!r.converged) fail_integral("joint_inf_terminal_density", r);
    return std::max(r.value, 0.0);
}

ProbabilityEstimate spectrally_negative_sup(double alpha, double sigma,
                                            double u, double T) {
    stable::StableParams{alpha, -1.0, sigma, 0.0}.validate();
    if (u < 0)
        throw std::invalid_argument("spectrally_negative_sup: u must be >= 0");
    if (!(T > 0))
        throw std::invalid_argument("spectrally_negative_sup: T must be > 0");
    const double scale = sigma * std::pow(T, 1.0 / alpha);
    const double tail = stable::unit_tail(u / scale, alpha, -1.0);
    return clamped(alpha * tail, alpha * kTailErrorAllowance,
                   Method::Quadrature,
                   "alpha * P(Z_alpha(T) > u), strong Markov identity");
}

} // namespace levysup::formulas
