#include "levysup/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace levysup::quad {

namespace {

// Gauss 7 / Kronrod 15 pair (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
};

struct PanelWorse {
    bool operator()(const Panel& x, const Panel& y) const {
        return x.error < y.error;
    }
};

[[noreturn]] void throw_nan(double x) {
    std::ostringstream os;
    os << "integrand returned NaN at x = " << x;
    throw NumericalError(os.str());
}

Panel gk15(const Integrand& f, double a, double b, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    auto eval = [&](double x) {
        double v = f(x);
        if (std::isnan(v)) throw_nan(x);
        return v;
    };

    double fc = eval(c);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = eval(c - dx);
        const double f2 = eval(c + dx);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    evals += 15;
    return Panel{a, b, resk * h, std::abs((resk - resg) * h)};
}

IntegralResult adaptive(const Integrand& f, double a, double b,
                        const QuadSpec& spec) {
    long evals = 0;
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> panels;
    panels.push(gk15(f, a, b, evals));

    double total_value = panels.top().value;
    double total_error = panels.top().error;
    int splits = 0;

    auto tol = [&] {
        return std::max(spec.abs_tol, spec.rel_tol * std::abs(total_value));
    };

    while (total_error > tol() && splits < spec.max_subdivisions) {
        Panel worst = panels.top();
        panels.pop();
        const double m = 0.5 * (worst.a + worst.b);
        if (m <= worst.a || m >= worst.b) {
            // panel exhausted at double resolution; keep as is
            panels.push(Panel{worst.a, worst.b, worst.value, 0.0});
            total_error -= worst.error;
            continue;
        }
        Panel left = gk15(f, worst.a, m, evals);
        Panel right = gk15(f, m, worst.b, evals);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++splits;
    }

    IntegralResult r;
    r.value = total_value;
    r.error_estimate = total_error;
    r.evaluations = evals;
    r.converged = total_error <= tol();
    return r;
}

} // namespace

void QuadSpec::validate() const {
    if (abs_tol < 0 || rel_tol < 0)
        throw std::invalid_argument("QuadSpec: tolerances must be >= 0");
    if (abs_tol == 0 && rel_tol == 0)
        throw std::invalid_argument("QuadSpec: abs_tol and rel_tol both zero");
    if (max_subdivisions < 1)
        throw std::invalid_argument("QuadSpec: max_subdivisions must be >= 1");
}

IntegralResult integrate_finite(const Integrand& f, double a, double b,
                                const QuadSpec& spec) {
    spec.validate();
    if (a > b) throw std::invalid_argument("integrate_finite: a > b");
    if (a == b) return IntegralResult{0.0, 0.0, 0, true};
    return adaptive(f, a, b, spec);
}

IntegralResult integrate_semi_infinite(const Integrand& f, double a,
                                       const QuadSpec& spec) {
    spec.validate();
    auto mapped = [&f, a](double t) {
        const double omt = 1.0 - t;
        const double x = a + t / omt;
        return f(x) / (omt * omt);
    };
    return adaptive(mapped, 0.0, 1.0, spec);
}

IntegralResult integrate_oscillatory_envelope(const Integrand& f, double a,
                                              const Integrand& envelope_bound,
                                              const Integrand& tail_bound,
                                              const QuadSpec& spec,
                                              double segment_length) {
    spec.validate();
    if (segment_length <= 0)
        throw std::invalid_argument("segment_length must be > 0");

    const double cutoff = spec.abs_tol / 10.0;
    IntegralResult total;
    total.converged = true;

    double left = a;
    const int max_segments = 100000;
    for (int k = 0; k < max_segments; ++k) {
        const double right = left + segment_length;
        IntegralResult seg = adaptive(f, left, right, spec);
        total.value += seg.value;
        total.error_estimate += seg.error_estimate;
        total.evaluations += seg.evaluations;
        total.converged = total.converged && seg.converged;
        left = right;
        if (envelope_bound(left) < cutoff) {
            total.error_estimate += tail_bound(left);
            return total;
        }
    }
    total.converged = false; // truncation bound not achievable
    return total;
}

IntegralResult integrate_power_endpoint(const Integrand& f_smooth, double a,
                                        double b, double p_left,
                                        double p_right, const QuadSpec& spec) {
    spec.validate();
    if (p_left <= -1.0 || p_right <= -1.0)
        throw std::invalid_argument(
            "integrate_power_endpoint: exponent <= -1 is non-integrable");
    if (a >= b) {
        if (a == b) return IntegralResult{0.0, 0.0, 0, true};
        throw std::invalid_argument("integrate_power_endpoint: a > b");
    }

    const double m = 0.5 * (a + b);
    const double ql = 1.0 / (1.0 + p_left);
    const double qr = 1.0 / (1.0 + p_right);

    // Left half: x = a + w^ql turns (x-a)^p_left dx into ql*dw.
    auto left_integrand = [&](double w) {
        const double x = a + std::pow(w, ql);
        return ql * std::pow(b - x, p_right) * f_smooth(x);
    };
    // Right half mirrored: x = b - v^qr.
    auto right_integrand = [&](double v) {
        const double x = b - std::pow(v, qr);
        return qr * std::pow(x - a, p_left) * f_smooth(x);
    };

    QuadSpec half = spec;
    half.abs_tol = 0.5 * spec.abs_tol;
    IntegralResult l =
        adaptive(left_integrand, 0.0, std::pow(m - a, 1.0 / ql), half);
    IntegralResult r =
        adaptive(right_integrand, 0.0, std::pow(b - m, 1.0 / qr), half);

    IntegralResult out;
    out.value = l.value + r.value;
    out.error_estimate = l.error_estimate + r.error_estimate;
    out.evaluations = l.evaluations + r.evaluations;
    const double tol =
        std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
    out.converged = l.converged && r.converged && out.error_estimate <= tol;
    return out;
}

} // namespace levysup::quad
