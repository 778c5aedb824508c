#pragma once

#include "levysup/errors.hpp"

namespace levysup::special {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
inline constexpr double kSqrt2Pi = 2.50662827463100050241576528481104525;

// Gamma function for positive real arguments, Lanczos approximation
// (relative error well below 1e-13 on (0, 172); overflows beyond ~171.6).
double gamma_fn(double x);

// log Gamma for x > 0, same Lanczos core.
double lgamma_fn(double x);

// Regularized lower incomplete gamma P(a, x) = gamma(a,x)/Gamma(a),
// a > 0, x >= 0. Series for x < a+1, continued fraction otherwise.
double gammp(double a, double x);
// Upper complement Q(a, x) = 1 - P(a, x).
double gammq(double a, double x);

// Mittag-Leffler function E_rho(x) = sum_n x^n / Gamma(1 + rho n),
// rho in (0, 1]. Plain compensated summation; terms are formed in log
// space so out-of-domain arguments surface as NumericalError rather
// than silent overflow. Intended domain: x <= 0, |x| <= 50.
double mittag_leffler(double rho, double x);

// Standard normal density / CDF / upper tail.
double norm_pdf(double x);
double norm_cdf(double x);
double norm_cdf_bar(double x);

} // namespace levysup::special
