#pragma once

#include <optional>
#include <string>

#include "levysup/models.hpp"

namespace levysup::formulas {

enum class Method { ExactClosedForm, Quadrature, Series };

const char* method_name(Method m);

// A probability with an aggregated error estimate. Raw quadrature output
// may leave [0,1] by less than its error estimate; values are clamped
// and the excursion is folded into error_estimate.
struct ProbabilityEstimate {
    double value;
    double error_estimate;
    Method method;
    std::string detail;
};

// P(sup_{t<=T} X(t) > u) for infinite-variation families with
// absolutely continuous marginals (StableDrift, BrownianDrift,
// PerturbedCompoundPoisson):
//   P(X(T) > u) + int_0^T E(X(T-s))^-/(T-s) f(u,s) ds,
// the integral routed through the power-endpoint rule with the
// family's declared exponents.
ProbabilityEstimate sup_finite(const models::LevyModel& m, double u, double T,
                               std::optional<quad::QuadSpec> spec = {});

// P(sup_{t<inf} X(t) > u): exactly 1 when E X(1) >= 0, otherwise
// |E X(1)| int_0^inf f(u,s) ds.
ProbabilityEstimate sup_infinite(const models::LevyModel& m, double u,
                                 std::optional<quad::QuadSpec> spec = {});

// Closed form for X(t) = Z_alpha(t) - c t with sigma = 1:
// E_{alpha-1}(-a u^{alpha-1}), a = c cos(pi (alpha-2)/2).
ProbabilityEstimate sup_infinite_stable_ml(double alpha, double c, double u);

// Finite-variation counterpart (exponential-jump compound Poisson,
// c > 0): P(X(T) > u) + int_0^T E(X(T-s)/(T-s) - c)^- d_s P(...), the
// Stieltjes measure realized as the jump-sum density at u + c s.
ProbabilityEstimate takacs_finite(const models::CompoundPoissonDrift& m,
                                  double u, double T,
                                  std::optional<quad::QuadSpec> spec = {});

// Infinite-horizon: exactly 1 when lambda/mu_rate >= c, otherwise
// (c - lambda/mu_rate) int_0^inf (jump-sum density at u + c s) ds.
ProbabilityEstimate takacs_infinite(const models::CompoundPoissonDrift& m,
                                    double u,
                                    std::optional<quad::QuadSpec> spec = {});

// P(S(z) <= T) for the spectrally negative companion Y of m:
// int_0^T (z/t) density_Y(z, t) dt; for the finite-variation family the
// first-passage law has an atom at t = z/c (creeping by drift) of mass
// e^{-lambda z / c}, added when z/c <= T.
ProbabilityEstimate kendall_first_passage_cdf(
    const models::LevyModel& m, double z, double T,
    std::optional<quad::QuadSpec> spec = {});

// Density in z of the defective law P(inf_{t<=T} Y < -x, Y(T)+x in dz):
// int_0^T (z/(T-s)) density_Y(z, T-s) density_Y(-x, s) ds.
double joint_inf_terminal_density(const models::LevyModel& m, double x,
                                  double z, double T,
                                  std::optional<quad::QuadSpec> spec = {});

// P(sup_{t<=T} Z_alpha(t) > u) = alpha P(Z_alpha(T) > u) for the
// driftless spectrally negative stable process, u >= 0.
ProbabilityEstimate spectrally_negative_sup(double alpha, double sigma,
                                            double u, double T);

} // namespace levysup::formulas
