#pragma once

#include <string>
#include <utility>
#include <vector>

#include "levyhit/levy_model.hpp"
#include "levyhit/mc_engine.hpp"

namespace levyhit {

// One regular-variation comparison: the predicted limit constant and the
// empirical ratio curve that should flatten onto it.
struct AsymptoticReport {
    double predicted_constant = 0.0;
    std::vector<std::pair<double, double>> empirical_ratio_curve;  // (argument, ratio)
    bool converged = false;  // last two ratios inside the relative band
    std::string note;
};

// Gamma(1+alpha) / B(1 - alpha/2, 1 + alpha/2) for alpha in (0,2): the
// constant relating nu(|s| >= t) to Re psi(1/t) for stable-like tails.
// Algebraically equal to 2 Gamma(alpha) sin(pi alpha/2) / pi.
double tail_constant(double alpha);

// Ratio nu(|s| >= t) / Re psi(1/t) over t_grid (default: log grid 1..1e3)
// against tail_constant(alpha_hat), where alpha_hat is the power of
// Re psi(1/t) read off the last two grid points. Jump-free models report
// "not applicable" with a zero curve.
AsymptoticReport nu_tail_asymptotic_check(const LevyModel& model,
                                          std::vector<double> t_grid = {},
                                          double band = 0.05);

// Small-xi limit curve at xi = 10^{-k}: Im psi(xi)/Re psi(xi) against
// -(c_u - c_d)/(c_u + c_d) tan(pi alpha/2) for centered measures, or
// Im psi(xi)/xi against -gamma_1 when the mean is nonzero (the sign follows
// this library's exponent convention).
AsymptoticReport im_re_limit(const LevyModel& model, double band = 0.05);

// C(alpha, C_I) = (1/pi) int_0^inf (1 + w^a) / ((1 + w^a)^2 + (C_I w^a)^2) dw
// for alpha in (1, 2]: the constant in lambda u^lambda(0) ->
// (Re psi)^{-1}(lambda) C(alpha, C_I). The integral is authoritative;
// C_of_alpha_closed evaluates
//   cos(arctan(C_I)/alpha) / (alpha (1 + C_I^2)^{1/(2 alpha)} sin(pi/alpha)),
// which reproduces it to quadrature accuracy and exists for cross-checks.
double C_of_alpha(double alpha, double C_I);
double C_of_alpha_closed(double alpha, double C_I);

// The (alpha, C_I) pair feeding C_of_alpha: closed-form traits when the
// exponent is an exact power, the factor-profile exponent for factorized
// measures, measured slopes otherwise. Requires a centered model, since a
// drift would swamp the Im psi limit.
std::pair<double, double> stability_exponents(const LevyModel& model);

// K(-x) / (C(alpha, C_I) Gamma(1/alpha)): the limit of
// t (Re psi)^{-1}(1/t) P^x(T_0 > t). Refuses when K is not certified.
double point_hitting_asymptote(const LevyModel& model, double x);

// Same limit for hitting B = [-R, R] from x outside:
// (K(-x) - E^x K(-X_{T_B})) / (C Gamma(1/alpha)), the expectation estimated
// from Monte Carlo hit positions. R = 0 degenerates to the point asymptote.
double set_hitting_asymptote(const LevyModel& model, double x, double R, const MCConfig& mc);

}  // namespace levyhit
